//! Session registry with lazy expiry.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use mathpar::session::Environment;
use rand::RngCore;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("unknown session '{0}'")]
    Unknown(String),
    #[error("session '{0}' has expired")]
    Expired(String),
}

/// One session. The environment lock serializes runs on the session.
#[derive(Debug)]
pub struct SessionRecord {
    pub id: String,
    pub env: Arc<tokio::sync::Mutex<Environment>>,
    last_used: Mutex<Instant>,
}

impl SessionRecord {
    pub fn touch(&self) {
        *self.last_used.lock().expect("poisoned") = Instant::now();
    }

    fn expired(&self, ttl: Duration, now: Instant) -> bool {
        *self.last_used.lock().expect("poisoned") + ttl < now
    }
}

#[derive(Debug)]
pub struct SessionStore {
    ttl: Duration,
    sessions: RwLock<HashMap<String, Arc<SessionRecord>>>,
    expired: Mutex<HashSet<String>>,
}

/// 128 random bits as 32 hex characters.
fn new_id() -> String {
    let mut bytes = [0u8; 16];
    rand::thread_rng().fill_bytes(&mut bytes);
    hex::encode(bytes)
}

impl SessionStore {
    pub fn new(ttl: Duration) -> Self {
        SessionStore {
            ttl,
            sessions: RwLock::default(),
            expired: Mutex::default(),
        }
    }

    pub fn create(&self) -> Arc<SessionRecord> {
        let mut map = self.sessions.write().expect("poisoned");
        let id = loop {
            let id = new_id();
            if !map.contains_key(&id) {
                break id;
            }
        };
        let rec = Arc::new(SessionRecord {
            id: id.clone(),
            env: Arc::new(tokio::sync::Mutex::new(Environment::new())),
            last_used: Mutex::new(Instant::now()),
        });
        map.insert(id, rec.clone());
        rec
    }

    /// Looks a session up, evicting it first if its TTL has passed.
    pub fn get(&self, id: &str) -> Result<Arc<SessionRecord>, StoreError> {
        let now = Instant::now();
        let found = self.sessions.read().expect("poisoned").get(id).cloned();
        match found {
            Some(rec) if rec.expired(self.ttl, now) => {
                self.sessions.write().expect("poisoned").remove(id);
                self.expired
                    .lock()
                    .expect("poisoned")
                    .insert(id.to_string());
                Err(StoreError::Expired(id.to_string()))
            }
            Some(rec) => {
                rec.touch();
                Ok(rec)
            }
            None if self.expired.lock().expect("poisoned").contains(id) => {
                Err(StoreError::Expired(id.to_string()))
            }
            None => Err(StoreError::Unknown(id.to_string())),
        }
    }

    pub fn remove(&self, id: &str) -> Result<(), StoreError> {
        self.get(id)?;
        self.sessions.write().expect("poisoned").remove(id);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_hex() {
        let store = SessionStore::new(Duration::from_secs(60));
        let a = store.create().id.clone();
        let b = store.create().id.clone();
        assert_ne!(a, b);
        assert_eq!(a.len(), 32);
        assert!(a.chars().all(|c| c.is_ascii_hexdigit()));
        assert_eq!(store.len(), 2);
    }

    #[test]
    fn expiry_is_lazy_and_sticky() {
        let store = SessionStore::new(Duration::ZERO);
        let id = store.create().id.clone();
        std::thread::sleep(Duration::from_millis(5));
        assert_eq!(store.len(), 1);
        assert_eq!(store.get(&id).unwrap_err(), StoreError::Expired(id.clone()));
        assert_eq!(store.len(), 0);
        assert_eq!(store.get(&id).unwrap_err(), StoreError::Expired(id));
    }

    #[test]
    fn removal() {
        let store = SessionStore::new(Duration::from_secs(60));
        let id = store.create().id.clone();
        store.remove(&id).unwrap();
        assert_eq!(store.get(&id).unwrap_err(), StoreError::Unknown(id.clone()));
        assert_eq!(store.remove(&id).unwrap_err(), StoreError::Unknown(id));
    }
}
