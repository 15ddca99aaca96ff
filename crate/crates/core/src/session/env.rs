use std::collections::HashMap;
use std::time::Instant;

use super::value::Value;
use crate::space::SpaceContext;

/// A bound value together with the space it was computed in.
#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub value: Value,
    pub context: SpaceContext,
}

/// Per-session state: bindings and the active SPACE.
#[derive(Debug, Clone)]
pub struct Environment {
    bindings: HashMap<String, Binding>,
    pub space: SpaceContext,
    pub created_at: Instant,
    pub last_used_at: Instant,
}

impl Default for Environment {
    fn default() -> Self {
        let now = Instant::now();
        Environment {
            bindings: HashMap::new(),
            space: SpaceContext::default(),
            created_at: now,
            last_used_at: now,
        }
    }
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_space(space: SpaceContext) -> Self {
        Environment {
            space,
            ..Self::default()
        }
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }

    pub fn bind(&mut self, name: &str, value: Value) {
        let context = self.space.clone();
        self.bindings
            .insert(name.to_string(), Binding { value, context });
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.bindings.contains_key(name)
    }

    /// Bound names, sorted.
    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.bindings.keys().map(String::as_str).collect();
        v.sort_unstable();
        v
    }

    pub fn touch(&mut self) {
        self.last_used_at = Instant::now();
    }

    /// Drops every binding and restores the default space.
    pub fn clear(&mut self) {
        self.bindings.clear();
        self.space = SpaceContext::default();
        self.touch();
    }
}
