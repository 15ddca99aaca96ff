use std::time::Duration;

/// Service settings, read from `MATHPAR_*` environment variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub port: u16,
    pub session_ttl: Duration,
    pub eval_timeout: Duration,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            port: 8080,
            session_ttl: Duration::from_secs(3600),
            eval_timeout: Duration::from_secs(30),
        }
    }
}

fn var<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok().and_then(|v| v.trim().parse().ok())
}

impl Config {
    /// Unset or unparsable variables fall back to the defaults.
    pub fn from_env() -> Self {
        let d = Config::default();
        Config {
            port: var("MATHPAR_PORT").unwrap_or(d.port),
            session_ttl: var("MATHPAR_SESSION_TTL_SECONDS")
                .map(Duration::from_secs)
                .unwrap_or(d.session_ttl),
            eval_timeout: var("MATHPAR_EVAL_TIMEOUT_SECONDS")
                .map(Duration::from_secs)
                .unwrap_or(d.eval_timeout),
        }
    }
}
