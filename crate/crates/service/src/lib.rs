//! HTTP session service and command-line front end for the mathpar kernel.

pub mod api;
pub mod cli;
pub mod config;
pub mod store;

pub use api::{router, AppState};
pub use config::Config;
pub use store::{SessionStore, StoreError};
