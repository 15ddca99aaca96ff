#![allow(dead_code)]

use std::net::SocketAddr;
use std::sync::OnceLock;

use mathpar_service::{router, AppState, Config};
use serde_json::Value;

/// Starts a server on an ephemeral port in a background runtime.
pub fn spawn_server(config: Config) -> String {
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Runtime::new().unwrap();
        rt.block_on(async move {
            let listener = tokio::net::TcpListener::bind(SocketAddr::from(([127, 0, 0, 1], 0)))
                .await
                .unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            axum::serve(listener, router(AppState::new(&config)))
                .await
                .unwrap();
        });
    });
    format!("http://{}", rx.recv().unwrap())
}

pub fn schema() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let text = include_str!("../../schema/run-response.schema.json");
        jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
    })
}

pub fn assert_schema(body: &Value) {
    let errors: Vec<String> = schema().iter_errors(body).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?} in {body}");
}

/// `label = value` lines from a run response.
pub fn lines(body: &Value) -> Vec<String> {
    body["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| match o["label"].as_str() {
            Some(l) => format!("{l} = {}", o["mathpar"].as_str().unwrap()),
            None => o["mathpar"].as_str().unwrap().to_string(),
        })
        .collect()
}
