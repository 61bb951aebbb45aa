use serde::Serialize;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// JSON wrapper for every machine-readable report.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub tolerance: f64,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(tolerance: f64, report: T) -> Self {
        Self { tool: TOOL, version: VERSION, tolerance, report }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
