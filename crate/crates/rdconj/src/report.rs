//! Machine-readable run reports.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wall-clock data, emitted only on request so default reports stay
/// byte-identical between runs.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub wall_ms: f64,
    /// One entry per ball request: `hit`, `miss`, `rebuilt: …` or `off`.
    pub ball_cache: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub subcommand: String,
    pub toolkit_version: &'static str,
    pub inputs: Value,
    /// Every constant that entered a bound.
    pub constants: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(subcommand: &str, inputs: Value) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            subcommand: subcommand.to_string(),
            toolkit_version: TOOLKIT_VERSION,
            inputs,
            constants: Value::Object(Default::default()),
            results: Value::Null,
            warnings: Vec::new(),
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
