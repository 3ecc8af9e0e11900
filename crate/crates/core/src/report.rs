//! Versioned JSON report envelope shared by the CLI subcommands.

use serde::Serialize;
use serde_json::{json, Value};

/// Schema version stamped into every report; bump on breaking field changes.
/// The machine-readable schema ships at `docs/report-schema.json`.
pub const SCHEMA_VERSION: &str = "1";

/// Wrap a payload into the versioned envelope.
pub fn envelope<T: Serialize>(kind: &str, profile: Option<&str>, payload: &T) -> Value {
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "payload": serde_json::to_value(payload).expect("payload serializes"),
    });
    if let Some(p) = profile {
        v["profile"] = Value::String(p.to_string());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_has_required_fields() {
        let v = envelope("vm-norm", Some("exp(-1t)"), &serde_json::json!({"total": 2.0}));
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["kind"], "vm-norm");
        assert_eq!(v["profile"], "exp(-1t)");
        assert_eq!(v["payload"]["total"], 2.0);
    }
}
