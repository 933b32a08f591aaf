//! Canonical JSON and plain-text rendering.

use std::fmt::Write;

use gaugeflow_core::{Param, Value, WitnessReport};
use serde::Serialize;

/// Shortest round-trip decimal form of `v` (at most 17 significant digits).
pub fn fmt_f64(v: f64) -> String {
    ryu::Buffer::new().format(v).to_string()
}

/// Pretty JSON with object keys in sorted order and shortest round-trip
/// floats, terminated by a newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value keeps keys in a BTreeMap, so converting first sorts them
    let tree = serde_json::to_value(value).expect("report types serialize");
    let mut out = serde_json::to_string_pretty(&tree).expect("json values serialize");
    out.push('\n');
    out
}

fn fmt_value(v: &Value) -> String {
    match v {
        Value::Solution(s) => format!("({}, {})", s.family(), fmt_f64(s.phase())),
        Value::Point(p) => format!("({}, {})", fmt_f64(p.x()), fmt_f64(p.y())),
        Value::Group(x) | Value::Gauge(x) | Value::Distance(x) | Value::Real(x) => fmt_f64(*x),
    }
}

fn fmt_param(p: &Param) -> String {
    match p {
        Param::Int(n) => n.to_string(),
        Param::Real(x) => fmt_f64(*x),
        Param::Text(s) => s.clone(),
    }
}

/// Human-readable block for one report. `expected` adds the comparison line.
pub fn report_text(report: &WitnessReport, expected: Option<gaugeflow_core::Status>) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}: {}", report.property, report.status);
    if let Some(e) = expected {
        let mark = if e == report.status { "ok" } else { "MISMATCH" };
        let _ = write!(out, " (expected {e}, {mark})");
    }
    out.push('\n');
    if !report.flags.is_empty() {
        let _ = writeln!(out, "  flags: {}", report.flags.join(", "));
    }
    if !report.constants.is_empty() {
        out.push_str("  constants:\n");
        for (k, v) in &report.constants {
            let _ = writeln!(out, "    {k} = {}", fmt_f64(*v));
        }
    }
    if !report.sampling.is_empty() {
        out.push_str("  sampling:\n");
        for (k, v) in &report.sampling {
            let _ = writeln!(out, "    {k} = {}", fmt_param(v));
        }
    }
    if !report.witnesses.is_empty() {
        out.push_str("  witnesses:\n");
        for w in &report.witnesses {
            let bindings: Vec<String> = w
                .bindings
                .iter()
                .map(|(k, v)| format!("{k}={}", fmt_value(v)))
                .collect();
            let _ = writeln!(out, "    {}: {}", w.label, bindings.join(", "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaugeflow_core::{Property, Status};

    #[test]
    fn floats_are_shortest_round_trip() {
        assert_eq!(fmt_f64(0.3), "0.3");
        assert_eq!(fmt_f64(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(fmt_f64(1e-12), "1e-12");
        let tau = 2.0 * (7.0f64 / 3.0).ln();
        assert_eq!(fmt_f64(tau).parse::<f64>().unwrap(), tau);
    }

    #[test]
    fn json_is_canonical() {
        let mut r = WitnessReport::new(Property::NonMinimality, Status::Verified);
        r.constant("m", 0.1);
        r.constant("a", 2.0);
        let s = canonical_json(&r);
        let again = canonical_json(&serde_json::from_str::<serde_json::Value>(&s).unwrap());
        assert_eq!(s, again);
        assert!(s.find("\"a\"").unwrap() < s.find("\"m\"").unwrap());
    }

    #[test]
    fn text_marks_mismatches() {
        let r = WitnessReport::new(Property::Transitivity, Status::Falsified);
        assert!(report_text(&r, Some(Status::Verified)).contains("MISMATCH"));
        assert!(report_text(&r, Some(Status::Falsified)).contains("ok"));
    }
}
