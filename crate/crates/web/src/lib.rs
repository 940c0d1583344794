//! Browser bindings: each export takes plain strings and returns a JSON
//! document, `{"ok": ...}` on success or `{"error": "..."}` on failure.

use std::str::FromStr;

use serde_json::{json, Value};
use setclass::generate::{self, Flavor, Property};
use setclass::ground::parse_class;
use setclass::script::Session;
use setclass::{structures, Universe};
use wasm_bindgen::prelude::*;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn class_over(points: usize, text: &str) -> Result<setclass::SetClass, String> {
    let u = Universe::new("X", points).map_err(|e| e.to_string())?;
    parse_class(&u, text).map_err(|e| e.to_string())
}

/// Every structural flag of `class` (e.g. `[{1},{1,2}]`) over `{1..points}`.
#[wasm_bindgen]
pub fn classify(points: usize, class: &str) -> String {
    respond((|| {
        let c = class_over(points, class)?;
        let report = structures::classify(&c).map_err(|e| e.to_string())?;
        Ok(serde_json::to_value(report).expect("reports serialize"))
    })())
}

/// The least class with property `kind` containing `class`, plus the `B`
/// hierarchy leading to its union/intersection closure.
#[wasm_bindgen]
pub fn closure(points: usize, class: &str, kind: &str) -> String {
    respond((|| {
        let c = class_over(points, class)?;
        let prop = Property::from_str(kind).map_err(|e| e.to_string())?;
        let closed = generate::generate(&c, prop).map_err(|e| e.to_string())?;
        let trace = generate::hierarchy(&c, Flavor::B).map_err(|e| e.to_string())?;
        Ok(json!({
            "closure": closed.to_string(),
            "size": closed.len(),
            "hierarchy": trace.stages.iter().map(|s| json!({
                "level": s.level,
                "upper": s.upper.to_string(),
                "lower": s.lower.to_string(),
            })).collect::<Vec<_>>(),
            "kolmogoroff_number": trace.kolmogoroff_number,
        }))
    })())
}

/// Runs a whole session script and returns its transcript and exit status.
#[wasm_bindgen]
pub fn run_script(text: &str) -> String {
    let result = Session::new(".").run(text);
    respond(Ok(json!({ "transcript": result.transcript, "exit_code": result.exit_code })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn classify_reports_flags() {
        let v = parse(classify(3, "[∅,{1},{2,3},{1,2,3}]"));
        assert_eq!(v["ok"]["semiring"]["holds"], true);
        assert!(parse(classify(3, "[{4}]"))["error"].is_string());
    }

    #[test]
    fn closure_and_hierarchy() {
        let v = parse(closure(2, "[{1},{2}]", "B"));
        assert_eq!(v["ok"]["closure"], "[{},{1},{2},{1,2}]");
        assert_eq!(v["ok"]["kolmogoroff_number"], 2);
        assert!(parse(closure(2, "[{1}]", "sigma"))["error"].is_string());
    }

    #[test]
    fn scripts_run() {
        let v = parse(run_script("universe X 2\nclass S = [{1}]\nassert S is ring\n"));
        assert_eq!(v["ok"]["exit_code"], 1);
    }
}
