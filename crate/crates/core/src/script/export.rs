//! Canonical JSON and Graphviz renderings of session values.

use std::fmt::Write as _;

use serde_json::{json, Value as Json};

use super::{ScriptError, Value};
use crate::generate::HierarchyTrace;
use crate::ground::Universe;
use crate::partitions::{Partition, PartitionLattice};

pub const SCHEMA: &str = "setclass/1";

fn universe_json(u: &Universe) -> Json {
    let points: Vec<String> = (0..u.size()).map(|p| u.label(p)).collect();
    json!({ "name": u.name(), "points": points })
}

fn to_json<T: serde::Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("session values serialize to JSON")
}

/// JSON with sorted keys, members in canonical order, and a trailing newline.
pub fn json(value: &Value) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), SCHEMA.into());
    doc.insert("kind".into(), value.kind().into());
    if let Some(u) = value.universe() {
        doc.insert("universe".into(), universe_json(u));
    }
    let body = match value {
        Value::Universe(_) => Json::Null,
        Value::Class(c) => to_json(c),
        Value::Partition(p) => to_json(p),
        Value::Seq(s) => json!({
            "prefix": s.prefix().iter().map(|&m| crate::ground::format_mask(s.universe(), m)).collect::<Vec<_>>(),
            "cycle": s.cycle().iter().map(|&m| crate::ground::format_mask(s.universe(), m)).collect::<Vec<_>>(),
        }),
        Value::Lattice(l) => to_json(l),
        Value::Hierarchy(h) => to_json(h),
        Value::Stone(s) => to_json(s),
        Value::Report { json, .. } => json.clone(),
    };
    if !body.is_null() {
        doc.insert("value".into(), body);
    }
    let mut out = serde_json::to_string_pretty(&Json::Object(doc)).expect("JSON values print");
    out.push('\n');
    out
}

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn dot(value: &Value) -> Result<String, ScriptError> {
    match value {
        Value::Partition(p) => Ok(partition_dot(p)),
        Value::Lattice(l) => Ok(lattice_dot(l)),
        Value::Hierarchy(h) => Ok(hierarchy_dot(h)),
        Value::Stone(s) => Ok(s.to_dot()),
        other => Err(ScriptError::Usage(format!(
            "dot export supports partitions, lattices, hierarchies and stone spaces, not a {}",
            other.kind()
        ))),
    }
}

fn partition_dot(p: &Partition) -> String {
    let u = p.universe();
    let mut out = String::from("graph partition {\n  node [shape=box];\n");
    for (i, &b) in p.blocks().iter().enumerate() {
        let _ = writeln!(out, "  b{} [label=\"{}\"];", i + 1, quote(&crate::ground::format_mask(u, b)));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram, finer partitions below coarser ones.
fn lattice_dot(l: &PartitionLattice) -> String {
    let mut out = String::from("digraph partitions {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, node) in l.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", quote(&node.partition.to_string()));
    }
    for (i, node) in l.nodes.iter().enumerate() {
        for &j in &node.covers {
            let _ = writeln!(out, "  n{j} -> n{i};");
        }
    }
    out.push_str("}\n");
    out
}

/// Each stage feeds the opposite operator at the next level.
fn hierarchy_dot(h: &HierarchyTrace) -> String {
    let (up, low) = match h.flavor {
        crate::generate::Flavor::B => ("B^", "B_"),
        crate::generate::Flavor::SigmaPi => ("Σ", "Π"),
    };
    let mut out = String::from("digraph hierarchy {\n  rankdir=LR;\n  node [shape=box];\n");
    for s in &h.stages {
        let a = s.level;
        let _ = writeln!(out, "  u{a} [label=\"{up}{a}\\n{}\"];", quote(&s.upper.to_string()));
        let _ = writeln!(out, "  l{a} [label=\"{low}{a}\\n{}\"];", quote(&s.lower.to_string()));
    }
    for s in h.stages.iter().skip(1) {
        let a = s.level;
        let _ = writeln!(out, "  l{} -> u{a};", a - 1);
        let _ = writeln!(out, "  u{} -> l{a};", a - 1);
    }
    let _ = writeln!(out, "  final [shape=doubleoctagon, label=\"final\\n{}\"];", quote(&h.final_class.to_string()));
    let last = h.stages.last().map_or(0, |s| s.level);
    let _ = writeln!(out, "  u{last} -> final;\n  l{last} -> final;");
    out.push_str("}\n");
    out
}
