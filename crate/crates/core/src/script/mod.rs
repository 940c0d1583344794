//! Line-oriented sessions: define universes, classes, sequences and
//! partitions, run the library's operations on them, export results, and
//! check `assert` lines. See [`help::COMMANDS`] for the grammar.
//!
//! A script runs top to bottom; each command is echoed as `> command`
//! followed by its output. The first failing line stops the run with a
//! line-numbered diagnostic and an exit status: 1 for a failed assertion,
//! 2 for parse, usage and precondition errors, 3 for resource caps.

pub mod export;
pub mod help;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::encode;
use crate::error::Error;
use crate::generate::{self, Flavor, HierarchyTrace, Property};
use crate::ground::{parse_class, parse_mask, parse_mask_list, parse_subset, SetClass, SetSeq, Universe};
use crate::partitions::{self, Partition, PartitionLattice};
use crate::ramsey;
use crate::setops;
use crate::stone::{self, StoneSpace};
use crate::structures::{self, Flag, Note, StructureReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptError {
    Usage(String),
    Assertion(String),
    Core(Error),
}

impl ScriptError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScriptError::Assertion(_) => 1,
            ScriptError::Core(e) if e.is_resource() => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptError::Usage(m) => f.write_str(m),
            ScriptError::Assertion(m) => write!(f, "assertion failed: {m}"),
            ScriptError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for ScriptError {
    fn from(e: Error) -> Self {
        ScriptError::Core(e)
    }
}

type Res<T> = std::result::Result<T, ScriptError>;

fn usage(msg: impl Into<String>) -> ScriptError {
    ScriptError::Usage(msg.into())
}

#[derive(Debug, Clone)]
pub enum Value {
    Universe(Arc<Universe>),
    Class(SetClass),
    Partition(Partition),
    Seq(SetSeq),
    Lattice(PartitionLattice),
    Hierarchy(HierarchyTrace),
    Stone(StoneSpace),
    /// Result of a query: text for the transcript, JSON for export.
    Report {
        kind: &'static str,
        universe: Option<Arc<Universe>>,
        text: Vec<String>,
        json: Json,
    },
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Universe(_) => "universe",
            Value::Class(_) => "class",
            Value::Partition(_) => "partition",
            Value::Seq(_) => "seq",
            Value::Lattice(_) => "lattice",
            Value::Hierarchy(_) => "hierarchy",
            Value::Stone(_) => "stone",
            Value::Report { kind, .. } => kind,
        }
    }

    pub fn universe(&self) -> Option<&Universe> {
        match self {
            Value::Universe(u) => Some(u),
            Value::Class(c) => Some(c.universe()),
            Value::Partition(p) => Some(p.universe()),
            Value::Seq(s) => Some(s.universe()),
            Value::Lattice(l) => l.nodes.first().map(|n| n.partition.universe().as_ref()),
            Value::Hierarchy(h) => Some(h.final_class.universe()),
            Value::Stone(s) => Some(s.ring().universe()),
            Value::Report { universe, .. } => universe.as_deref(),
        }
    }

    fn as_class(&self) -> Option<SetClass> {
        match self {
            Value::Class(c) => Some(c.clone()),
            Value::Partition(p) => Some(p.as_class()),
            _ => None,
        }
    }

    pub fn render(&self) -> Vec<String> {
        match self {
            Value::Universe(u) => {
                let pts: Vec<String> = (0..u.size()).map(|p| u.label(p)).collect();
                vec![format!("{{{}}}", pts.join(","))]
            }
            Value::Class(c) => vec![c.to_string()],
            Value::Partition(p) => vec![p.to_string()],
            Value::Seq(s) => vec![s.to_string()],
            Value::Lattice(l) => render_lattice(l),
            Value::Hierarchy(h) => render_hierarchy(h),
            Value::Stone(s) => render_stone(s),
            Value::Report { text, .. } => text.clone(),
        }
    }
}

fn render_lattice(l: &PartitionLattice) -> Vec<String> {
    let edges: usize = l.nodes.iter().map(|n| n.covers.len()).sum();
    let mut out = vec![format!("{} partitions, {} covering pairs", l.nodes.len(), edges)];
    for n in &l.nodes {
        let below: Vec<String> = n.covers.iter().map(|&i| l.nodes[i].partition.to_string()).collect();
        if below.is_empty() {
            out.push(format!("  {}", n.partition));
        } else {
            out.push(format!("  {} covers {}", n.partition, below.join(" ")));
        }
    }
    out
}

fn render_hierarchy(h: &HierarchyTrace) -> Vec<String> {
    let (up, low) = match h.flavor {
        Flavor::B => ("upper", "lower"),
        Flavor::SigmaPi => ("Σ", "Π"),
    };
    let mut out = Vec::new();
    for s in &h.stages {
        out.push(format!("level {}: {up} {}  {low} {}", s.level, s.upper, s.lower));
    }
    out.push(format!("stabilized at level {}", h.stabilized_at));
    match h.kolmogoroff_number {
        Some(k) => out.push(format!("kolmogoroff number {k}")),
        None => out.push("kolmogoroff number not defined for this flavor".into()),
    }
    out.push(format!("final {}", h.final_class));
    out
}

fn render_stone(s: &StoneSpace) -> Vec<String> {
    let ring = s.ring();
    let mut out = vec![format!("{} points", s.points.len())];
    for (i, p) in s.points.iter().enumerate() {
        out.push(format!("  p{} = {}", i + 1, p));
    }
    for &(f, pts) in s.basis_masks() {
        let names: Vec<String> = crate::bits::points(pts).map(|i| format!("p{}", i + 1)).collect();
        out.push(format!("  A{} = {{{}}}", ring.format_mask(f), names.join(",")));
    }
    out
}

fn note_text(n: &Note) -> String {
    match n {
        Note::FiniteCollapse { alias_of } => format!("same as {alias_of} on a finite universe"),
        Note::VacuouslyTrue { reason } => format!("vacuous: {reason}"),
        Note::NotApplicable { reason } => format!("not applicable: {reason}"),
    }
}

fn flag_text(name: &str, f: &Flag) -> String {
    let mut s = format!("{name}: {}", if f.holds { "yes" } else { "no" });
    if let Some(w) = &f.witness {
        s.push_str(&format!(" ({})", w.detail));
    }
    if let Some(n) = &f.note {
        s.push_str(&format!(" [{}]", note_text(n)));
    }
    s
}

fn classify_text(r: &StructureReport) -> Vec<String> {
    StructureReport::FLAG_NAMES.iter().map(|&n| flag_text(n, r.flag(n).expect("listed flag"))).collect()
}

/// Splits off the first whitespace-delimited word.
fn head(s: &str) -> (&str, &str) {
    let s = s.trim();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

/// `NAME = rest`.
fn definition(rest: &str) -> Res<(&str, &str)> {
    let (name, body) = rest.split_once('=').ok_or_else(|| usage("expected `NAME = ...`"))?;
    let name = name.trim();
    check_name(name)?;
    Ok((name, body.trim()))
}

fn check_name(name: &str) -> Res<()> {
    let ok = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(usage(format!("`{name}` is not a valid name")))
    }
}

fn number(tok: &str) -> Res<usize> {
    tok.parse().map_err(|_| usage(format!("expected a number, got `{tok}`")))
}

/// Accepts `[...]` and the brace form `{{..},{..}}`.
fn class_literal(text: &str) -> Option<String> {
    let t = text.trim();
    if t.starts_with('[') {
        return Some(t.to_string());
    }
    let inner = t.strip_prefix('{')?.strip_suffix('}')?.trim();
    (inner.starts_with('{') || inner.starts_with('∅')).then(|| format!("[{inner}]"))
}

fn is_subset_literal(text: &str) -> bool {
    let t = text.trim();
    t == "∅" || (t.starts_with('{') && class_literal(t).is_none())
}

struct Output {
    lines: Vec<String>,
    value: Option<Value>,
}

impl Output {
    fn text(lines: Vec<String>) -> Output {
        Output { lines, value: None }
    }

    fn value(v: Value) -> Output {
        Output { lines: v.render(), value: Some(v) }
    }
}

/// The result of running a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub transcript: String,
    pub exit_code: i32,
}

pub struct Session {
    bindings: BTreeMap<(&'static str, String), Value>,
    history: Vec<String>,
    current: Option<Arc<Universe>>,
    overwrite: bool,
    base_dir: PathBuf,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(".")
    }
}

impl Session {
    /// Relative paths in `ramsey` and `export ... to` resolve against `base_dir`.
    pub fn new(base_dir: impl AsRef<Path>) -> Session {
        Session {
            bindings: BTreeMap::new(),
            history: Vec::new(),
            current: None,
            overwrite: false,
            base_dir: base_dir.as_ref().to_path_buf(),
        }
    }

    pub fn history(&self) -> &[String] {
        &self.history
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.lookup(name).ok()
    }

    /// Runs every line of `text`, stopping at the first error.
    pub fn run(&mut self, text: &str) -> RunResult {
        let mut transcript = String::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            transcript.push_str("> ");
            transcript.push_str(line);
            transcript.push('\n');
            match self.execute(line) {
                Ok(lines) => {
                    for l in lines {
                        transcript.push_str(&l);
                        transcript.push('\n');
                    }
                }
                Err(e) => {
                    transcript.push_str(&format!("error: line {}: {}\n", i + 1, e));
                    return RunResult { transcript, exit_code: e.exit_code() };
                }
            }
        }
        RunResult { transcript, exit_code: 0 }
    }

    /// Runs a single command and returns its output lines.
    pub fn execute(&mut self, line: &str) -> Res<Vec<String>> {
        let (cmd, rest) = head(line);
        let lines = match cmd {
            "universe" => self.cmd_universe(rest)?,
            "use" => {
                let u = self.universe_named(rest.trim())?;
                self.current = Some(u.clone());
                vec![format!("using {}", u)]
            }
            "class" => {
                let (name, body) = definition(rest)?;
                let (lit, uni) = match body.rsplit_once(" in ") {
                    Some((l, u)) if !u.contains(['{', '[']) => (l, Some(self.universe_named(u.trim())?)),
                    _ => (body, None),
                };
                let u = match uni {
                    Some(u) => u,
                    None => self.current_universe()?,
                };
                let lit = class_literal(lit)
                    .ok_or_else(|| usage(format!("expected a class like [{{1}},{{1,2}}], got `{lit}`")))?;
                let c = parse_class(&u, &lit)?;
                self.bind(name, Value::Class(c))?
            }
            "seq" => {
                let (name, body) = definition(rest)?;
                let s = self.parse_seq(body)?;
                self.bind(name, Value::Seq(s))?
            }
            "partition" => {
                let (name, body) = definition(rest)?;
                let u = self.current_universe()?;
                let p = Partition::new(&u, parse_mask_list(&u, body)?)?;
                self.bind(name, Value::Partition(p))?
            }
            "let" => {
                let (name, body) = definition(rest)?;
                let out = self.query(body)?;
                let v = out.value.ok_or_else(|| usage(format!("`{body}` does not produce a value")))?;
                self.bind(name, v)?
            }
            "set" => match head(rest) {
                ("overwrite", "on") => {
                    self.overwrite = true;
                    vec!["overwrite on".into()]
                }
                ("overwrite", "off") => {
                    self.overwrite = false;
                    vec!["overwrite off".into()]
                }
                _ => return Err(usage("expected `set overwrite on|off`")),
            },
            "assert" => self.cmd_assert(rest)?,
            "export" => self.cmd_export(rest)?,
            "help" => {
                if rest.is_empty() {
                    help::overview()
                } else {
                    help::entry(rest.trim()).ok_or_else(|| usage(format!("no help for `{rest}`")))?
                }
            }
            _ => self.query(line)?.lines,
        };
        self.history.push(line.to_string());
        Ok(lines)
    }

    fn bind(&mut self, name: &str, v: Value) -> Res<Vec<String>> {
        check_name(name)?;
        let key = (v.kind(), name.to_string());
        if self.bindings.contains_key(&key) && !self.overwrite {
            return Err(usage(format!(
                "`{name}` is already bound as a {}; use `set overwrite on` to rebind",
                v.kind()
            )));
        }
        let mut lines = v.render();
        if let Some(first) = lines.first_mut() {
            *first = format!("{name} = {first}");
        }
        if let Value::Universe(u) = &v {
            self.current = Some(u.clone());
        }
        self.bindings.insert(key, v);
        Ok(lines)
    }

    /// Resolves `NAME` or `kind:NAME`.
    fn lookup(&self, name: &str) -> Res<&Value> {
        let name = name.trim();
        if let Some((kind, n)) = name.split_once(':') {
            return self
                .bindings
                .iter()
                .find(|((k, m), _)| *k == kind && m == n)
                .map(|(_, v)| v)
                .ok_or_else(|| usage(format!("no {kind} named `{n}`")));
        }
        let found: Vec<&Value> = self.bindings.iter().filter(|((_, m), _)| m == name).map(|(_, v)| v).collect();
        match found.as_slice() {
            [] => Err(usage(format!("unknown name `{name}`"))),
            [v] => Ok(v),
            many => {
                let kinds: Vec<&str> = many.iter().map(|v| v.kind()).collect();
                Err(usage(format!("`{name}` is bound as {}; write kind:{name}", kinds.join(" and "))))
            }
        }
    }

    fn lookup_kind(&self, kind: &'static str, name: &str) -> Option<&Value> {
        self.bindings.get(&(kind, name.trim().to_string()))
    }

    fn universe_named(&self, name: &str) -> Res<Arc<Universe>> {
        match self.lookup_kind("universe", name) {
            Some(Value::Universe(u)) => Ok(u.clone()),
            _ => Err(usage(format!("unknown universe `{name}`"))),
        }
    }

    fn current_universe(&self) -> Res<Arc<Universe>> {
        self.current.clone().ok_or_else(|| usage("no universe defined yet; start with `universe NAME N`"))
    }

    /// A class name (partitions count as their block class) or a literal
    /// over `hint` or the current universe.
    fn class_operand(&self, text: &str, hint: Option<&Arc<Universe>>) -> Res<SetClass> {
        if let Some(lit) = class_literal(text) {
            let u = match hint {
                Some(u) => u.clone(),
                None => self.current_universe()?,
            };
            return Ok(parse_class(&u, &lit)?);
        }
        let name = text.trim();
        if let Some(Value::Class(c)) = self.lookup_kind("class", name) {
            return Ok(c.clone());
        }
        let v = self.lookup(name)?;
        v.as_class().ok_or_else(|| usage(format!("`{name}` is a {}, not a class", v.kind())))
    }

    fn partition_operand(&self, name: &str) -> Res<Partition> {
        match self.lookup_kind("partition", name) {
            Some(Value::Partition(p)) => Ok(p.clone()),
            _ => {
                let v = self.lookup(name)?;
                Err(usage(format!("`{}` is a {}, not a partition", name.trim(), v.kind())))
            }
        }
    }

    fn seq_operand(&self, name: &str) -> Res<SetSeq> {
        match self.lookup_kind("seq", name) {
            Some(Value::Seq(s)) => Ok(s.clone()),
            _ => {
                let v = self.lookup(name)?;
                Err(usage(format!("`{}` is a {}, not a sequence", name.trim(), v.kind())))
            }
        }
    }

    fn two_operands<'a>(&self, rest: &'a str, what: &str) -> Res<(&'a str, &'a str)> {
        let parts: Vec<&str> = rest.split_whitespace().collect();
        match parts.as_slice() {
            [a, b] => Ok((a, b)),
            _ => Err(usage(format!("expected two {what} names"))),
        }
    }

    fn cmd_universe(&mut self, rest: &str) -> Res<Vec<String>> {
        if let Some((name, body)) = rest.split_once('=') {
            let name = name.trim();
            let inner = body
                .trim()
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| usage("expected `universe NAME = {a,b,...}`"))?;
            let labels: Vec<String> = inner.split(',').map(|l| l.trim().to_string()).collect();
            let u = Universe::with_labels(name, labels)?;
            return self.bind(name, Value::Universe(u));
        }
        let (name, n) = head(rest);
        if n.is_empty() {
            return Err(usage("expected `universe NAME N`"));
        }
        let u = Universe::new(name, number(n)?)?;
        self.bind(name, Value::Universe(u))
    }

    fn parse_seq(&self, body: &str) -> Res<SetSeq> {
        let u = self.current_universe()?;
        let (prefix, cycle) = match body.trim().strip_prefix("prefix") {
            Some(r) => r.split_once("cycle").ok_or_else(|| usage("expected `prefix [..] cycle [..]`"))?,
            None => {
                ("[]", body.trim().strip_prefix("cycle").ok_or_else(|| usage("expected `prefix [..] cycle [..]`"))?)
            }
        };
        Ok(SetSeq::new(&u, parse_mask_list(&u, prefix)?, parse_mask_list(&u, cycle)?)?)
    }

    /// Commands that compute something; usable directly or after `let`.
    fn query(&self, line: &str) -> Res<Output> {
        let (cmd, rest) = head(line);
        Ok(match cmd {
            "show" => Output::text(self.lookup(rest)?.render()),
            "op" => {
                let (name, word) = head(rest);
                let c = self.class_operand(name, None)?;
                Output::value(Value::Class(setops::apply_word_str(&c, word)?))
            }
            "classify" => {
                let c = self.class_operand(rest, None)?;
                let r = structures::classify(&c)?;
                Output::value(Value::Report {
                    kind: "classification",
                    universe: Some(c.universe().clone()),
                    text: classify_text(&r),
                    json: serde_json::to_value(&r).expect("reports serialize"),
                })
            }
            "closure" => {
                let (kind, name) = head(rest);
                let p: Property = kind.parse()?;
                let c = self.class_operand(name, None)?;
                Output::value(Value::Class(generate::generate(&c, p)?))
            }
            "hierarchy" => {
                let (flavor, name) = head(rest);
                let f: Flavor = flavor.parse()?;
                let c = self.class_operand(name, None)?;
                Output::value(Value::Hierarchy(generate::hierarchy(&c, f)?))
            }
            "intersect" | "union" => {
                let (a, b) = self.two_operands(rest, "class")?;
                let a = self.class_operand(a, None)?;
                let b = self.class_operand(b, Some(a.universe()))?;
                let c = if cmd == "intersect" { a.intersection(&b)? } else { a.union(&b)? };
                Output::value(Value::Class(c))
            }
            "meet" | "join" => {
                let (a, b) = self.two_operands(rest, "partition")?;
                let (a, b) = (self.partition_operand(a)?, self.partition_operand(b)?);
                let p = if cmd == "meet" { partitions::meet(&a, &b)? } else { partitions::join(&a, &b)? };
                Output::value(Value::Partition(p))
            }
            "lattice" => {
                let u = if rest.is_empty() { self.current_universe()? } else { self.universe_named(rest)? };
                Output::value(Value::Lattice(partitions::partition_lattice(&u)?))
            }
            "atoms" => {
                let c = self.class_operand(rest, None)?;
                Output::value(Value::Class(structures::atoms(&c)?))
            }
            "stone" => {
                let c = self.class_operand(rest, None)?;
                Output::value(Value::Stone(stone::stone(&c)?))
            }
            "chi" => {
                let s = self.seq_operand(rest)?;
                let p = encode::chi_sequence(&s);
                let u = s.universe();
                let mut text: Vec<String> =
                    p.values.iter().enumerate().map(|(i, v)| format!("χ({}) = {}", u.label(i), v)).collect();
                for (name, f) in p.flags.all() {
                    let mut l = format!("{name}: {}", if f.holds { "yes" } else { "no" });
                    if let Some(e) = &f.evidence {
                        l.push_str(&format!(" ({e})"));
                    }
                    if !f.agree() {
                        l.push_str(" [disagrees with the direct check]");
                    }
                    text.push(l);
                }
                Output::value(Value::Report {
                    kind: "chi",
                    universe: Some(u.clone()),
                    text,
                    json: serde_json::to_value(&p).expect("profiles serialize"),
                })
            }
            "bell" => {
                let n = number(rest.trim())?;
                let b = partitions::bell(n)?;
                Output::value(Value::Report {
                    kind: "bell",
                    universe: None,
                    text: vec![b.to_string()],
                    json: json!({ "n": n, "bell": b.to_string() }),
                })
            }
            "ramsey" => self.cmd_ramsey(rest)?,
            "help" | "assert" | "export" | "set" | "let" | "universe" | "class" | "seq" | "partition" | "use" => {
                return Err(usage(format!("`{cmd}` does not produce a value")))
            }
            other => return Err(usage(format!("unknown command `{other}`; try `help`"))),
        })
    }

    fn cmd_ramsey(&self, rest: &str) -> Res<Output> {
        let parts: Vec<&str> = rest.split_whitespace().collect();
        let [n, m, k, source] = parts.as_slice() else {
            return Err(usage("expected `ramsey n m k FILE|all|pentagon`"));
        };
        let (n, m, k) = (number(n)?, number(m)?, number(k)?);
        let u = self.current_universe()?;
        let (text, json) = if *source == "all" {
            let r = ramsey::all_colorings(&u, n, m, k)?;
            let text = if r.every_coloring_has_witness() {
                format!(
                    "every {m}-coloring of the {n}-subsets of {} has a monochromatic {k}-set ({} colorings)",
                    u.name(),
                    r.colorings
                )
            } else {
                format!("{} of {} colorings have no monochromatic {k}-set", r.colorings - r.with_witness, r.colorings)
            };
            (vec![text], serde_json::to_value(&r).expect("reports serialize"))
        } else {
            let coloring = if *source == "pentagon" {
                ramsey::pentagon(&u)?
            } else {
                let path = self.base_dir.join(source);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                ramsey::Coloring::from_json(&u, &text)?
            };
            if coloring.n() != n || coloring.colors() > m {
                return Err(usage(format!(
                    "the coloring colors {}-subsets with {} colors, not {n}-subsets with {m}",
                    coloring.n(),
                    coloring.colors()
                )));
            }
            let found = ramsey::monochromatic(&coloring, k)?;
            let text = match &found {
                Some(w) => format!("monochromatic {} in color {}", w.set, w.color),
                None => format!("no monochromatic {k}-set"),
            };
            (vec![text], json!({ "witness": found }))
        };
        Ok(Output::value(Value::Report { kind: "ramsey", universe: Some(u), text, json }))
    }

    fn cmd_export(&self, rest: &str) -> Res<Vec<String>> {
        let (name, rest) = head(rest);
        let (format, rest) = head(rest);
        let v = self.lookup(name)?;
        let body = match format {
            "json" => export::json(v),
            "dot" => export::dot(v)?,
            other => return Err(usage(format!("unknown export format `{other}` (json or dot)"))),
        };
        match head(rest) {
            ("", _) => Ok(body.lines().map(str::to_string).collect()),
            ("to", path) if !path.is_empty() => {
                let full = self.base_dir.join(path);
                std::fs::write(&full, &body).map_err(|e| usage(format!("cannot write {}: {e}", full.display())))?;
                Ok(vec![format!("wrote {path} ({} bytes)", body.len())])
            }
            _ => Err(usage("expected `export NAME json|dot [to PATH]`")),
        }
    }

    fn cmd_assert(&self, expr: &str) -> Res<Vec<String>> {
        const OPS: [&str; 10] = [" is not ", " is ", " notin ", " in ", " == ", " != ", " <= ", " >= ", " < ", " > "];
        let (lhs, op, rhs) = OPS
            .iter()
            .find_map(|op| expr.split_once(op).map(|(l, r)| (l.trim(), op.trim(), r.trim())))
            .ok_or_else(|| usage(format!("cannot read assertion `{expr}`")))?;
        let holds = match op {
            "is" | "is not" => {
                let c = self.class_operand(lhs, None)?;
                let report = structures::classify(&c)?;
                let flag = report.flag(rhs).ok_or_else(|| usage(format!("unknown flag `{rhs}`")))?;
                flag.holds == (op == "is")
            }
            "in" | "notin" => {
                let c = self.class_operand(rhs, None)?;
                if !is_subset_literal(lhs) {
                    return Err(usage(format!("expected a subset like {{1,2}}, got `{lhs}`")));
                }
                let s = parse_subset(c.universe(), lhs)?;
                c.contains(&s) == (op == "in")
            }
            _ => match self.numeric(lhs)? {
                Some(left) => {
                    let right = number(rhs)?;
                    match op {
                        "==" => left == right,
                        "!=" => left != right,
                        "<=" => left <= right,
                        ">=" => left >= right,
                        "<" => left < right,
                        _ => left > right,
                    }
                }
                None => self.compare(lhs, op, rhs)?,
            },
        };
        if holds {
            Ok(vec!["ok".into()])
        } else {
            Err(ScriptError::Assertion(self.explain(lhs, op, rhs)))
        }
    }

    /// Values of `len A`, `kolmogoroff A`, `stabilized A`, `points A`,
    /// `bell N`, or `None` when `text` is not one of these.
    fn numeric(&self, text: &str) -> Res<Option<usize>> {
        let (f, arg) = head(text);
        let hierarchy_of = |arg: &str| -> Res<HierarchyTrace> {
            match self.lookup(arg) {
                Ok(Value::Hierarchy(h)) => Ok(h.clone()),
                _ => Ok(generate::hierarchy(&self.class_operand(arg, None)?, Flavor::B)?),
            }
        };
        Ok(Some(match f {
            "len" => match self.lookup(arg) {
                Ok(Value::Lattice(l)) => l.nodes.len(),
                Ok(Value::Stone(s)) => s.points.len(),
                Ok(Value::Hierarchy(h)) => h.stages.len(),
                Ok(Value::Partition(p)) => p.len(),
                _ => self.class_operand(arg, None)?.len(),
            },
            "kolmogoroff" => hierarchy_of(arg)?
                .kolmogoroff_number
                .ok_or_else(|| usage("the Kolmogoroff number is only defined for the B hierarchy"))?,
            "stabilized" => hierarchy_of(arg)?.stabilized_at,
            "points" => match self.lookup(arg) {
                Ok(Value::Stone(s)) => s.points.len(),
                _ => stone::stone(&self.class_operand(arg, None)?)?.points.len(),
            },
            "bell" => {
                let b = partitions::bell(number(arg)?)?;
                b.to_string().parse().map_err(|_| usage("Bell number too large to compare"))?
            }
            _ => return Ok(None),
        }))
    }

    fn compare(&self, lhs: &str, op: &str, rhs: &str) -> Res<bool> {
        let left = self.operand_value(lhs, None)?;
        let right = self.operand_value(rhs, left.as_class().map(|c| c.universe().clone()))?;
        if let (Some(a), Some(b)) = (left.as_class(), right.as_class()) {
            crate::ground::same_universe(a.universe(), b.universe())?;
            return Ok(match op {
                "==" => a == b,
                "!=" => a != b,
                "<=" => a.is_subclass_of(&b)?,
                "<" => a.is_subclass_of(&b)? && a != b,
                ">=" => b.is_subclass_of(&a)?,
                _ => b.is_subclass_of(&a)? && a != b,
            });
        }
        let (a, b) = (export::json(&left), export::json(&right));
        match op {
            "==" => Ok(a == b),
            "!=" => Ok(a != b),
            _ => Err(usage(format!("`{op}` compares classes only"))),
        }
    }

    fn operand_value(&self, text: &str, hint: Option<Arc<Universe>>) -> Res<Value> {
        if class_literal(text).is_some() {
            return Ok(Value::Class(self.class_operand(text, hint.as_ref())?));
        }
        if is_subset_literal(text) {
            let u = match hint {
                Some(u) => u,
                None => self.current_universe()?,
            };
            let m = parse_mask(&u, text)?;
            return Ok(Value::Class(SetClass::from_masks(&u, vec![m])?));
        }
        Ok(self.lookup(text)?.clone())
    }

    fn explain(&self, lhs: &str, op: &str, rhs: &str) -> String {
        let show = |t: &str| -> String {
            match self.numeric(t) {
                Ok(Some(n)) => return n.to_string(),
                Ok(None) => {}
                Err(e) => return e.to_string(),
            }
            match self.lookup(t) {
                Ok(v) => v.render().join(" "),
                Err(_) => t.to_string(),
            }
        };
        match op {
            "is" | "is not" => {
                let detail = self
                    .class_operand(lhs, None)
                    .ok()
                    .and_then(|c| structures::classify(&c).ok())
                    .and_then(|r| r.flag(rhs).map(|f| flag_text(rhs, f)))
                    .unwrap_or_default();
                format!("{lhs} {op} {rhs}: {} has {detail}", show(lhs))
            }
            _ => format!("{lhs} {op} {rhs}: left is {}, right is {}", show(lhs), show(rhs)),
        }
    }
}

/// Runs a script file with relative paths resolved next to it.
pub fn run_script(path: &Path) -> RunResult {
    match std::fs::read_to_string(path) {
        Ok(text) => {
            let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
            Session::new(base).run(&text)
        }
        Err(e) => RunResult { transcript: format!("error: cannot read {}: {e}\n", path.display()), exit_code: 2 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> RunResult {
        Session::new(std::env::temp_dir()).run(text)
    }

    #[test]
    fn empty_script() {
        let r = run("");
        assert_eq!(r, RunResult { transcript: String::new(), exit_code: 0 });
        assert_eq!(run("# only a comment\n\n").transcript, "");
    }

    #[test]
    fn closure_shows_the_strict_containment() {
        let r = run("universe X = {1,2,3}\nclass S = {{1},{1,2},{1,2,3}}\nclosure B S\nclosure ring S\n");
        assert_eq!(r.exit_code, 0, "{}", r.transcript);
        let lines: Vec<&str> = r.transcript.lines().collect();
        let b = lines.iter().position(|l| *l == "> closure B S").unwrap();
        assert!(!lines[b + 1].contains("{1,3}"));
        let ring = lines.iter().position(|l| *l == "> closure ring S").unwrap();
        assert!(lines[ring + 1].contains("{1,3}"));
    }

    #[test]
    fn size_cap_exit_code() {
        let r = run("universe X 30\n");
        assert_eq!(r.exit_code, 3);
        assert!(r.transcript.contains("error: line 1: size cap"), "{}", r.transcript);
    }

    #[test]
    fn errors_are_line_numbered() {
        let r = run("universe X 3\n\nclass S = [{4}]\n");
        assert_eq!(r.exit_code, 2);
        assert!(
            r.transcript.ends_with("error: line 3: parse error: `4` is not a point of X (|X| = 3)\n"),
            "{}",
            r.transcript
        );
        assert_eq!(run("frobnicate\n").exit_code, 2);
        assert_eq!(run("universe X 3\nclass S = [{1}]\nclass S = [{2}]\n").exit_code, 2);
        assert_eq!(run("universe X 3\nclass S = [{1}]\nset overwrite on\nclass S = [{2}]\n").exit_code, 0);
    }

    #[test]
    fn assertions() {
        let ok = run("universe X 3\nclass S = [∅,{1},{2,3},{1,2,3}]\nclass T = [∅,{1},{2},{3},{1,2,3}]\n\
             let I = intersect S T\nassert S is semiring\nassert T is semiring\nassert I is not semiring\n\
             assert I == [∅,{1},{1,2,3}]\nassert {1} in I\nassert {2} notin I\nassert I <= S\nassert I < T\n\
             assert len I == 3\nassert bell 5 == 52\nclass P = [{1},{2}]\nassert kolmogoroff P == 2\n");
        assert_eq!(ok.exit_code, 0, "{}", ok.transcript);
        let bad = run("universe X 3\nclass S = [{1}]\nassert S is ring\n");
        assert_eq!(bad.exit_code, 1);
        assert!(bad.transcript.contains("error: line 3: assertion failed: S is ring"), "{}", bad.transcript);
    }

    #[test]
    fn names_are_unique_per_kind() {
        let r = run("universe X 3\nclass X = [{1}]\nshow class:X\nshow universe:X\n");
        assert_eq!(r.exit_code, 0, "{}", r.transcript);
        assert_eq!(run("universe X 3\nclass X = [{1}]\nshow X\n").exit_code, 2);
    }

    #[test]
    fn exports() {
        let r = run("universe X 3\nlet L = lattice\nexport L dot\n");
        assert_eq!(r.exit_code, 0, "{}", r.transcript);
        assert_eq!(r.transcript.matches("[label=").count(), 5);
        let r = run("universe X 3\nclass S = [{2},{1}]\nexport S json\n");
        assert!(r.transcript.contains("\"schema\": \"setclass/1\""));
        let s = r.transcript.find("\"1\"").unwrap();
        assert!(s < r.transcript.find("\"2\"").unwrap());
        let r = run("universe X 2\nclass R = [∅,{1},{2},{1,2}]\nlet T = stone R\nexport T dot\n");
        assert_eq!(r.transcript.matches("[label=").count(), 2);
        assert!(!r.transcript.contains("--"));
        assert_eq!(run("universe X 2\nclass R = [{1}]\nexport R dot\n").exit_code, 2);
    }

    #[test]
    fn every_command_has_help() {
        let mut s = Session::default();
        for (name, _, _) in help::COMMANDS {
            assert!(s.execute(&format!("help {name}")).is_ok());
        }
        assert!(s.execute("help nosuch").is_err());
    }

    #[test]
    fn ramsey_and_chi() {
        let r = run("universe X 5\nramsey 2 2 3 pentagon\nuniverse Y 6\nramsey 2 2 3 all\n");
        assert_eq!(r.exit_code, 0, "{}", r.transcript);
        assert!(r.transcript.contains("no monochromatic 3-set"));
        assert!(r.transcript.contains("has a monochromatic 3-set (32768 colorings)"));
        let r = run("universe X 3\nseq D = prefix [{1},{2},{3}] cycle [∅]\nchi D\n");
        assert!(r.transcript.contains("χ(2) = 2/9"), "{}", r.transcript);
    }

    #[test]
    fn deterministic_transcripts() {
        let script =
            "universe X 3\nclass S = [{1},{2}]\nhierarchy B S\nlet H = hierarchy B S\nexport H json\nexport H dot\n";
        assert_eq!(run(script), run(script));
    }
}
