//! Subscript operators on classes (`S_s`, `S_d`, `S_r`, ...), operator words,
//! and upper/lower limits of eventually periodic sequences.
//!
//! On a finite universe the countable operators coincide with their finite
//! counterparts: `σ = s`, `δ = d`, `σ_d = s_d`, and the arbitrary-family
//! operators `Σ`, `Δ` also reduce to `s`, `d`. They are accepted as aliases and
//! flagged as such, so callers can note that any distinction between them is
//! invisible here.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::MaskSet;
use crate::error::{Error, Result};
use crate::ground::{SetClass, SetSeq, Subset};

/// Longest accepted operator word.
pub const MAX_WORD_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpCode {
    /// `s`: nonempty finite unions.
    Unions,
    /// `σ`: countable unions.
    CountableUnions,
    /// `d`: nonempty finite intersections.
    Intersections,
    /// `δ`: countable intersections.
    CountableIntersections,
    /// `s_d`: nonempty finite disjoint unions.
    DisjointUnions,
    /// `σ_d`: countable disjoint unions.
    CountableDisjointUnions,
    /// `r`: members plus all differences.
    Differences,
    /// `c`: complements.
    Complements,
    /// `Σ` (ASCII `S`): arbitrary nonempty unions.
    ArbitraryUnions,
    /// `Δ` (ASCII `D`): arbitrary nonempty intersections.
    ArbitraryIntersections,
}

impl OpCode {
    /// The finite operator this code computes.
    pub fn effective(self) -> OpCode {
        match self {
            OpCode::CountableUnions | OpCode::ArbitraryUnions => OpCode::Unions,
            OpCode::CountableIntersections | OpCode::ArbitraryIntersections => OpCode::Intersections,
            OpCode::CountableDisjointUnions => OpCode::DisjointUnions,
            other => other,
        }
    }

    /// Whether the code is an alias that collapses onto a finite operator.
    pub fn is_finite_collapse(self) -> bool {
        self.effective() != self
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OpCode::Unions => "s",
            OpCode::CountableUnions => "σ",
            OpCode::Intersections => "d",
            OpCode::CountableIntersections => "δ",
            OpCode::DisjointUnions => "s_d",
            OpCode::CountableDisjointUnions => "σ_d",
            OpCode::Differences => "r",
            OpCode::Complements => "c",
            OpCode::ArbitraryUnions => "S",
            OpCode::ArbitraryIntersections => "D",
        }
    }
}

impl fmt::Display for OpCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A nonempty operator word applied left to right: `rs` means `(S_r)_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OpWord(Vec<OpCode>);

impl OpWord {
    pub fn new(codes: Vec<OpCode>) -> Result<OpWord> {
        if codes.is_empty() {
            return Err(Error::Parse("empty operator word".into()));
        }
        if codes.len() > MAX_WORD_LEN {
            return Err(Error::cap("operator word length", codes.len(), MAX_WORD_LEN));
        }
        Ok(OpWord(codes))
    }

    pub fn codes(&self) -> &[OpCode] {
        &self.0
    }

    pub fn is_finite_collapse(&self) -> bool {
        self.0.iter().any(|c| c.is_finite_collapse())
    }
}

impl FromStr for OpWord {
    type Err = Error;

    /// ASCII `s d r c S D`, `s_d` for disjoint unions, and the Greek forms
    /// `σ δ Σ Δ σ_d`.
    fn from_str(text: &str) -> Result<OpWord> {
        let chars: Vec<char> = text.trim().chars().collect();
        let mut codes = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let disjoint = chars.get(i + 1) == Some(&'_') && chars.get(i + 2) == Some(&'d');
            let code = match (chars[i], disjoint) {
                ('s', true) => OpCode::DisjointUnions,
                ('σ', true) => OpCode::CountableDisjointUnions,
                ('s', false) => OpCode::Unions,
                ('σ', false) => OpCode::CountableUnions,
                ('d', _) => OpCode::Intersections,
                ('δ', _) => OpCode::CountableIntersections,
                ('r', _) => OpCode::Differences,
                ('c', _) => OpCode::Complements,
                ('S' | 'Σ', _) => OpCode::ArbitraryUnions,
                ('D' | 'Δ', _) => OpCode::ArbitraryIntersections,
                (other, _) => return Err(Error::Parse(format!("unknown operator `{other}` in word `{text}`"))),
            };
            i += if disjoint { 3 } else { 1 };
            codes.push(code);
        }
        OpWord::new(codes)
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            f.write_str(c.symbol())?;
        }
        Ok(())
    }
}

/// Applies one operator to a nonempty class.
pub fn apply(class: &SetClass, op: OpCode) -> Result<SetClass> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "apply" });
    }
    let u = class.universe();
    let n = u.size();
    let ms = class.masks();
    let out = match op.effective() {
        OpCode::Unions => combine_closure(n, ms, |a, b| Some(a | b)),
        OpCode::Intersections => combine_closure(n, ms, |a, b| Some(a & b)),
        OpCode::DisjointUnions => combine_closure(n, ms, |a, b| (a & b == 0).then_some(a | b)),
        OpCode::Differences => {
            let mut out = ms.to_vec();
            for &a in ms {
                for &b in ms {
                    out.push(a & !b);
                }
            }
            out
        }
        OpCode::Complements => {
            let fullm = u.full_mask();
            ms.iter().map(|m| !m & fullm).collect()
        }
        _ => unreachable!("effective() only returns finite operators"),
    };
    Ok(SetClass::from_raw(u, out))
}

/// All results of folding `combine` over nonempty subfamilies, where a
/// subfamily is admissible when every partial fold is defined.
///
/// Members are absorbed one at a time:
/// `R_{k+1} = R_k ∪ {a} ∪ {combine(r, a) : r ∈ R_k}`.
pub(crate) fn combine_closure(n: usize, members: &[u32], combine: impl Fn(u32, u32) -> Option<u32>) -> Vec<u32> {
    let mut seen = MaskSet::new(n);
    let mut list: Vec<u32> = Vec::new();
    for &a in members {
        let before = list.len();
        for i in 0..before {
            if let Some(c) = combine(list[i], a) {
                if seen.insert(c) {
                    list.push(c);
                }
            }
        }
        if seen.insert(a) {
            list.push(a);
        }
    }
    list
}

pub fn apply_word(class: &SetClass, word: &OpWord) -> Result<SetClass> {
    let mut cur = class.clone();
    for &code in word.codes() {
        cur = apply(&cur, code)?;
    }
    Ok(cur)
}

/// Parses and applies a word in one step.
pub fn apply_word_str(class: &SetClass, word: &str) -> Result<SetClass> {
    apply_word(class, &word.parse()?)
}

/// Points lying in infinitely many terms: the union of the cycle.
pub fn limsup_seq(seq: &SetSeq) -> Subset {
    let m = seq.cycle().iter().fold(0, |acc, &c| acc | c);
    Subset::new(seq.universe(), m).expect("cycle masks fit the universe")
}

/// Points lying in all but finitely many terms: the intersection of the cycle.
pub fn liminf_seq(seq: &SetSeq) -> Subset {
    let m = seq.cycle().iter().fold(seq.universe().full_mask(), |acc, &c| acc & c);
    Subset::new(seq.universe(), m).expect("cycle masks fit the universe")
}

/// `lim S_i` when the upper and lower limits agree.
pub fn lim_seq(seq: &SetSeq) -> Option<Subset> {
    let sup = limsup_seq(seq);
    let inf = liminf_seq(seq);
    (sup == inf).then_some(sup)
}

/// The partial unions `S_1, S_1 ∪ S_2, ...` of a finite family, as an
/// eventually constant sequence whose limit is the total union.
pub fn partial_unions_seq(universe: &std::sync::Arc<crate::ground::Universe>, terms: &[u32]) -> Result<SetSeq> {
    if terms.is_empty() {
        return Err(Error::EmptyClass { op: "partial_unions_seq" });
    }
    let mut acc = 0u32;
    let prefix: Vec<u32> = terms
        .iter()
        .map(|&t| {
            acc |= t;
            acc
        })
        .collect();
    SetSeq::eventually(universe, prefix, acc)
}
