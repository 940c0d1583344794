//! Text syntax: subsets `{1,3,4}` (labels or 1-based indices, `{}` or `∅`
//! for the empty set) and classes `[{1},{1,2}]`.

use std::sync::Arc;

use super::class::SetClass;
use super::subset::Subset;
use super::universe::Universe;
use crate::error::{Error, Result};

pub fn parse_subset(universe: &Arc<Universe>, text: &str) -> Result<Subset> {
    let mask = parse_mask(universe, text)?;
    Ok(Subset::from_raw(universe, mask))
}

pub fn parse_mask(universe: &Universe, text: &str) -> Result<u32> {
    let t = text.trim();
    if t == "∅" {
        return Ok(0);
    }
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected a subset like {{1,2}}, got `{t}`")))?;
    let mut mask = 0u32;
    for tok in split_top_level(inner).into_iter().map(str::trim).filter(|s| !s.is_empty()) {
        let p =
            universe.point_index(tok).ok_or_else(|| Error::Parse(format!("`{tok}` is not a point of {universe}")))?;
        mask |= 1 << p;
    }
    Ok(mask)
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Parses `[S1, S2, ...]` into raw masks, keeping order and duplicates.
pub fn parse_mask_list(universe: &Universe, text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a list like [{{1}},{{1,2}}], got `{t}`")))?;
    split_sets(inner)?.into_iter().map(|s| parse_mask(universe, s)).collect()
}

pub fn parse_class(universe: &Arc<Universe>, text: &str) -> Result<SetClass> {
    let masks = parse_mask_list(universe, text)?;
    Ok(SetClass::from_raw(universe, masks))
}

/// Splits the inside of a list into its `{...}` / `∅` items.
fn split_sets(inner: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("∅") {
            out.push("∅");
            rest = r;
        } else if rest.starts_with('{') {
            let close = rest.find('}').ok_or_else(|| Error::Parse(format!("unclosed `{{` in `{inner}`")))?;
            out.push(&rest[..=close]);
            rest = &rest[close + 1..];
        } else {
            return Err(Error::Parse(format!("unexpected `{rest}` in a set list")));
        }
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(Error::Parse(format!("expected `,` before `{rest}`")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_indices_and_labels() {
        let u = Universe::with_labels("L", vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(parse_mask(&u, "{a, c}").unwrap(), 0b101);
        assert_eq!(parse_mask(&u, "{2}").unwrap(), 0b010);
        assert_eq!(parse_mask(&u, "{}").unwrap(), 0);
        assert_eq!(parse_mask(&u, "∅").unwrap(), 0);
        assert!(parse_mask(&u, "{d}").is_err());
        assert!(parse_mask(&u, "1,2").is_err());
    }

    #[test]
    fn parses_class_lists() {
        let u = Universe::new("X", 3).unwrap();
        let c = parse_class(&u, "[{2}, {1}, ∅, {2}]").unwrap();
        assert_eq!(c.to_string(), "[{},{1},{2}]");
        assert!(parse_class(&u, "[]").unwrap().is_empty());
        assert!(parse_class(&u, "[{1} {2}]").is_err());
        assert!(parse_class(&u, "[{1}").is_err());
    }
}
