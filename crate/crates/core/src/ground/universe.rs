use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::{self, MAX_POINTS};
use crate::error::{Error, Result};

/// A named finite ground set of `size` points, `1 <= size <= 24`.
///
/// Points are indexed from 0 internally; labels only affect parsing and
/// printing. Without labels a point prints as its 1-based index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Universe {
    name: String,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Universe {
    pub fn new(name: impl Into<String>, size: usize) -> Result<Arc<Universe>> {
        let name = name.into();
        check_size(size)?;
        Ok(Arc::new(Universe { name, size, labels: None }))
    }

    pub fn with_labels(name: impl Into<String>, labels: Vec<String>) -> Result<Arc<Universe>> {
        let name = name.into();
        check_size(labels.len())?;
        let mut seen = HashSet::new();
        for l in &labels {
            if !valid_label(l) {
                return Err(Error::InvalidUniverse(format!("bad point label `{l}`")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidUniverse(format!("duplicate point label `{l}`")));
            }
        }
        Ok(Arc::new(Universe { name, size: labels.len(), labels: Some(labels) }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn full_mask(&self) -> u32 {
        bits::full(self.size)
    }

    /// Printable name of point `p`.
    pub fn label(&self, p: usize) -> String {
        match &self.labels {
            Some(ls) => ls[p].clone(),
            None => (p + 1).to_string(),
        }
    }

    /// Resolves a point token: an exact label first, then a 1-based index.
    pub fn point_index(&self, token: &str) -> Option<usize> {
        if let Some(ls) = &self.labels {
            if let Some(i) = ls.iter().position(|l| l == token) {
                return Some(i);
            }
        }
        match token.parse::<usize>() {
            Ok(i) if i >= 1 && i <= self.size => Some(i - 1),
            _ => None,
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (|X| = {})", self.name, self.size)
    }
}

/// Nonempty, no whitespace or braces, and commas only inside balanced
/// parentheses (so product labels like `(1,2)` are allowed).
fn valid_label(l: &str) -> bool {
    let mut depth = 0i32;
    for c in l.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            ',' if depth == 0 => return false,
            c if c.is_whitespace() || "{}[]".contains(c) => return false,
            _ => {}
        }
    }
    !l.is_empty() && depth == 0
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::InvalidUniverse("a universe needs at least one point".into()));
    }
    if size > MAX_POINTS {
        return Err(Error::cap("universe size", size, MAX_POINTS));
    }
    Ok(())
}

/// Fails unless both universes are the same one.
pub fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::UniverseMismatch { left: a.name.clone(), right: b.name.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_bounds() {
        assert!(Universe::new("X", 0).is_err());
        assert!(Universe::new("X", 24).is_ok());
        let err = Universe::new("X", 30).unwrap_err();
        assert!(err.is_resource());
        assert!(err.to_string().contains("size cap"));
    }

    #[test]
    fn labels_must_be_distinct() {
        assert!(Universe::with_labels("X", vec!["a".into(), "a".into()]).is_err());
        let u = Universe::with_labels("X", vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(u.point_index("b"), Some(1));
        assert_eq!(u.point_index("2"), Some(1));
        assert_eq!(u.point_index("3"), None);
        assert!(Universe::with_labels("X", vec!["a,b".into()]).is_err());
        assert!(Universe::with_labels("X", vec!["(a,b)".into()]).is_ok());
        assert!(Universe::with_labels("X", vec!["(a".into()]).is_err());
    }
}
