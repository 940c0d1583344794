//! Exact-cover search: ways of writing a mask as a disjoint union of
//! nonempty candidate masks.
//!
//! The search always branches on the lowest uncovered point, so every cover is
//! produced once. Candidates are tried in increasing numeric order, which makes
//! the first cover found the canonically least one.

use std::collections::HashSet;

/// Nonempty candidates contained in `target`, sorted ascending.
fn usable(target: u32, candidates: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = candidates.iter().copied().filter(|&c| c != 0 && c & !target == 0).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// The canonically least exact cover of `target`, blocks in pick order.
/// `target == 0` yields the empty cover.
pub fn first_cover(target: u32, candidates: &[u32]) -> Option<Vec<u32>> {
    let cands = usable(target, candidates);
    let mut dead = HashSet::new();
    let mut picked = Vec::new();
    if search_first(target, &cands, &mut dead, &mut picked) {
        Some(picked)
    } else {
        None
    }
}

fn search_first(rest: u32, cands: &[u32], dead: &mut HashSet<u32>, picked: &mut Vec<u32>) -> bool {
    if rest == 0 {
        return true;
    }
    if dead.contains(&rest) {
        return false;
    }
    let low = rest & rest.wrapping_neg();
    for &c in cands {
        if c & low != 0 && c & !rest == 0 {
            picked.push(c);
            if search_first(rest & !c, cands, dead, picked) {
                return true;
            }
            picked.pop();
        }
    }
    dead.insert(rest);
    false
}

/// Whether `target` is a disjoint union of candidates.
pub fn is_coverable(target: u32, candidates: &[u32]) -> bool {
    first_cover(target, candidates).is_some()
}

/// Every exact cover of `target`, each sorted ascending, the list sorted.
pub fn all_covers(target: u32, candidates: &[u32]) -> Vec<Vec<u32>> {
    let cands = usable(target, candidates);
    let mut out = Vec::new();
    let mut picked = Vec::new();
    search_all(target, &cands, &mut picked, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn search_all(rest: u32, cands: &[u32], picked: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(picked.clone());
        return;
    }
    let low = rest & rest.wrapping_neg();
    for &c in cands {
        if c & low != 0 && c & !rest == 0 {
            picked.push(c);
            search_all(rest & !c, cands, picked, out);
            picked.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_least_cover() {
        // {1,2,3} from {1},{2},{3},{1,2,3}
        let cands = [0b001, 0b010, 0b100, 0b111];
        assert_eq!(first_cover(0b111, &cands), Some(vec![0b001, 0b010, 0b100]));
        assert_eq!(all_covers(0b111, &cands), vec![vec![0b001, 0b010, 0b100], vec![0b111]]);
    }

    #[test]
    fn reports_impossible_covers() {
        assert!(!is_coverable(0b110, &[0b001, 0b111]));
        assert!(is_coverable(0, &[]));
        assert!(all_covers(0b11, &[0b01]).is_empty());
    }
}
