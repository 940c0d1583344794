//! Low-level helpers on `u32` subset masks.
//!
//! Every subset of a universe with at most 24 points fits in a `u32`; bit `i`
//! is point `i`. The typed wrappers in [`crate::ground`] carry the universe,
//! the algorithms below work on bare masks.

/// Largest supported universe.
pub const MAX_POINTS: usize = 24;

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full(n: usize) -> u32 {
    debug_assert!(n <= 32);
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

#[inline]
pub fn disjoint(a: u32, b: u32) -> bool {
    a & b == 0
}

/// Points of a mask in increasing order.
pub fn points(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(p)
        }
    })
}

/// All submasks of `mask`, including `0` and `mask`, in increasing numeric order.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            // increment within the positions of `mask`
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

/// Membership table over all masks of a universe of `n` points.
#[derive(Clone, Debug)]
pub struct MaskSet {
    words: Vec<u64>,
    len: usize,
}

impl MaskSet {
    pub fn new(n: usize) -> Self {
        let slots = 1usize << n;
        MaskSet { words: vec![0; slots.div_ceil(64)], len: 0 }
    }

    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = u32>) -> Self {
        let mut set = MaskSet::new(n);
        for m in masks {
            set.insert(m);
        }
        set
    }

    #[inline]
    pub fn contains(&self, m: u32) -> bool {
        let i = m as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns `true` if the mask was newly inserted.
    #[inline]
    pub fn insert(&mut self, m: u32) -> bool {
        let i = m as usize;
        let word = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        if *word & bit == 0 {
            *word |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Members in increasing numeric order.
    pub fn to_sorted_vec(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len);
        for (w, &word) in self.words.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                out.push((w * 64 + b) as u32);
                rest &= rest - 1;
            }
        }
        out
    }
}

/// Sorts and deduplicates a list of masks in place.
pub fn canonical(masks: &mut Vec<u32>) {
    masks.sort_unstable();
    masks.dedup();
}

/// Whether a sorted mask slice contains `m`.
#[inline]
pub fn sorted_contains(sorted: &[u32], m: u32) -> bool {
    sorted.binary_search(&m).is_ok()
}

/// Binomial coefficient with saturation at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_enumerates_all_in_order() {
        let subs: Vec<u32> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(submasks(full(5)).count(), 32);
    }

    #[test]
    fn points_iterates_set_bits() {
        assert_eq!(points(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn mask_set_tracks_membership() {
        let mut s = MaskSet::new(4);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.insert(15));
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.to_sorted_vec(), vec![3, 15]);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
