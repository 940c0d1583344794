//! Ground representations: universes, subsets, classes and eventually
//! periodic sequences, with their text syntax.

mod class;
mod parse;
mod seq;
mod subset;
mod universe;

pub use class::SetClass;
pub use parse::{parse_class, parse_mask, parse_mask_list, parse_subset};
pub use seq::SetSeq;
pub use subset::{format_mask, Subset, SubsetOp};
pub use universe::{same_universe, Universe};

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn u5() -> Arc<Universe> {
        Universe::new("X", 5).unwrap()
    }

    proptest! {
        #[test]
        fn boolean_laws(a in 0u32..32, b in 0u32..32, c in 0u32..32) {
            let u = u5();
            let (a, b, c) = (
                Subset::new(&u, a).unwrap(),
                Subset::new(&u, b).unwrap(),
                Subset::new(&u, c).unwrap(),
            );
            let un = |x: &Subset, y: &Subset| x.union(y).unwrap();
            let it = |x: &Subset, y: &Subset| x.intersection(y).unwrap();
            prop_assert_eq!(un(&un(&a, &b), &c), un(&a, &un(&b, &c)));
            prop_assert_eq!(it(&it(&a, &b), &c), it(&a, &it(&b, &c)));
            prop_assert_eq!(it(&a, &un(&b, &c)), un(&it(&a, &b), &it(&a, &c)));
            prop_assert_eq!(un(&a, &it(&b, &c)), it(&un(&a, &b), &un(&a, &c)));
            prop_assert_eq!(un(&a, &b).complement(), it(&a.complement(), &b.complement()));
            prop_assert_eq!(it(&a, &b).complement(), un(&a.complement(), &b.complement()));
            prop_assert_eq!(
                a.symmetric_difference(&b).unwrap(),
                un(&a, &b).difference(&it(&a, &b)).unwrap()
            );
        }

        #[test]
        fn trace_composes(cls in prop::collection::vec(0u32..32, 0..10), a in 0u32..32, b in 0u32..32) {
            let u = u5();
            let c = SetClass::from_masks(&u, cls).unwrap();
            let sa = Subset::new(&u, a).unwrap();
            let sb = Subset::new(&u, b).unwrap();
            let twice = c.trace(&sa).unwrap().trace(&sb).unwrap();
            let once = c.trace(&sa.intersection(&sb).unwrap()).unwrap();
            prop_assert_eq!(twice, once);
        }

        #[test]
        fn canonicalize_is_idempotent(cls in prop::collection::vec(0u32..32, 0..12)) {
            let u = u5();
            let members: Vec<Subset> = cls.iter().map(|&m| Subset::new(&u, m).unwrap()).collect();
            let once = SetClass::canonicalize(&u, &members).unwrap();
            let again: Vec<Subset> = once.members().collect();
            prop_assert_eq!(SetClass::canonicalize(&u, &again).unwrap(), once);
        }
    }
}
