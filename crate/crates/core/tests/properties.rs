//! Randomized property suites over permutations, families and registries.

use proptest::prelude::*;

use permfam::bijection::{compose, decompose, decompose_stripped};
use permfam::decimal::{decode, encode, validate};
use permfam::tree::{demultiparenthesize, multiparenthesize, parenthesize};
use permfam::{Family, Permutation};

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn family_strategy() -> impl Strategy<Value = Family> {
    (proptest::sample::subsequence((1..=20usize).collect::<Vec<_>>(), 2..=8))
        .prop_flat_map(|elements| {
            let size = elements.len();
            (Just(elements), 1..size)
        })
        .prop_map(|(elements, reds)| Family::new(elements, reds).unwrap())
}

proptest! {
    /// Exiting at an exit position and re-entering regularly restores the
    /// family; entering a fresh element makes it an exit position whose
    /// removal undoes the entry.
    #[test]
    fn entry_exit_lemma(f in family_strategy(), x in 1..=25usize) {
        for e in f.exit_positions().unwrap() {
            let smaller = f.remove_element(e).unwrap();
            if !smaller.is_singlet() {
                prop_assert_eq!(smaller.regular_entry(e).unwrap(), f.clone());
            }
        }
        if !f.contains(x) {
            let bigger = f.regular_entry(x).unwrap();
            prop_assert!(bigger.exit_positions().unwrap().contains(&x));
            prop_assert_eq!(bigger.remove_element(x).unwrap(), f);
        }
    }

    /// Insertion of a new maximum before a fitting friend is undone by
    /// removing that maximum.
    #[test]
    fn insert_before_round_trip(f in family_strategy(), n in 21..=30usize) {
        for m in f.elements().iter().copied() {
            if f.fits(m).unwrap() {
                let bigger = f.insert_before(m, n).unwrap();
                prop_assert_eq!(bigger.remove_element(n).unwrap(), f.clone());
            }
        }
    }

    /// Stripping singlets then re-inserting them restores the full registry.
    #[test]
    fn stripping_lemma(p in perm_strategy(16)) {
        let full = decompose(&p);
        let stripped = full.strip_singlets();
        prop_assert_eq!(&stripped, &decompose_stripped(&p));
        prop_assert_eq!(stripped.insert_singlets(p.len()).unwrap(), full);
    }

    /// Wall slides keep the same multiset of families.
    #[test]
    fn slide_conservation(p in perm_strategy(12)) {
        let r = decompose(&p);
        prop_assume!(!r.is_empty());
        let sorted = |reg: &permfam::Registry| {
            let mut fams = reg.families().to_vec();
            fams.sort_by_key(|f| f.min());
            fams
        };
        for i in 0..r.len() {
            let (left, li) = r.slide_left_wall(i);
            let (right, ri) = r.slide_right_wall(i);
            prop_assert!(li < left.len() && ri < right.len());
            prop_assert_eq!(sorted(&left), sorted(&r));
            prop_assert_eq!(sorted(&right), sorted(&r));
        }
    }

    /// The registry bijection round-trips beyond the exhaustive range.
    #[test]
    fn bijection_round_trip(p in perm_strategy(20)) {
        prop_assert_eq!(compose(&decompose(&p), p.len()).unwrap(), p);
    }

    /// The parenthesized form flattens back to the permutation.
    #[test]
    fn tree_form_flattening(p in perm_strategy(20)) {
        prop_assert_eq!(parenthesize(&p).flatten(), p);
    }

    /// The multiparenthesized form reassembles to the permutation.
    #[test]
    fn multiparen_round_trip(p in perm_strategy(16)) {
        prop_assert_eq!(demultiparenthesize(&multiparenthesize(&p)).unwrap(), p);
    }

    /// Decimal codes validate and decode back to the permutation.
    #[test]
    fn decimal_round_trip(p in perm_strategy(20)) {
        let code = encode(&p);
        prop_assert!(validate(&code).is_valid());
        prop_assert_eq!(decode(&code).unwrap(), p);
    }
}
