//! Deliberately naive brute-force references, kept independent of the main
//! algorithms so they can serve as oracles in exhaustive tests.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on exhaustive enumeration size.
pub const DEFAULT_BUDGET: usize = 9;

/// All permutations of {1..n} in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    all_permutations_budgeted(n, DEFAULT_BUDGET.max(n)).unwrap()
}

/// All permutations of {1..n}, rejecting n above the budget.
pub fn all_permutations_budgeted(n: usize, budget: usize) -> Result<Vec<Permutation>> {
    if n > budget || n > 12 {
        return Err(Error::BudgetExceeded(format!(
            "n = {} exceeds the enumeration budget {}",
            n,
            budget.min(12)
        )));
    }
    let mut out = Vec::new();
    let mut values: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation::new(values.clone()).unwrap());
        // Next permutation in lexicographic order.
        let Some(i) = (0..values.len().saturating_sub(1))
            .rev()
            .find(|&i| values[i] < values[i + 1])
        else {
            break;
        };
        let j = (i + 1..values.len())
            .rev()
            .find(|&j| values[j] > values[i])
            .unwrap();
        values.swap(i, j);
        values[i + 1..].reverse();
    }
    if n == 0 {
        out.clear();
        out.push(Permutation::identity(0));
    }
    Ok(out)
}

/// Classification key: (over, under, on) diagonal value sets.
pub type DiagonalKey = (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>);

/// Counts every permutation of {1..n} by its diagonal value sets.
pub fn brute_count_by_diagonal_sets(n: usize) -> BTreeMap<DiagonalKey, usize> {
    let mut out = BTreeMap::new();
    for p in all_permutations(n) {
        let c = p.classify_values();
        let key = (c.over_values, c.under_values, c.on_values);
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// A primitive permutation found by the definitional search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrutePrimitive {
    /// The permutation itself.
    pub perm: Permutation,
    /// Bud positions (i, i+1), 1-based, in left-to-right order.
    pub bud_positions: Vec<(usize, usize)>,
    /// The active family as values in position order.
    pub active_values: Vec<usize>,
}

/// True iff the value sequence has the family pattern: an increasing run of
/// the largest values followed by a decreasing run of the rest (or a singlet).
fn is_family_sequence(vals: &[usize]) -> bool {
    if vals.is_empty() {
        return false;
    }
    if vals.len() == 1 {
        return true;
    }
    let mut k = 1;
    while k < vals.len() && vals[k] > vals[k - 1] {
        k += 1;
    }
    if k == vals.len() {
        return false; // no descending tail
    }
    for w in vals[k..].windows(2) {
        if w[0] <= w[1] {
            return false;
        }
    }
    vals[k] < vals[0]
}

/// Checks the definitional cutoff conditions for a candidate bud set.
fn buds_certify(p: &Permutation, buds: &[(usize, usize)]) -> bool {
    let n = p.len();
    for c in 1..=n {
        // Positions whose value survives the cutoff, in order.
        let kept: Vec<usize> = (1..=n).filter(|&i| p.at(i) <= c).collect();
        // A bud survives when both its values do.
        let cut_buds: Vec<(usize, usize)> = buds
            .iter()
            .cloned()
            .filter(|&(i, j)| p.at(i) <= c && p.at(j) <= c)
            .collect();
        let bud_pos: BTreeSet<usize> = cut_buds.iter().flat_map(|&(i, j)| [i, j]).collect();
        // The newest element c either tops a bud or precedes an active
        // element: the position it was inserted at must face the active
        // family. Without this, e.g. 2 5 4 3 1 with bud (4 3) would pass
        // the family conditions despite 5 facing a departed pair.
        if c >= 2 {
            let c_pos = kept
                .iter()
                .position(|&i| p.at(i) == c)
                .expect("value c survives its own cutoff");
            let tops_bud = cut_buds.iter().any(|&(i, _)| p.at(i) == c);
            if !tops_bud {
                match kept.get(c_pos + 1) {
                    Some(&next) if !bud_pos.contains(&next) => {}
                    _ => return false,
                }
            }
        }
        let complement: Vec<usize> = kept
            .iter()
            .filter(|i| !bud_pos.contains(i))
            .map(|&i| p.at(i))
            .collect();
        // (a) the complement is a nonempty family.
        if !is_family_sequence(&complement) {
            return false;
        }
        // (b) a bud marks a failed fit: at the cutoff where its top value c
        // arrives, keeping that one bud (all earlier buds removed) must not
        // be a family. Checking every bud subset at every cutoff instead
        // would be too strong: later growth of the active family can make an
        // old bud fit retroactively, e.g. 6 5 (7 2) (4 3) 1 where keeping
        // (4 3) alone gives the family shape 6 5 4 3 1.
        if let Some(&(ti, tj)) = cut_buds.iter().find(|&&(i, _)| p.at(i) == c) {
            let with_bud: Vec<usize> = kept
                .iter()
                .filter(|i| !bud_pos.contains(i) || **i == ti || **i == tj)
                .map(|&i| p.at(i))
                .collect();
            if is_family_sequence(&with_bud) {
                return false;
            }
        }
    }
    true
}

/// Tests primitivity by searching all disjoint adjacent descending bud sets.
pub fn brute_is_primitive(p: &Permutation) -> Option<BrutePrimitive> {
    let n = p.len();
    if n < 2 {
        return None;
    }
    let candidates: Vec<(usize, usize)> = (1..n)
        .filter(|&i| p.at(i) > p.at(i + 1))
        .map(|i| (i, i + 1))
        .collect();
    for mask in 0u32..(1 << candidates.len()) {
        let buds: Vec<(usize, usize)> = candidates
            .iter()
            .enumerate()
            .filter(|&(b, _)| mask >> b & 1 == 1)
            .map(|(_, &pair)| pair)
            .collect();
        // Disjointness of adjacent pairs.
        if buds.windows(2).any(|w| w[0].1 >= w[1].0) {
            continue;
        }
        if buds_certify(p, &buds) {
            let bud_pos: BTreeSet<usize> = buds.iter().flat_map(|&(i, j)| [i, j]).collect();
            let active_values = (1..=n)
                .filter(|i| !bud_pos.contains(i))
                .map(|i| p.at(i))
                .collect();
            return Some(BrutePrimitive {
                perm: p.clone(),
                bud_positions: buds,
                active_values,
            });
        }
    }
    None
}

/// All primitive permutations of {1..n} by the definitional search.
pub fn brute_primitive_scan(n: usize) -> Vec<BrutePrimitive> {
    all_permutations(n)
        .iter()
        .filter_map(brute_is_primitive)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_stream() {
        let perms = all_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], Permutation::parse("1 2 3").unwrap());
        assert_eq!(perms[5], Permutation::parse("3 2 1").unwrap());
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(8).len(), 40320);
        assert!(all_permutations_budgeted(10, 9).is_err());
    }

    #[test]
    fn diagonal_counts() {
        let counts = brute_count_by_diagonal_sets(5);
        let key = (
            [2, 4, 5].into_iter().collect(),
            [1, 3].into_iter().collect(),
            BTreeSet::new(),
        );
        assert_eq!(counts[&key], 6);
        let counts2 = brute_count_by_diagonal_sets(2);
        let on_both = (
            BTreeSet::new(),
            BTreeSet::new(),
            [1, 2].into_iter().collect(),
        );
        assert_eq!(counts2[&on_both], 1);
        assert_eq!(brute_count_by_diagonal_sets(3).values().sum::<usize>(), 6);
    }

    #[test]
    fn family_sequences() {
        assert!(is_family_sequence(&[4, 5, 6, 3, 2, 1]));
        assert!(is_family_sequence(&[2, 1]));
        assert!(is_family_sequence(&[7]));
        assert!(!is_family_sequence(&[1, 2]));
        assert!(!is_family_sequence(&[2, 3, 1, 4]));
    }

    #[test]
    fn primitive_scan_small() {
        let p2 = brute_primitive_scan(2);
        assert_eq!(p2.len(), 1);
        assert_eq!(p2[0].perm, Permutation::parse("2 1").unwrap());
        assert!(p2[0].bud_positions.is_empty());

        let p3 = brute_primitive_scan(3);
        let lines: Vec<String> = p3.iter().map(|b| b.perm.to_string()).collect();
        assert_eq!(lines, vec!["2 3 1", "3 2 1"]);

        // Length 4 with a two-element active family and one bud.
        let p4 = brute_primitive_scan(4);
        let one_bud: Vec<&BrutePrimitive> = p4
            .iter()
            .filter(|b| b.bud_positions.len() == 1 && b.active_values.len() == 2)
            .collect();
        assert_eq!(one_bud.len(), 3);
    }

    #[test]
    fn construction_example_is_primitive() {
        let p = Permutation::parse("4 2 3 5 7 6 1").unwrap();
        let found = brute_is_primitive(&p).unwrap();
        assert_eq!(found.bud_positions, vec![(1, 2), (5, 6)]);
        assert_eq!(found.active_values, vec![3, 5, 1]);
    }
}
