//! Permutations in one-line notation with ascent/descent/diagonal statistics,
//! block decomposition by successive minima, the cycle transform and its
//! inverse, Eulerian lift and daisy chaining, patterns and shuffles.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {1..n} in one-line notation.
///
/// Position `i` (1-based) holds `π(i)`. Values are immutable after
/// construction; every transform returns a fresh value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation, checking that `values` rearranges {1..n}.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {} at position {} is outside 1..{}",
                    v,
                    i + 1,
                    n
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "value {} repeated at position {}",
                    v,
                    i + 1
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// The identity permutation of {1..n}.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Length n.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True for the empty permutation.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One-line notation as a slice; entry `i` is `π(i+1)`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `π(pos)` for a 1-based position.
    pub fn at(&self, pos: usize) -> usize {
        self.values[pos - 1]
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    /// Parses whitespace- or comma-separated one-line notation, e.g. "5 2 4 3 6 1".
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let v: usize = token
                .parse()
                .map_err(|_| Error::Parse(format!("'{}' is not a positive integer", token)))?;
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Self::new(values)
    }

    /// Classifies every value as ascent/descent/singlet and over/under/on diagonal.
    pub fn classify_values(&self) -> ValueClassification {
        let n = self.len();
        let singlets: BTreeSet<usize> = {
            let bd = self.blocks();
            bd.blocks
                .iter()
                .filter(|&&(lo, hi)| lo == hi)
                .map(|&(lo, _)| self.at(lo))
                .collect()
        };
        let mut ascent = BTreeSet::new();
        let mut descent = BTreeSet::new();
        let mut over = BTreeSet::new();
        let mut under = BTreeSet::new();
        let mut on = BTreeSet::new();
        let mut prev = 0; // the π(0)=0 sentinel, applied here only
        for i in 1..=n {
            let v = self.at(i);
            if v > prev {
                if !singlets.contains(&v) {
                    ascent.insert(v);
                }
            } else {
                descent.insert(v);
            }
            prev = v;
            match v.cmp(&i) {
                std::cmp::Ordering::Greater => over.insert(v),
                std::cmp::Ordering::Less => under.insert(v),
                std::cmp::Ordering::Equal => on.insert(v),
            };
        }
        ValueClassification {
            ascent_values: ascent,
            descent_values: descent,
            singlet_values: singlets,
            over_values: over,
            under_values: under,
            on_values: on,
        }
    }

    /// Block decomposition by successive minima.
    pub fn blocks(&self) -> BlockDecomposition {
        let n = self.len();
        let mut anchor_positions = Vec::new();
        let mut anchor_values = Vec::new();
        let mut blocks = Vec::new();
        let mut start = 1;
        while start <= n {
            // The block ends at the position of the minimum of the suffix.
            let mut min_pos = start;
            for i in start..=n {
                if self.at(i) < self.at(min_pos) {
                    min_pos = i;
                }
            }
            anchor_positions.push(min_pos);
            anchor_values.push(self.at(min_pos));
            blocks.push((start, min_pos));
            start = min_pos + 1;
        }
        BlockDecomposition {
            anchor_positions,
            anchor_values,
            blocks,
        }
    }

    /// The cycles of the permutation, each rotated so its minimum is last,
    /// sorted by ascending minima.
    pub fn cycles_min_last(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            // `start` is the minimum of its cycle since we scan ascending.
            let mut cycle = Vec::new();
            let mut x = self.at(start);
            seen[start] = true;
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.at(x);
            }
            cycle.push(start); // minimum last
            cycles.push(cycle);
        }
        cycles
    }

    /// Rewrites min-last, min-sorted cycles as one-line notation; cycles become blocks.
    pub fn cycle_transform(&self) -> Self {
        let values = self.cycles_min_last().concat();
        Permutation { values }
    }

    /// Interprets each block between successive minima as a cycle.
    pub fn inverse_cycle_transform(&self) -> Self {
        let n = self.len();
        let mut values = vec![0; n];
        for &(lo, hi) in &self.blocks().blocks {
            // Block (b_lo,...,b_hi) is the cycle b_hi → b_lo → b_lo+1 → ... → b_hi.
            values[self.at(hi) - 1] = self.at(lo);
            for i in lo..hi {
                values[self.at(i) - 1] = self.at(i + 1);
            }
        }
        Permutation { values }
    }

    /// The Eulerian lift: q(i)=π(i)+1, q(n+1)=1; a single-block permutation of n+1.
    pub fn eulerian_lift(&self) -> Self {
        let mut values: Vec<usize> = self.values.iter().map(|&v| v + 1).collect();
        values.push(1);
        Permutation { values }
    }

    /// Daisy chaining: re-links the cycle heads into a single cycle of {1..n+1}.
    ///
    /// With cycle minima c_1 < ... < c_k, define σ′ on {0..n} by
    /// σ′(c_i) = σ(c_{i+1}), σ′(c_k) = 0, σ′(0) = σ(c_1), σ′ = σ elsewhere,
    /// then lift {0..n} order-preservingly to {1..n+1}.
    pub fn daisy_chain(&self) -> Self {
        let n = self.len();
        let mut heads = Vec::new();
        let mut seen = vec![false; n + 1];
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            heads.push(start);
            let mut x = start;
            loop {
                seen[x] = true;
                x = self.at(x);
                if x == start {
                    break;
                }
            }
        }
        // Build σ′ on {0..n}, indexing by value.
        let mut next = vec![0; n + 1]; // next[v] = σ′(v)
        for v in 1..=n {
            next[v] = self.at(v);
        }
        let k = heads.len();
        for i in 0..k {
            if i + 1 < k {
                next[heads[i]] = self.at(heads[i + 1]);
            } else {
                next[heads[i]] = 0;
            }
        }
        next[0] = self.at(heads[0]);
        // Lift {0..n} to {1..n+1}.
        let mut values = vec![0; n + 1];
        for v in 0..=n {
            values[v] = next[v] + 1;
        }
        Permutation { values }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Ascent/descent/singlet and over/under/on classification of the values.
///
/// Singlet blocks are kept as a third category next to ascents and descents;
/// by the π(0)=0 convention every singlet-block value is also an ascent, and
/// [`ValueClassification::euler_ascent_values`] merges them back when the
/// Euler-style convention is wanted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueClassification {
    /// Nonsinglet ascent values: π(i−1) < π(i) with π(0)=0, excluding singlet blocks.
    pub ascent_values: BTreeSet<usize>,
    /// Descent values: π(i−1) > π(i).
    pub descent_values: BTreeSet<usize>,
    /// Values forming singlet blocks.
    pub singlet_values: BTreeSet<usize>,
    /// Values with π(i) > i.
    pub over_values: BTreeSet<usize>,
    /// Values with π(i) < i.
    pub under_values: BTreeSet<usize>,
    /// Fixed diagonal values π(i) = i.
    pub on_values: BTreeSet<usize>,
}

impl ValueClassification {
    /// Ascent values with singlets merged in (the Euler-style convention).
    pub fn euler_ascent_values(&self) -> BTreeSet<usize> {
        self.ascent_values
            .union(&self.singlet_values)
            .cloned()
            .collect()
    }
}

/// Blocks of a permutation: maximal segments ending at successive minima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Positions i_1 < i_2 < ... of the successive minima.
    pub anchor_positions: Vec<usize>,
    /// Values m_1 < m_2 < ... at those positions.
    pub anchor_values: Vec<usize>,
    /// 1-based inclusive position intervals covering {1..n}.
    pub blocks: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    /// True when there are no blocks (empty permutation).
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The values of `p` inside block `i` (0-based block index).
    pub fn block_values(&self, p: &Permutation, i: usize) -> Vec<usize> {
        let (lo, hi) = self.blocks[i];
        (lo..=hi).map(|pos| p.at(pos)).collect()
    }
}

/// The pattern of an injective map given as (domain, value) pairs:
/// both sides are relabeled order-preservingly to {1..m}.
pub fn pattern_of_map(pairs: &[(i64, i64)]) -> Result<Permutation> {
    let mut by_domain: Vec<(i64, i64)> = pairs.to_vec();
    by_domain.sort();
    for w in by_domain.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Domain(format!("duplicate domain point {}", w[0].0)));
        }
    }
    pattern_of_sequence(&by_domain.iter().map(|&(_, v)| v).collect::<Vec<_>>())
}

/// The pattern of a sequence of distinct integers: value ranks in {1..m}.
pub fn pattern_of_sequence(values: &[i64]) -> Result<Permutation> {
    let mut sorted: Vec<i64> = values.to_vec();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::Domain(format!("duplicate value {}", w[0])));
        }
    }
    let ranked = values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    Permutation::new(ranked)
}

/// True iff the restriction of `f` to each index set has the pattern of the
/// associated map: `f` is a shuffle of the parts along the index sets.
pub fn is_shuffle(f: &[(i64, i64)], parts: &[(Vec<i64>, Vec<(i64, i64)>)]) -> Result<bool> {
    let covered: BTreeSet<i64> = parts.iter().flat_map(|(d, _)| d.iter().cloned()).collect();
    let domain: BTreeSet<i64> = f.iter().map(|&(d, _)| d).collect();
    if covered != domain {
        return Err(Error::Domain(
            "part index sets do not cover the domain of f".into(),
        ));
    }
    for (index_set, part_map) in parts {
        let restriction: Vec<(i64, i64)> = f
            .iter()
            .filter(|(d, _)| index_set.contains(d))
            .cloned()
            .collect();
        if restriction.len() != part_map.len() {
            return Ok(false);
        }
        if pattern_of_map(&restriction)? != pattern_of_map(part_map)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    fn set(vals: &[usize]) -> BTreeSet<usize> {
        vals.iter().cloned().collect()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![2, 2]).is_err());
        assert!(Permutation::parse("1 2 x").is_err());
    }

    #[test]
    fn classify_561243() {
        let c = p("5 6 1 2 4 3").classify_values();
        assert_eq!(c.ascent_values, set(&[4, 5, 6]));
        assert_eq!(c.singlet_values, set(&[2]));
        assert_eq!(c.descent_values, set(&[1, 3]));
    }

    #[test]
    fn classify_identity() {
        let c = Permutation::identity(4).classify_values();
        assert_eq!(c.euler_ascent_values(), set(&[1, 2, 3, 4]));
        assert!(c.descent_values.is_empty());
        assert_eq!(c.on_values, set(&[1, 2, 3, 4]));
    }

    #[test]
    fn classify_524361_diagonal() {
        let c = p("5 2 4 3 6 1").classify_values();
        assert_eq!(c.over_values, set(&[4, 5, 6]));
        assert_eq!(c.on_values, set(&[2]));
        assert_eq!(c.under_values, set(&[1, 3]));
    }

    #[test]
    fn blocks_561243() {
        let perm = p("5 6 1 2 4 3");
        let bd = perm.blocks();
        assert_eq!(bd.anchor_values, vec![1, 2, 3]);
        assert_eq!(bd.block_values(&perm, 0), vec![5, 6, 1]);
        assert_eq!(bd.block_values(&perm, 1), vec![2]);
        assert_eq!(bd.block_values(&perm, 2), vec![4, 3]);
    }

    #[test]
    fn blocks_edge_cases() {
        assert_eq!(Permutation::identity(3).blocks().len(), 3);
        assert_eq!(p("4 2 3 1").blocks().len(), 1);
    }

    #[test]
    fn cycle_transform_examples() {
        assert_eq!(p("5 2 4 3 6 1").cycle_transform(), p("5 6 1 2 4 3"));
        assert_eq!(p("5 6 1 2 4 3").inverse_cycle_transform(), p("5 2 4 3 6 1"));
        assert_eq!(p("3 2 1").cycle_transform(), p("3 1 2"));
        let id = Permutation::identity(5);
        assert_eq!(id.cycle_transform(), id);
        assert_eq!(id.inverse_cycle_transform(), id);
        assert_eq!(p("4 2 3 1").inverse_cycle_transform(), p("4 3 1 2"));
    }

    #[test]
    fn eulerian_lift_examples() {
        assert_eq!(p("3 1 2").eulerian_lift(), p("4 2 3 1"));
        assert_eq!(p("1").eulerian_lift(), p("2 1"));
        assert_eq!(p("2 1").eulerian_lift(), p("3 2 1"));
        assert_eq!(p("3 1 2").eulerian_lift().blocks().len(), 1);
    }

    #[test]
    fn daisy_chain_examples() {
        assert_eq!(p("3 2 1").daisy_chain(), p("4 3 1 2"));
        assert_eq!(p("1").daisy_chain(), p("2 1"));
        let d = p("1 2").daisy_chain();
        assert_eq!(d.cycles_min_last().len(), 1);
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(
            pattern_of_map(&[(2, 7), (5, 3), (9, 8)]).unwrap(),
            p("2 1 3")
        );
        assert_eq!(pattern_of_sequence(&[10, 12, 11, 3]).unwrap(), p("2 4 3 1"));
        assert_eq!(pattern_of_sequence(&[1, 5, 9]).unwrap(), p("1 2 3"));
    }

    #[test]
    fn shuffle_examples() {
        // f = 3142 split along odd/even positions.
        let f = vec![(1, 3), (2, 1), (3, 4), (4, 2)];
        let parts = vec![
            (vec![1, 3], vec![(1, 2), (2, 3)]), // pattern 12
            (vec![2, 4], vec![(1, 1), (2, 2)]), // pattern 12
        ];
        assert!(is_shuffle(&f, &parts).unwrap());
        let bad = vec![(vec![1, 2], vec![(1, 2), (2, 1)])];
        let f12 = vec![(1, 1), (2, 2)];
        assert!(!is_shuffle(&f12, &bad).unwrap());
    }
}
