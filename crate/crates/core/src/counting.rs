//! The enumerative layer: fundamental and shifted multinomials, Eulerian and
//! derangement identities, the neighbor recurrences with their case bijection,
//! the binomial decomposition, composition enumeration with the three
//! construction modes, and family-configuration counts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::bijection::compose;
use crate::error::{Error, Result};
use crate::family::{Family, Registry};
use crate::perm::Permutation;

/// n! as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// (n + s)! treating negative arguments as 0.
fn shifted_factorial(n: usize, s: i64) -> BigUint {
    let v = n as i64 + s;
    if v < 0 {
        BigUint::zero()
    } else {
        factorial(v as usize)
    }
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let num = factorial(n);
    let den = factorial(k) * factorial(n - k);
    num / den
}

/// An unordered partition of (k, l) into colored parts (k_i, l_i) ≥ (1, 1),
/// held in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPartPartition {
    parts: Vec<(usize, usize)>,
}

impl ColoredPartPartition {
    /// The parts in canonical order.
    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }
}

/// All unordered partitions of (k, l) into exactly r colored parts.
pub fn part_partitions(k: usize, l: usize, r: usize) -> Vec<ColoredPartPartition> {
    let mut out = Vec::new();
    if k < 1 || l < 1 || r < 1 {
        return out;
    }
    // Parts chosen in nonincreasing canonical order to avoid duplicates.
    fn rec(
        k: usize,
        l: usize,
        r: usize,
        max_part: (usize, usize),
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<ColoredPartPartition>,
    ) {
        if r == 0 {
            if k == 0 && l == 0 {
                out.push(ColoredPartPartition { parts: acc.clone() });
            }
            return;
        }
        for ki in (1..=k.saturating_sub(r - 1)).rev() {
            for li in (1..=l.saturating_sub(r - 1)).rev() {
                if (ki, li) > max_part {
                    continue;
                }
                acc.push((ki, li));
                rec(k - ki, l - li, r - 1, (ki, li), acc, out);
                acc.pop();
            }
        }
    }
    rec(k, l, r, (k, l), &mut Vec::new(), &mut out);
    out
}

/// The fundamental r-part multinomial N^[r]_{k,l}, computed directly from its
/// defining sum over unordered part-partitions. 0 when infeasible.
pub fn fundamental_multinomial_uncached(k: usize, l: usize, r: usize) -> BigUint {
    let mut total = BigUint::zero();
    for partition in part_partitions(k, l, r) {
        let mut den = BigUint::one();
        for &(ki, li) in partition.parts() {
            den *= factorial(ki + li);
        }
        // Multiplicities of identical parts.
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &p in partition.parts() {
            *mult.entry(p).or_insert(0) += 1;
        }
        for m in mult.values() {
            den *= factorial(*m);
        }
        let num = factorial(k + l);
        debug_assert!((&num % &den).is_zero());
        total += num / den;
    }
    total
}

/// Memoized N^[r]_{k,l}.
pub fn fundamental_multinomial(k: usize, l: usize, r: usize) -> BigUint {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, usize), BigUint>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(k, l, r)) {
        return v.clone();
    }
    let v = fundamental_multinomial_uncached(k, l, r);
    cache.lock().unwrap().insert((k, l, r), v.clone());
    v
}

/// The shifted multinomial N^(s)_{k,l} = Σ_{r ≥ max(−s,1)} (r+s)!·N^[r]_{k,l}.
pub fn shifted_multinomial(k: usize, l: usize, s: i64) -> BigUint {
    if k < 1 || l < 1 {
        return BigUint::zero();
    }
    let r_min = (-s).max(1) as usize;
    let r_max = k.min(l);
    let mut total = BigUint::zero();
    for r in r_min..=r_max.max(r_min) {
        if r > r_max {
            break;
        }
        total += shifted_factorial(r, s) * fundamental_multinomial(k, l, r);
    }
    total
}

/// The Eulerian number E_{k,l} = N^(−1)_{k,l}.
pub fn eulerian(k: usize, l: usize) -> BigUint {
    shifted_multinomial(k, l, -1)
}

/// The derangement count D_{k,l} = N^(0)_{k,l}.
pub fn derangement_count(k: usize, l: usize) -> BigUint {
    shifted_multinomial(k, l, 0)
}

fn fundamental_signed(k: i64, l: i64, r: i64) -> BigInt {
    if k == 0 && l == 0 {
        // The empty partition: one partition of ∅ into zero families.
        return if r == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if k < 1 || l < 1 || r < 1 {
        BigInt::zero()
    } else {
        BigInt::from(fundamental_multinomial(k as usize, l as usize, r as usize))
    }
}

fn shifted_signed(k: i64, l: i64, s: i64) -> BigInt {
    if k == 0 && l == 0 {
        // The empty partition contributes (0+s)!, zero for negative shifts.
        return if s >= 0 {
            BigInt::from(factorial(s as usize))
        } else {
            BigInt::zero()
        };
    }
    if k < 1 || l < 1 {
        BigInt::zero()
    } else {
        BigInt::from(shifted_multinomial(k as usize, l as usize, s))
    }
}

/// Checks N^[r]_{k,l} = k·N^[r]_{k,l−1} + l·N^[r]_{k−1,l}
/// + (k+l−1)(N^[r−1]_{k−1,l−1} − r·N^[r]_{k−1,l−1}).
pub fn check_fundamental_recurrence(k: usize, l: usize, r: usize) -> bool {
    let (k, l, r) = (k as i64, l as i64, r as i64);
    let lhs = fundamental_signed(k, l, r);
    let rhs = BigInt::from(k) * fundamental_signed(k, l - 1, r)
        + BigInt::from(l) * fundamental_signed(k - 1, l, r)
        + BigInt::from(k + l - 1)
            * (fundamental_signed(k - 1, l - 1, r - 1)
                - BigInt::from(r) * fundamental_signed(k - 1, l - 1, r));
    lhs == rhs
}

/// Checks N^(s)_{k,l} = k·N^(s)_{k,l−1} + l·N^(s)_{k−1,l}
/// + (k+l−1)(N^[−s−1]_{k−1,l−1} + (s+1)·N^(s)_{k−1,l−1}).
pub fn check_shifted_recurrence(k: usize, l: usize, s: i64) -> bool {
    let (k, l) = (k as i64, l as i64);
    let lhs = shifted_signed(k, l, s);
    let rhs = BigInt::from(k) * shifted_signed(k, l - 1, s)
        + BigInt::from(l) * shifted_signed(k - 1, l, s)
        + BigInt::from(k + l - 1)
            * (fundamental_signed(k - 1, l - 1, -s - 1)
                + BigInt::from(s + 1) * shifted_signed(k - 1, l - 1, s));
    lhs == rhs
}

/// Ordered compositions of (k, l) into exactly r colored parts ≥ (1, 1).
fn colored_compositions(k: usize, l: usize, r: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    fn rec(
        k: usize,
        l: usize,
        r: usize,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if r == 0 {
            if k == 0 && l == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for ki in 1..=k.saturating_sub(r - 1) {
            for li in 1..=l.saturating_sub(r - 1) {
                acc.push((ki, li));
                rec(k - ki, l - li, r - 1, acc, out);
                acc.pop();
            }
        }
    }
    rec(k, l, r, &mut Vec::new(), &mut out);
    out
}

/// The binomial decomposition of N^(s)_{k,l} for shifts s ≤ 0: a sum over
/// ordered compositions with r ≥ max(−s, 1) parts of |s| leading shifted
/// binomials times the closing multinomial.
pub fn binomial_form(k: usize, l: usize, s: i64) -> Result<BigUint> {
    if s > 0 {
        return Err(Error::Domain(
            "binomial decomposition requires shift s <= 0".into(),
        ));
    }
    let q = (-s) as usize; // number of −1-shifted leading parts
    let r_min = q.max(1);
    let mut total = BigUint::zero();
    for r in r_min..=k.min(l) {
        for comp in colored_compositions(k, l, r) {
            let sizes: Vec<usize> = comp.iter().map(|&(a, b)| a + b).collect();
            let suffix = |j: usize| sizes[j..].iter().sum::<usize>();
            let mut term = BigUint::one();
            if q == 0 {
                // Plain multinomial over the full part sizes.
                term *= factorial(suffix(0));
                for &n_i in &sizes {
                    term /= factorial(n_i);
                }
            } else {
                for j in 0..q - 1 {
                    term *= binomial(suffix(j) - 1, sizes[j] - 1);
                }
                // Closing multinomial with the (−s)-th part shifted by −1.
                let mut tail = factorial(suffix(q - 1) - 1);
                tail /= factorial(sizes[q - 1] - 1);
                for &n_i in &sizes[q..] {
                    tail /= factorial(n_i);
                }
                term *= tail;
            }
            total += term;
        }
    }
    Ok(total)
}

/// An ordered composition of (A, B) into pairs (A_i, B_i) with
/// min A_i > max B_i for every i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompositionPair {
    /// The ordered parts.
    pub pairs: Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
}

/// All ordered compositions of A and B into matched nonempty parts with
/// min A_i > max B_i, in canonical (sorted) order.
pub fn enumerate_compositions(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<CompositionPair> {
    fn nonempty_subsets(set: &[usize]) -> Vec<BTreeSet<usize>> {
        let mut out = Vec::new();
        for mask in 1u64..(1 << set.len()) {
            out.push(
                set.iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            );
        }
        out
    }
    fn rec(
        rest_a: &BTreeSet<usize>,
        rest_b: &BTreeSet<usize>,
        acc: &mut Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
        out: &mut Vec<CompositionPair>,
    ) {
        if rest_a.is_empty() && rest_b.is_empty() {
            out.push(CompositionPair { pairs: acc.clone() });
            return;
        }
        if rest_a.is_empty() || rest_b.is_empty() {
            return;
        }
        let av: Vec<usize> = rest_a.iter().copied().collect();
        let bv: Vec<usize> = rest_b.iter().copied().collect();
        for ai in nonempty_subsets(&av) {
            for bi in nonempty_subsets(&bv) {
                let min_a = *ai.iter().next().unwrap();
                let max_b = *bi.iter().next_back().unwrap();
                if min_a <= max_b {
                    continue;
                }
                let next_a: BTreeSet<usize> = rest_a.difference(&ai).copied().collect();
                let next_b: BTreeSet<usize> = rest_b.difference(&bi).copied().collect();
                acc.push((ai.clone(), bi));
                rec(&next_a, &next_b, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(a, b, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// How a composition's permutations are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructMode {
    /// A and B become nonsinglet ascent and descent values.
    AscentDescent,
    /// A and B become over- and under-diagonal values.
    Diagonal,
    /// A and B become over- and under-diagonal positions.
    Positions,
}

/// Builds the permutations of {1..n} corresponding to the compositions of
/// (A, B), in the requested mode.
pub fn construct_permutations(
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
    n: usize,
    mode: ConstructMode,
) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for comp in enumerate_compositions(a, b) {
        let mut families = Vec::new();
        for (ai, bi) in &comp.pairs {
            let elements: Vec<usize> = ai.union(bi).copied().collect();
            families.push(Family::new(elements, ai.len())?);
        }
        let registry = Registry::new(families)?;
        let p = compose(&registry, n)?;
        let result = match mode {
            ConstructMode::AscentDescent => p,
            ConstructMode::Diagonal => p.inverse_cycle_transform(),
            ConstructMode::Positions => p.inverse_cycle_transform().inverse(),
        };
        out.push(result);
    }
    out.sort_by(|x, y| x.values().cmp(y.values()));
    out.dedup();
    Ok(out)
}

/// A partition of {1..k+l} into nonsinglet set families, canonically ordered
/// by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamilyPartition {
    families: Vec<Family>,
}

impl SetFamilyPartition {
    fn canonical(mut families: Vec<Family>) -> Self {
        families.sort_by_key(|f| f.min());
        SetFamilyPartition { families }
    }

    /// The families sorted by least element.
    pub fn families(&self) -> &[Family] {
        &self.families
    }

    fn family_of(&self, x: usize) -> usize {
        self.families.iter().position(|f| f.contains(x)).unwrap()
    }

    fn sort_key(&self) -> Vec<(Vec<usize>, usize)> {
        self.families
            .iter()
            .map(|f| (f.elements().to_vec(), f.red_count()))
            .collect()
    }
}

/// All partitions of {1..k+l} into exactly r nonsinglet families with k reds
/// and l blues in total.
pub fn enumerate_family_partitions(k: usize, l: usize, r: usize) -> Vec<SetFamilyPartition> {
    let n = k + l;
    let mut out = Vec::new();
    if k < 1 || l < 1 || r < 1 {
        return out;
    }
    fn rec(
        remaining: &BTreeSet<usize>,
        k_left: usize,
        r_left: usize,
        acc: &mut Vec<Family>,
        out: &mut Vec<SetFamilyPartition>,
    ) {
        if remaining.is_empty() {
            if k_left == 0 && r_left == 0 {
                out.push(SetFamilyPartition::canonical(acc.clone()));
            }
            return;
        }
        if r_left == 0 {
            return;
        }
        // The smallest remaining element seeds the next family.
        let first = *remaining.iter().next().unwrap();
        let rest: Vec<usize> = remaining.iter().copied().skip(1).collect();
        for mask in 0u64..(1 << rest.len()) {
            let mut elements = vec![first];
            elements.extend(
                rest.iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v),
            );
            if elements.len() < 2 {
                continue;
            }
            for reds in 1..elements.len() {
                if reds > k_left {
                    continue;
                }
                let family = Family::new(elements.clone(), reds).unwrap();
                let next: BTreeSet<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|v| !elements.contains(v))
                    .collect();
                acc.push(family);
                rec(&next, k_left - reds, r_left - 1, acc, out);
                acc.pop();
            }
        }
    }
    let all: BTreeSet<usize> = (1..=n).collect();
    rec(&all, k, r, &mut Vec::new(), &mut out);
    out.sort_by_key(|p| p.sort_key());
    out
}

/// Relabels a family: values ≥ from are raised by 1.
fn raise_labels(f: &Family, from: usize) -> Family {
    let elements: Vec<usize> = f
        .elements()
        .iter()
        .map(|&v| if v >= from { v + 1 } else { v })
        .collect();
    Family::new(elements, f.red_count()).unwrap()
}

/// Relabels a family: values > from are lowered by 1.
fn lower_labels(f: &Family, from: usize) -> Family {
    let elements: Vec<usize> = f
        .elements()
        .iter()
        .map(|&v| if v > from { v - 1 } else { v })
        .collect();
    Family::new(elements, f.red_count()).unwrap()
}

/// A left-hand object of the positive-form recurrence: either a partition in
/// 𝒩^[r]_{k,l}, or a triple (partition of {1..k+l−2}, m, chosen family).
#[derive(Debug, Clone, PartialEq, Eq)]
enum LeftObject {
    Partition(SetFamilyPartition),
    Triple(SetFamilyPartition, usize, usize),
}

/// A right-hand object: (partition, m) with m either free in 1..k+l−1 (first
/// term), red (second term), or blue (third term).
#[derive(Debug, Clone, PartialEq, Eq)]
enum RightObject {
    Free(SetFamilyPartition, usize),
    Red(SetFamilyPartition, usize),
    Blue(SetFamilyPartition, usize),
}

impl RightObject {
    fn sort_key(&self) -> (u8, Vec<(Vec<usize>, usize)>, usize) {
        match self {
            RightObject::Free(p, m) => (0, p.sort_key(), *m),
            RightObject::Red(p, m) => (1, p.sort_key(), *m),
            RightObject::Blue(p, m) => (2, p.sort_key(), *m),
        }
    }
}

/// Materializes both sides of N^[r]_{k,l} + r(k+l−1)·N^[r]_{k−1,l−1}
/// = (k+l−1)·N^[r−1]_{k−1,l−1} + k·N^[r]_{k,l−1} + l·N^[r]_{k−1,l}
/// and verifies the five case maps assemble into a bijection.
pub fn recurrence_bijection_check(k: usize, l: usize, r: usize) -> bool {
    let n = k + l;
    // Left side.
    let mut left = Vec::new();
    for p in enumerate_family_partitions(k, l, r) {
        left.push(LeftObject::Partition(p));
    }
    if k >= 2 && l >= 2 {
        for p in enumerate_family_partitions(k - 1, l - 1, r) {
            for m in 1..=n - 1 {
                for s in 0..p.families().len() {
                    left.push(LeftObject::Triple(p.clone(), m, s));
                }
            }
        }
    }
    // Right side.
    let mut right = Vec::new();
    if k >= 2 && l >= 2 {
        for p in enumerate_family_partitions(k - 1, l - 1, r - 1) {
            for m in 1..=n - 1 {
                right.push(RightObject::Free(p.clone(), m));
            }
        }
    } else if r == 1 && k == 1 && l == 1 {
        // Degenerate base: N^[0]_{0,0} = 1 by convention (empty partition).
        for m in 1..=n - 1 {
            right.push(RightObject::Free(
                SetFamilyPartition { families: vec![] },
                m,
            ));
        }
    }
    for p in enumerate_family_partitions(k, l - 1, r) {
        for f in p.families() {
            for &m in f.reds() {
                right.push(RightObject::Red(p.clone(), m));
            }
        }
    }
    for p in enumerate_family_partitions(k - 1, l, r) {
        for f in p.families() {
            for &m in f.blues() {
                right.push(RightObject::Blue(p.clone(), m));
            }
        }
    }
    if left.len() != right.len() {
        return false;
    }
    // Forward map.
    let mut images: Vec<RightObject> = Vec::with_capacity(left.len());
    for obj in &left {
        let image = match obj {
            LeftObject::Partition(p) => {
                let si = p.family_of(n);
                let s = &p.families()[si];
                if s.len() == 2 {
                    // Case (A): small family {m, n}; remove it, lower labels.
                    let m = s.min();
                    let families: Vec<Family> = p
                        .families()
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != si)
                        .map(|(_, f)| lower_labels(f, m))
                        .collect();
                    RightObject::Free(SetFamilyPartition::canonical(families), m)
                } else if s.red_count() >= 2 {
                    // Case (B): remove n, m = largest blue of S.
                    let m = s.highest_blue();
                    let mut families = p.families().to_vec();
                    families[si] = s.remove_element(n).unwrap();
                    RightObject::Blue(SetFamilyPartition::canonical(families), m)
                } else {
                    // Case (C): n unique red; remove it, the new largest
                    // element m turns red.
                    let mut families = p.families().to_vec();
                    let reduced = s.remove_element(n).unwrap();
                    let m = reduced.max();
                    families[si] = reduced;
                    RightObject::Red(SetFamilyPartition::canonical(families), m)
                }
            }
            LeftObject::Triple(p, m, si) => {
                let s = &p.families()[*si];
                let raised: Vec<Family> =
                    p.families().iter().map(|f| raise_labels(f, *m)).collect();
                let target = raise_labels(s, *m);
                let mut families = raised;
                if *m <= s.highest_blue() {
                    // Case (D): insert m blue.
                    let elements: Vec<usize> =
                        target.elements().iter().copied().chain([*m]).collect();
                    families[*si] = Family::new(elements, target.red_count()).unwrap();
                    RightObject::Blue(SetFamilyPartition::canonical(families), *m)
                } else {
                    // Case (E): insert m red.
                    let elements: Vec<usize> =
                        target.elements().iter().copied().chain([*m]).collect();
                    families[*si] = Family::new(elements, target.red_count() + 1).unwrap();
                    RightObject::Red(SetFamilyPartition::canonical(families), *m)
                }
            }
        };
        images.push(image);
    }
    // The forward images must hit each right object exactly once.
    let mut sorted_images: Vec<_> = images.iter().map(|o| o.sort_key()).collect();
    sorted_images.sort();
    let mut sorted_right: Vec<_> = right.iter().map(|o| o.sort_key()).collect();
    sorted_right.sort();
    if sorted_images != sorted_right {
        return false;
    }
    // Reverse maps must invert the forward ones.
    for (obj, image) in left.iter().zip(&images) {
        let back = match image {
            RightObject::Free(p, m) => {
                // Case (A'): raise labels ≥ m, append {m, n}.
                let mut families: Vec<Family> =
                    p.families().iter().map(|f| raise_labels(f, *m)).collect();
                families.push(Family::new([*m, n], 1).unwrap());
                LeftObject::Partition(SetFamilyPartition::canonical(families))
            }
            RightObject::Red(p, m) => {
                let si = p.family_of(*m);
                let s = &p.families()[si];
                if s.red_count() == 1 {
                    // Case (C'): insert n, recolor m blue.
                    let elements: Vec<usize> = s.elements().iter().copied().chain([n]).collect();
                    let mut families = p.families().to_vec();
                    families[si] = Family::new(elements, 1).unwrap();
                    LeftObject::Partition(SetFamilyPartition::canonical(families))
                } else {
                    // Case (E'): remove m, lower labels.
                    let reduced = Family::new(
                        s.elements().iter().copied().filter(|&v| v != *m),
                        s.red_count() - 1,
                    )
                    .unwrap();
                    let mut families = p.families().to_vec();
                    families[si] = reduced.clone();
                    let families: Vec<Family> =
                        families.iter().map(|f| lower_labels(f, *m)).collect();
                    let q = SetFamilyPartition::canonical(families);
                    let target = lower_labels(&reduced, *m);
                    let si_after = q
                        .families()
                        .iter()
                        .position(|f| f.elements() == target.elements())
                        .unwrap();
                    LeftObject::Triple(q, *m, si_after)
                }
            }
            RightObject::Blue(p, m) => {
                let si = p.family_of(*m);
                let s = &p.families()[si];
                if *m == s.highest_blue() {
                    // Case (B'): insert n red.
                    let elements: Vec<usize> = s.elements().iter().copied().chain([n]).collect();
                    let mut families = p.families().to_vec();
                    families[si] = Family::new(elements, s.red_count() + 1).unwrap();
                    LeftObject::Partition(SetFamilyPartition::canonical(families))
                } else {
                    // Case (D'): remove m, lower labels.
                    let reduced = Family::new(
                        s.elements().iter().copied().filter(|&v| v != *m),
                        s.red_count(),
                    )
                    .unwrap();
                    let mut families = p.families().to_vec();
                    families[si] = reduced.clone();
                    let families: Vec<Family> =
                        families.iter().map(|f| lower_labels(f, *m)).collect();
                    let q = SetFamilyPartition::canonical(families);
                    let target = lower_labels(&reduced, *m);
                    let si_after = q
                        .families()
                        .iter()
                        .position(|f| f.elements() == target.elements())
                        .unwrap();
                    LeftObject::Triple(q, *m, si_after)
                }
            }
        };
        if back != *obj {
            return false;
        }
    }
    true
}

/// The number of permutations of {1..n} with `singlets` singlet blocks and,
/// for each (reds, blues) type, `profile[(i,j)]` families of that type:
/// n!/(n_1!·∏(i+j)!^{n_(i,j)}) · (Σ n_(i,j))!/∏ n_(i,j)!.
pub fn family_config_count(
    n: usize,
    profile: &BTreeMap<(usize, usize), usize>,
    singlets: usize,
) -> Result<BigUint> {
    let mass: usize = singlets
        + profile
            .iter()
            .map(|(&(i, j), &c)| (i + j) * c)
            .sum::<usize>();
    if mass != n {
        return Err(Error::Domain(format!(
            "profile mass {} does not match n = {}",
            mass, n
        )));
    }
    if profile.keys().any(|&(i, j)| i < 1 || j < 1) {
        return Err(Error::Domain(
            "family types need reds ≥ 1, blues ≥ 1".into(),
        ));
    }
    let mut num = factorial(n);
    let mut den = factorial(singlets);
    let mut total_fams = 0usize;
    for (&(i, j), &c) in profile {
        den *= factorial(i + j).pow(c as u32);
        den *= factorial(c);
        total_fams += c;
    }
    num *= factorial(total_fams);
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// All (singlets, profile) configurations for permutations of {1..n}.
pub fn all_family_profiles(n: usize) -> Vec<(usize, BTreeMap<(usize, usize), usize>)> {
    // Family types ordered so multisets are generated once.
    fn types_up_to(size: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for total in 2..=size {
            for i in 1..total {
                out.push((i, total - i));
            }
        }
        out
    }
    fn rec(
        remaining: usize,
        types: &[(usize, usize)],
        acc: &mut BTreeMap<(usize, usize), usize>,
        out: &mut Vec<BTreeMap<(usize, usize), usize>>,
    ) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        if types.is_empty() {
            return;
        }
        let (i, j) = types[0];
        let size = i + j;
        let max_count = remaining / size;
        for c in (0..=max_count).rev() {
            if c > 0 {
                acc.insert((i, j), c);
            } else {
                acc.remove(&(i, j));
            }
            rec(remaining - c * size, &types[1..], acc, out);
        }
        acc.remove(&(i, j));
    }
    let mut out = Vec::new();
    for singlets in 0..=n {
        let rest = n - singlets;
        let mut profiles = Vec::new();
        rec(
            rest,
            &types_up_to(rest.max(2)),
            &mut BTreeMap::new(),
            &mut profiles,
        );
        for p in profiles {
            out.push((singlets, p));
        }
    }
    out
}
