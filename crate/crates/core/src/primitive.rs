//! Primitive permutations: recognition by peeling, pairing sequences and
//! decorated Dyck paths, the bijective construction (cases A–D with the
//! red-count correction), and dynamic-programming counts.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A pairing sequence: positives 1,2,3,... in natural order, each negative
/// −k after its +k, prefix sign sums ≥ 2 from position 2 on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingSequence {
    inds: Vec<i64>,
}

impl PairingSequence {
    /// Validates and wraps a raw index sequence.
    pub fn new(inds: Vec<i64>) -> Result<Self> {
        if inds.len() < 2 || inds[0] != 1 || inds[1] != 2 {
            return Err(Error::InvalidPairing {
                index: 1,
                message: "sequence must start with 1, 2".into(),
            });
        }
        let mut next_positive = 1;
        let mut open = Vec::new(); // unpaired positives, ascending
        let mut sum = 0i64;
        for (i, &e) in inds.iter().enumerate() {
            if e == 0 {
                return Err(Error::InvalidPairing {
                    index: i + 1,
                    message: "entries must be nonzero".into(),
                });
            }
            if e > 0 {
                if e != next_positive {
                    return Err(Error::InvalidPairing {
                        index: i + 1,
                        message: format!("expected positive {} but found {}", next_positive, e),
                    });
                }
                next_positive += 1;
                open.push(e);
                sum += 1;
            } else {
                let Some(pos) = open.iter().position(|&k| k == -e) else {
                    return Err(Error::InvalidPairing {
                        index: i + 1,
                        message: format!("{} pairs no open positive", e),
                    });
                };
                open.remove(pos);
                sum -= 1;
            }
            if i >= 1 && sum < 2 {
                return Err(Error::InvalidPairing {
                    index: i + 1,
                    message: format!("prefix sign sum {} drops below 2", sum),
                });
            }
        }
        Ok(PairingSequence { inds })
    }

    /// Parses comma- or space-separated entries, e.g. "1,2,3,-2,4,5,-5".
    pub fn parse(text: &str) -> Result<Self> {
        let inds: Vec<i64> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("'{}' is not an integer", t)))
            })
            .collect::<Result<_>>()?;
        Self::new(inds)
    }

    /// The raw entries.
    pub fn inds(&self) -> &[i64] {
        &self.inds
    }

    /// Length n.
    pub fn len(&self) -> usize {
        self.inds.len()
    }

    /// Always false; a pairing sequence has at least two entries.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The sum of signs: the size of the active family it encodes.
    pub fn sign_sum(&self) -> usize {
        let s: i64 = self.inds.iter().map(|e| e.signum()).sum();
        s as usize
    }

    /// Converts to the decorated Dyck path: each descent's decoration is the
    /// position of its pair among the then-unpaired positives.
    pub fn to_dyck(&self) -> DecoratedDyckPath {
        let mut steps = Vec::new();
        let mut decorations = Vec::new();
        let mut open = Vec::new();
        for &e in &self.inds {
            if e > 0 {
                steps.push(true);
                open.push(e);
            } else {
                steps.push(false);
                let pos = open.iter().position(|&k| k == -e).unwrap();
                decorations.push(pos + 1);
                open.remove(pos);
            }
        }
        DecoratedDyckPath { steps, decorations }
    }
}

impl fmt::Display for PairingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.inds.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Dyck path reaching height 2 in two steps and staying at or above 2,
/// with each descent decorated by a choice number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedDyckPath {
    /// true = up step, false = down step.
    pub steps: Vec<bool>,
    /// One decoration per down step, in order.
    pub decorations: Vec<usize>,
}

impl DecoratedDyckPath {
    /// Validates and converts back to the pairing sequence.
    pub fn to_pairing(&self) -> Result<PairingSequence> {
        if self.steps.len() < 2 || !self.steps[0] || !self.steps[1] {
            return Err(Error::InvalidPairing {
                index: 1,
                message: "path must rise to height 2 in two steps".into(),
            });
        }
        if self.decorations.len() != self.steps.iter().filter(|&&s| !s).count() {
            return Err(Error::InvalidPairing {
                index: self.steps.len(),
                message: "one decoration required per down step".into(),
            });
        }
        let mut inds = Vec::new();
        let mut open = Vec::new();
        let mut next_positive = 1i64;
        let mut d = 0;
        let mut height = 0usize;
        for (i, &up) in self.steps.iter().enumerate() {
            if up {
                inds.push(next_positive);
                open.push(next_positive);
                next_positive += 1;
                height += 1;
            } else {
                let choice = self.decorations[d];
                d += 1;
                if choice == 0 || choice > height {
                    return Err(Error::InvalidPairing {
                        index: i + 1,
                        message: format!(
                            "decoration {} outside 1..{} (path height)",
                            choice, height
                        ),
                    });
                }
                let k = open.remove(choice - 1);
                inds.push(-k);
                height -= 1;
                if height < 2 {
                    return Err(Error::InvalidPairing {
                        index: i + 1,
                        message: "path drops below height 2".into(),
                    });
                }
            }
        }
        PairingSequence::new(inds)
    }
}

/// One item of a primitive permutation: an active value or a bud pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimEntry {
    /// An active family member.
    Value(usize),
    /// A departed pair (n, m) with n > m, shown as (n m).
    Bud(usize, usize),
}

/// A primitive permutation: an active family interleaved with buds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitivePermutation {
    entries: Vec<PrimEntry>,
}

impl PrimitivePermutation {
    /// The items in order.
    pub fn entries(&self) -> &[PrimEntry] {
        &self.entries
    }

    /// The underlying permutation in one-line notation.
    pub fn perm(&self) -> Permutation {
        let mut values = Vec::new();
        for e in &self.entries {
            match e {
                PrimEntry::Value(v) => values.push(*v),
                PrimEntry::Bud(n, m) => {
                    values.push(*n);
                    values.push(*m);
                }
            }
        }
        Permutation::new(values).expect("primitive entries flatten to a permutation")
    }

    /// The active family values in position order.
    pub fn active_values(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                PrimEntry::Value(v) => Some(*v),
                PrimEntry::Bud(..) => None,
            })
            .collect()
    }

    /// The bud pairs in position order.
    pub fn buds(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                PrimEntry::Bud(n, m) => Some((*n, *m)),
                PrimEntry::Value(_) => None,
            })
            .collect()
    }

    /// Number of reds in the active family (the increasing prefix).
    pub fn red_count(&self) -> usize {
        increasing_prefix(&self.active_values())
    }

    /// Number of blues in the active family.
    pub fn blue_count(&self) -> usize {
        self.active_values().len() - self.red_count()
    }
}

impl fmt::Display for PrimitivePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match e {
                PrimEntry::Value(v) => write!(f, "{}", v)?,
                PrimEntry::Bud(n, m) => write!(f, "({} {})", n, m)?,
            }
        }
        write!(f, ")")
    }
}

/// Length of the maximal strictly increasing prefix: the red count of a
/// family sequence.
fn increasing_prefix(seq: &[usize]) -> usize {
    if seq.is_empty() {
        return 0;
    }
    let mut k = 1;
    while k < seq.len() && seq[k] > seq[k - 1] {
        k += 1;
    }
    k
}

/// Builds the primitive permutation for a pairing sequence and a red count.
pub fn build_primitive(p: &PairingSequence, reds: usize) -> Result<PrimitivePermutation> {
    let s = p.sign_sum();
    if reds == 0 || reds >= s {
        return Err(Error::InvalidPrimitive(format!(
            "red count {} outside 1..={} for sign sum {}",
            reds,
            s.saturating_sub(1),
            s
        )));
    }
    let dyck = p.to_dyck();
    // Attach each descent's decoration to its step index.
    let mut n_choice = vec![0usize; p.len()];
    let mut d = 0;
    for (i, &up) in dyck.steps.iter().enumerate() {
        if !up {
            n_choice[i] = dyck.decorations[d];
            d += 1;
        }
    }
    // Backward pass: the red count before each step (cases A–D).
    let mut sign_sums = Vec::with_capacity(p.len());
    let mut sum = 0i64;
    for &e in p.inds() {
        sum += e.signum();
        sign_sums.push(sum as usize);
    }
    let mut reds_at = vec![0usize; p.len()]; // red count of the length-(i+1) prefix
    reds_at[p.len() - 1] = reds;
    for i in (2..p.len()).rev() {
        let r = reds_at[i];
        let s_i = sign_sums[i];
        if r == 0 || r >= s_i {
            return Err(Error::InvalidPrimitive(format!(
                "red count {} invalid at prefix length {}",
                r,
                i + 1
            )));
        }
        reds_at[i - 1] = if p.inds()[i] > 0 {
            if r == 1 {
                r // Case (A)
            } else {
                r - 1 // Case (B)
            }
        } else {
            let n_blues = s_i - r;
            if n_choice[i] <= n_blues {
                r // Case (C)
            } else {
                r + 1 // Case (D)
            }
        };
    }
    if reds_at[1] != 1 {
        return Err(Error::InvalidPrimitive(format!(
            "red count chain reaches {} at the base (2 1)",
            reds_at[1]
        )));
    }
    // Forward pass from (2 1).
    let mut entries = vec![PrimEntry::Value(2), PrimEntry::Value(1)];
    for i in 2..p.len() {
        let v = i + 1; // the new largest element
        let active: Vec<(usize, usize)> = entries
            .iter()
            .enumerate()
            .filter_map(|(pos, e)| match e {
                PrimEntry::Value(val) => Some((pos, *val)),
                PrimEntry::Bud(..) => None,
            })
            .collect();
        let k = increasing_prefix(&active.iter().map(|&(_, v)| v).collect::<Vec<_>>());
        if p.inds()[i] > 0 {
            if reds_at[i] == 1 {
                // Case (A): before the first active element; the old unique
                // red turns blue by position.
                entries.insert(active[0].0, PrimEntry::Value(v));
            } else {
                // Case (B): before the highest blue.
                entries.insert(active[k].0, PrimEntry::Value(v));
            }
        } else {
            let c = n_choice[i];
            let target_blues = sign_sums[i] - reds_at[i];
            let (pos, m) = if c <= target_blues {
                // Case (C): the c-th blue on the increasing list of blues.
                // Blues appear in decreasing order, so count from the end.
                active[active.len() - c]
            } else {
                // Case (D): the (c − blues)-th red on the increasing list.
                active[c - target_blues - 1]
            };
            entries[pos] = PrimEntry::Bud(v, m);
        }
    }
    let result = PrimitivePermutation { entries };
    debug_assert_eq!(result.red_count(), reds);
    Ok(result)
}

/// Recovers the pairing sequence and red count from a primitive permutation;
/// errors when the permutation is not primitive.
pub fn primitive_to_pairing(p: &Permutation) -> Result<(PairingSequence, usize)> {
    let analyzed = analyze(p)?;
    let (pairing, reds) = analyzed;
    Ok((pairing, reds))
}

/// Decomposes a permutation into its primitive structure, or errors.
pub fn analyze_primitive(p: &Permutation) -> Result<(PrimitivePermutation, PairingSequence)> {
    let n = p.len();
    if n < 2 {
        return Err(Error::InvalidPrimitive(
            "a primitive permutation has at least 2 elements".into(),
        ));
    }
    // Peel maxima, recording each element's friend.
    let mut line: Vec<usize> = p.values().to_vec();
    let mut friend = vec![0usize; n + 1];
    for v in (3..=n).rev() {
        let pos = line.iter().position(|&x| x == v).unwrap();
        if pos + 1 == line.len() {
            return Err(Error::InvalidPrimitive(format!(
                "{} is last in its cutoff and has no friend",
                v
            )));
        }
        friend[v] = line[pos + 1];
        line.remove(pos);
    }
    if line != [2, 1] {
        return Err(Error::InvalidPrimitive(format!(
            "base cutoff is {:?}, not (2 1)",
            line
        )));
    }
    // Rebuild, classifying each insertion as a fit or a bud.
    let mut entries = vec![PrimEntry::Value(2), PrimEntry::Value(1)];
    let mut inds: Vec<i64> = vec![1, 2];
    let mut open: Vec<i64> = vec![1, 2];
    let mut next_positive = 3i64;
    for v in 3..=n {
        let m = friend[v];
        let active: Vec<usize> = entries
            .iter()
            .filter_map(|e| match e {
                PrimEntry::Value(val) => Some(*val),
                PrimEntry::Bud(..) => None,
            })
            .collect();
        let Some(ai) = active.iter().position(|&x| x == m) else {
            return Err(Error::InvalidPrimitive(format!(
                "{} precedes {}, which is inside a bud",
                v, m
            )));
        };
        let k = increasing_prefix(&active);
        let l = active.len() - k;
        let entry_pos = entries
            .iter()
            .position(|e| *e == PrimEntry::Value(m))
            .unwrap();
        if ai == k || (k == 1 && ai == 0) {
            // Fit: m is the highest blue, or the unique red.
            entries.insert(entry_pos, PrimEntry::Value(v));
            inds.push(next_positive);
            open.push(next_positive);
            next_positive += 1;
        } else {
            // Bud: m must be an exit position.
            if ai < k && k == 1 {
                unreachable!();
            }
            if ai < k {
                // m is a red (k ≥ 2 here); choice = blues + ascending red index.
                let choice = l + (ai + 1);
                let kpos = open.remove(choice - 1);
                inds.push(-kpos);
            } else {
                // m is a blue below the highest; ascending index counts from
                // the end of the decreasing tail.
                let choice = active.len() - ai;
                if choice > l - 1 {
                    return Err(Error::InvalidPrimitive(format!(
                        "{} buds with the highest blue {}",
                        v, m
                    )));
                }
                let kpos = open.remove(choice - 1);
                inds.push(-kpos);
            }
            entries[entry_pos] = PrimEntry::Bud(v, m);
        }
    }
    let pairing = PairingSequence::new(inds)?;
    Ok((PrimitivePermutation { entries }, pairing))
}

fn analyze(p: &Permutation) -> Result<(PairingSequence, usize)> {
    let (pp, pairing) = analyze_primitive(p)?;
    Ok((pairing, pp.red_count()))
}

/// True iff the permutation is primitive; returns its structure when so.
pub fn is_primitive(p: &Permutation) -> Option<PrimitivePermutation> {
    analyze_primitive(p).ok().map(|(pp, _)| pp)
}

/// Number of primitive permutations with a fixed active family type (k, l)
/// where k + l = `fam_size`, and `buds` buds. The count depends only on the
/// sum k + l, not on the split.
pub fn count_primitive(fam_size: usize, buds: usize) -> BigUint {
    if fam_size < 2 {
        return BigUint::from(0u32);
    }
    count_primitive_state(1, fam_size - 1, buds)
}

/// Number of primitive permutations with exactly k reds, l blues and b buds.
pub fn count_primitive_state(k: usize, l: usize, b: usize) -> BigUint {
    if k < 1 || l < 1 {
        return BigUint::from(0u32);
    }
    let n = k + l + 2 * b; // total length
                           // counts[k][l][b], reachable states have k,l ≥ 1.
    let ll = n;
    let bb = b;
    let zero = BigUint::from(0u32);
    let idx = |k: usize, l: usize, bv: usize| (k * (ll + 1) + l) * (bb + 1) + bv;
    let mut counts = vec![zero.clone(); (n + 1) * (ll + 1) * (bb + 1)];
    counts[idx(1, 1, 0)] = BigUint::from(1u32);
    // Process states in order of total length.
    for total in 3..=n {
        for bv in 0..=bb.min((total.saturating_sub(2)) / 2) {
            let fam = total - 2 * bv;
            if fam < 2 {
                continue;
            }
            for kv in 1..fam {
                let lv = fam - kv;
                let mut c = zero.clone();
                // Case (B): from (kv−1, lv) by insertion before the highest blue.
                if kv >= 2 {
                    c += &counts[idx(kv - 1, lv, bv)];
                }
                // Case (A): from (1, lv−1) by insertion before the unique red.
                if kv == 1 && lv >= 2 {
                    c += &counts[idx(1, lv - 1, bv)];
                }
                if bv >= 1 {
                    // Red bud: from (kv+1, lv), kv+1 choices of red.
                    c += &counts[idx(kv + 1, lv, bv - 1)] * BigUint::from(kv as u32 + 1);
                    // Blue bud: from (kv, lv+1), lv choices of blue.
                    c += &counts[idx(kv, lv + 1, bv - 1)] * BigUint::from(lv as u32);
                }
                counts[idx(kv, lv, bv)] = c;
            }
        }
    }
    counts[idx(k, l, b)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing(text: &str) -> PairingSequence {
        PairingSequence::parse(text).unwrap()
    }

    #[test]
    fn pairing_validation() {
        assert!(PairingSequence::parse("1,2,3,-2,4,5,-5").is_ok());
        assert!(PairingSequence::parse("1,2").is_ok());
        assert!(PairingSequence::parse("2,1").is_err());
        assert!(PairingSequence::parse("1,2,-2,-1").is_err()); // drops below 2
        assert!(PairingSequence::parse("1,2,4").is_err()); // skips 3
        assert!(PairingSequence::parse("1,2,3,-4").is_err()); // pairs the unseen
    }

    #[test]
    fn dyck_round_trip() {
        let p = pairing("1,2,3,-2,4,5,-5");
        let d = p.to_dyck();
        assert_eq!(d.steps, vec![true, true, true, false, true, true, false]);
        assert_eq!(d.decorations, vec![2, 4]);
        assert_eq!(d.to_pairing().unwrap(), p);

        let base = pairing("1,2").to_dyck();
        assert!(base.decorations.is_empty());
        assert_eq!(base.to_pairing().unwrap(), pairing("1,2"));

        let last = pairing("1,2,3,-3").to_dyck();
        assert_eq!(last.decorations, vec![3]);
    }

    #[test]
    fn build_example() {
        let pp = build_primitive(&pairing("1,2,3,-2,4,5,-5"), 2).unwrap();
        assert_eq!(pp.to_string(), "((4 2) 3 5 (7 6) 1)");
        assert_eq!(pp.active_values(), vec![3, 5, 1]);
        assert_eq!(pp.buds(), vec![(4, 2), (7, 6)]);
        assert_eq!(pp.red_count(), 2);
    }

    #[test]
    fn build_small_table() {
        let cases = [
            ("1,2", 1, "(2 1)"),
            ("1,2,3", 2, "(2 3 1)"),
            ("1,2,3", 1, "(3 2 1)"),
            ("1,2,3,4", 3, "(2 3 4 1)"),
            ("1,2,3,4", 2, "(3 4 2 1)"),
            ("1,2,3,4", 1, "(4 3 2 1)"),
            ("1,2,3,-1", 1, "(3 2 (4 1))"),
            ("1,2,3,-2", 1, "((4 2) 3 1)"),
            ("1,2,3,-3", 1, "(2 (4 3) 1)"),
        ];
        for (text, reds, expected) in cases {
            assert_eq!(
                build_primitive(&pairing(text), reds).unwrap().to_string(),
                expected,
                "case {} reds {}",
                text,
                reds
            );
        }
        assert!(build_primitive(&pairing("1,2"), 2).is_err());
    }

    #[test]
    fn inverse_examples() {
        let p = Permutation::parse("4 2 3 5 7 6 1").unwrap();
        let (pairing_seq, reds) = primitive_to_pairing(&p).unwrap();
        assert_eq!(pairing_seq, pairing("1,2,3,-2,4,5,-5"));
        assert_eq!(reds, 2);
        let (base, r1) = primitive_to_pairing(&Permutation::parse("2 1").unwrap()).unwrap();
        assert_eq!(base, pairing("1,2"));
        assert_eq!(r1, 1);
        let (b2, _) = primitive_to_pairing(&Permutation::parse("4 2 3 1").unwrap()).unwrap();
        assert_eq!(b2, pairing("1,2,3,-2"));
    }

    #[test]
    fn recognition() {
        assert!(is_primitive(&Permutation::parse("2 1").unwrap()).is_some());
        assert!(is_primitive(&Permutation::parse("1 2").unwrap()).is_none());
        assert!(is_primitive(&Permutation::parse("4 2 3 5 7 6 1").unwrap()).is_some());
        assert!(is_primitive(&Permutation::parse("1 3 2").unwrap()).is_none());
    }

    #[test]
    fn matches_brute_force_up_to_7() {
        for n in 2..=7 {
            let brute = crate::oracle::brute_primitive_scan(n);
            let brute_set: std::collections::BTreeSet<String> =
                brute.iter().map(|b| b.perm.to_string()).collect();
            let mine: std::collections::BTreeSet<String> = crate::oracle::all_permutations(n)
                .iter()
                .filter(|p| is_primitive(p).is_some())
                .map(|p| p.to_string())
                .collect();
            assert_eq!(mine, brute_set, "n = {}", n);
        }
    }

    #[test]
    fn count_table() {
        let rows: [(usize, [u64; 6]); 5] = [
            (2, [1, 3, 21, 207, 2529, 36243]),
            (3, [1, 7, 69, 843, 12081, 197127]),
            (4, [1, 12, 159, 2388, 40221, 751032]),
            (5, [1, 18, 309, 5628, 110781, 2361222]),
            (6, [1, 25, 540, 11760, 268365, 6495345]),
        ];
        for (fam, expected) in rows {
            for (b, &want) in expected.iter().enumerate() {
                assert_eq!(
                    count_primitive(fam, b),
                    BigUint::from(want),
                    "fam {} buds {}",
                    fam,
                    b
                );
            }
        }
    }

    #[test]
    fn counts_are_split_independent() {
        for fam in 2..=6 {
            for b in 0..=3 {
                let reference = count_primitive_state(1, fam - 1, b);
                for k in 2..fam {
                    assert_eq!(
                        count_primitive_state(k, fam - k, b),
                        reference,
                        "fam {} split {} buds {}",
                        fam,
                        k,
                        b
                    );
                }
            }
        }
    }
}
