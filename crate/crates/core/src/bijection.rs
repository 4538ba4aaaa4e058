//! The main bijection between permutations and registries: the direct
//! algorithm (cases A–E, inserting cutoffs 1..n) and the reverse algorithm
//! (cases A′–E′, peeling the maximum), plus blockwise decomposition and
//! exhaustive registry enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::{Family, Registry};
use crate::perm::{pattern_of_sequence, Permutation};

/// The case label of one step of the direct algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepCase {
    /// The cutoff value is last: a new singlet block.
    A,
    /// The friend's family is the trailing singlet.
    B,
    /// The cutoff fits into the friend's nonsinglet family.
    C,
    /// No fit; the friend was its family's anchor.
    D,
    /// No fit; the friend was not the anchor.
    E,
}

impl fmt::Display for StepCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepCase::A => "A",
            StepCase::B => "B",
            StepCase::C => "C",
            StepCase::D => "D",
            StepCase::E => "E",
        };
        write!(f, "{}", s)
    }
}

/// One recorded step of the direct algorithm: after inserting `cutoff`, the
/// registry was `registry`.
#[derive(Debug, Clone)]
pub struct TraceStep {
    /// The value k that was inserted.
    pub cutoff: usize,
    /// Which case applied.
    pub case: StepCase,
    /// The friend of k, when one exists.
    pub friend: Option<usize>,
    /// The registry R^(k) after the step.
    pub registry: Registry,
}

fn slide_left(families: &mut [Family], mut i: usize) -> usize {
    while i > 0 && families[i - 1].min() > families[i].min() {
        families.swap(i - 1, i);
        i -= 1;
    }
    i
}

/// Permutation to full registry (singlet families are singlet blocks).
pub fn decompose(p: &Permutation) -> Registry {
    decompose_traced(p).0
}

/// Permutation to stripped registry (singlet families removed).
pub fn decompose_stripped(p: &Permutation) -> Registry {
    decompose(p).strip_singlets()
}

/// As [`decompose`], recording each step for inspection.
pub fn decompose_traced(p: &Permutation) -> (Registry, Vec<TraceStep>) {
    let n = p.len();
    let mut pos = vec![0; n + 1]; // pos[v] = 1-based position of v in p
    for i in 1..=n {
        pos[p.at(i)] = i;
    }
    let mut families: Vec<Family> = Vec::new();
    let mut trace = Vec::new();
    for k in 1..=n {
        // The friend of k is the next smaller value after k's position.
        let friend = (pos[k] + 1..=n).map(|i| p.at(i)).find(|&v| v < k);
        let case = match friend {
            None => {
                families.push(Family::singlet(k));
                StepCase::A
            }
            Some(m) => {
                let fi = families.iter().position(|f| f.contains(m)).unwrap();
                let fam = families[fi].clone();
                if fam.fits(m).unwrap() {
                    if fam.is_singlet() {
                        families[fi] = Family::new([m, k], 1).unwrap();
                        StepCase::B
                    } else {
                        families[fi] = fam.insert_before(m, k).unwrap();
                        StepCase::C
                    }
                } else {
                    let new_family = Family::new([m, k], 1).unwrap();
                    if m == fam.min() {
                        // The old family slides to its left wall and loses m;
                        // the new family stays in the old slot. m sits in two
                        // families until the removal, so slide on the raw list.
                        families.insert(fi + 1, new_family);
                        let j = slide_left(&mut families, fi);
                        families[j] = families[j].remove_element(m).unwrap();
                        StepCase::D
                    } else {
                        // The shrunk family keeps the slot; the new family
                        // slides to its left wall.
                        families[fi] = fam.remove_element(m).unwrap();
                        families.insert(fi, new_family);
                        slide_left(&mut families, fi);
                        StepCase::E
                    }
                }
            }
        };
        trace.push(TraceStep {
            cutoff: k,
            case,
            friend,
            registry: Registry::new(families.clone()).unwrap(),
        });
    }
    (Registry::new(families).unwrap(), trace)
}

/// Blockwise decomposition: each block of `p` is reduced to its pattern,
/// decomposed, relabeled back and the results concatenated.
pub fn decompose_general(p: &Permutation) -> Registry {
    let bd = p.blocks();
    let mut families = Vec::new();
    for i in 0..bd.len() {
        let values = bd.block_values(p, i);
        let mut sorted = values.clone();
        sorted.sort_unstable();
        let pattern =
            pattern_of_sequence(&values.iter().map(|&v| v as i64).collect::<Vec<_>>()).unwrap();
        for fam in decompose(&pattern).families() {
            let relabeled: Vec<usize> = fam.elements().iter().map(|&e| sorted[e - 1]).collect();
            families.push(if fam.is_singlet() {
                Family::singlet(relabeled[0])
            } else {
                Family::new(relabeled, fam.red_count()).unwrap()
            });
        }
    }
    Registry::new(families).unwrap()
}

/// Registry to permutation of {1..n}: completes the registry with singlet
/// blocks for the missing elements, then inverts the direct algorithm.
pub fn compose(r: &Registry, n: usize) -> Result<Permutation> {
    let full = r.insert_singlets(n)?;
    // Hypothesis of the reverse algorithm: singlets are singlet blocks.
    let rb = full.registry_blocks();
    for (i, fam) in full.families().iter().enumerate() {
        if fam.is_singlet() && !rb.blocks.contains(&(i, i)) {
            return Err(Error::InvalidRegistry(format!(
                "singlet ({}) is not a singlet block",
                fam.min()
            )));
        }
    }
    let mut families = full.families().to_vec();
    // friend[v]: insert v immediately before this value; None appends v.
    let mut friend: Vec<Option<usize>> = vec![None; n + 1];
    for v in (1..=n).rev() {
        let p = families
            .iter()
            .position(|f| f.contains(v))
            .ok_or_else(|| Error::InvalidRegistry(format!("element {} missing", v)))?;
        let fam = families[p].clone();
        if fam.is_singlet() {
            // Case (A)′: the singlet (v) must be last.
            if p + 1 != families.len() {
                return Err(Error::InvalidRegistry(format!(
                    "singlet ({}) holds the maximum but is not last",
                    v
                )));
            }
            families.pop();
            friend[v] = None;
        } else if fam.len() >= 3 {
            // Case (C)′: v's friend is the next element in sequence form.
            let m = fam.highest_blue();
            families[p] = fam.remove_element(v)?;
            friend[v] = Some(m);
        } else {
            // Small family (v, m): the orphan m looks for a family.
            let m = fam.min();
            friend[v] = Some(m);
            families[p] = Family::singlet(m);
            let reg = Registry::new(families)?;
            if p > 0 && reg.families()[p - 1].min() > m {
                // Case (D)′: slide left, enter the right neighbor regularly,
                // move the merged family back to the old slot.
                let (slid, j) = reg.slide_left_wall(p);
                families = slid.families().to_vec();
                let target = families[j + 1].clone();
                if target.is_singlet() {
                    return Err(Error::InvalidRegistry(format!(
                        "orphan {} has no family to enter",
                        m
                    )));
                }
                families[j + 1] = target.regular_entry(m)?;
                families.remove(j);
                let merged = families.remove(j);
                families.insert(p - 1, merged);
            } else {
                let (slid, j) = reg.slide_right_wall(p);
                if j + 1 == slid.len() {
                    // Case (B)′: m was a singlet block; everything to its
                    // right had a larger minimum, so the slide reached the
                    // end. The singlet keeps the small family's old slot.
                    families = reg.families().to_vec();
                } else {
                    families = slid.families().to_vec();
                    // Case (E)′: regular entry into the right neighbor.
                    let target = families[j + 1].clone();
                    if target.is_singlet() {
                        return Err(Error::InvalidRegistry(format!(
                            "orphan {} stopped before a singlet",
                            m
                        )));
                    }
                    families[j + 1] = target.regular_entry(m)?;
                    families.remove(j);
                }
            }
        }
    }
    // Rebuild the line by re-inserting 1..n before their friends.
    let mut line: Vec<usize> = Vec::with_capacity(n);
    for v in 1..=n {
        match friend[v] {
            None => line.push(v),
            Some(m) => {
                let at = line.iter().position(|&x| x == m).unwrap();
                line.insert(at, v);
            }
        }
    }
    Permutation::new(line)
}

/// All stripped registries with range contained in {1..n}; there are n! of
/// them. `budget` caps the result count.
pub fn enumerate_stripped_registries(n: usize, budget: usize) -> Result<Vec<Registry>> {
    // Unordered sets of disjoint nonsinglet families first, then all orders.
    let mut unordered: Vec<Vec<Family>> = Vec::new();
    let elements: Vec<usize> = (1..=n).collect();
    collect_family_sets(&elements, &mut Vec::new(), &mut unordered);
    let mut out = Vec::new();
    for set in unordered {
        for order in permutations_of(set.len()) {
            if out.len() >= budget {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} registries for n = {}",
                    budget, n
                )));
            }
            let families: Vec<Family> = order.iter().map(|&i| set[i].clone()).collect();
            out.push(Registry::new(families).unwrap());
        }
    }
    Ok(out)
}

fn collect_family_sets(remaining: &[usize], acc: &mut Vec<Family>, out: &mut Vec<Vec<Family>>) {
    match remaining.first() {
        None => out.push(acc.clone()),
        Some(&e) => {
            let rest = &remaining[1..];
            // e stays outside the range of the registry.
            collect_family_sets(rest, acc, out);
            // Or e anchors a new family with a nonempty subset of the rest.
            for mask in 1u64..(1 << rest.len()) {
                let mut members = vec![e];
                let mut next = Vec::new();
                for (i, &x) in rest.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        members.push(x);
                    } else {
                        next.push(x);
                    }
                }
                for red_count in 1..members.len() {
                    acc.push(Family::new(members.clone(), red_count).unwrap());
                    collect_family_sets(&next, acc, out);
                    acc.pop();
                }
            }
        }
    }
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    heap_permute(&mut items, k, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    fn r(text: &str) -> Registry {
        Registry::parse(text).unwrap()
    }

    #[test]
    fn worked_example() {
        assert_eq!(decompose(&p("6 7 3 5 4 1 2")), r("((5 4),(6 7 3 1),(2))"));
    }

    #[test]
    fn worked_example_trace() {
        let (_, trace) = decompose_traced(&p("6 7 3 5 4 1 2"));
        let expected = [
            "((1))",
            "((1),(2))",
            "((3 1),(2))",
            "((3 4 1),(2))",
            "((5 4),(3 1),(2))",
            "((5 4),(6 3 1),(2))",
            "((5 4),(6 7 3 1),(2))",
        ];
        let got: Vec<String> = trace.iter().map(|s| s.registry.to_string()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn decompose_small_cases() {
        assert_eq!(decompose(&p("2 1")), r("((2 1))"));
        assert!(decompose_stripped(&Permutation::identity(5)).is_empty());
        assert_eq!(decompose(&Permutation::identity(3)), r("((1),(2),(3))"));
    }

    #[test]
    fn compose_small_cases() {
        assert_eq!(
            compose(&r("((5 4),(6 7 3 1),(2))"), 7).unwrap(),
            p("6 7 3 5 4 1 2")
        );
        assert_eq!(compose(&Registry::empty(), 4).unwrap(), p("1 2 3 4"));
        assert_eq!(compose(&r("((2 1))"), 2).unwrap(), p("2 1"));
    }

    #[test]
    fn compose_rejects_bad_singlet_block() {
        // The singlet (3) cannot be a singlet block ahead of anchor 1.
        assert!(compose(&r("((3),(2 1))"), 3).is_err());
    }

    #[test]
    fn round_trip_n5() {
        for perm in crate::oracle::all_permutations(5) {
            let reg = decompose(&perm);
            assert_eq!(compose(&reg.strip_singlets(), 5).unwrap(), perm);
        }
    }

    #[test]
    fn blockwise_agrees_n5() {
        for perm in crate::oracle::all_permutations(5) {
            assert_eq!(decompose_general(&perm), decompose(&perm));
        }
    }

    #[test]
    fn registry_counts() {
        assert_eq!(enumerate_stripped_registries(2, 10).unwrap().len(), 2);
        assert_eq!(enumerate_stripped_registries(4, 100).unwrap().len(), 24);
        assert!(enumerate_stripped_registries(4, 10).is_err());
    }
}
