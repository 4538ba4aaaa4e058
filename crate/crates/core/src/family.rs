//! Bicolored families in set and sequence form, the entry/exit machinery
//! (fits, exit positions, regular entry), registries with anchors and block
//! subregistries, wall slides, and singlet stripping.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A bicolored family: a set of integers whose `red_count` largest elements
/// are red and the rest blue. A singlet has `red_count` 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    elements: Vec<usize>, // sorted ascending
    red_count: usize,
}

impl Family {
    /// Builds a family from its element set and red count.
    pub fn new(elements: impl IntoIterator<Item = usize>, red_count: usize) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        let elements: Vec<usize> = set.into_iter().collect();
        match elements.len() {
            0 => return Err(Error::InvalidFamily("empty element set".into())),
            1 => {
                if red_count != 0 {
                    return Err(Error::InvalidFamily("a singlet has no red elements".into()));
                }
            }
            n => {
                if red_count == 0 || red_count >= n {
                    return Err(Error::InvalidFamily(format!(
                        "red count {} must lie in 1..={} for {} elements",
                        red_count,
                        n - 1,
                        n
                    )));
                }
            }
        }
        Ok(Family {
            elements,
            red_count,
        })
    }

    /// The singlet family (m).
    pub fn singlet(m: usize) -> Self {
        Family {
            elements: vec![m],
            red_count: 0,
        }
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Number of red elements (0 for singlets).
    pub fn red_count(&self) -> usize {
        self.red_count
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; families are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// True for a one-element family.
    pub fn is_singlet(&self) -> bool {
        self.elements.len() == 1
    }

    /// Smallest element; the family's anchor inside a registry.
    pub fn min(&self) -> usize {
        self.elements[0]
    }

    /// Largest element.
    pub fn max(&self) -> usize {
        *self.elements.last().unwrap()
    }

    /// True iff `x` is in the underlying set.
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The red elements (the `red_count` largest), ascending.
    pub fn reds(&self) -> &[usize] {
        &self.elements[self.elements.len() - self.red_count..]
    }

    /// The blue elements, ascending. A singlet counts as all blue.
    pub fn blues(&self) -> &[usize] {
        &self.elements[..self.elements.len() - self.red_count]
    }

    /// The highest blue b_l (for a singlet, its unique element).
    pub fn highest_blue(&self) -> usize {
        *self.blues().last().unwrap()
    }

    /// Sequence form (a_1,...,a_k,b_l,...,b_1); a singlet yields (m).
    pub fn to_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.reds().to_vec();
        seq.extend(self.blues().iter().rev());
        seq
    }

    /// Parses a sequence form back into a family.
    pub fn from_sequence(seq: &[usize]) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::InvalidFamily("empty sequence".into()));
        }
        if seq.len() == 1 {
            return Ok(Family::singlet(seq[0]));
        }
        // Reds are the maximal strictly increasing prefix.
        let mut k = 1;
        while k < seq.len() && seq[k] > seq[k - 1] {
            k += 1;
        }
        let (reds, blues) = seq.split_at(k);
        if blues.is_empty() {
            return Err(Error::InvalidFamily(format!(
                "({}) has no blue elements",
                join(seq)
            )));
        }
        for w in blues.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::InvalidFamily(format!(
                    "({}) blues are not strictly decreasing",
                    join(seq)
                )));
            }
        }
        if blues[0] >= reds[0] {
            return Err(Error::InvalidFamily(format!(
                "({}) has a blue at least as large as a red",
                join(seq)
            )));
        }
        Family::new(seq.iter().cloned(), k)
    }

    /// True iff a value larger than every element can enter with `m` as friend:
    /// `m` is the highest blue, or the unique red. Singlets always admit entry.
    pub fn fits(&self, m: usize) -> Result<bool> {
        if !self.contains(m) {
            return Err(Error::InvalidFamily(format!(
                "{} is not an element of ({})",
                m,
                join(&self.to_sequence())
            )));
        }
        if self.is_singlet() {
            return Ok(true);
        }
        Ok(m == self.highest_blue() || (self.red_count == 1 && m == self.max()))
    }

    /// The elements whose removal leaves a family with matching regular
    /// re-entry: everything except the highest blue and, when there is a
    /// unique red, that red.
    pub fn exit_positions(&self) -> Result<BTreeSet<usize>> {
        if self.is_singlet() {
            return Err(Error::InvalidFamily(
                "a singlet has no exit positions".into(),
            ));
        }
        let mut exits: BTreeSet<usize> = self.elements.iter().cloned().collect();
        exits.remove(&self.highest_blue());
        if self.red_count == 1 {
            exits.remove(&self.max());
        }
        Ok(exits)
    }

    /// Regular entry of `x`: red iff `x` exceeds the highest blue, existing
    /// colors kept.
    pub fn regular_entry(&self, x: usize) -> Result<Family> {
        if self.is_singlet() {
            return Err(Error::InvalidFamily(
                "regular entry requires at least two elements".into(),
            ));
        }
        if self.contains(x) {
            return Err(Error::InvalidFamily(format!("{} is already an element", x)));
        }
        let mut elements = self.elements.clone();
        let pos = elements.binary_search(&x).unwrap_err();
        elements.insert(pos, x);
        let red_count = if x > self.highest_blue() {
            self.red_count + 1
        } else {
            self.red_count
        };
        Family::new(elements, red_count)
    }

    /// Removes `x`, keeping colors; recolors only when the last blue or the
    /// last red would disappear.
    pub fn remove_element(&self, x: usize) -> Result<Family> {
        if !self.contains(x) {
            return Err(Error::InvalidFamily(format!("{} is not an element", x)));
        }
        if self.is_singlet() {
            return Err(Error::InvalidFamily("cannot remove from a singlet".into()));
        }
        let elements: Vec<usize> = self.elements.iter().cloned().filter(|&e| e != x).collect();
        if elements.len() == 1 {
            return Ok(Family::singlet(elements[0]));
        }
        let was_red = x > self.highest_blue();
        let red_count = if was_red {
            if self.red_count == 1 {
                1 // the highest remaining element turns red
            } else {
                self.red_count - 1
            }
        } else if self.blues().len() == 1 {
            elements.len() - 1 // the lowest remaining element turns blue
        } else {
            self.red_count
        };
        Family::new(elements, red_count)
    }

    /// Entry of `n > max(F)` immediately before its friend `m` in sequence
    /// form. Requires `fits(F, m)`.
    pub fn insert_before(&self, m: usize, n: usize) -> Result<Family> {
        if n <= self.max() {
            return Err(Error::InvalidFamily(format!(
                "{} does not exceed the maximum {}",
                n,
                self.max()
            )));
        }
        if !self.fits(m)? {
            return Err(Error::InvalidFamily(format!(
                "{} does not fit with {} as friend",
                n, m
            )));
        }
        if self.is_singlet() {
            return Family::new([m, n], 1);
        }
        let mut elements = self.elements.clone();
        elements.push(n);
        if m == self.highest_blue() {
            // (a_1..a_k, n, b_l..b_1): n joins the reds.
            Family::new(elements, self.red_count + 1)
        } else {
            // m was the unique red: (n, m, b_l..b_1), m turns blue.
            Family::new(elements, 1)
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.to_sequence()))
    }
}

fn join(seq: &[usize]) -> String {
    seq.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// An ordered sequence of mutually disjoint families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry {
    families: Vec<Family>,
}

/// Block subregistries of a registry: runs ending at successive anchor minima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryBlocks {
    /// 0-based inclusive family-index intervals covering the registry.
    pub blocks: Vec<(usize, usize)>,
    /// The block anchors m_1 < m_2 < ..., one per block.
    pub anchors: Vec<usize>,
}

impl Registry {
    /// Builds a registry, checking pairwise disjointness.
    pub fn new(families: Vec<Family>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for fam in &families {
            for &e in fam.elements() {
                if !seen.insert(e) {
                    return Err(Error::InvalidRegistry(format!(
                        "element {} appears in two families",
                        e
                    )));
                }
            }
        }
        Ok(Registry { families })
    }

    /// The empty registry.
    pub fn empty() -> Self {
        Registry { families: vec![] }
    }

    /// The families in order.
    pub fn families(&self) -> &[Family] {
        &self.families
    }

    /// Number of families.
    pub fn len(&self) -> usize {
        self.families.len()
    }

    /// True for the empty registry.
    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// The union of all family elements.
    pub fn range(&self) -> BTreeSet<usize> {
        self.families
            .iter()
            .flat_map(|f| f.elements().iter().cloned())
            .collect()
    }

    /// Block subregistries by successive minima of family anchors.
    pub fn registry_blocks(&self) -> RegistryBlocks {
        let mins: Vec<usize> = self.families.iter().map(Family::min).collect();
        let mut blocks = Vec::new();
        let mut anchors = Vec::new();
        let mut start = 0;
        while start < mins.len() {
            let mut min_idx = start;
            for i in start..mins.len() {
                if mins[i] < mins[min_idx] {
                    min_idx = i;
                }
            }
            blocks.push((start, min_idx));
            anchors.push(mins[min_idx]);
            start = min_idx + 1;
        }
        RegistryBlocks { blocks, anchors }
    }

    /// Slides the family at `i` left over larger-anchored neighbors; returns
    /// the new registry and the family's final index (its left wall).
    pub fn slide_left_wall(&self, mut i: usize) -> (Registry, usize) {
        let mut families = self.families.clone();
        while i > 0 && families[i - 1].min() > families[i].min() {
            families.swap(i - 1, i);
            i -= 1;
        }
        (Registry { families }, i)
    }

    /// Slides the family at `i` right over larger-anchored neighbors; returns
    /// the new registry and the family's final index (its right wall).
    pub fn slide_right_wall(&self, mut i: usize) -> (Registry, usize) {
        let mut families = self.families.clone();
        while i + 1 < families.len() && families[i + 1].min() > families[i].min() {
            families.swap(i, i + 1);
            i += 1;
        }
        (Registry { families }, i)
    }

    /// Removes every singlet family.
    pub fn strip_singlets(&self) -> Registry {
        Registry {
            families: self
                .families
                .iter()
                .filter(|f| !f.is_singlet())
                .cloned()
                .collect(),
        }
    }

    /// Reintroduces the elements of {1..n} missing from the range, each as a
    /// singlet block: `s` goes immediately after the last block whose anchor
    /// is below `s`.
    pub fn insert_singlets(&self, n: usize) -> Result<Registry> {
        let range = self.range();
        if let Some(&m) = range.iter().next_back() {
            if m > n {
                return Err(Error::InvalidRegistry(format!(
                    "range contains {} which exceeds n = {}",
                    m, n
                )));
            }
        }
        let mut reg = self.clone();
        for s in 1..=n {
            if range.contains(&s) {
                continue;
            }
            let rb = reg.registry_blocks();
            // Insert after the last block with anchor < s (all anchors differ from s).
            let mut pos = 0;
            for (b, &(_, end)) in rb.blocks.iter().enumerate() {
                if rb.anchors[b] < s {
                    pos = end + 1;
                }
            }
            reg.families.insert(pos, Family::singlet(s));
        }
        Ok(reg)
    }

    /// Parses "((5 4),(6 7 3 1),(2))" into a registry.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse("registry must be wrapped in parentheses".into()))?;
        let mut families = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for c in inner.chars() {
            match c {
                '(' => {
                    depth += 1;
                    if depth > 1 {
                        return Err(Error::Parse("nested parentheses in registry".into()));
                    }
                    current.clear();
                }
                ')' => {
                    if depth == 0 {
                        return Err(Error::Parse("unbalanced parentheses".into()));
                    }
                    depth -= 1;
                    let seq: Vec<usize> = current
                        .split(|ch: char| ch.is_whitespace() || ch == ',')
                        .filter(|t| !t.is_empty())
                        .map(|t| {
                            t.parse()
                                .map_err(|_| Error::Parse(format!("bad element '{}'", t)))
                        })
                        .collect::<Result<_>>()?;
                    families.push(Family::from_sequence(&seq)?);
                }
                _ if depth == 1 => current.push(c),
                c if c.is_whitespace() || c == ',' => {}
                c => return Err(Error::Parse(format!("unexpected character '{}'", c))),
            }
        }
        if depth != 0 {
            return Err(Error::Parse("unbalanced parentheses".into()));
        }
        Registry::new(families)
    }
}

impl fmt::Display for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.families.iter().map(|fam| fam.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(seq: &[usize]) -> Family {
        Family::from_sequence(seq).unwrap()
    }

    #[test]
    fn sequence_round_trip() {
        let f = Family::new([2, 3, 5, 6, 7], 2).unwrap();
        assert_eq!(f.to_sequence(), vec![6, 7, 5, 3, 2]);
        assert_eq!(Family::from_sequence(&[6, 7, 5, 3, 2]).unwrap(), f);
        assert_eq!(fam(&[2, 1]), Family::new([1, 2], 1).unwrap());
        // (7,5,2) parses with 7 as the unique red.
        assert_eq!(fam(&[7, 5, 2]).red_count(), 1);
        // Two reds above a single blue would need 5 > 7 in the red run.
        assert!(Family::from_sequence(&[5, 7, 2]).is_ok());
        assert!(Family::from_sequence(&[7, 2, 5]).is_err());
        assert!(Family::from_sequence(&[2, 3]).is_err());
    }

    #[test]
    fn fits_examples() {
        let f = fam(&[6, 8, 9, 3, 2]);
        assert!(f.fits(3).unwrap());
        assert!(!f.fits(6).unwrap());
        assert!(!f.fits(9).unwrap());
        assert!(Family::singlet(4).fits(4).unwrap());
        let unique_red = fam(&[5, 3, 1]);
        assert!(unique_red.fits(5).unwrap());
        assert!(unique_red.fits(3).unwrap());
        assert!(!unique_red.fits(1).unwrap());
        assert!(f.fits(7).is_err());
    }

    #[test]
    fn exit_position_examples() {
        let small = fam(&[9, 4]);
        assert!(small.exit_positions().unwrap().is_empty());
        let f = fam(&[6, 8, 9, 3, 2]);
        let exits: Vec<usize> = f.exit_positions().unwrap().into_iter().collect();
        assert_eq!(exits, vec![2, 6, 8, 9]);
        let exits: Vec<usize> = fam(&[5, 3, 1])
            .exit_positions()
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(exits, vec![1]);
    }

    #[test]
    fn regular_entry_examples() {
        // 4 entering (3 1) keeps 3 red: {1,3,4} with two reds.
        assert_eq!(fam(&[3, 1]).regular_entry(4).unwrap(), fam(&[3, 4, 1]));
        let f = Family::new([1, 3, 5, 6], 2).unwrap();
        assert_eq!(
            f.regular_entry(2).unwrap(),
            Family::new([1, 2, 3, 5, 6], 2).unwrap()
        );
        assert_eq!(
            fam(&[6, 3, 1]).regular_entry(7).unwrap(),
            fam(&[6, 7, 3, 1])
        );
        assert!(f.regular_entry(5).is_err());
    }

    #[test]
    fn remove_examples() {
        assert_eq!(fam(&[3, 4, 1]).remove_element(4).unwrap(), fam(&[3, 1]));
        // Removing the only blue recolors the lowest survivor blue.
        assert_eq!(fam(&[3, 4, 1]).remove_element(1).unwrap(), fam(&[4, 3]));
        // Removing the only red recolors the highest survivor red.
        assert_eq!(fam(&[7, 5, 2]).remove_element(7).unwrap(), fam(&[5, 2]));
        assert_eq!(fam(&[5, 2]).remove_element(5).unwrap(), Family::singlet(2));
    }

    #[test]
    fn entry_exit_round_trip_small() {
        let f = fam(&[6, 8, 9, 3, 2]);
        for x in f.exit_positions().unwrap() {
            assert_eq!(f.remove_element(x).unwrap().regular_entry(x).unwrap(), f);
        }
    }

    #[test]
    fn insert_before_examples() {
        // Before the highest blue: red count grows.
        assert_eq!(
            fam(&[6, 3, 1]).insert_before(3, 7).unwrap(),
            fam(&[6, 7, 3, 1])
        );
        // Before the unique red: the old red turns blue.
        assert_eq!(fam(&[3, 1]).insert_before(3, 5).unwrap(), fam(&[5, 3, 1]));
        // Singlet friend.
        assert_eq!(
            Family::singlet(2).insert_before(2, 6).unwrap(),
            fam(&[6, 2])
        );
        assert!(fam(&[6, 8, 9, 3, 2]).insert_before(6, 10).is_err());
    }

    #[test]
    fn registry_blocks_examples() {
        let r = Registry::parse("((5 4),(6 7 3 1),(2))").unwrap();
        let rb = r.registry_blocks();
        assert_eq!(rb.blocks, vec![(0, 1), (2, 2)]);
        assert_eq!(rb.anchors, vec![1, 2]);
        let r2 = Registry::parse("((2 1),(4 3))").unwrap();
        assert_eq!(r2.registry_blocks().anchors, vec![1, 3]);
        let single = Registry::parse("((6 8 9 3 2))").unwrap();
        assert_eq!(single.registry_blocks().blocks, vec![(0, 0)]);
    }

    #[test]
    fn slide_examples() {
        let r = Registry::parse("((9 3 1),(7 4),(8),(6 5 2))").unwrap();
        let (slid, i) = r.slide_left_wall(3);
        assert_eq!(
            slid,
            Registry::parse("((9 3 1),(6 5 2),(7 4),(8))").unwrap()
        );
        assert_eq!(i, 1);
        let (same, i0) = r.slide_left_wall(0);
        assert_eq!(same, r);
        assert_eq!(i0, 0);
        let (right, ir) = slid.slide_right_wall(1);
        assert_eq!(right, r);
        assert_eq!(ir, 3);
    }

    #[test]
    fn singlet_stripping() {
        let r = Registry::parse("((5 4),(6 7 3 1),(2))").unwrap();
        let stripped = r.strip_singlets();
        assert_eq!(stripped, Registry::parse("((5 4),(6 7 3 1))").unwrap());
        assert_eq!(stripped.insert_singlets(7).unwrap(), r);
        let empty = Registry::empty();
        assert_eq!(
            empty.insert_singlets(3).unwrap(),
            Registry::parse("((1),(2),(3))").unwrap()
        );
        assert!(stripped.insert_singlets(5).is_err());
    }

    #[test]
    fn registry_display_round_trip() {
        let text = "((5 4),(6 7 3 1),(2))";
        assert_eq!(Registry::parse(text).unwrap().to_string(), text);
    }

    #[test]
    fn registry_rejects_overlap() {
        assert!(Registry::parse("((2 1),(3 1))").is_err());
    }
}
