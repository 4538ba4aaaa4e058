//! The decimal code of a permutation: library-style dot-separated labels,
//! one per value, encoding blocks, branches, bud pairings and colors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::primitive::{build_primitive, primitive_to_pairing, PairingSequence, PrimEntry};
use crate::tree::{parenthesize, tree_nodes, ParenNode, TreeNode};

/// The terminal color of a decimal number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Color {
    /// Ascent values.
    Red,
    /// Descent values.
    Blue,
    /// Singlet blocks.
    Black,
}

impl Color {
    /// The single-letter form: r, b, or k.
    pub fn letter(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
            Color::Black => 'k',
        }
    }

    /// Parses the single-letter form.
    pub fn from_letter(c: char) -> Result<Self> {
        match c {
            'r' => Ok(Color::Red),
            'b' => Ok(Color::Blue),
            'k' => Ok(Color::Black),
            other => Err(Error::Parse(format!("unknown color letter '{}'", other))),
        }
    }
}

/// One decimal number: a nonempty digit head plus a terminal color.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DecimalNumber {
    /// The dot-separated positive digits, e.g. [2, 3, 1, 1].
    pub digits: Vec<usize>,
    /// The terminal color letter.
    pub terminal: Color,
}

impl DecimalNumber {
    /// Builds a decimal number, requiring a nonempty all-positive head.
    pub fn new(digits: Vec<usize>, terminal: Color) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidCode("empty decimal head".into()));
        }
        if digits.iter().any(|&d| d == 0) {
            return Err(Error::InvalidCode("decimal digits must be positive".into()));
        }
        Ok(DecimalNumber { digits, terminal })
    }

    /// Parses the dotted text form, e.g. "2.3.1.1.b".
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts: Vec<&str> = text.trim().split('.').collect();
        let last = parts
            .pop()
            .ok_or_else(|| Error::Parse("empty decimal number".into()))?;
        let mut chars = last.chars();
        let (Some(letter), None) = (chars.next(), chars.next()) else {
            return Err(Error::Parse(format!(
                "decimal number '{}' must end in a single color letter",
                text
            )));
        };
        let terminal = Color::from_letter(letter)?;
        if parts.is_empty() {
            return Err(Error::Parse(format!(
                "decimal number '{}' has no digits",
                text
            )));
        }
        let digits: Vec<usize> = parts
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| Error::Parse(format!("bad decimal digit '{}'", t)))
            })
            .collect::<Result<_>>()?;
        DecimalNumber::new(digits, terminal)
    }
}

impl fmt::Display for DecimalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{}.", d)?;
        }
        write!(f, "{}", self.terminal.letter())
    }
}

/// An ordered list of decimal numbers; entry at position v describes value v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalCode {
    entries: Vec<DecimalNumber>,
}

impl DecimalCode {
    /// Wraps a list of entries; use [`validate`] for the axioms.
    pub fn from_entries(entries: Vec<DecimalNumber>) -> Self {
        DecimalCode { entries }
    }

    /// The entries in value order.
    pub fn entries(&self) -> &[DecimalNumber] {
        &self.entries
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when there are no entries.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses the one-entry-per-line text form.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(DecimalNumber::parse)
            .collect::<Result<_>>()?;
        Ok(DecimalCode { entries })
    }
}

impl fmt::Display for DecimalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}

/// One term of a node cut: the two digits after the head, interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutTerm {
    /// n.1 — the founder of bud n, opening the pair.
    Open(usize),
    /// n.2 — the cofounder of bud n, closing the pair.
    Close(usize),
    /// n.c — an active-family member with its color.
    Leaf(usize, Color),
}

impl fmt::Display for CutTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutTerm::Open(n) => write!(f, "{}.1", n),
            CutTerm::Close(n) => write!(f, "{}.2", n),
            CutTerm::Leaf(n, c) => write!(f, "{}.{}", n, c.letter()),
        }
    }
}

/// Renders a node cut as a space-separated line, e.g. "1.1 2.1 3.b".
pub fn format_cut(cut: &[CutTerm]) -> String {
    cut.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A single axiom violation found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The 1-based code entry the violation is pinned to, when one exists.
    pub entry: Option<usize>,
    /// The branch head the violation belongs to, when head-scoped.
    pub head: Option<Vec<usize>>,
    /// A short axiom label, e.g. "cut-natural-order".
    pub axiom: &'static str,
    /// Human-readable detail.
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = self.entry {
            write!(f, "entry {}: ", e)?;
        }
        if let Some(h) = &self.head {
            let txt: Vec<String> = h.iter().map(|d| d.to_string()).collect();
            write!(f, "head {}: ", txt.join("."))?;
        }
        write!(f, "{}: {}", self.axiom, self.message)
    }
}

/// The outcome of checking every code axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// All violations found, in detection order.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// True when no axiom is violated.
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

/// Encodes a permutation into its decimal code (singlets terminated black).
pub fn encode(p: &Permutation) -> DecimalCode {
    encode_opts(p, false)
}

/// Encodes with a choice of singlet terminal: black, or red when
/// `red_singlets` is set (singlets are ascent values, so both are sound).
pub fn encode_opts(p: &Permutation, red_singlets: bool) -> DecimalCode {
    let n = p.len();
    let classes = p.classify_values();
    let forest = tree_nodes(&parenthesize(p));
    let mut labels: Vec<Option<DecimalNumber>> = vec![None; n + 1];
    for (bi, tree) in forest.iter().enumerate() {
        let block = bi + 1;
        if tree.node.buds.is_empty() && tree.node.active.len() == 1 {
            let v = tree.node.active[0];
            let terminal = if red_singlets {
                Color::Red
            } else {
                Color::Black
            };
            labels[v] = Some(DecimalNumber {
                digits: vec![block],
                terminal,
            });
        } else {
            label_branch(tree, vec![block], &classes.ascent_values, &mut labels);
        }
    }
    let entries = labels
        .into_iter()
        .skip(1)
        .map(|l| l.expect("every value receives a decimal number"))
        .collect();
    DecimalCode { entries }
}

/// Labels every active value of this node and recurses into its buds.
fn label_branch(
    tree: &TreeNode,
    head: Vec<usize>,
    ascents: &std::collections::BTreeSet<usize>,
    labels: &mut [Option<DecimalNumber>],
) {
    let (pairing, _) =
        primitive_to_pairing(&tree.node.pattern).expect("tree node patterns are primitive");
    // The j-th pairing term describes the j-th smallest element of the node.
    let mut elements: Vec<usize> = tree.node.active.clone();
    for &(hi, lo) in &tree.node.buds {
        elements.push(hi);
        elements.push(lo);
    }
    elements.sort_unstable();
    let child_by_founder: BTreeMap<usize, &TreeNode> = tree
        .node
        .buds
        .iter()
        .zip(&tree.children)
        .map(|(&(_, lo), child)| (lo, child))
        .collect();
    let closed: std::collections::BTreeSet<usize> = pairing
        .inds()
        .iter()
        .filter(|&&i| i < 0)
        .map(|&i| (-i) as usize)
        .collect();
    for (j, &ind) in pairing.inds().iter().enumerate() {
        if ind < 0 {
            continue; // the cofounder is labeled inside its own branch
        }
        let n = ind as usize;
        let e = elements[j];
        if closed.contains(&n) {
            // e founds bud n; the branch below it gets the head extended by n.
            let child = child_by_founder[&e];
            let mut child_head = head.clone();
            child_head.push(n);
            label_branch(child, child_head, ascents, labels);
        } else {
            let mut digits = head.clone();
            digits.push(n);
            let terminal = if ascents.contains(&e) {
                Color::Red
            } else {
                Color::Blue
            };
            labels[e] = Some(DecimalNumber { digits, terminal });
        }
    }
}

/// The node cut of a branch head: the interpreted two-digit continuations.
pub fn node_cut(c: &DecimalCode, head: &[usize]) -> Result<Vec<CutTerm>> {
    Ok(node_cut_indexed(c, head)?
        .into_iter()
        .map(|(t, _)| t)
        .collect())
}

/// Node cut terms paired with the 1-based index of their source entry.
fn node_cut_indexed(c: &DecimalCode, head: &[usize]) -> Result<Vec<(CutTerm, usize)>> {
    let hl = head.len();
    let extending = c
        .entries
        .iter()
        .any(|e| e.digits.len() > hl && e.digits[..hl] == *head);
    if !extending {
        return Err(Error::InvalidCode(format!(
            "{} is not a branch head",
            head.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(".")
        )));
    }
    let mut out = Vec::new();
    for (i, e) in c.entries.iter().enumerate() {
        let d = &e.digits;
        if d.len() <= hl || d[..hl] != *head {
            continue;
        }
        let term = if d.len() == hl + 1 {
            Some(CutTerm::Leaf(d[hl], e.terminal))
        } else {
            let (n, next) = (d[hl], d[hl + 1]);
            // Keep h.n.n' only when n' opens or closes a bud and the entry
            // continues as all 1s then a color (the founder chain).
            match next {
                1 | 2 if d[hl + 2..].iter().all(|&x| x == 1) => Some(if next == 1 {
                    CutTerm::Open(n)
                } else {
                    CutTerm::Close(n)
                }),
                _ => None,
            }
        };
        if let Some(t) = term {
            out.push((t, i + 1));
        }
    }
    Ok(out)
}

/// Checks the colored-pairing conditions of one node cut, reporting every
/// violation; returns the pairing sequence and red count when clean.
fn check_cut(
    head: &[usize],
    cut: &[(CutTerm, usize)],
    violations: &mut Vec<Violation>,
) -> Option<(PairingSequence, usize)> {
    let at = |axiom: &'static str, entry: usize, message: String| Violation {
        entry: Some(entry),
        head: Some(head.to_vec()),
        axiom,
        message,
    };
    let before = violations.len();
    let mut next = 1usize;
    let mut open: std::collections::BTreeSet<usize> = Default::default();
    let mut inds: Vec<i64> = Vec::new();
    let mut reds = 0usize;
    let mut blues = 0usize;
    let mut seen_red = false;
    for &(term, idx) in cut {
        match term {
            CutTerm::Open(n) | CutTerm::Leaf(n, _) => {
                if n != next {
                    violations.push(at(
                        "cut-natural-order",
                        idx,
                        format!("expected label {} but found {}", next, n),
                    ));
                    return None;
                }
                next += 1;
                inds.push(n as i64);
                if let CutTerm::Open(n) = term {
                    open.insert(n);
                } else if let CutTerm::Leaf(_, c) = term {
                    match c {
                        Color::Blue => {
                            if seen_red {
                                violations.push(at(
                                    "cut-leaf-colors",
                                    idx,
                                    "a blue leaf appears after a red one".into(),
                                ));
                            }
                            blues += 1;
                        }
                        Color::Red => {
                            seen_red = true;
                            reds += 1;
                        }
                        Color::Black => violations.push(at(
                            "black-terminal",
                            idx,
                            "black is reserved for singlet anchors".into(),
                        )),
                    }
                }
            }
            CutTerm::Close(n) => {
                if !open.remove(&n) {
                    violations.push(at(
                        "cut-pairing",
                        idx,
                        format!("{}.2 has no earlier unmatched {}.1", n, n),
                    ));
                    return None;
                }
                inds.push(-(n as i64));
            }
        }
    }
    if !open.is_empty() {
        let stray = *open.iter().next().unwrap();
        violations.push(Violation {
            entry: None,
            head: Some(head.to_vec()),
            axiom: "cut-pairing",
            message: format!("{}.1 is never closed by {}.2", stray, stray),
        });
    }
    if blues == 0 || reds == 0 {
        violations.push(Violation {
            entry: None,
            head: Some(head.to_vec()),
            axiom: "cut-leaf-colors",
            message: format!(
                "leaves must include both colors (found {} blue, {} red)",
                blues, reds
            ),
        });
    }
    // Sign partial sums ≥ 2 from the second term on.
    let mut sum = 0i64;
    for (k, &(term, idx)) in cut.iter().enumerate() {
        sum += if matches!(term, CutTerm::Close(_)) {
            -1
        } else {
            1
        };
        if k >= 1 && sum < 2 {
            violations.push(at(
                "cut-dyck",
                idx,
                format!("partial sign sum drops to {} at term {}", sum, k + 1),
            ));
            return None;
        }
    }
    if violations.len() > before {
        return None;
    }
    match PairingSequence::new(inds) {
        Ok(p) => Some((p, reds)),
        Err(e) => {
            violations.push(Violation {
                entry: None,
                head: Some(head.to_vec()),
                axiom: "cut-pairing",
                message: e.to_string(),
            });
            None
        }
    }
}

/// Interprets a node cut as a pairing sequence plus red count.
pub fn cut_pairing(cut: &[CutTerm]) -> Result<(PairingSequence, usize)> {
    let indexed: Vec<(CutTerm, usize)> = cut.iter().map(|&t| (t, 0)).collect();
    let mut violations = Vec::new();
    check_cut(&[], &indexed, &mut violations)
        .ok_or_else(|| Error::InvalidCode(violations[0].to_string()))
}

/// Checks every code axiom and reports all violations found.
pub fn validate(c: &DecimalCode) -> ValidationReport {
    let mut violations = Vec::new();
    // Structural per-entry checks.
    for (i, e) in c.entries.iter().enumerate() {
        if e.digits.is_empty() {
            violations.push(Violation {
                entry: Some(i + 1),
                head: None,
                axiom: "digit-positive",
                message: "empty digit head".into(),
            });
        }
        if e.digits.iter().any(|&d| d == 0) {
            violations.push(Violation {
                entry: Some(i + 1),
                head: None,
                axiom: "digit-positive",
                message: "digits must be positive".into(),
            });
        }
        if e.terminal == Color::Black && e.digits.len() != 1 {
            violations.push(Violation {
                entry: Some(i + 1),
                head: None,
                axiom: "black-terminal",
                message: "black is reserved for singlet anchors".into(),
            });
        }
    }
    if violations.iter().any(|v| v.axiom == "digit-positive") {
        return ValidationReport { violations };
    }
    // Head uniformity: each head continues with one color only, or numbers only.
    let mut color_at: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    let mut extended: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    for (i, e) in c.entries.iter().enumerate() {
        let d = &e.digits;
        color_at.entry(&d[..]).or_default().push(i + 1);
        for l in 1..d.len() {
            extended.entry(&d[..l]).or_default().push(i + 1);
        }
    }
    for (head, entries) in &color_at {
        if entries.len() > 1 {
            violations.push(Violation {
                entry: Some(entries[1]),
                head: Some(head.to_vec()),
                axiom: "leaf-unique",
                message: format!("leaf head repeated (first at entry {})", entries[0]),
            });
        }
        if let Some(exts) = extended.get(head) {
            violations.push(Violation {
                entry: Some(exts[0]),
                head: Some(head.to_vec()),
                axiom: "head-uniformity",
                message: format!(
                    "head is both a leaf (entry {}) and extended by numbers",
                    entries[0]
                ),
            });
        }
    }
    // Block labels form {1..m}.
    let m = c.entries.iter().map(|e| e.digits[0]).max().unwrap_or(0);
    for i in 1..=m {
        if !c.entries.iter().any(|e| e.digits[0] == i) {
            violations.push(Violation {
                entry: None,
                head: None,
                axiom: "block-labels",
                message: format!("block label {} missing (labels must form 1..{})", i, m),
            });
        }
    }
    // Anchors: exactly one i.1.…1.c per block, right color, ascending order.
    let mut anchor_pos: Vec<Option<usize>> = vec![None; m + 1];
    for i in 1..=m {
        let candidates: Vec<usize> = c
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.digits[0] == i && e.digits[1..].iter().all(|&d| d == 1))
            .map(|(idx, _)| idx + 1)
            .collect();
        match candidates.as_slice() {
            [] => violations.push(Violation {
                entry: None,
                head: None,
                axiom: "anchor-missing",
                message: format!("block {} has no anchor {}.1.…1.c", i, i),
            }),
            [one] => {
                anchor_pos[i] = Some(*one);
                let e = &c.entries[*one - 1];
                let singlet = e.digits.len() == 1;
                let ok = if singlet {
                    matches!(e.terminal, Color::Black | Color::Red)
                } else {
                    e.terminal == Color::Blue
                };
                if !ok {
                    violations.push(Violation {
                        entry: Some(*one),
                        head: None,
                        axiom: "anchor-color",
                        message: if singlet {
                            "a singlet anchor must end in k or r".into()
                        } else {
                            "a nonsinglet block anchor must end in b".into()
                        },
                    });
                }
            }
            many => violations.push(Violation {
                entry: Some(many[1]),
                head: None,
                axiom: "anchor-duplicate",
                message: format!("block {} has {} anchors", i, many.len()),
            }),
        }
    }
    for i in 2..=m {
        if let (Some(a), Some(b)) = (anchor_pos[i - 1], anchor_pos[i]) {
            if a >= b {
                violations.push(Violation {
                    entry: Some(b),
                    head: None,
                    axiom: "anchor-order",
                    message: format!(
                        "anchor of block {} (entry {}) precedes anchor of block {} (entry {})",
                        i,
                        b,
                        i - 1,
                        a
                    ),
                });
            }
        }
    }
    // Every branch head's node cut is a colored pairing sequence encoding a
    // primitive permutation.
    let branch_heads: Vec<Vec<usize>> = extended
        .keys()
        .filter(|h| !color_at.contains_key(*h))
        .map(|h| h.to_vec())
        .collect();
    for head in branch_heads {
        let cut = node_cut_indexed(c, &head).expect("extended heads are branch heads");
        if let Some((pairing, reds)) = check_cut(&head, &cut, &mut violations) {
            if let Err(e) = build_primitive(&pairing, reds) {
                violations.push(Violation {
                    entry: None,
                    head: Some(head),
                    axiom: "cut-primitive",
                    message: e.to_string(),
                });
            }
        }
    }
    ValidationReport { violations }
}

/// Decodes a valid code back to its permutation.
pub fn decode(c: &DecimalCode) -> Result<Permutation> {
    let report = validate(c);
    if !report.is_valid() {
        return Err(Error::InvalidCode(format!(
            "invalid decimal code: {}",
            report.violations[0]
        )));
    }
    let positions: BTreeMap<&[usize], usize> = c
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| (&e.digits[..], i + 1))
        .collect();
    let m = c.entries.iter().map(|e| e.digits[0]).max().unwrap_or(0);
    let mut values = Vec::new();
    for i in 1..=m {
        if let Some(&v) = positions.get(&[i][..]) {
            values.push(v); // a singlet block
        } else {
            let group = build_branch(c, &[i], &positions)?;
            flatten_group(&group, &mut values);
        }
    }
    Permutation::new(values)
        .map_err(|e| Error::InvalidCode(format!("entries do not assemble to a permutation: {}", e)))
}

/// Builds the parenthesized group of one branch head, with values replaced by
/// their entry positions in the code.
fn build_branch(
    c: &DecimalCode,
    head: &[usize],
    positions: &BTreeMap<&[usize], usize>,
) -> Result<Vec<ParenNode>> {
    let cut = node_cut(c, head)?;
    let (pairing, reds) = cut_pairing(&cut)?;
    let prim = build_primitive(&pairing, reds)?;
    let mut out = Vec::new();
    for entry in prim.entries() {
        match *entry {
            PrimEntry::Value(v) => {
                let CutTerm::Leaf(n, _) = cut[v - 1] else {
                    return Err(Error::InvalidCode(format!(
                        "cut term {} of a branch is not a leaf where its primitive is active",
                        v
                    )));
                };
                let mut digits = head.to_vec();
                digits.push(n);
                let pos = positions
                    .get(&digits[..])
                    .expect("leaf cut terms come from entries of the code");
                out.push(ParenNode::Value(*pos));
            }
            PrimEntry::Bud(_, lo) => {
                let CutTerm::Open(n) = cut[lo - 1] else {
                    return Err(Error::InvalidCode(format!(
                        "cut term {} of a branch is not an opener where its primitive has a bud",
                        lo
                    )));
                };
                let mut child_head = head.to_vec();
                child_head.push(n);
                out.push(ParenNode::Group(build_branch(c, &child_head, positions)?));
            }
        }
    }
    Ok(out)
}

fn flatten_group(group: &[ParenNode], out: &mut Vec<usize>) {
    for node in group {
        match node {
            ParenNode::Value(v) => out.push(*v),
            ParenNode::Group(child) => flatten_group(child, out),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::all_permutations;

    fn p(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    const GOLDEN_PERM: &str = "3 16 9 19 1 20 4 18 10 13 7 11 14 8 12 6 2 15 17 5";
    const GOLDEN_CODE: &str = "\
1.1.b
2.1.b
1.2.r
2.2.b
3.1.b
2.3.1.1.b
2.3.2.1.b
2.3.3.b
1.3.1.b
2.3.2.2.1.b
2.3.4.r
2.3.1.2.r
2.3.2.3.r
2.3.5.r
3.2.r
1.3.2.r
3.3.r
2.3.2.2.2.r
1.4.r
2.4.r";

    #[test]
    fn number_text_round_trip() {
        for text in ["2.3.1.1.b", "1.k", "14.2.r"] {
            assert_eq!(DecimalNumber::parse(text).unwrap().to_string(), text);
        }
        assert!(DecimalNumber::parse("b").is_err());
        assert!(DecimalNumber::parse("1.2").is_err());
        assert!(DecimalNumber::parse("1.0.b").is_err());
        assert!(DecimalNumber::parse("1.x").is_err());
        assert!(DecimalNumber::parse("1..b").is_err());
    }

    #[test]
    fn encode_small() {
        assert_eq!(encode(&Permutation::identity(2)).to_string(), "1.k\n2.k");
        assert_eq!(encode(&p("2 1")).to_string(), "1.1.b\n1.2.r");
        assert_eq!(
            encode(&p("6 7 3 5 4 1 2")).to_string(),
            "1.1.b\n2.k\n1.2.b\n1.3.1.b\n1.3.2.r\n1.4.r\n1.5.r"
        );
        assert_eq!(
            encode_opts(&Permutation::identity(2), true).to_string(),
            "1.r\n2.r"
        );
    }

    #[test]
    fn golden_encode() {
        assert_eq!(encode(&p(GOLDEN_PERM)).to_string(), GOLDEN_CODE);
    }

    #[test]
    fn golden_node_cut() {
        let c = DecimalCode::parse(GOLDEN_CODE).unwrap();
        let cut = node_cut(&c, &[2, 3]).unwrap();
        assert_eq!(format_cut(&cut), "1.1 2.1 3.b 2.2 4.r 1.2 5.r");
        let (pairing, reds) = cut_pairing(&cut).unwrap();
        assert_eq!(pairing.inds(), [1, 2, 3, -2, 4, -1, 5]);
        assert_eq!(reds, 2);
        let prim = build_primitive(&pairing, reds).unwrap();
        assert_eq!(prim.to_string(), "((4 2) 5 7 3 (6 1))");
        assert!(node_cut(&c, &[2, 4]).is_err());
    }

    #[test]
    fn golden_decode() {
        let c = DecimalCode::parse(GOLDEN_CODE).unwrap();
        assert!(validate(&c).is_valid());
        let perm = decode(&c).unwrap();
        assert_eq!(perm, p(GOLDEN_PERM));
        assert_eq!(
            parenthesize(&perm).to_string(),
            "(3 (16 9) 19 1)(20 4 (((18 10) 13 7) 11 14 8 (12 6)) 2)(15 17 5)"
        );
    }

    #[test]
    fn decode_small() {
        assert_eq!(
            decode(&DecimalCode::parse("1.k").unwrap()).unwrap(),
            Permutation::identity(1)
        );
        assert_eq!(
            decode(&DecimalCode::parse("1.1.b\n1.2.r").unwrap()).unwrap(),
            p("2 1")
        );
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 0..=6 {
            for perm in all_permutations(n) {
                let code = encode(&perm);
                assert!(validate(&code).is_valid(), "{} -> {}", perm, code);
                assert_eq!(decode(&code).unwrap(), perm, "{}", code);
                let text = code.to_string();
                assert_eq!(DecimalCode::parse(&text).unwrap(), code);
            }
        }
    }

    #[test]
    fn colors_match_classification() {
        for perm in all_permutations(6) {
            let classes = perm.classify_values();
            let code = encode(&perm);
            for (i, e) in code.entries().iter().enumerate() {
                let v = i + 1;
                let want = if classes.singlet_values.contains(&v) {
                    Color::Black
                } else if classes.ascent_values.contains(&v) {
                    Color::Red
                } else {
                    Color::Blue
                };
                assert_eq!(e.terminal, want, "{} value {}", perm, v);
            }
        }
    }

    #[test]
    fn block_heads_are_blocks() {
        for perm in all_permutations(6) {
            let code = encode(&perm);
            let blocks = perm.blocks();
            for i in 1..=blocks.len() {
                let mut want = blocks.block_values(&perm, i - 1);
                want.sort_unstable();
                let got: Vec<usize> = code
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.digits[0] == i)
                    .map(|(j, _)| j + 1)
                    .collect();
                assert_eq!(got, want, "{} block {}", perm, i);
            }
        }
    }

    /// Applies one edit to the golden code and expects a localized violation.
    fn expect_violation(mutate: impl FnOnce(&mut Vec<DecimalNumber>), axiom: &str, locus: &str) {
        let mut entries = DecimalCode::parse(GOLDEN_CODE).unwrap().entries().to_vec();
        mutate(&mut entries);
        let code = DecimalCode::from_entries(entries);
        let report = validate(&code);
        let hit = report
            .violations
            .iter()
            .find(|v| v.axiom == axiom && v.to_string().contains(locus));
        assert!(
            hit.is_some(),
            "expected {} at '{}' among: {}",
            axiom,
            locus,
            report
        );
        assert!(decode(&code).is_err());
    }

    #[test]
    fn validator_localizes_faults() {
        // 1. Swapping the first two anchors breaks their ascending order.
        expect_violation(|e| e.swap(0, 1), "anchor-order", "entry 1");
        // 2. 2.2.b → 2.3.b collides with the branch head 2.3.
        expect_violation(
            |e| e[3] = DecimalNumber::parse("2.3.b").unwrap(),
            "head-uniformity",
            "head 2.3",
        );
        // 3. Relabeling 1.4.r into block 5 leaves a gap in the block labels.
        expect_violation(|e| e[18].digits[0] = 5, "block-labels", "label 4");
        // Relabeling the anchor 3.1.b strands block 3 without an anchor.
        expect_violation(|e| e[4].digits[0] = 4, "anchor-missing", "block 3");
        // 4. Deleting the anchor of block 2 is reported as missing.
        expect_violation(
            |e| {
                e.remove(1);
            },
            "anchor-missing",
            "block 2",
        );
        // 5. A duplicated entry repeats a leaf head.
        expect_violation(|e| e.push(e[18].clone()), "leaf-unique", "head 1.4");
        // 6. Recoloring 2.3.3.b red leaves its node with no blue leaf.
        expect_violation(
            |e| e[7].terminal = Color::Red,
            "cut-leaf-colors",
            "head 2.3",
        );
        // 7. A nonsinglet anchor must stay blue.
        expect_violation(|e| e[0].terminal = Color::Red, "anchor-color", "entry 1");
        // 8. 2.3.2.2.1.b → 2.3.2.2.3.b breaks the natural label order.
        expect_violation(|e| e[9].digits[4] = 3, "cut-natural-order", "head 2.3.2.2");
        // ... and leaves the bud opener 2.1 of head 2.3 without its closer.
        expect_violation(|e| e[9].digits[4] = 3, "cut-pairing", "head 2.3");
        // 9. 2.3.1.2.r → 2.3.1.1.r duplicates the leaf head 2.3.1.1.
        expect_violation(|e| e[11].digits[3] = 1, "leaf-unique", "head 2.3.1.1");
        // 10. A black terminal deep in a branch is rejected.
        expect_violation(
            |e| e[19].terminal = Color::Black,
            "black-terminal",
            "entry 20",
        );
        // 11. A zero digit is rejected outright.
        expect_violation(|e| e[14].digits[1] = 0, "digit-positive", "entry 15");
        // 12. An appended 2.6.r skips label 5 in the cut of head 2.
        expect_violation(
            |e| e.push(DecimalNumber::parse("2.6.r").unwrap()),
            "cut-natural-order",
            "head 2",
        );
        // 13. Swapping 2.3.1.1.b and 2.3.2.1.b reverses the bud openers.
        expect_violation(|e| e.swap(5, 6), "cut-natural-order", "head 2.3");
    }

    #[test]
    fn validate_passes_all_encodings() {
        for perm in all_permutations(5) {
            let code = encode_opts(&perm, true);
            assert!(validate(&code).is_valid(), "{}", code);
            assert_eq!(decode(&code).unwrap(), perm);
        }
    }
}
