//! Parenthesized form of a permutation, the forest of primitive nodes, and
//! the multiparenthesized (iterated registry) form.

use std::collections::BTreeSet;
use std::fmt;

use crate::bijection::{compose, decompose, decompose_traced, StepCase};
use crate::error::{Error, Result};
use crate::family::{Family, Registry};
use crate::perm::{pattern_of_sequence, Permutation};

/// One item inside a parenthesized group: a value or a nested group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParenNode {
    /// A bare value.
    Value(usize),
    /// A nested child group.
    Group(Vec<ParenNode>),
}

/// The parenthesized form: a forest whose top-level groups are the blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParenForm {
    /// Top-level groups in block order.
    pub forest: Vec<Vec<ParenNode>>,
}

/// A tree node reduced to its own elements: active values interleaved with
/// bud pairs where child groups attach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveNode {
    /// The node's items in order: values and (cofounder, founder) bud pairs.
    pub entries: Vec<NodeEntry>,
    /// The active family: the node's own values, in order.
    pub active: Vec<usize>,
    /// The bud pairs in order of appearance.
    pub buds: Vec<(usize, usize)>,
    /// The pattern of the node with each bud flattened to its two elements.
    pub pattern: Permutation,
}

/// An item of a [`PrimitiveNode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeEntry {
    /// An active value.
    Value(usize),
    /// A bud pair (cofounder, founder): the two smallest elements of the
    /// child subtree, larger first.
    Bud(usize, usize),
}

/// A node of the forest together with its children in bud order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    /// The reduced node.
    pub node: PrimitiveNode,
    /// Child subtrees, one per bud, in order.
    pub children: Vec<TreeNode>,
}

/// One level of the multiparenthesized form: a bicolored partition. Parts are
/// (sorted elements, red count) with red count 0 for singlets, ordered by
/// their minima.
pub type MultiParenLevel = Vec<(Vec<usize>, usize)>;

/// The multiparenthesized form: level 0 partitions {1..n}; each later level
/// partitions the indices of the previous level's nonsinglet parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiParenForm {
    /// The levels, outermost first.
    pub levels: Vec<MultiParenLevel>,
}

/// Builds the parenthesized form by replaying the direct algorithm.
pub fn parenthesize(p: &Permutation) -> ParenForm {
    let (_, trace) = decompose_traced(p);
    let mut forest: Vec<Vec<ParenNode>> = Vec::new();
    for step in &trace {
        let k = step.cutoff;
        match step.case {
            StepCase::A => forest.push(vec![ParenNode::Value(k)]),
            StepCase::B | StepCase::C => {
                let m = step.friend.unwrap();
                insert_before_value(&mut forest, m, k);
            }
            StepCase::D | StepCase::E => {
                let m = step.friend.unwrap();
                replace_value_with_bud(&mut forest, m, k);
            }
        }
    }
    ParenForm { forest }
}

fn insert_before_value(forest: &mut [Vec<ParenNode>], m: usize, k: usize) {
    for group in forest.iter_mut() {
        if insert_in_group(group, m, k) {
            return;
        }
    }
    unreachable!("friend value not found");
}

fn insert_in_group(group: &mut Vec<ParenNode>, m: usize, k: usize) -> bool {
    for i in 0..group.len() {
        match &mut group[i] {
            ParenNode::Value(v) if *v == m => {
                group.insert(i, ParenNode::Value(k));
                return true;
            }
            ParenNode::Group(child) => {
                if insert_in_group(child, m, k) {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

fn replace_value_with_bud(forest: &mut [Vec<ParenNode>], m: usize, k: usize) {
    for group in forest.iter_mut() {
        if replace_in_group(group, m, k) {
            return;
        }
    }
    unreachable!("friend value not found");
}

fn replace_in_group(group: &mut [ParenNode], m: usize, k: usize) -> bool {
    for node in group.iter_mut() {
        match node {
            ParenNode::Value(v) if *v == m => {
                *node = ParenNode::Group(vec![ParenNode::Value(k), ParenNode::Value(m)]);
                return true;
            }
            ParenNode::Group(child) => {
                if replace_in_group(child, m, k) {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

impl ParenForm {
    /// Flattens the forest back to one-line notation.
    pub fn flatten(&self) -> Permutation {
        let mut values = Vec::new();
        for group in &self.forest {
            flatten_group(group, &mut values);
        }
        Permutation::new(values).expect("a parenthesized form flattens to a permutation")
    }
}

fn flatten_group(group: &[ParenNode], out: &mut Vec<usize>) {
    for node in group {
        match node {
            ParenNode::Value(v) => out.push(*v),
            ParenNode::Group(child) => flatten_group(child, out),
        }
    }
}

impl fmt::Display for ParenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for group in &self.forest {
            write_group(f, group)?;
        }
        Ok(())
    }
}

fn write_group(f: &mut fmt::Formatter<'_>, group: &[ParenNode]) -> fmt::Result {
    write!(f, "(")?;
    let mut first = true;
    for node in group {
        if !first {
            write!(f, " ")?;
        }
        first = false;
        match node {
            ParenNode::Value(v) => write!(f, "{}", v)?,
            ParenNode::Group(child) => write_group(f, child)?,
        }
    }
    write!(f, ")")
}

/// Reduces each group of the forest to a [`TreeNode`].
pub fn tree_nodes(pf: &ParenForm) -> Vec<TreeNode> {
    pf.forest.iter().map(|g| reduce_group(g)).collect()
}

fn subtree_two_smallest(group: &[ParenNode]) -> (usize, usize) {
    let mut values = Vec::new();
    flatten_group(group, &mut values);
    values.sort_unstable();
    (values[1], values[0]) // (cofounder, founder)
}

fn reduce_group(group: &[ParenNode]) -> TreeNode {
    let mut entries = Vec::new();
    let mut active = Vec::new();
    let mut buds = Vec::new();
    let mut children = Vec::new();
    let mut flat = Vec::new();
    for node in group {
        match node {
            ParenNode::Value(v) => {
                entries.push(NodeEntry::Value(*v));
                active.push(*v);
                flat.push(*v as i64);
            }
            ParenNode::Group(child) => {
                let (hi, lo) = subtree_two_smallest(child);
                entries.push(NodeEntry::Bud(hi, lo));
                buds.push((hi, lo));
                flat.push(hi as i64);
                flat.push(lo as i64);
                children.push(reduce_group(child));
            }
        }
    }
    let pattern = pattern_of_sequence(&flat).expect("distinct node elements");
    TreeNode {
        node: PrimitiveNode {
            entries,
            active,
            buds,
            pattern,
        },
        children,
    }
}

fn registry_partition(r: &Registry) -> MultiParenLevel {
    let mut parts: Vec<(Vec<usize>, usize)> = r
        .families()
        .iter()
        .map(|f| (f.elements().to_vec(), f.red_count()))
        .collect();
    parts.sort();
    parts
}

/// The permutation of the nonsinglet families: entry i is the standard
/// (ascending-minima) index of the i-th registry family.
fn family_order_permutation(stripped: &Registry) -> Permutation {
    let mins: Vec<i64> = stripped.families().iter().map(|f| f.min() as i64).collect();
    pattern_of_sequence(&mins).expect("family minima are distinct")
}

/// Iterates the decomposition: each level records the unordered bicolored
/// partition, and the family order is re-encoded as a permutation that is
/// decomposed at the next level.
pub fn multiparenthesize(p: &Permutation) -> MultiParenForm {
    let mut levels = Vec::new();
    let mut current = p.clone();
    loop {
        let full = decompose(&current);
        levels.push(registry_partition(&full));
        let stripped = full.strip_singlets();
        if stripped.len() <= 1 {
            break;
        }
        current = family_order_permutation(&stripped);
    }
    MultiParenForm { levels }
}

/// Inverts [`multiparenthesize`], rebuilding the permutation bottom-up.
pub fn demultiparenthesize(m: &MultiParenForm) -> Result<Permutation> {
    if m.levels.is_empty() {
        return Err(Error::InvalidMultiParen("no levels".into()));
    }
    // Validate shapes and collect per-level data.
    for (t, level) in m.levels.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for (elements, _) in level {
            for &e in elements {
                if !seen.insert(e) {
                    return Err(Error::InvalidMultiParen(format!(
                        "level {}: element {} repeated",
                        t, e
                    )));
                }
            }
        }
        let n = seen.len();
        if n > 0 && *seen.iter().next_back().unwrap() != n {
            return Err(Error::InvalidMultiParen(format!(
                "level {}: elements do not form an interval 1..{}",
                t, n
            )));
        }
        if t > 0 {
            let f_prev = m.levels[t - 1].iter().filter(|(e, _)| e.len() >= 2).count();
            if n != f_prev {
                return Err(Error::InvalidMultiParen(format!(
                    "level {} partitions {} elements but level {} has {} nonsinglet parts",
                    t,
                    n,
                    t - 1,
                    f_prev
                )));
            }
        }
    }
    let last_f = m
        .levels
        .last()
        .unwrap()
        .iter()
        .filter(|(e, _)| e.len() >= 2)
        .count();
    if last_f > 1 {
        return Err(Error::InvalidMultiParen(format!(
            "last level still has {} nonsinglet parts",
            last_f
        )));
    }
    let mut order = Permutation::identity(last_f);
    for level in m.levels.iter().rev() {
        let n: usize = level.iter().map(|(e, _)| e.len()).sum();
        // Nonsinglet parts in standard order, then arranged per `order`.
        let standard: Vec<Family> = level
            .iter()
            .filter(|(e, _)| e.len() >= 2)
            .map(|(e, rc)| Family::new(e.iter().cloned(), *rc))
            .collect::<Result<_>>()?;
        if standard.len() != order.len() {
            return Err(Error::InvalidMultiParen(
                "level size does not match the recorded order".into(),
            ));
        }
        let arranged: Vec<Family> = order
            .values()
            .iter()
            .map(|&i| standard[i - 1].clone())
            .collect();
        order = compose(&Registry::new(arranged)?, n)?;
    }
    Ok(order)
}

impl fmt::Display for MultiParenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, level) in self.levels.iter().enumerate() {
            if t > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", "  ".repeat(t))?;
            let mut first = true;
            for (elements, reds) in level {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                let inner: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
                write!(f, "{{{}}}:{}", inner.join(" "), reds)?;
            }
        }
        Ok(())
    }
}

impl MultiParenForm {
    /// Parses the indented "{elements}:reds" level format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut levels = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut level = Vec::new();
            let mut rest = line;
            while let Some(open) = rest.find('{') {
                let close = rest[open..]
                    .find('}')
                    .ok_or_else(|| Error::Parse("unclosed '{'".into()))?
                    + open;
                let elements: Vec<usize> = rest[open + 1..close]
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Parse(format!("bad element '{}'", t)))
                    })
                    .collect::<Result<_>>()?;
                let after = &rest[close + 1..];
                let after = after
                    .strip_prefix(':')
                    .ok_or_else(|| Error::Parse("expected ':reds' after part".into()))?;
                let end = after
                    .find(|c: char| !c.is_ascii_digit())
                    .unwrap_or(after.len());
                let reds: usize = after[..end]
                    .parse()
                    .map_err(|_| Error::Parse("missing red count".into()))?;
                level.push((elements, reds));
                rest = &after[end..];
            }
            if level.is_empty() {
                return Err(Error::Parse(format!("no parts in line '{}'", line)));
            }
            levels.push(level);
        }
        if levels.is_empty() {
            return Err(Error::Parse("empty multiparenthesized form".into()));
        }
        Ok(MultiParenForm { levels })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    #[test]
    fn worked_example_paren() {
        let pf = parenthesize(&p("6 7 3 5 4 1 2"));
        assert_eq!(pf.to_string(), "(6 7 3 (5 4) 1)(2)");
        assert_eq!(pf.flatten(), p("6 7 3 5 4 1 2"));
    }

    #[test]
    fn small_paren_examples() {
        assert_eq!(
            parenthesize(&Permutation::identity(3)).to_string(),
            "(1)(2)(3)"
        );
        assert_eq!(parenthesize(&p("3 1 2")).to_string(), "(3 1)(2)");
    }

    #[test]
    fn node_reduction() {
        let pf = parenthesize(&p("6 7 3 5 4 1 2"));
        let forest = tree_nodes(&pf);
        assert_eq!(forest.len(), 2);
        let root = &forest[0];
        assert_eq!(root.node.active, vec![6, 7, 3, 1]);
        assert_eq!(root.node.buds, vec![(5, 4)]);
        assert_eq!(root.node.pattern, p("5 6 2 4 3 1"));
        assert_eq!(root.children.len(), 1);
        assert_eq!(root.children[0].node.active, vec![5, 4]);
    }

    #[test]
    fn node_pattern_example() {
        // (10 (12 11) 3) has pattern (2 (4 3) 1).
        let group = vec![
            ParenNode::Value(10),
            ParenNode::Group(vec![ParenNode::Value(12), ParenNode::Value(11)]),
            ParenNode::Value(3),
        ];
        let node = reduce_group(&group);
        assert_eq!(node.node.pattern, p("2 4 3 1"));
        assert_eq!(node.node.buds, vec![(12, 11)]);
    }

    #[test]
    fn multiparen_worked_example() {
        let m = multiparenthesize(&p("6 7 3 5 4 1 2"));
        assert_eq!(
            m.levels[0],
            vec![(vec![1, 3, 6, 7], 2), (vec![2], 0), (vec![4, 5], 1),]
        );
        assert_eq!(m.levels[1], vec![(vec![1, 2], 1)]);
        assert_eq!(m.levels.len(), 2);
        assert_eq!(demultiparenthesize(&m).unwrap(), p("6 7 3 5 4 1 2"));
    }

    #[test]
    fn multiparen_extremes() {
        let id = Permutation::identity(4);
        let m = multiparenthesize(&id);
        assert_eq!(m.levels.len(), 1);
        assert!(m.levels[0].iter().all(|(e, _)| e.len() == 1));
        assert_eq!(demultiparenthesize(&m).unwrap(), id);

        let rev = p("4 3 2 1");
        let m = multiparenthesize(&rev);
        assert_eq!(m.levels[0], vec![(vec![1, 2, 3, 4], 1)]);
        assert_eq!(demultiparenthesize(&m).unwrap(), rev);
    }

    #[test]
    fn multiparen_text_round_trip() {
        let m = multiparenthesize(&p("6 7 3 5 4 1 2"));
        let text = m.to_string();
        assert_eq!(MultiParenForm::parse(&text).unwrap(), m);
    }
}
