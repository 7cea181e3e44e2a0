//! Rooted labeled ordered forests.
//!
//! Forests are stored in BFS order over a virtual super-root: the labels in
//! BFS order, the number of roots, and the number of children of each node.
//! The children of the node at BFS position `k` occupy the consecutive
//! positions starting at `roots + sum(child_counts[..k])`. Two forests are
//! equal exactly when these three fields agree.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::bijections::{phi, psi_word};
use crate::counting::CountTable;
use crate::words::{sketch_shuffles, symmetric_word, AnnotatedSketch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeLabel(i32);

impl NodeLabel {
    /// Panics on zero.
    pub fn new(value: i32) -> NodeLabel {
        assert!(value != 0, "node label must be nonzero");
        NodeLabel(value)
    }

    pub fn value(self) -> i32 {
        self.0
    }
}

impl std::ops::Neg for NodeLabel {
    type Output = NodeLabel;

    fn neg(self) -> NodeLabel {
        NodeLabel(-self.0)
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: &'static str },
    #[error("duplicate node label {0}")]
    DuplicateLabel(NodeLabel),
    #[error("node label {0} not in forest")]
    MissingLabel(NodeLabel),
    #[error("labels do not cover 1..={n} up to sign")]
    BadLabels { n: usize },
    #[error("expected {expected} nodes, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("{} ({})", .0, .0.condition.describe())]
    Invalid(ForestViolation),
}

/// Nested form, used for parsing, printing and building.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub label: NodeLabel,
    pub children: Vec<Tree>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrderedForest {
    labels: Vec<NodeLabel>,
    roots: usize,
    child_counts: Vec<usize>,
}

impl OrderedForest {
    /// Builds from an arena: `children[k]` lists node ids in left-to-right
    /// order, `roots` likewise. Every id must be reachable exactly once.
    pub(crate) fn from_arena(
        labels: &[NodeLabel],
        roots: &[usize],
        children: &[Vec<usize>],
    ) -> OrderedForest {
        let mut order = Vec::with_capacity(labels.len());
        order.extend_from_slice(roots);
        let mut head = 0;
        while head < order.len() {
            let id = order[head];
            order.extend_from_slice(&children[id]);
            head += 1;
        }
        debug_assert_eq!(order.len(), labels.len());
        OrderedForest {
            labels: order.iter().map(|&id| labels[id]).collect(),
            roots: roots.len(),
            child_counts: order.iter().map(|&id| children[id].len()).collect(),
        }
    }

    pub fn from_trees(trees: &[Tree]) -> Result<OrderedForest, ForestError> {
        fn walk(t: &Tree, labels: &mut Vec<NodeLabel>, children: &mut Vec<Vec<usize>>) -> usize {
            let id = labels.len();
            labels.push(t.label);
            children.push(Vec::new());
            for c in &t.children {
                let cid = walk(c, labels, children);
                children[id].push(cid);
            }
            id
        }
        let mut labels = Vec::new();
        let mut children = Vec::new();
        let roots: Vec<usize> = trees
            .iter()
            .map(|t| walk(t, &mut labels, &mut children))
            .collect();
        let mut seen = HashSet::new();
        for &l in &labels {
            if !seen.insert(l) {
                return Err(ForestError::DuplicateLabel(l));
            }
        }
        Ok(OrderedForest::from_arena(&labels, &roots, &children))
    }

    /// A shape given by root count and BFS child counts, labeled in BFS
    /// order. Returns `None` if the counts do not describe a forest.
    pub fn from_shape(
        roots: usize,
        child_counts: Vec<usize>,
        labels: Vec<NodeLabel>,
    ) -> Option<OrderedForest> {
        let n = labels.len();
        if child_counts.len() != n || (n > 0 && roots == 0) {
            return None;
        }
        let mut created = roots;
        for (k, &c) in child_counts.iter().enumerate() {
            if created <= k {
                return None;
            }
            created += c;
        }
        if created != n {
            return None;
        }
        let distinct: HashSet<NodeLabel> = labels.iter().copied().collect();
        if distinct.len() != n {
            return None;
        }
        Some(OrderedForest {
            labels,
            roots,
            child_counts,
        })
    }

    pub fn to_trees(&self) -> Vec<Tree> {
        let starts = self.child_starts();
        fn build(f: &OrderedForest, starts: &[usize], k: usize) -> Tree {
            Tree {
                label: f.labels[k],
                children: (starts[k]..starts[k] + f.child_counts[k])
                    .map(|c| build(f, starts, c))
                    .collect(),
            }
        }
        (0..self.roots).map(|k| build(self, &starts, k)).collect()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels in BFS order.
    pub fn bfs_order(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn root_count(&self) -> usize {
        self.roots
    }

    pub fn child_counts(&self) -> &[usize] {
        &self.child_counts
    }

    /// `starts[k]` is the BFS position where the children of node `k` begin,
    /// or would begin if it had any.
    pub fn child_starts(&self) -> Vec<usize> {
        let mut acc = self.roots;
        self.child_counts
            .iter()
            .map(|&c| {
                let s = acc;
                acc += c;
                s
            })
            .collect()
    }

    /// BFS position of the parent of each node.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.len()];
        for (k, s) in self.child_starts().into_iter().enumerate() {
            for slot in &mut out[s..s + self.child_counts[k]] {
                *slot = Some(k);
            }
        }
        out
    }

    pub fn position(&self, label: NodeLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn is_leaf_at(&self, k: usize) -> bool {
        self.child_counts[k] == 0
    }

    /// BFS positions: `i` comes after `j` and strictly before the slot
    /// where the children of `j` start.
    pub fn is_sub_descendant_at(&self, i: usize, j: usize, starts: &[usize]) -> bool {
        j < i && i < starts[j]
    }

    pub fn is_sub_descendant(&self, i: NodeLabel, j: NodeLabel) -> Result<bool, ForestError> {
        let pi = self.position(i).ok_or(ForestError::MissingLabel(i))?;
        let pj = self.position(j).ok_or(ForestError::MissingLabel(j))?;
        Ok(self.is_sub_descendant_at(pi, pj, &self.child_starts()))
    }

    /// Leaves after the last internal node in BFS order. With no internal
    /// node every node is special.
    pub fn special_leaves(&self) -> Vec<NodeLabel> {
        let from = self
            .child_counts
            .iter()
            .rposition(|&c| c > 0)
            .map_or(0, |k| k + 1);
        self.labels[from..].to_vec()
    }

    /// True when the absolute values of the labels are exactly `1..=len`.
    pub fn is_labeled(&self) -> bool {
        let n = self.len();
        let abs: HashSet<u32> = self.labels.iter().map(|l| l.0.unsigned_abs()).collect();
        abs.len() == n && abs.iter().all(|&a| a >= 1 && a as usize <= n)
    }

    pub(crate) fn require_labeled(&self) -> Result<(), ForestError> {
        if self.is_labeled() {
            Ok(())
        } else {
            Err(ForestError::BadLabels { n: self.len() })
        }
    }

    /// The forest induced on a set of BFS positions: a kept node keeps its
    /// parent if the parent is kept, and otherwise becomes a root. Roots and
    /// children keep their BFS order.
    pub fn induced(&self, keep: &[bool]) -> OrderedForest {
        let parents = self.parents();
        let mut children = vec![Vec::new(); self.len()];
        let mut roots = Vec::new();
        for k in 0..self.len() {
            if !keep[k] {
                continue;
            }
            match parents[k] {
                Some(p) if keep[p] => children[p].push(k),
                _ => roots.push(k),
            }
        }
        let mut remap = vec![usize::MAX; self.len()];
        let mut labels = Vec::new();
        for k in 0..self.len() {
            if keep[k] {
                remap[k] = labels.len();
                labels.push(self.labels[k]);
            }
        }
        let roots: Vec<usize> = roots.iter().map(|&k| remap[k]).collect();
        let children: Vec<Vec<usize>> = (0..self.len())
            .filter(|&k| keep[k])
            .map(|k| children[k].iter().map(|&c| remap[c]).collect())
            .collect();
        OrderedForest::from_arena(&labels, &roots, &children)
    }

    /// Token sequence of the text form; enumeration order compares these.
    pub fn serial_key(&self) -> Vec<Token> {
        fn walk(t: &Tree, out: &mut Vec<Token>) {
            out.push(Token::Label(t.label.0));
            if !t.children.is_empty() {
                out.push(Token::Open);
                for (k, c) in t.children.iter().enumerate() {
                    if k > 0 {
                        out.push(Token::Comma);
                    }
                    walk(c, out);
                }
                out.push(Token::Close);
            }
        }
        let mut out = Vec::new();
        for (k, t) in self.to_trees().iter().enumerate() {
            if k > 0 {
                out.push(Token::Comma);
            }
            walk(t, &mut out);
        }
        out
    }
}

/// Ordered like the ASCII characters they print as.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Open,
    Close,
    Comma,
    Label(i32),
}

impl fmt::Display for OrderedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_forest(trees: &[Tree], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            for (k, t) in trees.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", t.label)?;
                if !t.children.is_empty() {
                    f.write_str("(")?;
                    write_forest(&t.children, f)?;
                    f.write_str(")")?;
                }
            }
            Ok(())
        }
        write_forest(&self.to_trees(), f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &'static str) -> ForestError {
        ForestError::Parse { pos: self.pos, msg }
    }

    fn forest(&mut self) -> Result<Vec<Tree>, ForestError> {
        let mut trees = vec![self.tree()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            trees.push(self.tree()?);
        }
        Ok(trees)
    }

    fn tree(&mut self) -> Result<Tree, ForestError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value: i32 = text.parse().map_err(|_| {
            self.pos = start;
            self.err("expected a nonzero integer label")
        })?;
        if value == 0 {
            self.pos = start;
            return Err(self.err("label 0 is not allowed"));
        }
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            children = self.forest()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
        }
        Ok(Tree {
            label: NodeLabel(value),
            children,
        })
    }
}

impl FromStr for OrderedForest {
    type Err = ForestError;

    /// `Forest := Tree ("," Tree)*`, `Tree := INT ["(" Forest ")"]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        if p.peek().is_none() {
            return Ok(OrderedForest::default());
        }
        let trees = p.forest()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        OrderedForest::from_trees(&trees)
    }
}

/// Symmetric-forest conditions (i) first half labels, (ii) mirrored second
/// half, (iii) the sub-descendant property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForestCondition {
    I,
    II,
    III,
}

impl ForestCondition {
    pub fn roman(self) -> &'static str {
        match self {
            ForestCondition::I => "i",
            ForestCondition::II => "ii",
            ForestCondition::III => "iii",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            ForestCondition::I => {
                "the first half of the BFS labels does not cover 1..=n up to sign"
            }
            ForestCondition::II => {
                "the second half of the BFS labels is not the negated reverse of the first"
            }
            ForestCondition::III => "a node pair fails the sub-descendant property",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestViolation {
    pub condition: ForestCondition,
    pub witness: Vec<NodeLabel>,
}

impl fmt::Display for ForestViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violation {} witness=", self.condition.roman())?;
        for (k, l) in self.witness.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForestReport {
    Ok,
    Violation(ForestViolation),
}

impl ForestReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ForestReport::Ok)
    }
}

impl fmt::Display for ForestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestReport::Ok => f.write_str("ok"),
            ForestReport::Violation(v) => v.fmt(f),
        }
    }
}

fn forest_violation(condition: ForestCondition, witness: Vec<NodeLabel>) -> ForestReport {
    ForestReport::Violation(ForestViolation { condition, witness })
}

/// Checks the symmetric-forest conditions on a forest with `2n` nodes.
pub fn validate_symmetric_forest(f: &OrderedForest, n: usize) -> Result<ForestReport, ForestError> {
    if f.len() != 2 * n || n == 0 {
        return Err(ForestError::WrongSize {
            expected: 2 * n,
            found: f.len(),
        });
    }
    let e = f.bfs_order();
    let mut seen = vec![false; n + 1];
    for &l in &e[..n] {
        let a = l.0.unsigned_abs() as usize;
        if a > n || seen[a] {
            return Ok(forest_violation(ForestCondition::I, vec![l]));
        }
        seen[a] = true;
    }
    for j in 1..=n {
        let (hi, lo) = (e[n + j - 1], e[n - j]);
        if hi != -lo {
            return Ok(forest_violation(ForestCondition::II, vec![hi, lo]));
        }
    }
    let starts = f.child_starts();
    let pos = |l: NodeLabel| f.position(l).expect("label set closed under negation");
    for j in 0..2 * n {
        for i in j + 1..starts[j] {
            let (a, b) = (pos(-e[j]), pos(-e[i]));
            if !f.is_sub_descendant_at(a, b, &starts) {
                return Ok(forest_violation(ForestCondition::III, vec![e[i], e[j]]));
            }
        }
    }
    Ok(ForestReport::Ok)
}

/// The symmetric of a labeled forest, computed through the word route.
pub fn symmetric_forest(f: &OrderedForest) -> Result<OrderedForest, ForestError> {
    f.require_labeled()?;
    let w1 = AnnotatedSketch::new_unchecked(psi_word(f), f.len());
    Ok(phi(&AnnotatedSketch::new_unchecked(
        symmetric_word(w1.word()),
        f.len(),
    )))
}

/// All shuffles of a labeled forest with its symmetric: `2^s` symmetric
/// forests for `s` special leaves.
pub fn forest_shuffles(f: &OrderedForest) -> Result<Vec<OrderedForest>, ForestError> {
    f.require_labeled()?;
    let w1 = AnnotatedSketch::new_unchecked(psi_word(f), f.len());
    Ok(sketch_shuffles(&w1).iter().map(phi).collect())
}

/// Splits a symmetric forest into the forests induced on its first and
/// last `n` BFS nodes.
pub fn decompose_symmetric_forest(
    g: &OrderedForest,
) -> Result<(OrderedForest, OrderedForest), ForestError> {
    let n = g.len() / 2;
    if let ForestReport::Violation(v) = validate_symmetric_forest(g, n)? {
        return Err(ForestError::Invalid(v));
    }
    let first: Vec<bool> = (0..2 * n).map(|k| k < n).collect();
    let last: Vec<bool> = first.iter().map(|b| !b).collect();
    Ok((g.induced(&first), g.induced(&last)))
}

/// Root count and BFS child counts of every ordered forest with `n` nodes.
pub fn forest_shapes(n: usize) -> Vec<(usize, Vec<usize>)> {
    fn rec(
        n: usize,
        k: usize,
        created: usize,
        counts: &mut Vec<usize>,
        roots: usize,
        out: &mut Vec<(usize, Vec<usize>)>,
    ) {
        if k == n {
            if created == n {
                out.push((roots, counts.clone()));
            }
            return;
        }
        if created <= k {
            return;
        }
        for c in 0..=n - created {
            counts.push(c);
            rec(n, k + 1, created + c, counts, roots, out);
            counts.pop();
        }
    }
    let mut out = Vec::new();
    for roots in 1..=n {
        rec(n, 0, roots, &mut Vec::with_capacity(n), roots, &mut out);
    }
    out
}

/// Sequences of distinct signed labels with absolute values `1..=n`, in
/// lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<Vec<NodeLabel>> {
    fn rec(
        n: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<NodeLabel>,
        out: &mut Vec<Vec<NodeLabel>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let mut cands: Vec<i32> = (1..=n)
            .filter(|&a| !used[a])
            .flat_map(|a| [-(a as i32), a as i32])
            .collect();
        cands.sort();
        for v in cands {
            let a = v.unsigned_abs() as usize;
            used[a] = true;
            cur.push(NodeLabel(v));
            rec(n, used, cur, out);
            cur.pop();
            used[a] = false;
        }
    }
    let mut out = Vec::new();
    rec(
        n,
        &mut vec![false; n + 1],
        &mut Vec::with_capacity(n),
        &mut out,
    );
    out
}

/// Unlabeled shapes carry the BFS labels `1..=n`.
fn canonical_shapes(n: usize) -> Vec<OrderedForest> {
    let labels: Vec<NodeLabel> = (1..=n as i32).map(NodeLabel).collect();
    let mut shapes: Vec<OrderedForest> = forest_shapes(n)
        .into_iter()
        .map(|(r, c)| OrderedForest::from_shape(r, c, labels.clone()).expect("valid shape"))
        .collect();
    shapes.sort_by_cached_key(OrderedForest::serial_key);
    shapes
}

/// Every ordered forest on `n` nodes. Unlabeled: one per shape, labeled
/// `1..=n` in BFS order, sorted by text form. Labeled: for each shape in
/// that order, every signed labeling in lexicographic order of the BFS
/// label sequence.
pub fn enumerate_forests(n: usize, labeled: bool) -> Box<dyn Iterator<Item = OrderedForest>> {
    let shapes = canonical_shapes(n);
    if !labeled {
        return Box::new(shapes.into_iter());
    }
    let perms = std::rc::Rc::new(signed_permutations(n));
    Box::new(shapes.into_iter().flat_map(move |shape| {
        let perms = perms.clone();
        (0..perms.len()).map(move |k| OrderedForest {
            labels: perms[k].clone(),
            roots: shape.roots,
            child_counts: shape.child_counts.clone(),
        })
    }))
}

/// Brute-force tally of unlabeled shapes by number of special leaves.
pub fn count_forests_by_special_leaves(n: usize) -> CountTable {
    let mut entries: BTreeMap<usize, BigUint> = BTreeMap::new();
    for (_, counts) in forest_shapes(n) {
        let last_internal = counts.iter().rposition(|&c| c > 0);
        let s = last_internal.map_or(n, |k| n - k - 1);
        *entries.entry(s).or_default() += 1u32;
    }
    CountTable { n, entries }
}
