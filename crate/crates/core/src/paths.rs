//! Paths, their values, and contradictions between paths.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::FiniteGraph;
use crate::node::{Arrow, NodeId, Sign};

/// A directed path; `signs[k]` is the sign of the arrow `nodes[k] -> nodes[k+1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub signs: Vec<Sign>,
}

impl Path {
    /// The path through `nodes` in `graph`, if every step is an arrow.
    pub fn through(graph: &FiniteGraph, nodes: &[NodeId]) -> Option<Path> {
        if nodes.len() < 2 {
            return None;
        }
        let signs = nodes.windows(2).map(|w| graph.arrow(&w[0], &w[1])).collect::<Option<Vec<Sign>>>()?;
        Some(Path { nodes: nodes.to_vec(), signs })
    }

    pub fn start(&self) -> &NodeId {
        &self.nodes[0]
    }

    pub fn end(&self) -> &NodeId {
        self.nodes.last().expect("paths have at least two nodes")
    }

    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// `self` followed by `other`; `None` unless `other` starts where `self` ends.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end() != other.start() {
            return None;
        }
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes[1..].iter().cloned());
        let mut signs = self.signs.clone();
        signs.extend(other.signs.iter().copied());
        Some(Path { nodes, signs })
    }

    /// The initial segment ending at position `k` (at least one arrow).
    pub fn prefix(&self, k: usize) -> Path {
        Path { nodes: self.nodes[..=k].to_vec(), signs: self.signs[..k].to_vec() }
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.nodes.windows(2).zip(&self.signs).map(|(w, s)| Arrow::new(w[0].clone(), w[1].clone(), *s))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nodes[0])?;
        for (n, s) in self.nodes[1..].iter().zip(&self.signs) {
            let op = if *s == Sign::Neg { "-o" } else { "->" };
            write!(f, " {op} {n}")?;
        }
        Ok(())
    }
}

/// `+` iff the path has an even number of negative arrows.
pub fn path_value(p: &Path) -> Sign {
    if p.signs.iter().filter(|s| **s == Sign::Neg).count() % 2 == 0 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// All paths `from -> to` with at most `max_len` arrows, in lexicographic
/// order of their node sequences.
pub fn find_paths(graph: &FiniteGraph, from: &NodeId, to: &NodeId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    if from == to || !graph.contains(from) || !graph.contains(to) {
        return out;
    }
    let mut stack = alloc::vec![from.clone()];
    let mut signs = Vec::new();
    walk(graph, to, max_len, &mut stack, &mut signs, &mut out);
    out
}

fn walk(
    graph: &FiniteGraph,
    to: &NodeId,
    max_len: usize,
    stack: &mut Vec<NodeId>,
    signs: &mut Vec<Sign>,
    out: &mut Vec<Path>,
) {
    if signs.len() == max_len {
        return;
    }
    let last = stack.last().expect("nonempty").clone();
    for (m, s) in graph.successors(&last) {
        stack.push(m.clone());
        signs.push(s);
        if m == to {
            out.push(Path { nodes: stack.clone(), signs: signs.clone() });
        } else {
            walk(graph, to, max_len, stack, signs, out);
        }
        stack.pop();
        signs.pop();
    }
}

/// Same start, same end, different values.
pub fn contradictory(p: &Path, q: &Path) -> bool {
    p.start() == q.start() && p.end() == q.end() && path_value(p) != path_value(q)
}

/// Nodes after the common start where `p` and `q` meet with different
/// values up to that node, in the order they occur along `p`.
pub fn contradiction_points(p: &Path, q: &Path) -> Vec<NodeId> {
    let mut out = Vec::new();
    if p.start() != q.start() {
        return out;
    }
    for (i, n) in p.nodes.iter().enumerate().skip(1) {
        if let Some(j) = q.nodes.iter().skip(1).position(|m| m == n) {
            if path_value(&p.prefix(i)) != path_value(&q.prefix(j + 1)) {
                out.push(n.clone());
            }
        }
    }
    out
}

/// The first node along `p` where `p` and `q` meet in contradiction.
pub fn first_contradiction(p: &Path, q: &Path) -> Option<NodeId> {
    contradiction_points(p, q).into_iter().next()
}

/// Whether `p` and `q` coincide from their first common node after the start.
pub fn merge_after_meet(p: &Path, q: &Path) -> bool {
    for (i, n) in p.nodes.iter().enumerate().skip(1) {
        if let Some(j) = q.nodes.iter().skip(1).position(|m| m == n) {
            return p.nodes[i..] == q.nodes[j + 1..];
        }
    }
    true
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OddLoopReport {
    /// Merge-after-meet triples whose members are pairwise contradictory.
    pub violations: Vec<[Path; 3]>,
    /// Triples that branch again after meeting and pairwise contradict at
    /// some meeting point. These do not fall under the merge-after-meet rule.
    pub rebranching: Vec<[Path; 3]>,
}

pub const ODD_LOOP_MAX_LEN: usize = 8;

/// Looks for three paths `origin -> end` that pairwise contradict.
pub fn odd_loop_scan(graph: &FiniteGraph, origin: &NodeId, end: &NodeId, max_len: usize) -> OddLoopReport {
    let paths = find_paths(graph, origin, end, max_len);
    let mut report = OddLoopReport::default();
    let n = paths.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t = [&paths[a], &paths[b], &paths[c]];
                let pairs = [(0, 1), (0, 2), (1, 2)];
                let triple = || [t[0].clone(), t[1].clone(), t[2].clone()];
                if pairs.iter().all(|&(i, j)| merge_after_meet(t[i], t[j])) {
                    if pairs.iter().all(|&(i, j)| contradictory(t[i], t[j])) {
                        report.violations.push(triple());
                    }
                } else if pairs.iter().all(|&(i, j)| !contradiction_points(t[i], t[j]).is_empty()) {
                    report.rebranching.push(triple());
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathError {
    /// The examined fragment holds a positive arrow.
    MixedSigns(Arrow),
    UnknownNode(NodeId),
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathError::MixedSigns(a) => write!(f, "fragment contains the positive arrow {a}"),
            PathError::UnknownNode(n) => write!(f, "unknown node {n}"),
        }
    }
}

impl core::error::Error for PathError {}

type Frag = BTreeSet<(NodeId, NodeId)>;

/// Arrows lying on some path `a -> b` inside `frag` that avoids `avoid`.
fn leg(frag: &Frag, a: &NodeId, b: &NodeId, avoid: &[&NodeId]) -> Frag {
    let blocked = |n: &NodeId| avoid.contains(&n);
    let mut fwd: BTreeSet<NodeId> = BTreeSet::new();
    let mut stack = alloc::vec![a.clone()];
    while let Some(n) = stack.pop() {
        if !fwd.insert(n.clone()) || n == *b {
            continue;
        }
        for (_, v) in frag.iter().filter(|(u, _)| *u == n) {
            if !blocked(v) {
                stack.push(v.clone());
            }
        }
    }
    let mut bwd: BTreeSet<NodeId> = BTreeSet::new();
    let mut stack = alloc::vec![b.clone()];
    while let Some(n) = stack.pop() {
        if !bwd.insert(n.clone()) || n == *a {
            continue;
        }
        for (u, _) in frag.iter().filter(|(_, v)| *v == n) {
            if !blocked(u) {
                stack.push(u.clone());
            }
        }
    }
    frag.iter()
        .filter(|(u, v)| fwd.contains(u) && bwd.contains(v) && u != b && v != a && !blocked(u) && !blocked(v))
        .cloned()
        .collect()
}

fn neg_type(frag: &Frag, x: &NodeId, z: &NodeId, depth: usize) -> Option<usize> {
    if frag.len() == 1 && frag.contains(&(x.clone(), z.clone())) {
        return Some(0);
    }
    if depth == 0 || frag.len() < 5 {
        return None;
    }
    let inner: BTreeSet<&NodeId> = frag.iter().flat_map(|(u, v)| [u, v]).filter(|n| *n != x && *n != z).collect();
    let mut best: Option<usize> = None;
    for y in &inner {
        for yp in &inner {
            if y == yp {
                continue;
            }
            let legs = [
                leg(frag, x, z, &[y, yp]),
                leg(frag, x, y, &[z, yp]),
                leg(frag, y, z, &[x, yp]),
                leg(frag, y, yp, &[x, z]),
                leg(frag, yp, z, &[x, y]),
            ];
            if legs.iter().any(|l| l.is_empty()) {
                continue;
            }
            let total: usize = legs.iter().map(|l| l.len()).sum();
            let union: Frag = legs.iter().flatten().cloned().collect();
            if total != union.len() || union != *frag {
                continue;
            }
            let ends = [(x, z), (x, *y), (*y, z), (*y, *yp), (*yp, z)];
            let mut worst = 0;
            let mut ok = true;
            for (l, (a, b)) in legs.iter().zip(ends) {
                match neg_type(l, a, b, depth - 1) {
                    Some(t) => worst = worst.max(t),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                best = Some(best.map_or(worst + 1, |b| b.min(worst + 1)));
            }
        }
    }
    best
}

/// Rank of the negation of `z` by `x` built from nested five-leg patterns
/// `x -o z`, `x -o y -o z`, `y -o y' -o z`; `0` for a single arrow. The
/// fragment is the union of all paths `x -> z`.
pub fn negation_type(graph: &FiniteGraph, x: &NodeId, z: &NodeId) -> Result<Option<usize>, PathError> {
    for n in [x, z] {
        if !graph.contains(n) {
            return Err(PathError::UnknownNode(n.clone()));
        }
    }
    let fwd = graph.reachable(x);
    let mut frag: Frag = BTreeSet::new();
    for a in graph.arrows() {
        if fwd.contains(&a.from) && (a.to == *z || graph.reachable(&a.to).contains(z)) {
            if a.sign == Sign::Pos {
                return Err(PathError::MixedSigns(a));
            }
            frag.insert((a.from, a.to));
        }
    }
    if frag.is_empty() {
        return Ok(None);
    }
    Ok(neg_type(&frag, x, z, 8))
}
