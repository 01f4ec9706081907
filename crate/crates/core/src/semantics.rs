//! Graph-level semantics: arrow trivialization and effective Boolean
//! functions of finite diagrams.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Atom, Dnf, DnfSpec, FormulaError, Literal, Truth3, DNF_SIZE_CAP};
use crate::graph::FiniteGraph;
use crate::node::{Arrow, NodeId};

/// Default cap on the number of table inputs.
pub const SINK_CAP: usize = 20;

/// Value of a root for every classical assignment of its inputs.
///
/// Row `r` assigns input `k` the bit `(r >> (n - 1 - k)) & 1`, so the first
/// input varies slowest and `F` comes before `T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    pub inputs: Vec<NodeId>,
    pub rows: Vec<Truth3>,
}

impl TruthTable {
    pub fn assignment(&self, row: usize) -> Vec<bool> {
        let n = self.inputs.len();
        (0..n).map(|k| (row >> (n - 1 - k)) & 1 == 1).collect()
    }

    pub fn is_constant(&self) -> Option<Truth3> {
        let first = *self.rows.first()?;
        self.rows.iter().all(|r| *r == first).then_some(first)
    }

    /// Whether the value changes with input `var`.
    pub fn depends_on(&self, var: &NodeId) -> bool {
        let Some(k) = self.inputs.iter().position(|v| v == var) else {
            return false;
        };
        let bit = 1usize << (self.inputs.len() - 1 - k);
        (0..self.rows.len()).any(|r| r & bit == 0 && self.rows[r] != self.rows[r | bit])
    }

    /// Drops inputs the function does not depend on. Returns `None` if
    /// the function depends on an input outside `keep`.
    pub fn project(&self, keep: &[NodeId]) -> Option<TruthTable> {
        if self.inputs.iter().any(|v| !keep.contains(v) && self.depends_on(v)) {
            return None;
        }
        let inputs: Vec<NodeId> = keep.to_vec();
        let n = inputs.len();
        let mut rows = Vec::with_capacity(1 << n);
        for r in 0..(1usize << n) {
            let mut src = 0usize;
            for (k, v) in inputs.iter().enumerate() {
                if let Some(pos) = self.inputs.iter().position(|w| w == v) {
                    if (r >> (n - 1 - k)) & 1 == 1 {
                        src |= 1 << (self.inputs.len() - 1 - pos);
                    }
                }
            }
            rows.push(self.rows[src]);
        }
        Some(TruthTable { inputs, rows })
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.inputs {
            write!(f, "{v} ")?;
        }
        writeln!(f, "| value")?;
        for (r, val) in self.rows.iter().enumerate() {
            for (k, b) in self.assignment(r).into_iter().enumerate() {
                let w = self.inputs[k].as_str().len();
                write!(f, "{:<w$} ", if b { "T" } else { "F" })?;
            }
            writeln!(f, "| {val}")?;
        }
        Ok(())
    }
}

/// Effective function of `root` over the free nodes it reaches, listed in
/// name order.
pub fn effective_function(graph: &FiniteGraph, root: &NodeId) -> Result<TruthTable, FormulaError> {
    effective_function_with_inputs(graph, root, &[])
}

/// Like [`effective_function`], but the listed nodes are cut: they act as
/// inputs even if they carry a formula. Listed inputs come first in the
/// given order, followed by the remaining reachable free nodes in name order.
pub fn effective_function_with_inputs(
    graph: &FiniteGraph,
    root: &NodeId,
    cut: &[NodeId],
) -> Result<TruthTable, FormulaError> {
    if !graph.contains(root) {
        return Err(FormulaError::UnknownNode(root.clone()));
    }
    let cut_set: BTreeSet<&NodeId> = cut.iter().collect();
    // nodes reachable from root without passing through a cut node
    let mut reach: BTreeSet<NodeId> = BTreeSet::new();
    let mut stack = alloc::vec![root.clone()];
    while let Some(n) = stack.pop() {
        if !reach.insert(n.clone()) {
            continue;
        }
        if n != *root && cut_set.contains(&n) {
            continue;
        }
        for (m, _) in graph.successors(&n) {
            stack.push(m.clone());
        }
    }
    let mut inputs: Vec<NodeId> = cut.iter().filter(|c| *c != root).cloned().collect();
    for n in &reach {
        if graph.is_free(n) && !cut_set.contains(n) {
            inputs.push(n.clone());
        }
    }
    if inputs.len() > SINK_CAP {
        return Err(FormulaError::TooManySinks { count: inputs.len(), limit: SINK_CAP });
    }
    let order: Vec<NodeId> =
        graph.topological().into_iter().rev().filter(|n| reach.contains(n) && !inputs.contains(n)).collect();
    let dnfs: BTreeMap<&NodeId, Dnf> = order.iter().map(|n| (n, graph.dnf(n).expect("non-free node"))).collect();
    let n = inputs.len();
    let mut rows = Vec::with_capacity(1 << n);
    for r in 0..(1usize << n) {
        let mut val: BTreeMap<NodeId, bool> = BTreeMap::new();
        for (k, v) in inputs.iter().enumerate() {
            val.insert(v.clone(), (r >> (n - 1 - k)) & 1 == 1);
        }
        for node in &order {
            let b = dnfs[node].eval_bool(|v| val.get(v).copied())?;
            val.insert(node.clone(), b);
        }
        rows.push(Truth3::from_bool(val[root]));
    }
    Ok(TruthTable { inputs, rows })
}

/// Removes the influence of every arrow outside `keep`.
///
/// The target of a dropped arrow is eliminated existentially from the
/// owner's formula: disjuncts that need both of its polarities vanish, the
/// rest lose their literals on it. The surviving disjuncts are then guarded
/// as `C & (v | ~v)`, distributed, so the arrow stays in the graph while
/// the owner's truth no longer depends on it.
pub fn trivialize_outside(graph: &FiniteGraph, keep: &BTreeSet<Arrow>) -> Result<FiniteGraph, FormulaError> {
    let mut b = graph.to_builder();
    for n in graph.nodes() {
        let Some(dnf) = graph.dnf(n) else { continue };
        let dropped: Vec<NodeId> = graph
            .successors(n)
            .filter(|(m, s)| !keep.contains(&Arrow::new(n.clone(), (*m).clone(), *s)))
            .map(|(m, _)| m.clone())
            .collect();
        if dropped.is_empty() {
            continue;
        }
        b.formula(n.clone(), DnfSpec::Explicit(eliminate(&dnf, &dropped)?));
    }
    Ok(b.build().expect("trivialization preserves arrows and polarity rules"))
}

fn eliminate(dnf: &Dnf, vars: &[NodeId]) -> Result<Dnf, FormulaError> {
    let mut kept: Vec<Vec<Atom>> = Vec::new();
    for conj in &dnf.disjuncts {
        let contradictory = vars.iter().any(|v| {
            let mut pos = false;
            let mut neg = false;
            for l in conj.iter().filter_map(Atom::literal).filter(|l| &l.var == v) {
                if l.negated {
                    neg = true;
                } else {
                    pos = true;
                }
            }
            pos && neg
        });
        if contradictory {
            continue;
        }
        let rest: Vec<Atom> =
            conj.iter().filter(|a| a.literal().is_none_or(|l| !vars.contains(&l.var))).cloned().collect();
        kept.push(if rest.is_empty() { alloc::vec![Atom::True] } else { rest });
    }
    if kept.is_empty() {
        let v = vars[0].clone();
        return Ok(Dnf::new(alloc::vec![alloc::vec![Atom::pos(v.clone()), Atom::neg(v)]]));
    }
    let size = kept.len().checked_mul(1usize.checked_shl(vars.len() as u32).unwrap_or(usize::MAX));
    if size.is_none_or(|s| s > DNF_SIZE_CAP) {
        return Err(FormulaError::TooLarge { limit: DNF_SIZE_CAP });
    }
    let mut out = kept;
    for v in vars {
        let mut next = Vec::with_capacity(out.len() * 2);
        for c in &out {
            for negated in [false, true] {
                let mut d: Vec<Atom> = c.iter().filter(|a| **a != Atom::True).cloned().collect();
                d.push(Atom::Lit(Literal::new(v.clone(), negated)));
                next.push(d);
            }
        }
        out = next;
    }
    Ok(Dnf::new(out))
}
