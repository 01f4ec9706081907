//! Finite signed acyclic graphs with per-node formulas.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Dnf, DnfSpec, Grouping};
use crate::node::{Arrow, NodeId, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    Cycle(Vec<NodeId>),
    SelfLoop(NodeId),
    DanglingArrow(Arrow),
    DuplicateArrow(NodeId, NodeId),
    FormulaVariable { node: NodeId, var: NodeId },
    SignMismatch { node: NodeId, var: NodeId },
    EmptyFormula(NodeId),
    UnknownNode(NodeId),
    NotNegative(NodeId, NodeId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Cycle(nodes) => {
                write!(f, "arrows form a cycle through")?;
                for n in nodes {
                    write!(f, " {n}")?;
                }
                Ok(())
            }
            GraphError::SelfLoop(n) => write!(f, "self-loop at {n}"),
            GraphError::DanglingArrow(a) => write!(f, "arrow {a} has an undeclared endpoint"),
            GraphError::DuplicateArrow(a, b) => write!(f, "more than one arrow from {a} to {b}"),
            GraphError::FormulaVariable { node, var } => {
                write!(f, "formula of {node} mentions {var}, which is not a successor")
            }
            GraphError::SignMismatch { node, var } => {
                write!(f, "formula of {node} uses {var} with a polarity that disagrees with its arrow")
            }
            GraphError::EmptyFormula(n) => write!(f, "formula of {n} is empty"),
            GraphError::UnknownNode(n) => write!(f, "unknown node {n}"),
            GraphError::NotNegative(a, b) => {
                write!(f, "arrow {a} -> {b} is positive; closure is defined for negative arrows only")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A validated finite DAG. Nodes keep their insertion order, which later
/// serves as the solver's variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    order: Vec<NodeId>,
    succ: BTreeMap<NodeId, BTreeMap<NodeId, Sign>>,
    pred: BTreeMap<NodeId, BTreeSet<NodeId>>,
    formulas: BTreeMap<NodeId, DnfSpec>,
}

/// Accumulates nodes, arrows and formulas; [`GraphBuilder::build`] validates.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    order: Vec<NodeId>,
    known: BTreeSet<NodeId>,
    arrows: Vec<Arrow>,
    formulas: BTreeMap<NodeId, DnfSpec>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(&mut self, n: NodeId) -> &mut Self {
        if self.known.insert(n.clone()) {
            self.order.push(n);
        }
        self
    }

    /// Adds an arrow; endpoints are declared if they are new.
    pub fn arrow(&mut self, from: NodeId, to: NodeId, sign: Sign) -> &mut Self {
        self.node(from.clone());
        self.node(to.clone());
        self.arrows.push(Arrow::new(from, to, sign));
        self
    }

    /// Adds an arrow without declaring its endpoints.
    pub fn raw_arrow(&mut self, a: Arrow) -> &mut Self {
        self.arrows.push(a);
        self
    }

    pub fn formula(&mut self, n: NodeId, spec: DnfSpec) -> &mut Self {
        self.formulas.insert(n, spec);
        self
    }

    pub fn build(&self) -> Result<FiniteGraph, GraphError> {
        let mut succ: BTreeMap<NodeId, BTreeMap<NodeId, Sign>> = BTreeMap::new();
        let mut pred: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::new();
        for n in &self.order {
            succ.insert(n.clone(), BTreeMap::new());
            pred.insert(n.clone(), BTreeSet::new());
        }
        for a in &self.arrows {
            if !self.known.contains(&a.from) || !self.known.contains(&a.to) {
                return Err(GraphError::DanglingArrow(a.clone()));
            }
            if a.from == a.to {
                return Err(GraphError::SelfLoop(a.from.clone()));
            }
            let out = succ.get_mut(&a.from).expect("declared");
            if out.insert(a.to.clone(), a.sign).is_some() {
                return Err(GraphError::DuplicateArrow(a.from.clone(), a.to.clone()));
            }
            pred.get_mut(&a.to).expect("declared").insert(a.from.clone());
        }
        let mut formulas = BTreeMap::new();
        for (n, spec) in &self.formulas {
            let out = succ.get(n).ok_or_else(|| GraphError::UnknownNode(n.clone()))?;
            validate_formula(n, spec, out)?;
            formulas.insert(n.clone(), spec.clone());
        }
        for (n, out) in &succ {
            if !out.is_empty() && !formulas.contains_key(n) {
                formulas.insert(n.clone(), DnfSpec::conjunction());
            }
        }
        let g = FiniteGraph { order: self.order.clone(), succ, pred, formulas };
        g.check_acyclic()?;
        Ok(g)
    }
}

fn validate_formula(node: &NodeId, spec: &DnfSpec, out: &BTreeMap<NodeId, Sign>) -> Result<(), GraphError> {
    match spec {
        DnfSpec::Explicit(d) => {
            if d.disjuncts.is_empty() || d.disjuncts.iter().any(|c| c.is_empty()) {
                return Err(GraphError::EmptyFormula(node.clone()));
            }
            for var in d.variables() {
                let sign = out
                    .get(&var)
                    .ok_or_else(|| GraphError::FormulaVariable { node: node.clone(), var: var.clone() })?;
                let (pos, neg) = d.polarities(&var);
                let agrees = match sign {
                    Sign::Neg => neg,
                    Sign::Pos => pos,
                };
                if !(pos && neg) && !agrees {
                    return Err(GraphError::SignMismatch { node: node.clone(), var });
                }
            }
        }
        DnfSpec::Grouped(g) => {
            if out.is_empty() {
                return Err(GraphError::EmptyFormula(node.clone()));
            }
            if let Grouping::Keyed(keys) = g {
                if let Some(var) = keys.keys().find(|k| !out.contains_key(*k)) {
                    return Err(GraphError::FormulaVariable { node: node.clone(), var: var.clone() });
                }
            }
        }
    }
    Ok(())
}

/// Builds and validates a graph in one call.
pub fn build_finite_graph<N, A, F>(nodes: N, arrows: A, formulas: F) -> Result<FiniteGraph, GraphError>
where
    N: IntoIterator<Item = NodeId>,
    A: IntoIterator<Item = Arrow>,
    F: IntoIterator<Item = (NodeId, DnfSpec)>,
{
    let mut b = GraphBuilder::new();
    for n in nodes {
        b.node(n);
    }
    for a in arrows {
        b.raw_arrow(a);
    }
    for (n, f) in formulas {
        b.formula(n, f);
    }
    b.build()
}

impl FiniteGraph {
    pub fn empty() -> Self {
        GraphBuilder::new().build().expect("empty graph is valid")
    }

    /// Nodes in insertion order.
    pub fn nodes(&self) -> &[NodeId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, n: &NodeId) -> bool {
        self.succ.contains_key(n)
    }

    /// Successors in node order, with arrow signs.
    pub fn successors(&self, n: &NodeId) -> impl Iterator<Item = (&NodeId, Sign)> + '_ {
        self.succ.get(n).into_iter().flat_map(|m| m.iter().map(|(k, s)| (k, *s)))
    }

    pub fn out_degree(&self, n: &NodeId) -> usize {
        self.succ.get(n).map_or(0, |m| m.len())
    }

    pub fn predecessors(&self, n: &NodeId) -> impl Iterator<Item = &NodeId> + '_ {
        self.pred.get(n).into_iter().flatten()
    }

    pub fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<Sign> {
        self.succ.get(from)?.get(to).copied()
    }

    /// All arrows, ordered by (from, to).
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for (from, m) in &self.succ {
            for (to, s) in m {
                out.push(Arrow::new(from.clone(), to.clone(), *s));
            }
        }
        out
    }

    pub fn arrow_count(&self) -> usize {
        self.succ.values().map(|m| m.len()).sum()
    }

    pub fn formula(&self, n: &NodeId) -> Option<&DnfSpec> {
        self.formulas.get(n)
    }

    /// A node without a formula is a free variable.
    pub fn is_free(&self, n: &NodeId) -> bool {
        !self.formulas.contains_key(n)
    }

    pub fn sorted_nodes(&self) -> Vec<NodeId> {
        self.succ.keys().cloned().collect()
    }

    /// The formula of `n` as an explicit DNF over its successors.
    pub fn dnf(&self, n: &NodeId) -> Option<Dnf> {
        let spec = self.formulas.get(n)?;
        Some(spec.materialize(self.successors(n)))
    }

    /// Nodes reachable from `start`, including `start`, in node order.
    pub fn reachable(&self, start: &NodeId) -> BTreeSet<NodeId> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        if self.contains(start) {
            seen.insert(start.clone());
            queue.push_back(start.clone());
        }
        while let Some(n) = queue.pop_front() {
            for (m, _) in self.successors(&n) {
                if seen.insert(m.clone()) {
                    queue.push_back(m.clone());
                }
            }
        }
        seen
    }

    /// Topological order (Kahn), ties broken by insertion order.
    pub fn topological(&self) -> Vec<NodeId> {
        let pos: BTreeMap<&NodeId, usize> = self.order.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut indeg: BTreeMap<&NodeId, usize> =
            self.order.iter().map(|n| (n, self.pred.get(n).map_or(0, |p| p.len()))).collect();
        let mut ready: BTreeSet<(usize, &NodeId)> =
            indeg.iter().filter(|(_, d)| **d == 0).map(|(n, _)| (pos[n], *n)).collect();
        let mut out = Vec::with_capacity(self.order.len());
        while let Some(first) = ready.iter().next().cloned() {
            ready.remove(&first);
            let n = first.1;
            out.push(n.clone());
            for (m, _) in self.successors(n) {
                let d = indeg.get_mut(m).expect("known node");
                *d -= 1;
                if *d == 0 {
                    ready.insert((pos[m], m));
                }
            }
        }
        out
    }

    fn check_acyclic(&self) -> Result<(), GraphError> {
        let topo = self.topological();
        if topo.len() == self.order.len() {
            return Ok(());
        }
        let done: BTreeSet<&NodeId> = topo.iter().collect();
        let stuck: Vec<NodeId> = self.order.iter().filter(|n| !done.contains(n)).cloned().collect();
        Err(GraphError::Cycle(stuck))
    }

    /// Copy of the graph with its contents exposed to a builder, for edits.
    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for n in &self.order {
            b.node(n.clone());
        }
        for a in self.arrows() {
            b.raw_arrow(a);
        }
        for (n, f) in &self.formulas {
            if matches!(f, DnfSpec::Explicit(_) | DnfSpec::Grouped(Grouping::Keyed(_))) {
                b.formula(n.clone(), f.clone());
            }
        }
        b
    }

    /// Subgraph induced by `keep` (insertion order preserved). Formulas of
    /// kept nodes are re-materialized over the surviving successors.
    pub fn induced(&self, keep: &BTreeSet<NodeId>) -> FiniteGraph {
        let mut b = GraphBuilder::new();
        for n in self.order.iter().filter(|n| keep.contains(*n)) {
            b.node(n.clone());
        }
        for a in self.arrows() {
            if keep.contains(&a.from) && keep.contains(&a.to) {
                b.raw_arrow(a);
            }
        }
        b.build().expect("induced subgraph of a DAG is a DAG")
    }
}

/// Closes the arrows among `subset` under transitivity. All arrows among
/// the subset must be negative; added arrows are negative too. Grouped
/// formulas pick up the new successors (keyed groups place them in group 0).
pub fn transitive_closure_neg(graph: &FiniteGraph, subset: &BTreeSet<NodeId>) -> Result<FiniteGraph, GraphError> {
    for n in subset {
        if !graph.contains(n) {
            return Err(GraphError::UnknownNode(n.clone()));
        }
        for (m, s) in graph.successors(n) {
            if subset.contains(m) && s == Sign::Pos {
                return Err(GraphError::NotNegative(n.clone(), m.clone()));
            }
        }
    }
    let mut b = graph.to_builder();
    for n in subset {
        let mut seen: BTreeSet<NodeId> = BTreeSet::new();
        let mut stack: Vec<NodeId> =
            graph.successors(n).filter(|(m, _)| subset.contains(*m)).map(|(m, _)| m.clone()).collect();
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) {
                continue;
            }
            for (k, _) in graph.successors(&m) {
                if subset.contains(k) {
                    stack.push(k.clone());
                }
            }
        }
        for m in seen {
            if graph.arrow(n, &m).is_none() {
                b.raw_arrow(Arrow::new(n.clone(), m, Sign::Neg));
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Atom, Literal};
    use crate::node::id;
    use alloc::string::ToString;
    use alloc::vec;

    fn basic() -> FiniteGraph {
        build_finite_graph(
            [id("x"), id("y"), id("z")],
            [Arrow::neg("x", "y"), Arrow::neg("y", "z"), Arrow::neg("x", "z")],
            [],
        )
        .unwrap()
    }

    #[test]
    fn default_formulas_are_conjunctions() {
        let g = basic();
        assert_eq!(g.dnf(&id("x")).unwrap().to_string(), "~y & ~z");
        assert_eq!(g.dnf(&id("y")).unwrap().to_string(), "~z");
        assert!(g.is_free(&id("z")));
        assert!(g.dnf(&id("z")).is_none());
    }

    #[test]
    fn lone_node_is_free() {
        let g = build_finite_graph([id("x")], [], []).unwrap();
        assert!(g.is_free(&id("x")));
        assert_eq!(g.arrow_count(), 0);
    }

    #[test]
    fn detects_cycles_and_bad_arrows() {
        let e = build_finite_graph([id("x"), id("y")], [Arrow::neg("x", "y"), Arrow::neg("y", "x")], []);
        assert!(matches!(e, Err(GraphError::Cycle(_))));
        let e = build_finite_graph([id("x")], [Arrow::neg("x", "y")], []);
        assert!(matches!(e, Err(GraphError::DanglingArrow(_))));
        let e = build_finite_graph([id("x")], [Arrow::neg("x", "x")], []);
        assert_eq!(e, Err(GraphError::SelfLoop(id("x"))));
        let e = build_finite_graph([id("x"), id("y")], [Arrow::neg("x", "y"), Arrow::pos("x", "y")], []);
        assert!(matches!(e, Err(GraphError::DuplicateArrow(_, _))));
    }

    #[test]
    fn formula_checks() {
        let lit = |v: &str, n: bool| Atom::Lit(Literal::new(id(v), n));
        let bad_var = build_finite_graph(
            [id("x"), id("y"), id("z")],
            [Arrow::neg("x", "y")],
            [(id("x"), DnfSpec::Explicit(Dnf::new(vec![vec![lit("z", true)]])))],
        );
        assert!(matches!(bad_var, Err(GraphError::FormulaVariable { .. })));
        let mismatch = build_finite_graph(
            [id("x"), id("y")],
            [Arrow::pos("x", "y")],
            [(id("x"), DnfSpec::Explicit(Dnf::new(vec![vec![lit("y", true)]])))],
        );
        assert!(matches!(mismatch, Err(GraphError::SignMismatch { .. })));
        let guard = build_finite_graph(
            [id("x"), id("y")],
            [Arrow::pos("x", "y")],
            [(id("x"), DnfSpec::Explicit(Dnf::new(vec![vec![lit("y", true)], vec![lit("y", false)]])))],
        );
        assert!(guard.is_ok());
    }

    #[test]
    fn closure_of_a_chain() {
        let g = build_finite_graph(
            [id("x0"), id("x1"), id("x2"), id("x3")],
            [Arrow::neg("x0", "x1"), Arrow::neg("x1", "x2"), Arrow::neg("x2", "x3")],
            [],
        )
        .unwrap();
        let all: BTreeSet<NodeId> = g.nodes().iter().cloned().collect();
        let c = transitive_closure_neg(&g, &all).unwrap();
        assert_eq!(c.arrow_count(), 6);
        assert_eq!(c.arrow(&id("x0"), &id("x3")), Some(Sign::Neg));
        assert_eq!(transitive_closure_neg(&c, &all).unwrap(), c);
    }

    #[test]
    fn closure_rejects_positive_arrows() {
        let g = build_finite_graph([id("a"), id("b")], [Arrow::pos("a", "b")], []).unwrap();
        let all: BTreeSet<NodeId> = g.nodes().iter().cloned().collect();
        assert_eq!(transitive_closure_neg(&g, &all), Err(GraphError::NotNegative(id("a"), id("b"))));
    }

    #[test]
    fn topological_respects_arrows() {
        let g = basic();
        assert_eq!(g.topological(), vec![id("x"), id("y"), id("z")]);
    }
}
