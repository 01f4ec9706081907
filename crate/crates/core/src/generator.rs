//! Lazy graph generators and their finite truncation windows.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Atom, Dnf, DnfSpec, GroupKey, Literal};
use crate::graph::{FiniteGraph, GraphBuilder, GraphError};
use crate::node::{NodeId, Sign};

/// Successors scanned per node before the stream counts as cut.
pub const FANOUT_CAP: usize = 64;
/// Default limit on the number of window nodes.
pub const NODE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successor {
    pub to: NodeId,
    pub sign: Sign,
    pub group: GroupKey,
}

impl Successor {
    pub fn new(to: NodeId, sign: Sign, group: GroupKey) -> Self {
        Successor { to, sign, group }
    }

    pub fn neg(to: NodeId) -> Self {
        Successor { to, sign: Sign::Neg, group: 0 }
    }

    pub fn pos(to: NodeId) -> Self {
        Successor { to, sign: Sign::Pos, group: 0 }
    }
}

/// How a generated node's formula is formed from its successor stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaRule {
    /// No formula: a free variable.
    Sink,
    /// Conjunction of all arrow-signed successor literals.
    Conjunction,
    /// Disjunction over successor groups of each group's conjunction.
    Grouped,
    /// An explicit finite formula over successors.
    Explicit(Dnf),
}

pub type SuccessorStream<'a> = Box<dyn Iterator<Item = Successor> + 'a>;

/// A deterministic rule producing a (possibly infinite) signed DAG from a root.
pub trait Generator: Send + Sync {
    fn name(&self) -> String;

    fn root(&self) -> NodeId;

    /// Distance-like rank used for truncation. Need not grow along arrows,
    /// but only finitely many nodes may share a rank bound.
    fn rank(&self, node: &NodeId) -> usize;

    /// Successors in a fixed order.
    fn successors<'a>(&'a self, node: &NodeId) -> SuccessorStream<'a>;

    /// Direct arrow lookup; must agree with `successors`.
    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)>;

    fn formula(&self, node: &NodeId) -> FormulaRule;

    /// Members of one successor group. The default scans a bounded prefix
    /// of the successor stream.
    fn group_members<'a>(&'a self, node: &NodeId, group: GroupKey) -> Box<dyn Iterator<Item = NodeId> + 'a> {
        Box::new(self.successors(node).take(FANOUT_CAP * 64).filter(move |s| s.group == group).map(|s| s.to))
    }

    /// A successor `k` in `group` having some non-empty group contained in
    /// `group` (a knee closing that group).
    fn knee_hint(&self, _node: &NodeId, _group: GroupKey) -> Option<NodeId> {
        None
    }

    /// A successor whose successors are all negative successors of `node`.
    fn transitive_hint(&self, _node: &NodeId) -> Option<NodeId> {
        None
    }

    /// Whether the construction guarantees that every successor of `knee`
    /// is a negative successor of `node`. Claims are checked by sampling.
    fn claims_transitive(&self, node: &NodeId, knee: &NodeId) -> bool {
        self.transitive_hint(node).as_ref() == Some(knee)
    }

    /// Largest rank of any node, for finite generators.
    fn max_rank(&self) -> Option<usize> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    /// Out-of-window parts are abstracted by a fresh conjoined variable.
    Remainder,
    /// Out-of-window parts are dropped.
    Restricted,
}

impl WindowMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WindowMode::Remainder => "remainder",
            WindowMode::Restricted => "restricted",
        }
    }
}

/// A finite fragment of a generated graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub graph: FiniteGraph,
    pub root: NodeId,
    pub depth: usize,
    pub mode: WindowMode,
    /// Nodes whose formulas were materialized.
    pub interior: BTreeSet<NodeId>,
    /// Free nodes: truncation boundary and generator sinks.
    pub frontier: BTreeSet<NodeId>,
    /// Interior node -> its remainder variable.
    pub remainder: BTreeMap<NodeId, NodeId>,
    /// Interior nodes whose successor stream exceeded the fan-out cap.
    pub cut: BTreeSet<NodeId>,
}

impl Window {
    /// Window variables in creation order.
    pub fn variables(&self) -> &[NodeId] {
        self.graph.nodes()
    }

    pub fn is_remainder(&self, n: &NodeId) -> bool {
        self.remainder.values().any(|r| r == n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TruncateError {
    BudgetExceeded { nodes: usize, cap: usize },
    Graph(GraphError),
}

impl fmt::Display for TruncateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncateError::BudgetExceeded { nodes, cap } => {
                write!(f, "window holds more than {cap} nodes (reached {nodes})")
            }
            TruncateError::Graph(e) => write!(f, "generated graph is invalid: {e}"),
        }
    }
}

impl core::error::Error for TruncateError {}

impl From<GraphError> for TruncateError {
    fn from(e: GraphError) -> Self {
        TruncateError::Graph(e)
    }
}

/// Name of the remainder variable owned by `node`.
pub fn remainder_var(node: &NodeId) -> NodeId {
    NodeId::from_segments(&["r", node.as_str()])
}

pub fn truncate(gen: &dyn Generator, depth: usize, mode: WindowMode) -> Result<Window, TruncateError> {
    truncate_with_cap(gen, depth, mode, NODE_CAP)
}

struct Expanded {
    inside: Vec<Successor>,
    outside: bool,
    cut: bool,
}

/// Breadth-first materialization of every node with rank at most `depth`.
/// Nodes of rank below `depth` are expanded; nodes at rank `depth` and
/// generator sinks become free.
pub fn truncate_with_cap(
    gen: &dyn Generator,
    depth: usize,
    mode: WindowMode,
    cap: usize,
) -> Result<Window, TruncateError> {
    let root = gen.root();
    let mut seen: BTreeSet<NodeId> = BTreeSet::new();
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    let mut b = GraphBuilder::new();
    let mut interior = BTreeSet::new();
    let mut frontier = BTreeSet::new();
    let mut remainder = BTreeMap::new();
    let mut cut = BTreeSet::new();

    seen.insert(root.clone());
    queue.push_back(root.clone());
    b.node(root.clone());

    while let Some(n) = queue.pop_front() {
        let rule = gen.formula(&n);
        if gen.rank(&n) >= depth || rule == FormulaRule::Sink {
            frontier.insert(n);
            continue;
        }
        let ex = expand(gen, &n, depth);
        if mode == WindowMode::Restricted && ex.inside.is_empty() {
            frontier.insert(n);
            continue;
        }
        for s in &ex.inside {
            if seen.insert(s.to.clone()) {
                if seen.len() > cap {
                    return Err(TruncateError::BudgetExceeded { nodes: seen.len(), cap });
                }
                b.node(s.to.clone());
                queue.push_back(s.to.clone());
            }
            b.raw_arrow(crate::node::Arrow::new(n.clone(), s.to.clone(), s.sign));
        }
        let base = window_formula(&rule, &ex);
        let needs_rem = ex.outside || ex.cut;
        let dnf = if mode == WindowMode::Remainder && needs_rem {
            let r = remainder_var(&n);
            b.node(r.clone());
            b.raw_arrow(crate::node::Arrow::new(n.clone(), r.clone(), Sign::Pos));
            remainder.insert(n.clone(), r.clone());
            frontier.insert(r.clone());
            Dnf::new(
                base.disjuncts
                    .into_iter()
                    .map(|mut c| {
                        c.retain(|a| *a != Atom::True);
                        c.push(Atom::pos(r.clone()));
                        c
                    })
                    .collect(),
            )
        } else {
            base
        };
        if ex.cut {
            cut.insert(n.clone());
        }
        b.formula(n.clone(), DnfSpec::Explicit(dnf));
        interior.insert(n);
    }
    let graph = b.build()?;
    Ok(Window { graph, root, depth, mode, interior, frontier, remainder, cut })
}

fn expand(gen: &dyn Generator, n: &NodeId, depth: usize) -> Expanded {
    let mut inside = Vec::new();
    let mut outside = false;
    let mut cut = false;
    for (i, s) in gen.successors(n).enumerate() {
        if i == FANOUT_CAP {
            cut = true;
            break;
        }
        if gen.rank(&s.to) <= depth {
            inside.push(s);
        } else {
            outside = true;
        }
    }
    Expanded { inside, outside, cut }
}

/// The generator formula restricted to in-window literals. Disjuncts that
/// lose all their literals become `T`.
fn window_formula(rule: &FormulaRule, ex: &Expanded) -> Dnf {
    let inside: BTreeMap<&NodeId, &Successor> = ex.inside.iter().map(|s| (&s.to, s)).collect();
    let restrict = |conj: &[Atom]| -> Vec<Atom> {
        let mut out: Vec<Atom> = conj
            .iter()
            .filter(|a| match a {
                Atom::Lit(l) => inside.contains_key(&l.var),
                _ => true,
            })
            .cloned()
            .collect();
        if out.is_empty() {
            out.push(Atom::True);
        }
        out
    };
    match rule {
        FormulaRule::Sink => unreachable!("sinks are not expanded"),
        FormulaRule::Conjunction => {
            let c: Vec<Atom> = ex.inside.iter().map(|s| Atom::Lit(Literal::from_sign(s.to.clone(), s.sign))).collect();
            Dnf::new(alloc::vec![restrict(&c)])
        }
        FormulaRule::Grouped => {
            let mut groups: BTreeMap<GroupKey, Vec<Atom>> = BTreeMap::new();
            for s in &ex.inside {
                groups.entry(s.group).or_default().push(Atom::Lit(Literal::from_sign(s.to.clone(), s.sign)));
            }
            let mut d: Vec<Vec<Atom>> = groups.into_values().collect();
            // groups never seen in the scanned prefix may still exist
            if ex.cut || d.is_empty() {
                d.push(alloc::vec![Atom::True]);
            }
            Dnf::new(d)
        }
        FormulaRule::Explicit(d) => Dnf::new(d.disjuncts.iter().map(|c| restrict(c)).collect()),
    }
}

/// Evaluates the full generator formula of `node` classically, sampling at
/// most [`FANOUT_CAP`] successors. `value` must cover every sampled successor.
pub fn eval_generated<F>(gen: &dyn Generator, node: &NodeId, mut value: F) -> Option<bool>
where
    F: FnMut(&NodeId) -> Option<bool>,
{
    let succ: Vec<Successor> = gen.successors(node).take(FANOUT_CAP).collect();
    match gen.formula(node) {
        FormulaRule::Sink => None,
        FormulaRule::Conjunction => {
            let mut acc = true;
            for s in &succ {
                let v = value(&s.to)?;
                acc &= if s.sign == Sign::Neg { !v } else { v };
            }
            Some(acc)
        }
        FormulaRule::Grouped => {
            let mut groups: BTreeMap<GroupKey, bool> = BTreeMap::new();
            for s in &succ {
                let v = value(&s.to)?;
                let lit = if s.sign == Sign::Neg { !v } else { v };
                let e = groups.entry(s.group).or_insert(true);
                *e &= lit;
            }
            Some(groups.values().any(|g| *g))
        }
        FormulaRule::Explicit(d) => d.eval_bool(|v| value(v)).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::id;
    use alloc::format;
    use alloc::string::ToString;

    /// x:i -o x:j for all j > i.
    struct Chain;

    impl Generator for Chain {
        fn name(&self) -> String {
            "chain".to_string()
        }
        fn root(&self) -> NodeId {
            id("x:0")
        }
        fn rank(&self, n: &NodeId) -> usize {
            n.index(1).unwrap() as usize
        }
        fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
            let i = n.index(1).unwrap();
            Box::new((i + 1..).map(|j| Successor::neg(id(&format!("x:{j}")))))
        }
        fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
            (from.index(1)? < to.index(1)?).then_some((Sign::Neg, 0))
        }
        fn formula(&self, _: &NodeId) -> FormulaRule {
            FormulaRule::Conjunction
        }
    }

    #[test]
    fn remainder_window() {
        let w = truncate(&Chain, 3, WindowMode::Remainder).unwrap();
        assert_eq!(w.graph.dnf(&id("x:0")).unwrap().to_string(), "~x:1 & ~x:2 & ~x:3 & r:x:0");
        assert_eq!(w.remainder.len(), 3);
        assert!(w.frontier.contains(&id("x:3")));
        assert!(w.interior.contains(&id("x:2")));
    }

    #[test]
    fn restricted_window() {
        let w = truncate(&Chain, 3, WindowMode::Restricted).unwrap();
        assert_eq!(w.graph.dnf(&id("x:0")).unwrap().to_string(), "~x:1 & ~x:2 & ~x:3");
        assert!(w.remainder.is_empty());
        assert_eq!(w.graph.len(), 4);
    }

    #[test]
    fn zero_depth_is_a_single_free_root() {
        let w = truncate(&Chain, 0, WindowMode::Remainder).unwrap();
        assert!(w.interior.is_empty());
        assert_eq!(w.frontier.len(), 1);
    }

    #[test]
    fn node_cap_is_enforced() {
        let e = truncate_with_cap(&Chain, 20, WindowMode::Remainder, 5);
        assert!(matches!(e, Err(TruncateError::BudgetExceeded { cap: 5, .. })));
    }

    #[test]
    fn sampled_evaluation() {
        let v = eval_generated(&Chain, &id("x:0"), |_| Some(false));
        assert_eq!(v, Some(true));
    }
}
