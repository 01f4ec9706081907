//! A finite graph exposed through the generator interface.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::formula::{DnfSpec, GroupKey, Grouping};
use crate::generator::{FormulaRule, Generator, Successor, SuccessorStream};
use crate::graph::FiniteGraph;
use crate::node::{NodeId, Sign};

#[derive(Debug, Clone)]
pub struct FiniteGen {
    name: String,
    root: NodeId,
    graph: FiniteGraph,
    ranks: BTreeMap<NodeId, usize>,
}

impl FiniteGen {
    /// Ranks are longest-path distances from the root; unreachable nodes
    /// get rank 0.
    pub fn new(name: &str, root: NodeId, graph: FiniteGraph) -> Self {
        let mut ranks: BTreeMap<NodeId, usize> = graph.nodes().iter().map(|n| (n.clone(), 0)).collect();
        let reach = graph.reachable(&root);
        for n in graph.topological() {
            if !reach.contains(&n) {
                continue;
            }
            let r = ranks[&n];
            for (m, _) in graph.successors(&n) {
                let e = ranks.get_mut(m).expect("known node");
                *e = (*e).max(r + 1);
            }
        }
        FiniteGen { name: String::from(name), root, graph, ranks }
    }

    /// Uses `rank` for every node instead of path distances.
    pub fn with_rank<F: Fn(&NodeId) -> usize>(name: &str, root: NodeId, graph: FiniteGraph, rank: F) -> Self {
        let ranks = graph.nodes().iter().map(|n| (n.clone(), rank(n))).collect();
        FiniteGen { name: String::from(name), root, graph, ranks }
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    fn group_of(&self, node: &NodeId, succ: &NodeId) -> GroupKey {
        match self.graph.formula(node) {
            Some(DnfSpec::Grouped(Grouping::Keyed(keys))) => keys.get(succ).copied().unwrap_or(0),
            _ => 0,
        }
    }

    fn group(&self, node: &NodeId, g: GroupKey) -> BTreeSet<NodeId> {
        self.graph.successors(node).filter(|(m, _)| self.group_of(node, m) == g).map(|(m, _)| m.clone()).collect()
    }

    fn neg_successors(&self, node: &NodeId) -> BTreeSet<NodeId> {
        self.graph.successors(node).filter(|(_, s)| *s == Sign::Neg).map(|(m, _)| m.clone()).collect()
    }
}

impl Generator for FiniteGen {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn root(&self) -> NodeId {
        self.root.clone()
    }

    fn rank(&self, node: &NodeId) -> usize {
        self.ranks.get(node).copied().unwrap_or(0)
    }

    fn successors<'a>(&'a self, node: &NodeId) -> SuccessorStream<'a> {
        if !self.graph.contains(node) {
            return Box::new(core::iter::empty());
        }
        let out: Vec<Successor> =
            self.graph.successors(node).map(|(m, s)| Successor::new(m.clone(), s, self.group_of(node, m))).collect();
        Box::new(out.into_iter())
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        let s = self.graph.arrow(from, to)?;
        Some((s, self.group_of(from, to)))
    }

    fn formula(&self, node: &NodeId) -> FormulaRule {
        match self.graph.formula(node) {
            None => FormulaRule::Sink,
            Some(DnfSpec::Explicit(d)) => FormulaRule::Explicit(d.clone()),
            Some(DnfSpec::Grouped(Grouping::Single)) => FormulaRule::Conjunction,
            Some(DnfSpec::Grouped(Grouping::Keyed(_))) => FormulaRule::Grouped,
        }
    }

    fn knee_hint(&self, node: &NodeId, group: GroupKey) -> Option<NodeId> {
        let g = self.group(node, group);
        let negs = self.neg_successors(node);
        g.iter()
            .filter(|k| negs.contains(*k) && self.graph.out_degree(k) > 0)
            .find(|k| {
                let keys: BTreeSet<GroupKey> = self.graph.successors(k).map(|(m, _)| self.group_of(k, m)).collect();
                keys.into_iter().any(|h| self.group(k, h).is_subset(&g))
            })
            .cloned()
    }

    fn transitive_hint(&self, node: &NodeId) -> Option<NodeId> {
        let negs = self.neg_successors(node);
        negs.iter().find(|k| self.graph.successors(k).all(|(m, _)| negs.contains(m))).cloned()
    }

    fn max_rank(&self) -> Option<usize> {
        Some(self.ranks.values().copied().max().unwrap_or(0))
    }
}
