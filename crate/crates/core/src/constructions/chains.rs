//! Finitely branching chains: procrastination and the two-arrow cell chain.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;

use super::yablo::{x, yablo_index};
use crate::formula::{Atom, Dnf, GroupKey};
use crate::generator::{FormulaRule, Generator, Successor, SuccessorStream};
use crate::node::{NodeId, Sign};

fn node(kind: &str, i: u64) -> NodeId {
    NodeId::from_segments(&[kind, &i.to_string()])
}

/// `Y:i = ~Y:(i+1) & X:(i+2)` for `i >= 1`, `X:i = ~Y:i & X:(i+1)` for `i >= 3`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Procrastination;

pub fn make_procrastination() -> Procrastination {
    Procrastination
}

fn proc_parse(n: &NodeId) -> Option<(char, u64)> {
    if n.segment_count() != 2 {
        return None;
    }
    let i = n.index(1)?;
    match n.kind() {
        "Y" if i >= 1 => Some(('Y', i)),
        "X" if i >= 3 => Some(('X', i)),
        _ => None,
    }
}

impl Generator for Procrastination {
    fn name(&self) -> String {
        "procrastination".to_string()
    }

    fn root(&self) -> NodeId {
        node("Y", 1)
    }

    fn rank(&self, n: &NodeId) -> usize {
        match proc_parse(n) {
            Some(('Y', i)) => i as usize - 1,
            Some((_, i)) => i as usize - 2,
            None => 0,
        }
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        match proc_parse(n) {
            Some(('Y', i)) => {
                Box::new(vec![Successor::neg(node("Y", i + 1)), Successor::pos(node("X", i + 2))].into_iter())
            }
            Some((_, i)) => Box::new(vec![Successor::neg(node("Y", i)), Successor::pos(node("X", i + 1))].into_iter()),
            None => Box::new(core::iter::empty()),
        }
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        let ((fk, i), (tk, j)) = (proc_parse(from)?, proc_parse(to)?);
        match (fk, tk) {
            ('Y', 'Y') if j == i + 1 => Some((Sign::Neg, 0)),
            ('Y', 'X') if j == i + 2 => Some((Sign::Pos, 0)),
            ('X', 'Y') if j == i => Some((Sign::Neg, 0)),
            ('X', 'X') if j == i + 1 => Some((Sign::Pos, 0)),
            _ => None,
        }
    }

    fn formula(&self, _: &NodeId) -> FormulaRule {
        FormulaRule::Conjunction
    }
}

/// `x:i = x:(i+1) & ~x:(i+1)`, realized over a single negative arrow.
#[derive(Debug, Clone, Copy, Default)]
pub struct TwoArrowChain;

pub fn make_two_arrow_chain() -> TwoArrowChain {
    TwoArrowChain
}

impl Generator for TwoArrowChain {
    fn name(&self) -> String {
        "two-arrow".to_string()
    }

    fn root(&self) -> NodeId {
        x(0)
    }

    fn rank(&self, n: &NodeId) -> usize {
        yablo_index(n).unwrap_or(0) as usize
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        match yablo_index(n) {
            Some(i) => Box::new(core::iter::once(Successor::neg(x(i + 1)))),
            None => Box::new(core::iter::empty()),
        }
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        (yablo_index(from)? + 1 == yablo_index(to)?).then_some((Sign::Neg, 0))
    }

    fn formula(&self, n: &NodeId) -> FormulaRule {
        match yablo_index(n) {
            Some(i) => FormulaRule::Explicit(Dnf::new(vec![vec![Atom::pos(x(i + 1)), Atom::neg(x(i + 1))]])),
            None => FormulaRule::Sink,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::id;
    use alloc::vec::Vec;

    #[test]
    fn procrastination_successors() {
        let g = make_procrastination();
        let s: Vec<(NodeId, Sign)> = g.successors(&id("Y:1")).map(|s| (s.to, s.sign)).collect();
        assert_eq!(s, vec![(id("Y:2"), Sign::Neg), (id("X:3"), Sign::Pos)]);
        let s: Vec<(NodeId, Sign)> = g.successors(&id("X:3")).map(|s| (s.to, s.sign)).collect();
        assert_eq!(s, vec![(id("Y:3"), Sign::Neg), (id("X:4"), Sign::Pos)]);
        for n in ["Y:1", "Y:4", "X:3", "X:7"] {
            for t in g.successors(&id(n)) {
                assert_eq!(g.arrow(&id(n), &t.to), Some((t.sign, 0)));
                assert!(g.rank(&t.to) > g.rank(&id(n)));
            }
        }
    }

    #[test]
    fn two_arrow_formula() {
        let g = make_two_arrow_chain();
        match g.formula(&id("x:0")) {
            FormulaRule::Explicit(d) => assert_eq!(alloc::format!("{d}"), "x:1 & ~x:1"),
            other => panic!("{other:?}"),
        }
    }
}
