use alloc::boxed::Box;
use alloc::string::{String, ToString};

use crate::formula::GroupKey;
use crate::generator::{FormulaRule, Generator, Successor, SuccessorStream};
use crate::node::{NodeId, Sign};

pub(crate) fn x(i: u64) -> NodeId {
    NodeId::from_segments(&["x", &i.to_string()])
}

pub(crate) fn yablo_index(n: &NodeId) -> Option<u64> {
    if n.kind() == "x" && n.segment_count() == 2 {
        n.index(1)
    } else {
        None
    }
}

/// `x:i = AND{ ~x:j : j > i }`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Yablo;

pub fn make_yablo() -> Yablo {
    Yablo
}

impl Generator for Yablo {
    fn name(&self) -> String {
        "yablo".to_string()
    }

    fn root(&self) -> NodeId {
        x(0)
    }

    fn rank(&self, n: &NodeId) -> usize {
        yablo_index(n).unwrap_or(0) as usize
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        match yablo_index(n) {
            Some(i) => Box::new((i + 1..).map(|j| Successor::neg(x(j)))),
            None => Box::new(core::iter::empty()),
        }
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        (yablo_index(from)? < yablo_index(to)?).then_some((Sign::Neg, 0))
    }

    fn formula(&self, _: &NodeId) -> FormulaRule {
        FormulaRule::Conjunction
    }

    fn knee_hint(&self, n: &NodeId, _: GroupKey) -> Option<NodeId> {
        yablo_index(n).map(|i| x(i + 1))
    }

    fn transitive_hint(&self, n: &NodeId) -> Option<NodeId> {
        yablo_index(n).map(|i| x(i + 1))
    }

    fn claims_transitive(&self, n: &NodeId, knee: &NodeId) -> bool {
        self.arrow(n, knee).is_some()
    }
}
