//! Nested diamonds: `x -o y -o z` against `x -o y' -> z`.
//!
//! Sign choices for the two Versuch variants follow the +/- labels of the
//! drawn diagram. Left side, for every `m`:
//!
//! ```text
//! x:2m -o x:(2m+1):2 -o x:(2m+2)        (vertical spine)
//! x:0 -o x:1:1
//! x:(2m+1):1 -> x:(2m+2)
//! x:(2m+1):1 -o x:(2m+3):1
//! x:(2m+1):1 -o x:(2m+3):2
//! ```
//!
//! Right side (finite): spine `x:0 -o x:1:2 -o x:2 -o x:3:2 -o x:4 -o x:5
//! -o x:6:2 -o x:7`, negative side arrows `x:0 -o x:1:1`, `x:1:1 -o x:3:1`,
//! `x:3:1 -o x:6:1`, `x:1:1 -o x:3:2`, `x:3:1 -o x:6:2`, and positive side
//! arrows `x:1:1 -> x:2`, `x:3:1 -> x:4`, `x:6:1 -> x:7`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::finite::FiniteGen;
use crate::formula::{Atom, Dnf, DnfSpec, GroupKey};
use crate::generator::{FormulaRule, Generator, Successor, SuccessorStream};
use crate::graph::{FiniteGraph, GraphBuilder};
use crate::node::{id, NodeId, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiamondVariant {
    VersuchLeft,
    VersuchRight,
    RhombusBasic,
    /// The rhombus fragment with the synchronized root formula.
    RhombusBasicSync,
    Essential,
    Matrix5,
}

impl DiamondVariant {
    pub fn label(self) -> &'static str {
        match self {
            DiamondVariant::VersuchLeft => "versuch-left",
            DiamondVariant::VersuchRight => "versuch-right",
            DiamondVariant::RhombusBasic => "rhombus-basic",
            DiamondVariant::RhombusBasicSync => "rhombus-basic-sync",
            DiamondVariant::Essential => "essential",
            DiamondVariant::Matrix5 => "matrix5",
        }
    }

    pub fn parse(s: &str) -> Option<DiamondVariant> {
        [
            DiamondVariant::VersuchLeft,
            DiamondVariant::VersuchRight,
            DiamondVariant::RhombusBasic,
            DiamondVariant::RhombusBasicSync,
            DiamondVariant::Essential,
            DiamondVariant::Matrix5,
        ]
        .into_iter()
        .find(|v| v.label() == s)
    }
}

pub fn make_nested_diamond(variant: DiamondVariant) -> Box<dyn Generator> {
    let name = alloc::format!("diamond:{}", variant.label());
    match variant {
        DiamondVariant::VersuchLeft => Box::new(VersuchLeft),
        DiamondVariant::Essential => Box::new(Essential),
        DiamondVariant::VersuchRight => Box::new(FiniteGen::with_rank(&name, id("x:0"), versuch_right(), first_index)),
        DiamondVariant::RhombusBasic => {
            Box::new(FiniteGen::with_rank(&name, id("x:0"), rhombus_basic(false), first_index))
        }
        DiamondVariant::RhombusBasicSync => {
            Box::new(FiniteGen::with_rank(&name, id("x:0"), rhombus_basic(true), first_index))
        }
        DiamondVariant::Matrix5 => Box::new(FiniteGen::with_rank(&name, id("x"), matrix5(), matrix5_rank)),
    }
}

fn first_index(n: &NodeId) -> usize {
    n.index(1).unwrap_or(0) as usize
}

fn xs(parts: &[u64]) -> NodeId {
    let mut segs: Vec<String> = vec![String::from("x")];
    segs.extend(parts.iter().map(|p| p.to_string()));
    NodeId::from_segments(&segs)
}

fn build(neg: &[(&str, &str)], pos: &[(&str, &str)]) -> GraphBuilder {
    let mut b = GraphBuilder::new();
    for (a, c) in neg {
        b.arrow(id(a), id(c), Sign::Neg);
    }
    for (a, c) in pos {
        b.arrow(id(a), id(c), Sign::Pos);
    }
    b
}

pub fn versuch_right() -> FiniteGraph {
    let neg = [
        ("x:0", "x:1:2"),
        ("x:1:2", "x:2"),
        ("x:2", "x:3:2"),
        ("x:3:2", "x:4"),
        ("x:4", "x:5"),
        ("x:5", "x:6:2"),
        ("x:6:2", "x:7"),
        ("x:0", "x:1:1"),
        ("x:1:1", "x:3:1"),
        ("x:3:1", "x:6:1"),
        ("x:1:1", "x:3:2"),
        ("x:3:1", "x:6:2"),
    ];
    let pos = [("x:1:1", "x:2"), ("x:3:1", "x:4"), ("x:6:1", "x:7")];
    build(&neg, &pos).build().expect("fixed diagram is acyclic")
}

/// The seven diamonds `(head, left, top, right)`: `head -o left`,
/// `head -o right`, `right -o top`, `left -> top`.
const RHOMBI: [(&str, &str, &str, &str); 7] = [
    ("x:0", "x:1:1", "x:2", "x:1:2"),
    ("x:1:1", "x:3:1", "x:4:1", "x:3:2"),
    ("x:1:2", "x:3:3", "x:4:2", "x:3:4"),
    ("x:3:1", "x:5:1", "x:6:1", "x:5:2"),
    ("x:3:2", "x:5:3", "x:6:2", "x:5:4"),
    ("x:3:3", "x:5:5", "x:6:3", "x:5:6"),
    ("x:3:4", "x:5:7", "x:6:4", "x:5:8"),
];

/// With `sync`, the root reads
/// `(~x:1:1 & ~x:1:2) & ((x:3:1 & x:3:4) | (x:3:2 & x:3:3) | (x:2 & ~x:2))`
/// in disjunctive form, over extra arrows from the root.
pub fn rhombus_basic(sync: bool) -> FiniteGraph {
    let mut b = GraphBuilder::new();
    for (head, left, top, right) in RHOMBI {
        b.arrow(id(head), id(left), Sign::Neg);
        b.arrow(id(head), id(right), Sign::Neg);
        b.arrow(id(right), id(top), Sign::Neg);
        b.arrow(id(left), id(top), Sign::Pos);
    }
    if sync {
        for k in 1..=4 {
            b.arrow(id("x:0"), xs(&[3, k]), Sign::Pos);
        }
        b.arrow(id("x:0"), id("x:2"), Sign::Neg);
        let guard = || vec![Atom::neg(id("x:1:1")), Atom::neg(id("x:1:2"))];
        let with = |extra: [Atom; 2]| {
            let mut c = guard();
            c.extend(extra);
            c
        };
        let d = Dnf::new(vec![
            with([Atom::pos(id("x:3:1")), Atom::pos(id("x:3:4"))]),
            with([Atom::pos(id("x:3:2")), Atom::pos(id("x:3:3"))]),
            with([Atom::pos(id("x:2")), Atom::neg(id("x:2"))]),
        ]);
        b.formula(id("x:0"), DnfSpec::Explicit(d));
    }
    b.build().expect("fixed diagram is acyclic")
}

pub fn matrix5() -> FiniteGraph {
    let neg = [
        ("x", "x:1"),
        ("x", "x:2"),
        ("x", "x:3"),
        ("x", "x:4"),
        ("x:1", "y"),
        ("x:2", "x:2:1"),
        ("x:2", "x:2:2"),
        ("x:3", "x:3:1"),
        ("x:3", "x:3:2"),
        ("x:4", "x:4:1"),
        ("x:4", "x:4:2"),
        ("x:2:1", "y:2"),
        ("x:3:1", "y:3"),
        ("x:4:1", "y:4"),
    ];
    let pos = [("x:2", "y"), ("x:3", "x:2:2"), ("x:4", "x:3:2"), ("x:2:2", "y:2"), ("x:3:2", "y:3"), ("x:4:2", "y:4")];
    build(&neg, &pos).build().expect("fixed diagram is acyclic")
}

fn matrix5_rank(n: &NodeId) -> usize {
    match (n.kind(), n.segment_count()) {
        ("x", 1) => 0,
        ("x", 2) => 1,
        ("y", 1) => 2,
        ("x", _) => 2,
        _ => 3,
    }
}

/// The infinite left-hand Versuch attempt, ranked by first index.
#[derive(Debug, Clone, Copy, Default)]
pub struct VersuchLeft;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VlNode {
    Spine(u64),
    Side(u64),
    Mid(u64),
}

fn vl_parse(n: &NodeId) -> Option<VlNode> {
    if n.kind() != "x" {
        return None;
    }
    let i = n.index(1)?;
    match (n.segment_count(), i % 2) {
        (2, 0) => Some(VlNode::Spine(i)),
        (3, 1) => match n.index(2)? {
            1 => Some(VlNode::Side(i)),
            2 => Some(VlNode::Mid(i)),
            _ => None,
        },
        _ => None,
    }
}

impl VersuchLeft {
    fn succ(&self, n: &NodeId) -> Vec<Successor> {
        match vl_parse(n) {
            Some(VlNode::Spine(0)) => vec![Successor::neg(xs(&[1, 1])), Successor::neg(xs(&[1, 2]))],
            Some(VlNode::Spine(i)) => vec![Successor::neg(xs(&[i + 1, 2]))],
            Some(VlNode::Mid(i)) => vec![Successor::neg(xs(&[i + 1]))],
            Some(VlNode::Side(i)) => {
                vec![Successor::pos(xs(&[i + 1])), Successor::neg(xs(&[i + 2, 1])), Successor::neg(xs(&[i + 2, 2]))]
            }
            None => vec![],
        }
    }
}

impl Generator for VersuchLeft {
    fn name(&self) -> String {
        "diamond:versuch-left".to_string()
    }

    fn root(&self) -> NodeId {
        xs(&[0])
    }

    fn rank(&self, n: &NodeId) -> usize {
        first_index(n)
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        Box::new(self.succ(n).into_iter())
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        self.succ(from).into_iter().find(|s| &s.to == to).map(|s| (s.sign, 0))
    }

    fn formula(&self, _: &NodeId) -> FormulaRule {
        FormulaRule::Conjunction
    }
}

/// `x:i = ~x:(i+1) & AND{ ~x:i:j : j >= i+2 }`, `x:i:j = x:j | (y:i:j & ~y:i:j)`.
/// Ranks: `x:i` is `2i`, `x:i:j` is `2j-1`, `y:i:j` is `2j`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Essential;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EsNode {
    X(u64),
    Xij(u64, u64),
    Yij(u64, u64),
}

fn es_parse(n: &NodeId) -> Option<EsNode> {
    let i = n.index(1)?;
    match (n.kind(), n.segment_count()) {
        ("x", 2) => Some(EsNode::X(i)),
        ("x", 3) => {
            let j = n.index(2)?;
            (j >= i + 2).then_some(EsNode::Xij(i, j))
        }
        ("y", 3) => {
            let j = n.index(2)?;
            (j >= i + 2).then_some(EsNode::Yij(i, j))
        }
        _ => None,
    }
}

fn yij(i: u64, j: u64) -> NodeId {
    NodeId::from_segments(&["y", &i.to_string(), &j.to_string()])
}

impl Generator for Essential {
    fn name(&self) -> String {
        "diamond:essential".to_string()
    }

    fn root(&self) -> NodeId {
        xs(&[0])
    }

    fn rank(&self, n: &NodeId) -> usize {
        match es_parse(n) {
            Some(EsNode::X(i)) => 2 * i as usize,
            Some(EsNode::Xij(_, j)) => 2 * j as usize - 1,
            Some(EsNode::Yij(_, j)) => 2 * j as usize,
            None => 0,
        }
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        match es_parse(n) {
            Some(EsNode::X(i)) => Box::new(
                core::iter::once(Successor::neg(xs(&[i + 1])))
                    .chain((i + 2..).map(move |j| Successor::neg(xs(&[i, j])))),
            ),
            Some(EsNode::Xij(i, j)) => Box::new(vec![Successor::pos(xs(&[j])), Successor::neg(yij(i, j))].into_iter()),
            _ => Box::new(core::iter::empty()),
        }
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        match (es_parse(from)?, es_parse(to)?) {
            (EsNode::X(i), EsNode::X(k)) if k == i + 1 => Some((Sign::Neg, 0)),
            (EsNode::X(i), EsNode::Xij(k, _)) if k == i => Some((Sign::Neg, 0)),
            (EsNode::Xij(_, j), EsNode::X(k)) if k == j => Some((Sign::Pos, 0)),
            (EsNode::Xij(i, j), EsNode::Yij(k, l)) if (k, l) == (i, j) => Some((Sign::Neg, 0)),
            _ => None,
        }
    }

    fn formula(&self, n: &NodeId) -> FormulaRule {
        match es_parse(n) {
            Some(EsNode::X(_)) => FormulaRule::Conjunction,
            Some(EsNode::Xij(i, j)) => FormulaRule::Explicit(Dnf::new(vec![
                vec![Atom::pos(xs(&[j]))],
                vec![Atom::pos(yij(i, j)), Atom::neg(yij(i, j))],
            ])),
            _ => FormulaRule::Sink,
        }
    }
}
