//! Local contradiction units: Yablo cells, cell systems, small-cell
//! taxonomy and diamonds.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::generator::{Generator, FANOUT_CAP};
use crate::graph::FiniteGraph;
use crate::node::{NodeId, Sign};

/// `head -o knee -o foot` together with `head -o foot`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct YabloCell {
    pub head: NodeId,
    pub knee: NodeId,
    pub foot: NodeId,
}

/// `head -o knee_neg -o meet` against `head -o knee_pos -> meet`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diamond {
    pub head: NodeId,
    pub knee_neg: NodeId,
    pub knee_pos: NodeId,
    pub meet: NodeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellClass {
    /// One conjunct needs both polarities of a successor.
    TwoArrow,
    /// Triangle signs `(+, -, +)` for `(head->a, a->b, head->b)`.
    ThreeArrowPosNegPos,
    /// Triangle signs `(+, +, -)`.
    ThreeArrowPosPosNeg,
    /// Triangle signs `(-, +, +)`.
    ThreeArrowNegPosPos,
    /// Triangle with exactly two negative arrows; no contradiction.
    NotContradictory,
    /// All-negative triangle.
    YabloCell,
    DiamondCell,
    None,
}

impl CellClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CellClass::TwoArrow => "two-arrow",
            CellClass::ThreeArrowPosNegPos => "three-arrow-pos-neg-pos",
            CellClass::ThreeArrowPosPosNeg => "three-arrow-pos-pos-neg",
            CellClass::ThreeArrowNegPosPos => "three-arrow-neg-pos-pos",
            CellClass::NotContradictory => "not-contradictory",
            CellClass::YabloCell => "yablo-cell",
            CellClass::DiamondCell => "diamond",
            CellClass::None => "none",
        }
    }
}

impl fmt::Display for CellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn neg_succ<'a>(g: &'a FiniteGraph, n: &NodeId) -> impl Iterator<Item = &'a NodeId> + 'a {
    g.successors(n).filter(|(_, s)| *s == Sign::Neg).map(|(m, _)| m)
}

/// Every Yablo cell, ordered by head, knee, foot.
pub fn find_yablo_cells(graph: &FiniteGraph) -> Vec<YabloCell> {
    let mut out = Vec::new();
    for head in graph.sorted_nodes() {
        for knee in neg_succ(graph, &head) {
            for foot in neg_succ(graph, knee) {
                if graph.arrow(&head, foot) == Some(Sign::Neg) {
                    out.push(YabloCell { head: head.clone(), knee: knee.clone(), foot: foot.clone() });
                }
            }
        }
    }
    out
}

/// Every diamond, ordered by head, negative knee, positive knee, meet.
pub fn find_diamonds(graph: &FiniteGraph) -> Vec<Diamond> {
    let mut out = Vec::new();
    for head in graph.sorted_nodes() {
        let knees: Vec<&NodeId> = neg_succ(graph, &head).collect();
        for y in &knees {
            for yp in &knees {
                if y == yp {
                    continue;
                }
                for z in neg_succ(graph, y) {
                    if graph.arrow(yp, z) == Some(Sign::Pos) {
                        out.push(Diamond {
                            head: head.clone(),
                            knee_neg: (*y).clone(),
                            knee_pos: (*yp).clone(),
                            meet: z.clone(),
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Whether `head -o knee` heads a Yablo cell system: every successor of
/// `knee` is also a negative successor of `head`. Also returns the
/// successors of `knee` lacking that arrow.
pub fn is_ycs(graph: &FiniteGraph, head: &NodeId, knee: &NodeId) -> (bool, Vec<NodeId>) {
    let missing: Vec<NodeId> = graph
        .successors(knee)
        .filter(|(y, _)| graph.arrow(head, y) != Some(Sign::Neg))
        .map(|(y, _)| y.clone())
        .collect();
    (missing.is_empty(), missing)
}

fn triangle_class(signs: (Sign, Sign, Sign)) -> CellClass {
    use Sign::{Neg as N, Pos as P};
    match signs {
        (P, N, P) => CellClass::ThreeArrowPosNegPos,
        (P, P, N) => CellClass::ThreeArrowPosPosNeg,
        (N, P, P) => CellClass::ThreeArrowNegPosPos,
        (N, N, N) => CellClass::YabloCell,
        (P, P, P) => CellClass::None,
        _ => CellClass::NotContradictory,
    }
}

/// The most specific cell at `head`. Priority: two-arrow, the three
/// contradictory three-arrow shapes, Yablo cell, diamond, the two-negation
/// triangle.
pub fn classify_cell(graph: &FiniteGraph, head: &NodeId) -> CellClass {
    if let Some(d) = graph.dnf(head) {
        let both = d.disjuncts.iter().any(|c| {
            let lits: Vec<_> = c.iter().filter_map(|a| a.literal()).collect();
            lits.iter().any(|l| lits.iter().any(|m| m.var == l.var && m.negated != l.negated))
        });
        if both {
            return CellClass::TwoArrow;
        }
    }
    let mut found: BTreeSet<CellClass> = BTreeSet::new();
    for (a, sa) in graph.successors(head) {
        for (b, sab) in graph.successors(a) {
            if let Some(sb) = graph.arrow(head, b) {
                found.insert(triangle_class((sa, sab, sb)));
            }
        }
    }
    if find_diamonds(graph).iter().any(|d| &d.head == head) {
        found.insert(CellClass::DiamondCell);
    }
    [
        CellClass::ThreeArrowPosNegPos,
        CellClass::ThreeArrowPosPosNeg,
        CellClass::ThreeArrowNegPosPos,
        CellClass::YabloCell,
        CellClass::DiamondCell,
        CellClass::NotContradictory,
    ]
    .into_iter()
    .find(|c| found.contains(c))
    .unwrap_or(CellClass::None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellError {
    /// `x -o x'` is not a negative arrow.
    NotNegative(NodeId, NodeId),
    /// The successor stream of the knee is infinite and nothing vouches for it.
    UndecidableWithoutHint(NodeId, NodeId),
    /// The construction claims transitivity but `witness` breaks it.
    HintContradiction { node: NodeId, knee: NodeId, witness: NodeId },
}

impl fmt::Display for CellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellError::NotNegative(a, b) => write!(f, "{a} -o {b} is not a negative arrow"),
            CellError::UndecidableWithoutHint(a, b) => {
                write!(f, "{b} has infinitely many successors and no hint covers {a} -o {b}")
            }
            CellError::HintContradiction { node, knee, witness } => {
                write!(f, "{knee} -> {witness} is not matched by {node} -o {witness}, against the construction's hint")
            }
        }
    }
}

impl core::error::Error for CellError {}

/// Every successor of `knee` is a negative successor of `x`.
pub fn is_locally_transitive(graph: &FiniteGraph, x: &NodeId, knee: &NodeId) -> Result<bool, CellError> {
    if graph.arrow(x, knee) != Some(Sign::Neg) {
        return Err(CellError::NotNegative(x.clone(), knee.clone()));
    }
    Ok(is_ycs(graph, x, knee).0)
}

/// Generator version of [`is_locally_transitive`]. Streams of at most
/// [`FANOUT_CAP`] successors are decided exactly; longer ones need the
/// construction's claim, which is validated on the first [`FANOUT_CAP`].
pub fn is_locally_transitive_gen(gen: &dyn Generator, x: &NodeId, knee: &NodeId) -> Result<bool, CellError> {
    if gen.arrow(x, knee).map(|a| a.0) != Some(Sign::Neg) {
        return Err(CellError::NotNegative(x.clone(), knee.clone()));
    }
    let sample: Vec<NodeId> = gen.successors(knee).take(FANOUT_CAP + 1).map(|s| s.to).collect();
    let finite = sample.len() <= FANOUT_CAP;
    let bad = sample.iter().take(FANOUT_CAP).find(|y| gen.arrow(x, y).map(|a| a.0) != Some(Sign::Neg));
    if finite {
        return Ok(bad.is_none());
    }
    if gen.claims_transitive(x, knee) {
        return match bad {
            Some(w) => Err(CellError::HintContradiction { node: x.clone(), knee: knee.clone(), witness: w.clone() }),
            None => Ok(true),
        };
    }
    match bad {
        Some(_) => Ok(false),
        None => Err(CellError::UndecidableWithoutHint(x.clone(), knee.clone())),
    }
}
