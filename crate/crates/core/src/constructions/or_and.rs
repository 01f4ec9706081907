//! Or-And structures: nodes `x:i:j` in column `i`, height `j`. A node is
//! the disjunction over visible columns of the conjunction of the negated
//! visible members of that column.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;

use super::ConstructionError;
use crate::formula::GroupKey;
use crate::generator::{FormulaRule, Generator, Successor, SuccessorStream, FANOUT_CAP};
use crate::node::{NodeId, Sign};

pub type Cell = (u64, u64);

/// Which nodes `x:i:j` sees. All built-in orders are strict partial orders.
#[derive(Debug, Clone, Copy)]
pub enum OaOrder {
    /// Later in the shell enumeration.
    Enumeration,
    /// Strictly larger column.
    RankedHorizontal,
    /// Strictly larger height.
    RankedVertical,
    /// Strictly larger `max(i, j)`.
    MaxRank,
    /// `f(a, b)`: `b` is visible from `a`. Must be a strict partial order.
    Custom(fn(Cell, Cell) -> bool),
}

impl OaOrder {
    pub fn as_str(&self) -> &'static str {
        match self {
            OaOrder::Enumeration => "enumeration",
            OaOrder::RankedHorizontal => "ranked-horizontal",
            OaOrder::RankedVertical => "ranked-vertical",
            OaOrder::MaxRank => "max-rank",
            OaOrder::Custom(_) => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<OaOrder> {
        Some(match s {
            "enumeration" => OaOrder::Enumeration,
            "ranked-horizontal" => OaOrder::RankedHorizontal,
            "ranked-vertical" => OaOrder::RankedVertical,
            "max-rank" => OaOrder::MaxRank,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OaSpec {
    /// Number of columns; `None` for unboundedly many.
    pub columns: Option<u64>,
    /// Height of every column; `None` for unbounded.
    pub heights: Option<u64>,
    pub order: OaOrder,
}

impl OaSpec {
    pub fn new(order: OaOrder, columns: Option<u64>, heights: Option<u64>) -> Self {
        OaSpec { columns, heights, order }
    }

    pub fn label(&self) -> String {
        let b = |v: Option<u64>| v.map_or(String::from("inf"), |n| format!("{n}"));
        format!("oa:{}:{}:{}", self.order.as_str(), b(self.columns), b(self.heights))
    }
}

#[derive(Debug, Clone)]
pub struct OrAnd {
    spec: OaSpec,
    label: Option<String>,
}

pub fn make_or_and(spec: OaSpec) -> Result<OrAnd, ConstructionError> {
    if spec.columns == Some(0) || spec.heights == Some(0) {
        return Err(ConstructionError::InvalidSpec(String::from("columns and heights must be positive")));
    }
    let g = OrAnd { spec, label: None };
    if let OaOrder::Custom(f) = spec.order {
        let cells: alloc::vec::Vec<Cell> =
            (0..5u64).flat_map(|i| (0..5u64).map(move |j| (i, j))).filter(|c| g.exists(*c)).collect();
        for &a in &cells {
            if f(a, a) {
                return Err(ConstructionError::InvalidOrder(format!("x:{}:{} sees itself", a.0, a.1)));
            }
            for &b in &cells {
                for &c in &cells {
                    if f(a, b) && f(b, c) && !f(a, c) {
                        return Err(ConstructionError::InvalidOrder(format!(
                            "not transitive at x:{}:{}, x:{}:{}, x:{}:{}",
                            a.0, a.1, b.0, b.1, c.0, c.1
                        )));
                    }
                }
            }
        }
    }
    Ok(g)
}

pub fn cell_id(c: Cell) -> NodeId {
    NodeId::from_segments(&["x", &format!("{}", c.0), &format!("{}", c.1)])
}

pub fn parse_cell(n: &NodeId) -> Option<Cell> {
    if n.kind() != "x" || n.segment_count() != 3 {
        return None;
    }
    Some((n.index(1)?, n.index(2)?))
}

/// Shell enumeration: shell `m` lists `x:0:m .. x:(m-1):m`, then
/// `x:m:0 .. x:m:m`, skipping cells that do not exist.
struct Shells {
    cols: Option<u64>,
    heights: Option<u64>,
    m: u64,
    p: u64,
}

impl Shells {
    fn horiz(&self, m: u64) -> u64 {
        if self.heights.is_none_or(|h| m < h) {
            self.cols.map_or(m, |c| m.min(c))
        } else {
            0
        }
    }

    fn col(&self, m: u64) -> u64 {
        if self.cols.is_none_or(|c| m < c) {
            self.heights.map_or(m + 1, |h| (m + 1).min(h))
        } else {
            0
        }
    }

    fn exhausted(&self, m: u64) -> bool {
        match (self.cols, self.heights) {
            (Some(c), Some(h)) => m >= c.max(h),
            _ => false,
        }
    }
}

impl Iterator for Shells {
    type Item = Cell;
    fn next(&mut self) -> Option<Cell> {
        loop {
            if self.exhausted(self.m) {
                return None;
            }
            let h = self.horiz(self.m);
            let total = h + self.col(self.m);
            if self.p < total {
                let p = self.p;
                self.p += 1;
                return Some(if p < h { (p, self.m) } else { (self.m, p - h) });
            }
            self.m += 1;
            self.p = 0;
        }
    }
}

impl OrAnd {
    /// Reports the generator under a preset name such as `oa2`.
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(String::from(label));
        self
    }

    pub fn spec(&self) -> &OaSpec {
        &self.spec
    }

    fn shells(&self) -> Shells {
        Shells { cols: self.spec.columns, heights: self.spec.heights, m: 0, p: 0 }
    }

    pub fn exists(&self, (i, j): Cell) -> bool {
        self.spec.columns.is_none_or(|c| i < c) && self.spec.heights.is_none_or(|h| j < h)
    }

    /// Position of a cell in the shell enumeration.
    pub fn index(&self, (i, j): Cell) -> u64 {
        let s = self.shells();
        let m = i.max(j);
        let before: u64 = (0..m).map(|k| s.horiz(k) + s.col(k)).sum();
        let pos = if j == m && i < m { i } else { s.horiz(m) + j };
        before + pos
    }

    /// All cells in enumeration order.
    pub fn enumeration(&self) -> impl Iterator<Item = Cell> {
        self.shells()
    }

    pub fn visible(&self, a: Cell, b: Cell) -> bool {
        if !self.exists(a) || !self.exists(b) || a == b {
            return false;
        }
        match self.spec.order {
            OaOrder::Enumeration => self.index(b) > self.index(a),
            OaOrder::RankedHorizontal => b.0 > a.0,
            OaOrder::RankedVertical => b.1 > a.1,
            OaOrder::MaxRank => b.0.max(b.1) > a.0.max(a.1),
            OaOrder::Custom(f) => f(a, b),
        }
    }

    fn has_visible(&self, a: Cell) -> bool {
        let more = |v: u64, bound: Option<u64>| bound.is_none_or(|b| v + 1 < b);
        match self.spec.order {
            OaOrder::Enumeration => self.shells().nth(self.index(a) as usize + 1).is_some(),
            OaOrder::RankedHorizontal => more(a.0, self.spec.columns),
            OaOrder::RankedVertical => more(a.1, self.spec.heights),
            OaOrder::MaxRank => {
                let m = a.0.max(a.1);
                more(m, self.spec.columns) || more(m, self.spec.heights)
            }
            OaOrder::Custom(_) => true,
        }
    }

    /// Lowest visible height in column `c`; visible heights form an upper
    /// segment of the column for every built-in order.
    fn first_visible_row(&self, a: Cell, c: u64) -> Option<u64> {
        if !self.exists((c, 0)) {
            return None;
        }
        let h = self.spec.heights;
        let start = match self.spec.order {
            OaOrder::Enumeration => {
                let ia = self.index(a);
                let mut j = 0;
                loop {
                    if !self.exists((c, j)) {
                        return None;
                    }
                    if self.index((c, j)) > ia {
                        break j;
                    }
                    j += 1;
                }
            }
            OaOrder::RankedHorizontal => {
                if c > a.0 {
                    0
                } else {
                    return None;
                }
            }
            OaOrder::RankedVertical => a.1 + 1,
            OaOrder::MaxRank => {
                let m = a.0.max(a.1);
                if c > m {
                    0
                } else {
                    m + 1
                }
            }
            OaOrder::Custom(f) => {
                let limit = h.unwrap_or(4096).min(4096);
                return (0..limit).find(|&j| f(a, (c, j)));
            }
        };
        h.is_none_or(|h| start < h).then_some(start)
    }

    /// Visible members of column `c`, lowest first.
    pub fn column_members(&self, a: Cell, c: u64) -> Box<dyn Iterator<Item = Cell> + '_> {
        match self.spec.order {
            OaOrder::Custom(f) => {
                let limit = self.spec.heights.unwrap_or(4096).min(4096);
                Box::new((0..limit).filter(move |&j| f(a, (c, j))).map(move |j| (c, j)))
            }
            _ => match self.first_visible_row(a, c) {
                Some(r) => {
                    let end = self.spec.heights.unwrap_or(u64::MAX);
                    Box::new((r..end).map(move |j| (c, j)))
                }
                None => Box::new(core::iter::empty()),
            },
        }
    }

    fn cell_successors(&self, a: Cell) -> Box<dyn Iterator<Item = Cell> + '_> {
        if !self.exists(a) || !self.has_visible(a) {
            return Box::new(core::iter::empty());
        }
        match self.spec.order {
            OaOrder::Enumeration => Box::new(self.shells().skip(self.index(a) as usize + 1)),
            OaOrder::Custom(_) => {
                let limit = self.index(a) as usize + 4096;
                Box::new(self.shells().take(limit).filter(move |b| self.visible(a, *b)))
            }
            _ => Box::new(self.shells().filter(move |b| self.visible(a, *b))),
        }
    }
}

impl Generator for OrAnd {
    fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.spec.label())
    }

    fn root(&self) -> NodeId {
        cell_id((0, 0))
    }

    fn rank(&self, n: &NodeId) -> usize {
        parse_cell(n).map_or(0, |c| self.index(c) as usize)
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        match parse_cell(n) {
            Some(a) => Box::new(self.cell_successors(a).map(|b| Successor::new(cell_id(b), Sign::Neg, b.0))),
            None => Box::new(core::iter::empty()),
        }
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        let (a, b) = (parse_cell(from)?, parse_cell(to)?);
        self.visible(a, b).then_some((Sign::Neg, b.0))
    }

    fn formula(&self, n: &NodeId) -> FormulaRule {
        match parse_cell(n) {
            Some(a) if self.has_visible(a) => FormulaRule::Grouped,
            _ => FormulaRule::Sink,
        }
    }

    fn group_members<'a>(&'a self, n: &NodeId, group: GroupKey) -> Box<dyn Iterator<Item = NodeId> + 'a> {
        match parse_cell(n) {
            Some(a) => Box::new(self.column_members(a, group).map(cell_id)),
            None => Box::new(core::iter::empty()),
        }
    }

    fn knee_hint(&self, n: &NodeId, group: GroupKey) -> Option<NodeId> {
        let a = parse_cell(n)?;
        let r = self.first_visible_row(a, group)?;
        let k = (group, r);
        self.column_members(k, group).next()?;
        Some(cell_id(k))
    }

    fn transitive_hint(&self, n: &NodeId) -> Option<NodeId> {
        let a = parse_cell(n)?;
        self.cell_successors(a).take(FANOUT_CAP).next().map(cell_id)
    }

    /// Visibility is transitive, so every arrow is locally transitive.
    fn claims_transitive(&self, n: &NodeId, knee: &NodeId) -> bool {
        match (parse_cell(n), parse_cell(knee)) {
            (Some(a), Some(b)) => self.visible(a, b),
            _ => false,
        }
    }

    fn max_rank(&self) -> Option<usize> {
        match (self.spec.columns, self.spec.heights) {
            (Some(c), Some(h)) => Some((c * h - 1) as usize),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::id;
    use alloc::vec::Vec;

    fn oa(order: OaOrder, c: Option<u64>, h: Option<u64>) -> OrAnd {
        make_or_and(OaSpec::new(order, c, h)).unwrap()
    }

    #[test]
    fn shell_enumeration_prefix() {
        let g = oa(OaOrder::Enumeration, None, None);
        let cells: Vec<Cell> = g.enumeration().take(9).collect();
        assert_eq!(cells, [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (1, 2), (2, 0), (2, 1), (2, 2)]);
        for (k, c) in cells.iter().enumerate() {
            assert_eq!(g.index(*c), k as u64);
        }
    }

    #[test]
    fn bounded_heights_skip_missing_cells() {
        let g = oa(OaOrder::Enumeration, None, Some(2));
        let cells: Vec<Cell> = g.enumeration().take(8).collect();
        assert_eq!(cells, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1)]);
        assert_eq!(g.index((3, 1)), 7);
    }

    #[test]
    fn finite_structure_ends() {
        let g = oa(OaOrder::MaxRank, Some(2), Some(3));
        assert_eq!(g.enumeration().count(), 6);
        assert_eq!(g.max_rank(), Some(5));
        for c in g.enumeration() {
            assert!(g.index(c) <= 5);
        }
    }

    #[test]
    fn vertical_visibility() {
        let g = oa(OaOrder::RankedVertical, None, None);
        assert!(g.arrow(&id("x:5:2"), &id("x:0:3")).is_some());
        assert!(g.arrow(&id("x:0:3"), &id("x:5:3")).is_none());
        assert_eq!(g.knee_hint(&id("x:0:0"), 4), Some(id("x:4:1")));
    }

    #[test]
    fn column_groups() {
        let g = oa(OaOrder::Enumeration, None, Some(2));
        let m: Vec<NodeId> = g.group_members(&id("x:2:0"), 2).collect();
        assert_eq!(m, [id("x:2:1")]);
        assert_eq!(g.knee_hint(&id("x:2:0"), 2), None);
        assert_eq!(g.knee_hint(&id("x:2:0"), 3), Some(id("x:3:0")));
        let h = oa(OaOrder::RankedHorizontal, None, None);
        assert_eq!(h.group_members(&id("x:2:0"), 1).count(), 0);
        assert_eq!(h.knee_hint(&id("x:2:0"), 3), None);
    }

    #[test]
    fn custom_orders_are_checked() {
        fn bad(a: Cell, b: Cell) -> bool {
            b.0 == a.0 + 1
        }
        let e = make_or_and(OaSpec::new(OaOrder::Custom(bad), None, None));
        assert!(matches!(e, Err(ConstructionError::InvalidOrder(_))));
        fn good(a: Cell, b: Cell) -> bool {
            b.0 + b.1 > a.0 + a.1
        }
        assert!(make_or_and(OaSpec::new(OaOrder::Custom(good), None, None)).is_ok());
    }

    #[test]
    fn streams_are_lazy_for_all_orders() {
        for order in [OaOrder::Enumeration, OaOrder::RankedHorizontal, OaOrder::RankedVertical, OaOrder::MaxRank] {
            let g = oa(order, None, Some(2));
            let n = g.successors(&id("x:3:1")).take(10).count();
            if matches!(order, OaOrder::RankedVertical) {
                assert_eq!(n, 0);
            } else {
                assert_eq!(n, 10);
            }
        }
    }
}
