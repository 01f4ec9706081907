//! Satisfiability of finite windows, valuation checks, escape search.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Atom, FormulaError, Truth3, Valuation};
use crate::generator::{eval_generated, truncate, Generator, TruncateError, Window, WindowMode};
use crate::graph::FiniteGraph;
use crate::node::NodeId;

pub mod dpll;
mod oa;
mod rule;

pub use oa::{interpret_oa_model, OaWitness};
pub use rule::{RuleError, RulePattern, SegPattern, ValuationRule};

use dpll::{lit, Dpll, Lit, Outcome};

/// Conflict limit before a search gives up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// `x+` or `x-`: a hard assumption on one node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Clamp {
    pub node: NodeId,
    pub value: bool,
}

impl Clamp {
    pub fn new(node: NodeId, value: bool) -> Self {
        Clamp { node, value }
    }
}

impl fmt::Display for Clamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.node, if self.value { 'T' } else { 'F' })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// A classical model over every graph variable.
    Sat(Valuation),
    /// Interior nodes whose constraints conflict together with the clamps.
    Unsat(Vec<NodeId>),
    /// The conflict budget ran out.
    Unknown(u64),
}

impl SatOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            SatOutcome::Sat(_) => "sat",
            SatOutcome::Unsat(_) => "unsat",
            SatOutcome::Unknown(_) => "unknown",
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SatOutcome::Unsat(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    UnknownNode(NodeId),
    Formula(FormulaError),
    Truncate(TruncateError),
    /// The valuation is not a model at this node.
    NotAModel(NodeId),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::UnknownNode(n) => write!(f, "unknown node {n}"),
            SolveError::Formula(e) => write!(f, "{e}"),
            SolveError::Truncate(e) => write!(f, "{e}"),
            SolveError::NotAModel(n) => write!(f, "valuation is not a model at {n}"),
        }
    }
}

impl core::error::Error for SolveError {}

impl From<FormulaError> for SolveError {
    fn from(e: FormulaError) -> Self {
        SolveError::Formula(e)
    }
}

impl From<TruncateError> for SolveError {
    fn from(e: TruncateError) -> Self {
        SolveError::Truncate(e)
    }
}

/// A node whose assigned value differs from its formula's value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub node: NodeId,
    pub assigned: Truth3,
    pub evaluated: Truth3,
}

/// Every non-free node `x` with `v(x) != phi_x(v)`, in graph order.
pub fn check_valuation(graph: &FiniteGraph, v: &Valuation) -> Result<Vec<Violation>, FormulaError> {
    let mut out = Vec::new();
    for n in graph.nodes() {
        let Some(d) = graph.dnf(n) else { continue };
        let assigned = *v.get(n).ok_or_else(|| FormulaError::UnboundVariable(n.clone()))?;
        let evaluated = d.eval(v)?;
        if assigned != evaluated {
            out.push(Violation { node: n.clone(), assigned, evaluated });
        }
    }
    Ok(out)
}

/// Clauses for `x <-> phi_x`, one group per interior node.
struct Encoding {
    vars: Vec<NodeId>,
    index: BTreeMap<NodeId, usize>,
    groups: Vec<(NodeId, Vec<Vec<Lit>>)>,
    nvars: usize,
}

fn encode(graph: &FiniteGraph) -> Encoding {
    let vars: Vec<NodeId> = graph.nodes().to_vec();
    let index: BTreeMap<NodeId, usize> = vars.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let mut nvars = vars.len();
    let mut groups = Vec::new();
    for n in &vars {
        let Some(d) = graph.dnf(n) else { continue };
        let x = index[n];
        let mut conjs: Vec<Vec<Lit>> = Vec::new();
        let mut always = false;
        for c in &d.disjuncts {
            if c.contains(&Atom::False) {
                continue;
            }
            let lits: Vec<Lit> = c.iter().filter_map(|a| a.literal()).map(|l| lit(index[&l.var], !l.negated)).collect();
            if lits.is_empty() {
                always = true;
                break;
            }
            conjs.push(lits);
        }
        let mut clauses: Vec<Vec<Lit>> = Vec::new();
        if always {
            clauses.push(alloc::vec![lit(x, true)]);
        } else if conjs.is_empty() {
            clauses.push(alloc::vec![lit(x, false)]);
        } else if conjs.len() == 1 {
            let c = &conjs[0];
            for l in c {
                clauses.push(alloc::vec![lit(x, false), *l]);
            }
            let mut back: Vec<Lit> = c.iter().map(|l| l ^ 1).collect();
            back.push(lit(x, true));
            clauses.push(back);
        } else {
            let mut any: Vec<Lit> = alloc::vec![lit(x, false)];
            for c in &conjs {
                let s = nvars;
                nvars += 1;
                for l in c {
                    clauses.push(alloc::vec![lit(s, false), *l]);
                }
                let mut back: Vec<Lit> = c.iter().map(|l| l ^ 1).collect();
                back.push(lit(s, true));
                clauses.push(back);
                clauses.push(alloc::vec![lit(s, false), lit(x, true)]);
                any.push(lit(s, true));
            }
            clauses.push(any);
        }
        groups.push((n.clone(), clauses));
    }
    Encoding { vars, index, groups, nvars }
}

fn run(enc: &Encoding, units: &[Lit], active: &dyn Fn(&NodeId) -> bool, budget: u64) -> Outcome {
    let mut s = Dpll::new(enc.nvars);
    for (n, clauses) in &enc.groups {
        if active(n) {
            for c in clauses {
                s.add_clause(c.clone());
            }
        }
    }
    for u in units {
        s.add_clause(alloc::vec![*u]);
    }
    s.solve(budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub budget: u64,
    /// Shrink Unsat cores to a minimal set of interior nodes.
    pub minimize_core: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { budget: DEFAULT_BUDGET, minimize_core: true }
    }
}

/// Searches for a model of `x <-> phi_x` over every non-free node plus the
/// clamps. Variables are decided in graph order, `F` before `T`, so a Sat
/// answer is the least model in that order.
pub fn solve(graph: &FiniteGraph, clamps: &[Clamp]) -> Result<SatOutcome, SolveError> {
    solve_with(graph, clamps, SolveConfig::default())
}

pub fn solve_with(graph: &FiniteGraph, clamps: &[Clamp], cfg: SolveConfig) -> Result<SatOutcome, SolveError> {
    let enc = encode(graph);
    let mut units = Vec::new();
    for c in clamps {
        let i = *enc.index.get(&c.node).ok_or_else(|| SolveError::UnknownNode(c.node.clone()))?;
        units.push(lit(i, c.value));
    }
    match run(&enc, &units, &|_| true, cfg.budget) {
        Outcome::Sat(bits) => {
            let model = enc.vars.iter().zip(bits).map(|(n, b)| (n.clone(), Truth3::from_bool(b))).collect();
            Ok(SatOutcome::Sat(model))
        }
        Outcome::Unknown => Ok(SatOutcome::Unknown(cfg.budget)),
        Outcome::Unsat => {
            let all: Vec<NodeId> = enc.groups.iter().map(|(n, _)| n.clone()).collect();
            if !cfg.minimize_core {
                return Ok(SatOutcome::Unsat(all));
            }
            let mut core: BTreeSet<NodeId> = all.iter().cloned().collect();
            for n in &all {
                core.remove(n);
                let trial = run(&enc, &units, &|m| core.contains(m), cfg.budget);
                if trial != Outcome::Unsat {
                    core.insert(n.clone());
                }
            }
            Ok(SatOutcome::Unsat(all.into_iter().filter(|n| core.contains(n)).collect()))
        }
    }
}

/// Outcome of checking a rule against a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: alloc::string::String,
    pub depth: usize,
    /// Number of nodes whose formula was checked.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

/// Checks `v(x) = phi_x(v)` for every interior node of the depth window,
/// evaluating the full generator formula over the rule (sampled to the
/// fan-out cap), so no remainder variables are involved.
pub fn verify_rule(gen: &dyn Generator, rule: &ValuationRule, depth: usize) -> Result<RuleReport, RuleError> {
    let w = truncate(gen, depth, WindowMode::Remainder).map_err(RuleError::Truncate)?;
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in w.graph.nodes().iter().filter(|n| w.interior.contains(*n)) {
        let assigned = rule.assign(n).ok_or_else(|| RuleError::RuleNotTotal(n.clone()))?;
        let mut missing = None;
        let evaluated = eval_generated(gen, n, |m| {
            let v = rule.assign(m);
            if v.is_none() && missing.is_none() {
                missing = Some(m.clone());
            }
            v
        });
        if let Some(m) = missing {
            return Err(RuleError::RuleNotTotal(m));
        }
        let Some(evaluated) = evaluated else { continue };
        checked += 1;
        if assigned != evaluated {
            violations.push(Violation {
                node: n.clone(),
                assigned: Truth3::from_bool(assigned),
                evaluated: Truth3::from_bool(evaluated),
            });
        }
    }
    Ok(RuleReport { rule: rule.name.clone(), depth, checked, violations })
}

/// Solver runs on the Remainder window with the root clamped each way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeSearch {
    pub window: Window,
    pub root_false: SatOutcome,
    pub root_true: SatOutcome,
}

impl EscapeSearch {
    /// Some root value has a model at this depth. For infinite structures
    /// this is a candidate only.
    pub fn has_candidate(&self) -> bool {
        self.root_false.is_sat() || self.root_true.is_sat()
    }
}

pub fn search_escape(gen: &dyn Generator, depth: usize, budget: u64) -> Result<EscapeSearch, SolveError> {
    let window = truncate(gen, depth, WindowMode::Remainder)?;
    let cfg = SolveConfig { budget, minimize_core: false };
    let root = gen.root();
    let root_false = solve_with(&window.graph, &[Clamp::new(root.clone(), false)], cfg)?;
    let root_true = solve_with(&window.graph, &[Clamp::new(root, true)], cfg)?;
    Ok(EscapeSearch { window, root_false, root_true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::example_basic;
    use crate::constructions::{make_procrastination, make_yablo};
    use crate::node::id;

    fn val(pairs: &[(&str, bool)]) -> Valuation {
        pairs.iter().map(|(n, b)| (id(n), Truth3::from_bool(*b))).collect()
    }

    #[test]
    fn basic_valuations() {
        let g = example_basic();
        assert!(check_valuation(&g, &val(&[("x", false), ("y", false), ("z", true)])).unwrap().is_empty());
        let v = check_valuation(&g, &val(&[("x", true), ("y", true), ("z", false)])).unwrap();
        assert_eq!(v.iter().map(|v| v.node.clone()).collect::<Vec<_>>(), alloc::vec![id("x")]);
        assert!(check_valuation(&FiniteGraph::empty(), &Valuation::new()).unwrap().is_empty());
        assert!(check_valuation(&g, &val(&[("x", true)])).is_err());
    }

    #[test]
    fn yablo_windows() {
        let y = make_yablo();
        let w = truncate(&y, 6, WindowMode::Remainder).unwrap();
        assert!(solve(&w.graph, &[Clamp::new(id("x:0"), true)]).unwrap().is_sat());
        let w = truncate(&y, 6, WindowMode::Restricted).unwrap();
        match solve(&w.graph, &[Clamp::new(id("x:0"), true)]).unwrap() {
            SatOutcome::Unsat(core) => assert_eq!(core, alloc::vec![id("x:0"), id("x:5")]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn procrastination_one_sided() {
        let p = make_procrastination();
        let w = truncate(&p, 5, WindowMode::Remainder).unwrap();
        assert!(solve(&w.graph, &[Clamp::new(id("Y:1"), true)]).unwrap().is_unsat());
        assert!(solve(&w.graph, &[Clamp::new(id("Y:1"), false)]).unwrap().is_sat());
        let r = verify_rule(&p, &ValuationRule::all_false(), 30).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.checked > 0);
    }

    #[test]
    fn yablo_all_false_fails_everywhere() {
        let r = verify_rule(&make_yablo(), &ValuationRule::all_false(), 5).unwrap();
        assert_eq!(r.checked, 5);
        assert_eq!(r.violations.len(), 5);
    }

    #[test]
    fn unknown_clamp() {
        assert_eq!(solve(&example_basic(), &[Clamp::new(id("q"), true)]), Err(SolveError::UnknownNode(id("q"))));
    }
}
