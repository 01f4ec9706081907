//! Paradoxicality certificates for generated graphs.
//!
//! Arrow level. Write `x+!` for "`x = T` is impossible" and `x-!` for
//! "`x = F` is impossible". For a node whose formula is a disjunction over
//! groups of negated successors:
//!
//! * `x+!` if the formula is unsatisfiable on its own; or every group `G`
//!   has a negative member `k` with some nonempty group `H` of `k` inside
//!   `G`; or every group has a member `y` with `y-!`.
//! * `x-!` if some group has only members with `+!`; or some group `G0`
//!   is such that for every `y` in `G0` and every group `H` of `y` some
//!   group of `x` lies inside `H`.
//!
//! The root is certified when both hold. Groups and memberships are
//! checked on sampled successor prefixes.
//!
//! Path level. The window nodes of the root's kind form a chain; each pair
//! must be joined by a negative path avoiding the rest of the chain, and
//! once everything off those paths is trivialized every chain node must
//! compute exactly the conjunction of the negated later chain nodes.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{FormulaError, GroupKey, Truth3};
use crate::generator::{truncate, FormulaRule, Generator, TruncateError, Window, WindowMode, FANOUT_CAP};
use crate::graph::FiniteGraph;
use crate::node::{Arrow, NodeId, Sign};
use crate::paths::{path_value, Path};
use crate::semantics::{effective_function_with_inputs, trivialize_outside, TruthTable};
use crate::solver::{
    search_escape, solve_with, verify_rule, SatOutcome, SolveConfig, SolveError, ValuationRule, DEFAULT_BUDGET,
};

/// Groups examined per node.
pub const GROUP_SAMPLE: usize = 16;
/// Nesting depth of the `+!`/`-!` recursion.
pub const RULE_DEPTH: usize = 4;
/// Longest negative path searched between chain nodes.
pub const CHAIN_PATH_LEN: usize = 6;
/// Largest number of keys a candidate escape rule family may have.
const FAMILY_KEYS: usize = 6;

pub const CAVEAT: &str =
    "Conditional certificate: every premise was checked on the examined nodes of a finite window, \
with successor streams sampled to their first 64 members. That the infinite structure is paradoxical follows by \
recursion over all nodes, which is assumed here, not verified.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Escape {
    /// A model of the whole (finite) graph.
    Model(BTreeMap<NodeId, Truth3>),
    /// A pattern rule verified on a deeper window.
    Rule(ValuationRule),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    CertifiedParadoxical(usize),
    EscapeFound(Escape),
    Inconclusive(String),
}

/// Outcome a gallery construction is meant to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Certified,
    Escape,
}

/// The verdicts the named constructions are claimed to have.
pub const EXPECTED_VERDICTS: &[(&str, Expected)] = &[
    ("yablo", Expected::Certified),
    ("gapped-yablo:1", Expected::Certified),
    ("gapped-yablo:2", Expected::Certified),
    ("gapped-yablo:3", Expected::Certified),
    ("sawblade:closed", Expected::Certified),
    ("sawblade:composed:3", Expected::Certified),
    ("sawblade:dec-yc", Expected::Certified),
    ("sawblade:dec-pair", Expected::Certified),
    ("sawblade:shared-y", Expected::Certified),
    ("oa1", Expected::Certified),
    ("oa3", Expected::Certified),
    ("oa4", Expected::Certified),
    ("oa5", Expected::Certified),
    ("oa:enumeration:inf:inf", Expected::Certified),
    ("oa:ranked-horizontal:inf:inf", Expected::Certified),
    ("oa:ranked-vertical:inf:inf", Expected::Certified),
    ("oa:max-rank:inf:inf", Expected::Certified),
    ("diamond:essential", Expected::Certified),
    ("two-arrow", Expected::Escape),
    ("sawblade:raw", Expected::Escape),
    ("procrastination", Expected::Escape),
    ("oa2", Expected::Escape),
    ("diamond:versuch-left", Expected::Escape),
    ("diamond:versuch-right", Expected::Escape),
    ("diamond:rhombus-basic", Expected::Escape),
    ("diamond:matrix5", Expected::Escape),
];

impl Verdict {
    /// `None` for inconclusive verdicts.
    pub fn outcome(&self) -> Option<Expected> {
        match self {
            Verdict::CertifiedParadoxical(_) => Some(Expected::Certified),
            Verdict::EscapeFound(_) => Some(Expected::Escape),
            Verdict::Inconclusive(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::CertifiedParadoxical(_) => "certified-paradoxical",
            Verdict::EscapeFound(_) => "escape-found",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSummary {
    /// A knee `x'` whose successors are all negative successors of `x`.
    pub local_trans_witness: Option<NodeId>,
    /// Every sampled outgoing arrow is negative.
    pub all_arrows_neg: bool,
    pub plus_impossible: bool,
    pub minus_impossible: bool,
}

/// `chain[i]` and `chain[j]` joined by a negative path, for every `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub chain: Vec<NodeId>,
    pub paths: BTreeMap<(usize, usize), Path>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertLevel {
    Arrow,
    Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyReport {
    pub construction: String,
    pub depth: usize,
    pub verdict: Verdict,
    pub level: Option<CertLevel>,
    pub per_node: BTreeMap<NodeId, NodeSummary>,
    pub witness: Option<ChainWitness>,
    pub caveat: String,
    /// Free-text observations made along the way.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyError {
    BudgetExceeded(u64),
    Truncate(TruncateError),
    Solve(SolveError),
    Formula(FormulaError),
    /// The chain witness does not connect its nodes by negative paths.
    WitnessInvalid(String),
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::BudgetExceeded(b) => write!(f, "certification exceeded its budget of {b} steps"),
            CertifyError::Truncate(e) => write!(f, "{e}"),
            CertifyError::Solve(e) => write!(f, "{e}"),
            CertifyError::Formula(e) => write!(f, "{e}"),
            CertifyError::WitnessInvalid(m) => write!(f, "invalid chain witness: {m}"),
        }
    }
}

impl core::error::Error for CertifyError {}

impl From<TruncateError> for CertifyError {
    fn from(e: TruncateError) -> Self {
        CertifyError::Truncate(e)
    }
}

impl From<SolveError> for CertifyError {
    fn from(e: SolveError) -> Self {
        CertifyError::Solve(e)
    }
}

impl From<FormulaError> for CertifyError {
    fn from(e: FormulaError) -> Self {
        CertifyError::Formula(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Steps allowed to the rule recursion, and conflicts per solver call.
    pub budget: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { budget: DEFAULT_BUDGET }
    }
}

struct Rules<'g> {
    gen: &'g dyn Generator,
    // proved nodes, and the largest depth each unproved node failed at
    plus: BTreeMap<NodeId, Option<usize>>,
    minus: BTreeMap<NodeId, Option<usize>>,
    steps: u64,
    budget: u64,
}

impl<'g> Rules<'g> {
    fn new(gen: &'g dyn Generator, budget: u64) -> Self {
        Rules { gen, plus: BTreeMap::new(), minus: BTreeMap::new(), steps: 0, budget }
    }

    fn tick(&mut self) -> Result<(), CertifyError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(CertifyError::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Sampled groups of `x`, in order of first appearance.
    fn groups(&self, x: &NodeId) -> Vec<(GroupKey, Vec<NodeId>)> {
        let mut order: Vec<GroupKey> = Vec::new();
        let mut members: BTreeMap<GroupKey, Vec<NodeId>> = BTreeMap::new();
        for s in self.gen.successors(x).take(FANOUT_CAP) {
            if !members.contains_key(&s.group) {
                if order.len() == GROUP_SAMPLE {
                    continue;
                }
                order.push(s.group);
            }
            members.entry(s.group).or_default().push(s.to);
        }
        order.into_iter().map(|g| (g, members.remove(&g).unwrap_or_default())).collect()
    }

    /// Disjunction of conjunctions of negated successors, with successors.
    fn neg_dnf(&self, x: &NodeId) -> bool {
        matches!(self.gen.formula(x), FormulaRule::Conjunction | FormulaRule::Grouped)
            && self.gen.successors(x).take(FANOUT_CAP).all(|s| s.sign == Sign::Neg)
            && self.gen.successors(x).next().is_some()
    }

    /// Sampled members of group `h` of `k` all lie in group `g` of `x`.
    fn group_inside(&self, k: &NodeId, h: GroupKey, x: &NodeId, g: GroupKey) -> bool {
        let mut any = false;
        for m in self.gen.group_members(k, h).take(FANOUT_CAP) {
            any = true;
            if self.gen.arrow(x, &m) != Some((Sign::Neg, g)) {
                return false;
            }
        }
        any
    }

    fn knee_closes(&self, x: &NodeId, g: GroupKey, k: &NodeId) -> bool {
        if self.gen.arrow(x, k) != Some((Sign::Neg, g)) || !self.neg_dnf(k) {
            return false;
        }
        self.groups(k).iter().any(|(h, _)| self.group_inside(k, *h, x, g))
    }

    fn knee_for(&self, x: &NodeId, g: GroupKey, members: &[NodeId]) -> Option<NodeId> {
        if let Some(k) = self.gen.knee_hint(x, g) {
            if self.knee_closes(x, g, &k) {
                return Some(k);
            }
        }
        members.iter().take(4).find(|k| self.knee_closes(x, g, k)).cloned()
    }

    fn locally_unsat(&self, x: &NodeId) -> bool {
        match self.gen.formula(x) {
            FormulaRule::Explicit(d) => d.canonical() == crate::formula::Dnf::falsity(),
            _ => false,
        }
    }

    fn plus_impossible(&mut self, x: &NodeId, depth: usize) -> Result<bool, CertifyError> {
        match self.plus.get(x) {
            Some(None) => return Ok(true),
            Some(Some(failed)) if *failed >= depth => return Ok(false),
            _ => {}
        }
        self.tick()?;
        let v = self.compute_plus(x, depth)?;
        self.plus.insert(x.clone(), if v { None } else { Some(depth) });
        Ok(v)
    }

    fn compute_plus(&mut self, x: &NodeId, depth: usize) -> Result<bool, CertifyError> {
        if self.locally_unsat(x) {
            return Ok(true);
        }
        if !self.neg_dnf(x) {
            return Ok(false);
        }
        let groups = self.groups(x);
        if groups.iter().all(|(g, m)| self.knee_for(x, *g, m).is_some()) {
            return Ok(true);
        }
        if depth == 0 {
            return Ok(false);
        }
        for (_, members) in &groups {
            let mut found = false;
            for y in members.iter().take(4) {
                if self.minus_impossible(y, depth - 1)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn minus_impossible(&mut self, x: &NodeId, depth: usize) -> Result<bool, CertifyError> {
        match self.minus.get(x) {
            Some(None) => return Ok(true),
            Some(Some(failed)) if *failed >= depth => return Ok(false),
            _ => {}
        }
        self.tick()?;
        let v = self.compute_minus(x, depth)?;
        self.minus.insert(x.clone(), if v { None } else { Some(depth) });
        Ok(v)
    }

    fn compute_minus(&mut self, x: &NodeId, depth: usize) -> Result<bool, CertifyError> {
        if !self.neg_dnf(x) {
            return Ok(false);
        }
        let groups = self.groups(x);
        for (_, members) in &groups {
            if self.cross(x, members) {
                return Ok(true);
            }
        }
        if depth == 0 {
            return Ok(false);
        }
        for (_, members) in &groups {
            let mut all = true;
            for y in members {
                if !self.plus_impossible(y, depth - 1)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every group of every member of `g0` contains a group of `x`. The
    /// group of `x` is found through the members of `y`'s group.
    fn cross(&self, x: &NodeId, members: &[NodeId]) -> bool {
        members.iter().all(|y| {
            self.neg_dnf(y)
                && self.groups(y).iter().all(|(h, hm)| {
                    hm.iter().take(4).any(|m| match self.gen.arrow(x, m) {
                        Some((Sign::Neg, g)) => self.group_inside(x, g, y, *h),
                        _ => false,
                    })
                })
        })
    }
}

fn summary(rules: &mut Rules<'_>, x: &NodeId) -> Result<NodeSummary, CertifyError> {
    let gen = rules.gen;
    let all_arrows_neg = gen.successors(x).take(FANOUT_CAP).all(|s| s.sign == Sign::Neg);
    let local_trans_witness = gen
        .transitive_hint(x)
        .filter(|k| crate::cells::is_locally_transitive_gen(gen, x, k) == Ok(true))
        .or_else(|| {
            let groups = rules.groups(x);
            groups.first().and_then(|(g, m)| rules.knee_for(x, *g, m))
        });
    Ok(NodeSummary {
        local_trans_witness,
        all_arrows_neg,
        plus_impossible: rules.plus_impossible(x, RULE_DEPTH)?,
        minus_impossible: rules.minus_impossible(x, RULE_DEPTH)?,
    })
}

/// Certifies the generator's root, or looks for an escape.
pub fn certify_paradoxical(gen: &dyn Generator, depth: usize) -> Result<CertifyReport, CertifyError> {
    certify_with(gen, depth, CertifyConfig::default())
}

pub fn certify_with(gen: &dyn Generator, depth: usize, cfg: CertifyConfig) -> Result<CertifyReport, CertifyError> {
    let window = truncate(gen, depth, WindowMode::Remainder)?;
    let root = gen.root();
    let mut rules = Rules::new(gen, cfg.budget);
    let mut per_node = BTreeMap::new();
    for n in window.graph.nodes().iter().filter(|n| window.interior.contains(*n)) {
        per_node.insert(n.clone(), summary(&mut rules, n)?);
    }
    let mut report = CertifyReport {
        construction: gen.name(),
        depth,
        verdict: Verdict::Inconclusive(String::new()),
        level: None,
        per_node,
        witness: None,
        caveat: String::from(CAVEAT),
        notes: Vec::new(),
    };
    let root_plus = rules.plus_impossible(&root, RULE_DEPTH)?;
    let root_minus = rules.minus_impossible(&root, RULE_DEPTH)?;
    if root_plus && root_minus {
        report.verdict = Verdict::CertifiedParadoxical(depth);
        report.level = Some(CertLevel::Arrow);
        return Ok(report);
    }
    report.notes.push(format!(
        "arrow level: {root}=T {}, {root}=F {}",
        if root_plus { "impossible" } else { "not refuted" },
        if root_minus { "impossible" } else { "not refuted" }
    ));

    if let Some(w) = path_level(gen, depth, &mut report.notes)? {
        report.verdict = Verdict::CertifiedParadoxical(depth);
        report.level = Some(CertLevel::Path);
        report.witness = Some(w);
        return Ok(report);
    }

    report.verdict = escape_phase(gen, depth, cfg, &mut report.notes)?;
    Ok(report)
}

fn escape_phase(
    gen: &dyn Generator,
    depth: usize,
    cfg: CertifyConfig,
    notes: &mut Vec<String>,
) -> Result<Verdict, CertifyError> {
    let solve_cfg = SolveConfig { budget: cfg.budget, minimize_core: false };
    if let Some(max) = gen.max_rank() {
        let full = truncate(gen, max + 1, WindowMode::Remainder)?;
        return Ok(match solve_with(&full.graph, &[], solve_cfg)? {
            SatOutcome::Sat(m) => Verdict::EscapeFound(Escape::Model(m)),
            SatOutcome::Unsat(_) => Verdict::Inconclusive(String::from("finite graph has no model")),
            SatOutcome::Unknown(b) => Verdict::Inconclusive(format!("solver budget {b} exhausted")),
        });
    }
    let search = search_escape(gen, depth, cfg.budget)?;
    if !search.has_candidate() {
        let why = match (&search.root_false, &search.root_true) {
            (SatOutcome::Unknown(_), _) | (_, SatOutcome::Unknown(_)) => "solver budget exhausted",
            _ => "no model of the window for either root value",
        };
        return Ok(Verdict::Inconclusive(String::from(why)));
    }
    let root = gen.root();
    for rule in candidate_rules(&search.window) {
        let Some(rv) = rule.assign(&root) else { continue };
        let sat_here = if rv { search.root_true.is_sat() } else { search.root_false.is_sat() };
        if !sat_here {
            continue;
        }
        match verify_rule(gen, &rule, 2 * depth) {
            Ok(r) if r.violations.is_empty() && r.checked > 0 => {
                notes.push(format!("escape rule verified to depth {}", 2 * depth));
                return Ok(Verdict::EscapeFound(Escape::Rule(rule)));
            }
            _ => {}
        }
    }
    Ok(Verdict::Inconclusive(format!(
        "the depth-{depth} window has models, but no candidate rule survived depth {}",
        2 * depth
    )))
}

/// Rule candidates: constants, then one value per node kind, per kind and
/// parity of the last index, per kind and parity of every index.
fn candidate_rules(window: &Window) -> Vec<ValuationRule> {
    let nodes: Vec<&NodeId> = window.graph.nodes().iter().filter(|n| !window.is_remainder(n)).collect();
    let mut out = Vec::new();
    for v in [false, true] {
        out.push(ValuationRule::parse_inline(if v { "**=T" } else { "**=F" }).expect("valid").named(if v {
            "all-true"
        } else {
            "all-false"
        }));
    }
    let parity = |s: &str| -> String {
        match s.parse::<u64>() {
            Ok(v) if v % 2 == 0 => String::from("*even"),
            Ok(_) => String::from("*odd"),
            Err(_) => String::from("*"),
        }
    };
    let families: [&dyn Fn(&NodeId) -> String; 3] = [
        &|n: &NodeId| {
            let mut p: Vec<String> = Vec::from([String::from(n.kind())]);
            p.extend((1..n.segment_count()).map(|_| String::from("*")));
            p.join(":")
        },
        &|n: &NodeId| {
            let c = n.segment_count();
            let mut p: Vec<String> = Vec::from([String::from(n.kind())]);
            p.extend((1..c).map(|i| if i + 1 == c { parity(n.segment(i).unwrap_or("")) } else { String::from("*") }));
            p.join(":")
        },
        &|n: &NodeId| {
            let mut p: Vec<String> = Vec::from([String::from(n.kind())]);
            p.extend((1..n.segment_count()).map(|i| parity(n.segment(i).unwrap_or(""))));
            p.join(":")
        },
    ];
    for key in families {
        let keys: BTreeSet<String> = nodes.iter().map(|n| key(n)).collect();
        if keys.len() > FAMILY_KEYS || keys.len() < 2 {
            continue;
        }
        let keys: Vec<String> = keys.into_iter().collect();
        let k = keys.len();
        for bits in 0..(1u32 << k) {
            let text: Vec<String> = keys
                .iter()
                .enumerate()
                .map(|(i, p)| format!("{p}={}", if bits >> (k - 1 - i) & 1 == 1 { 'T' } else { 'F' }))
                .collect();
            if let Ok(r) = ValuationRule::parse_inline(&text.join(",")) {
                out.push(r);
            }
        }
    }
    out
}

fn path_level(
    gen: &dyn Generator,
    depth: usize,
    notes: &mut Vec<String>,
) -> Result<Option<ChainWitness>, CertifyError> {
    let window = truncate(gen, depth, WindowMode::Restricted)?;
    let root = gen.root();
    let mut chain: Vec<NodeId> = window
        .graph
        .nodes()
        .iter()
        .filter(|n| n.kind() == root.kind() && n.segment_count() == root.segment_count())
        .cloned()
        .collect();
    chain.sort_by(|a, b| gen.rank(a).cmp(&gen.rank(b)).then_with(|| a.cmp(b)));
    if chain.len() < 3 || chain[0] != root {
        notes.push(String::from("path level: no chain of the root's kind"));
        return Ok(None);
    }
    let witness = match check_yablo_condition(&window.graph, &chain, CHAIN_PATH_LEN) {
        Ok(w) => w,
        Err((i, j)) => {
            notes.push(format!("path level: no negative path from {} to {}", chain[i], chain[j]));
            return Ok(None);
        }
    };
    let kept: BTreeSet<Arrow> = witness.paths.values().flat_map(|p| p.arrows()).collect();
    let chain_set: BTreeSet<&NodeId> = chain.iter().collect();
    for a in &kept {
        if !chain_set.contains(&a.from) && kept.iter().filter(|b| b.from == a.from).count() != 1 {
            notes.push(format!("path level: witness paths branch at {}", a.from));
            return Ok(None);
        }
    }
    let reduced = reduce_via_trivialization(&window.graph, &witness)?;
    for g in [&window.graph, &reduced] {
        if !is_yablo_shaped(g, &chain)? {
            notes.push(String::from("path level: chain nodes do not reduce to the Yablo pattern"));
            return Ok(None);
        }
    }
    Ok(Some(witness))
}

/// Lexicographically least among the shortest negative paths `from -> to`
/// of at most `max_len` arrows whose inner nodes avoid `avoid`.
fn shortest_negative(
    graph: &FiniteGraph,
    from: &NodeId,
    to: &NodeId,
    avoid: &BTreeSet<&NodeId>,
    max_len: usize,
) -> Option<Path> {
    // states are (node, parity of negative arrows so far)
    let mut prev: BTreeMap<(NodeId, bool), (NodeId, bool, Sign)> = BTreeMap::new();
    let mut dist: BTreeMap<(NodeId, bool), usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert((from.clone(), false), 0);
    queue.push_back((from.clone(), false));
    while let Some((n, odd)) = queue.pop_front() {
        let d = dist[&(n.clone(), odd)];
        if (n == *to && odd) || d == max_len || (n != *from && (n == *to || avoid.contains(&n))) {
            continue;
        }
        for (m, s) in graph.successors(&n) {
            let state = (m.clone(), odd ^ (s == Sign::Neg));
            if dist.contains_key(&state) || (m != to && avoid.contains(m)) || m == from {
                continue;
            }
            dist.insert(state.clone(), d + 1);
            prev.insert(state.clone(), (n.clone(), odd, s));
            queue.push_back(state);
        }
    }
    let mut state = (to.clone(), true);
    if !dist.contains_key(&state) {
        return None;
    }
    let mut nodes = alloc::vec![to.clone()];
    let mut signs = Vec::new();
    while state.0 != *from || state.1 {
        let (p, podd, s) = prev.get(&state)?.clone();
        nodes.push(p.clone());
        signs.push(s);
        state = (p, podd);
    }
    nodes.reverse();
    signs.reverse();
    Some(Path { nodes, signs })
}

/// Searches a negative path for every pair of chain nodes, avoiding the
/// other chain nodes. On failure returns the first pair without one.
pub fn check_yablo_condition(
    graph: &FiniteGraph,
    chain: &[NodeId],
    max_len: usize,
) -> Result<ChainWitness, (usize, usize)> {
    let mut paths = BTreeMap::new();
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            let avoid: BTreeSet<&NodeId> =
                chain.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, n)| n).collect();
            match shortest_negative(graph, &chain[i], &chain[j], &avoid, max_len) {
                Some(p) => {
                    paths.insert((i, j), p);
                }
                None => return Err((i, j)),
            }
        }
    }
    Ok(ChainWitness { chain: chain.to_vec(), paths })
}

/// Trivializes every arrow not on a witness path.
pub fn reduce_via_trivialization(graph: &FiniteGraph, witness: &ChainWitness) -> Result<FiniteGraph, CertifyError> {
    let mut keep = BTreeSet::new();
    for (&(i, j), p) in &witness.paths {
        let (a, b) = (witness.chain.get(i), witness.chain.get(j));
        if i >= j || a != Some(p.start()) || b != Some(p.end()) {
            return Err(CertifyError::WitnessInvalid(format!("path {p} does not join chain positions {i} and {j}")));
        }
        if path_value(p) != Sign::Neg {
            return Err(CertifyError::WitnessInvalid(format!("path {p} is positive")));
        }
        for a in p.arrows() {
            if graph.arrow(&a.from, &a.to) != Some(a.sign) {
                return Err(CertifyError::WitnessInvalid(format!("arrow {a} is not in the graph")));
            }
            keep.insert(a);
        }
    }
    Ok(trivialize_outside(graph, &keep)?)
}

/// Table of `AND{ ~c : c in later }` over `later`.
pub fn yablo_table(later: &[NodeId]) -> TruthTable {
    let n = later.len();
    let rows = (0..1usize << n).map(|r| Truth3::from_bool(r == 0)).collect();
    TruthTable { inputs: later.to_vec(), rows }
}

/// Effective tables of the non-free chain nodes, each over the later
/// chain nodes with those cut. `None` where the table also depends on
/// another input.
pub fn chain_tables(graph: &FiniteGraph, chain: &[NodeId]) -> Result<Vec<Option<TruthTable>>, FormulaError> {
    (0..chain.len()).filter(|&i| !graph.is_free(&chain[i])).map(|i| chain_table(graph, chain, i)).collect()
}

fn chain_table(graph: &FiniteGraph, chain: &[NodeId], i: usize) -> Result<Option<TruthTable>, FormulaError> {
    let later = &chain[i + 1..];
    let mut cut: Vec<NodeId> = chain[..i].to_vec();
    cut.extend(later.iter().cloned());
    Ok(effective_function_with_inputs(graph, &chain[i], &cut)?.project(later))
}

/// Every non-free chain node computes the Yablo conjunction of its later
/// chain nodes.
pub fn is_yablo_shaped(graph: &FiniteGraph, chain: &[NodeId]) -> Result<bool, FormulaError> {
    let mut any = false;
    // late nodes have the smallest tables, so a mismatch there is cheap
    for i in (0..chain.len()).rev() {
        if graph.is_free(&chain[i]) {
            continue;
        }
        if chain_table(graph, chain, i)?.as_ref() != Some(&yablo_table(&chain[i + 1..])) {
            return Ok(false);
        }
        any = true;
    }
    Ok(any)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{by_name, make_two_arrow_chain, make_yablo};
    use crate::node::id;

    #[test]
    fn yablo_is_certified() {
        let r = certify_paradoxical(&make_yablo(), 6).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedParadoxical(6));
        assert_eq!(r.level, Some(CertLevel::Arrow));
        assert_eq!(r.per_node[&id("x:0")].local_trans_witness, Some(id("x:1")));
    }

    #[test]
    fn two_arrow_escapes() {
        let r = certify_paradoxical(&make_two_arrow_chain(), 6).unwrap();
        match r.verdict {
            Verdict::EscapeFound(Escape::Rule(rule)) => assert_eq!(rule.render(), "**=F"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn yablo_chain_condition() {
        let w = truncate(&make_yablo(), 5, WindowMode::Restricted).unwrap();
        let chain: Vec<NodeId> = (0..=5).map(|i| id(&format!("x:{i}"))).collect();
        let wit = check_yablo_condition(&w.graph, &chain, CHAIN_PATH_LEN).unwrap();
        assert!(wit.paths.values().all(|p| p.len() == 1));
        let reduced = reduce_via_trivialization(&w.graph, &wit).unwrap();
        assert_eq!(reduced, w.graph);
    }

    #[test]
    fn essential_path_level() {
        let g = by_name("diamond:essential").unwrap();
        let r = certify_paradoxical(g.as_ref(), 6).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedParadoxical(6));
        assert_eq!(r.level, Some(CertLevel::Path));
    }

    #[test]
    fn positive_witness_is_rejected() {
        let w = truncate(&make_yablo(), 3, WindowMode::Restricted).unwrap();
        let chain: Vec<NodeId> = (0..=3).map(|i| id(&format!("x:{i}"))).collect();
        let mut wit = check_yablo_condition(&w.graph, &chain, CHAIN_PATH_LEN).unwrap();
        let p = wit.paths.get_mut(&(0, 2)).unwrap();
        *p = Path::through(&w.graph, &[id("x:0"), id("x:1"), id("x:2")]).unwrap();
        assert!(matches!(reduce_via_trivialization(&w.graph, &wit), Err(CertifyError::WitnessInvalid(_))));
    }
}
