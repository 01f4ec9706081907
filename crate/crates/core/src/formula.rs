//! Truth values, DNF formulas and their evaluation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::node::{NodeId, Sign};

/// Kleene-style three-valued truth. `X` means no classical value can be assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Truth3 {
    F,
    T,
    X,
}

impl Truth3 {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth3::T
        } else {
            Truth3::F
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Truth3::T => Some(true),
            Truth3::F => Some(false),
            Truth3::X => None,
        }
    }

    pub fn and(self, other: Self) -> Self {
        match (self, other) {
            (Truth3::F, _) | (_, Truth3::F) => Truth3::F,
            (Truth3::T, Truth3::T) => Truth3::T,
            _ => Truth3::X,
        }
    }

    pub fn or(self, other: Self) -> Self {
        match (self, other) {
            (Truth3::T, _) | (_, Truth3::T) => Truth3::T,
            (Truth3::F, Truth3::F) => Truth3::F,
            _ => Truth3::X,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Truth3::T => 'T',
            Truth3::F => 'F',
            Truth3::X => 'X',
        }
    }
}

impl core::ops::Not for Truth3 {
    type Output = Truth3;

    fn not(self) -> Truth3 {
        match self {
            Truth3::T => Truth3::F,
            Truth3::F => Truth3::T,
            Truth3::X => Truth3::X,
        }
    }
}

impl fmt::Display for Truth3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    Not,
    And,
    Or,
}

/// Applies a connective; `b` must be present exactly for `And` and `Or`.
pub fn connective3(kind: Connective, a: Truth3, b: Option<Truth3>) -> Option<Truth3> {
    match (kind, b) {
        (Connective::Not, None) => Some(!a),
        (Connective::And, Some(b)) => Some(a.and(b)),
        (Connective::Or, Some(b)) => Some(a.or(b)),
        _ => None,
    }
}

pub fn and_all<I: IntoIterator<Item = Truth3>>(items: I) -> Truth3 {
    items.into_iter().fold(Truth3::T, Truth3::and)
}

pub fn or_all<I: IntoIterator<Item = Truth3>>(items: I) -> Truth3 {
    items.into_iter().fold(Truth3::F, Truth3::or)
}

pub type Valuation = BTreeMap<NodeId, Truth3>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: NodeId,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: NodeId, negated: bool) -> Self {
        Literal { var, negated }
    }

    /// The literal an arrow of the given sign contributes to a conjunction.
    pub fn from_sign(var: NodeId, sign: Sign) -> Self {
        Literal { var, negated: sign == Sign::Neg }
    }

    pub fn complement(&self) -> Self {
        Literal { var: self.var.clone(), negated: !self.negated }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Lit(Literal),
    True,
    False,
}

impl Atom {
    pub fn pos(var: NodeId) -> Self {
        Atom::Lit(Literal::new(var, false))
    }

    pub fn neg(var: NodeId) -> Self {
        Atom::Lit(Literal::new(var, true))
    }

    pub fn literal(&self) -> Option<&Literal> {
        match self {
            Atom::Lit(l) => Some(l),
            _ => None,
        }
    }
}

/// A finite formula in disjunctive normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dnf {
    pub disjuncts: Vec<Vec<Atom>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaError {
    UnboundVariable(NodeId),
    TooLarge { limit: usize },
    TooManySinks { count: usize, limit: usize },
    UnknownNode(NodeId),
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::UnboundVariable(v) => write!(f, "variable {v} has no value"),
            FormulaError::TooLarge { limit } => {
                write!(f, "formula expansion exceeds {limit} disjuncts")
            }
            FormulaError::TooManySinks { count, limit } => {
                write!(f, "{count} input variables exceed the table limit of {limit}")
            }
            FormulaError::UnknownNode(v) => write!(f, "unknown node {v}"),
        }
    }
}

impl core::error::Error for FormulaError {}

/// Upper bound on disjuncts produced by negation and guard expansion.
pub const DNF_SIZE_CAP: usize = 4096;

impl Dnf {
    pub fn new(disjuncts: Vec<Vec<Atom>>) -> Self {
        Dnf { disjuncts }
    }

    pub fn truth() -> Self {
        Dnf { disjuncts: alloc::vec![alloc::vec![Atom::True]] }
    }

    pub fn falsity() -> Self {
        Dnf { disjuncts: alloc::vec![alloc::vec![Atom::False]] }
    }

    /// A single conjunction of literals.
    pub fn conjunction<I: IntoIterator<Item = Literal>>(lits: I) -> Self {
        let c: Vec<Atom> = lits.into_iter().map(Atom::Lit).collect();
        if c.is_empty() {
            Dnf::truth()
        } else {
            Dnf { disjuncts: alloc::vec![c] }
        }
    }

    pub fn variables(&self) -> BTreeSet<NodeId> {
        self.disjuncts.iter().flatten().filter_map(|a| a.literal().map(|l| l.var.clone())).collect()
    }

    /// Polarities under which `var` occurs: (positive, negative).
    pub fn polarities(&self, var: &NodeId) -> (bool, bool) {
        let mut pos = false;
        let mut neg = false;
        for l in self.disjuncts.iter().flatten().filter_map(Atom::literal) {
            if &l.var == var {
                if l.negated {
                    neg = true;
                } else {
                    pos = true;
                }
            }
        }
        (pos, neg)
    }

    pub fn eval(&self, v: &Valuation) -> Result<Truth3, FormulaError> {
        self.eval_with(|n| v.get(n).copied())
    }

    pub fn eval_with<F>(&self, mut lookup: F) -> Result<Truth3, FormulaError>
    where
        F: FnMut(&NodeId) -> Option<Truth3>,
    {
        let mut acc = Truth3::F;
        for conj in &self.disjuncts {
            let mut c = Truth3::T;
            for atom in conj {
                let a = match atom {
                    Atom::True => Truth3::T,
                    Atom::False => Truth3::F,
                    Atom::Lit(l) => {
                        let t = lookup(&l.var).ok_or_else(|| FormulaError::UnboundVariable(l.var.clone()))?;
                        if l.negated {
                            !t
                        } else {
                            t
                        }
                    }
                };
                c = c.and(a);
            }
            acc = acc.or(c);
        }
        Ok(acc)
    }

    pub fn eval_bool<F>(&self, mut lookup: F) -> Result<bool, FormulaError>
    where
        F: FnMut(&NodeId) -> Option<bool>,
    {
        let t = self.eval_with(|n| lookup(n).map(Truth3::from_bool))?;
        Ok(t == Truth3::T)
    }

    /// Canonical form: literals sorted, constants folded, contradictory and
    /// subsumed disjuncts removed, disjuncts sorted. An unsatisfiable formula
    /// becomes `F`, a valid-by-construction one `T`.
    pub fn canonical(&self) -> Dnf {
        let mut conjs: Vec<Vec<Literal>> = Vec::new();
        'outer: for conj in &self.disjuncts {
            let mut lits: BTreeSet<Literal> = BTreeSet::new();
            for atom in conj {
                match atom {
                    Atom::True => {}
                    Atom::False => continue 'outer,
                    Atom::Lit(l) => {
                        if lits.contains(&l.complement()) {
                            continue 'outer;
                        }
                        lits.insert(l.clone());
                    }
                }
            }
            conjs.push(lits.into_iter().collect());
        }
        conjs.sort();
        conjs.dedup();
        let mut kept: Vec<Vec<Literal>> = Vec::new();
        for (i, c) in conjs.iter().enumerate() {
            let subsumed =
                conjs.iter().enumerate().any(|(j, d)| j != i && d.len() < c.len() && d.iter().all(|l| c.contains(l)));
            if !subsumed {
                kept.push(c.clone());
            }
        }
        if kept.is_empty() {
            return Dnf::falsity();
        }
        if kept.iter().any(|c| c.is_empty()) {
            return Dnf::truth();
        }
        Dnf { disjuncts: kept.into_iter().map(|c| c.into_iter().map(Atom::Lit).collect()).collect() }
    }

    /// Complement via choice functions: pick one atom per disjunct and
    /// conjoin the negations.
    pub fn negate(&self) -> Result<Dnf, FormulaError> {
        let base = self.canonical();
        if base == Dnf::truth() {
            return Ok(Dnf::falsity());
        }
        if base == Dnf::falsity() {
            return Ok(Dnf::truth());
        }
        let mut acc: Vec<BTreeSet<Literal>> = alloc::vec![BTreeSet::new()];
        for conj in &base.disjuncts {
            let mut next: Vec<BTreeSet<Literal>> = Vec::new();
            for partial in &acc {
                for atom in conj {
                    let l = atom.literal().expect("canonical disjuncts hold only literals");
                    let neg = l.complement();
                    if partial.contains(l) {
                        continue;
                    }
                    let mut p = partial.clone();
                    p.insert(neg);
                    next.push(p);
                }
            }
            next.sort();
            next.dedup();
            // prune supersets early to keep the expansion small
            let mut pruned: Vec<BTreeSet<Literal>> = Vec::new();
            for (i, c) in next.iter().enumerate() {
                let subsumed = next.iter().enumerate().any(|(j, d)| j != i && d.len() < c.len() && d.is_subset(c));
                if !subsumed {
                    pruned.push(c.clone());
                }
            }
            if pruned.len() > DNF_SIZE_CAP {
                return Err(FormulaError::TooLarge { limit: DNF_SIZE_CAP });
            }
            acc = pruned;
        }
        let d = Dnf { disjuncts: acc.into_iter().map(|c| c.into_iter().map(Atom::Lit).collect()).collect() };
        Ok(d.canonical())
    }
}

/// Free function form of [`Dnf::negate`].
pub fn negate_dnf(spec: &Dnf) -> Result<Dnf, FormulaError> {
    spec.negate()
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, conj) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            for (j, atom) in conj.iter().enumerate() {
                if j > 0 {
                    write!(f, " & ")?;
                }
                match atom {
                    Atom::True => write!(f, "T")?,
                    Atom::False => write!(f, "F")?,
                    Atom::Lit(l) if l.negated => write!(f, "~{}", l.var)?,
                    Atom::Lit(l) => write!(f, "{}", l.var)?,
                }
            }
        }
        Ok(())
    }
}

/// Group label inside a grouped formula.
pub type GroupKey = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grouping {
    /// One group: the conjunction of all arrow-signed successor literals.
    Single,
    /// Successors partitioned by key; unlisted successors fall in group 0.
    Keyed(BTreeMap<NodeId, GroupKey>),
}

/// Formula attached to a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DnfSpec {
    Explicit(Dnf),
    /// Disjunction over groups of the conjunction of each group's
    /// arrow-signed literals.
    Grouped(Grouping),
}

impl DnfSpec {
    pub fn conjunction() -> Self {
        DnfSpec::Grouped(Grouping::Single)
    }

    /// Materializes the formula over the given signed successors.
    pub fn materialize<'a, I>(&self, successors: I) -> Dnf
    where
        I: IntoIterator<Item = (&'a NodeId, Sign)>,
    {
        match self {
            DnfSpec::Explicit(d) => d.clone(),
            DnfSpec::Grouped(Grouping::Single) => {
                Dnf::conjunction(successors.into_iter().map(|(n, s)| Literal::from_sign(n.clone(), s)))
            }
            DnfSpec::Grouped(Grouping::Keyed(keys)) => {
                let mut groups: BTreeMap<GroupKey, Vec<Atom>> = BTreeMap::new();
                for (n, s) in successors {
                    let k = keys.get(n).copied().unwrap_or(0);
                    groups.entry(k).or_default().push(Atom::Lit(Literal::from_sign(n.clone(), s)));
                }
                if groups.is_empty() {
                    return Dnf::truth();
                }
                Dnf { disjuncts: groups.into_values().collect() }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::id;
    use alloc::vec;

    const ALL: [Truth3; 3] = [Truth3::T, Truth3::F, Truth3::X];

    #[test]
    fn kleene_tables_for_x() {
        assert_eq!(Truth3::X.and(Truth3::F), Truth3::F);
        assert_eq!(Truth3::X.or(Truth3::F), Truth3::X);
        assert_eq!(Truth3::X.and(Truth3::T), Truth3::X);
        assert_eq!(Truth3::X.or(Truth3::T), Truth3::T);
        assert_eq!(!Truth3::X, Truth3::X);
        assert_eq!(Truth3::X.or(!Truth3::X), Truth3::X);
        assert_eq!(Truth3::X.and(!Truth3::X), Truth3::X);
    }

    #[test]
    fn classical_restriction() {
        for a in [false, true] {
            assert_eq!(!Truth3::from_bool(a), Truth3::from_bool(!a));
            for b in [false, true] {
                let (ta, tb) = (Truth3::from_bool(a), Truth3::from_bool(b));
                assert_eq!(ta.and(tb), Truth3::from_bool(a && b));
                assert_eq!(ta.or(tb), Truth3::from_bool(a || b));
            }
        }
    }

    #[test]
    fn connectives_commute_and_associate() {
        for a in ALL {
            for b in ALL {
                assert_eq!(a.and(b), b.and(a));
                assert_eq!(a.or(b), b.or(a));
                for c in ALL {
                    assert_eq!(a.and(b).and(c), a.and(b.and(c)));
                    assert_eq!(a.or(b).or(c), a.or(b.or(c)));
                }
            }
        }
    }

    #[test]
    fn connective3_arity_check() {
        assert_eq!(connective3(Connective::And, Truth3::X, Some(Truth3::F)), Some(Truth3::F));
        assert_eq!(connective3(Connective::Not, Truth3::T, Some(Truth3::F)), None);
        assert_eq!(connective3(Connective::Or, Truth3::T, None), None);
    }

    fn basic_x() -> Dnf {
        Dnf::conjunction([Literal::new(id("y"), true), Literal::new(id("z"), true)])
    }

    #[test]
    fn eval_examples() {
        let x = basic_x();
        let mut v = Valuation::new();
        v.insert(id("y"), Truth3::F);
        v.insert(id("z"), Truth3::F);
        assert_eq!(x.eval(&v), Ok(Truth3::T));
        v.insert(id("y"), Truth3::X);
        assert_eq!(x.eval(&v), Ok(Truth3::X));
        v.remove(&id("z"));
        assert_eq!(x.eval(&v), Err(FormulaError::UnboundVariable(id("z"))));

        let pair = Dnf::new(vec![vec![Atom::pos(id("yp")), Atom::neg(id("yp"))]]);
        let mut w = Valuation::new();
        w.insert(id("yp"), Truth3::T);
        assert_eq!(pair.eval(&w), Ok(Truth3::F));
    }

    #[test]
    fn de_morgan() {
        let n = basic_x().negate().unwrap();
        let want = Dnf::new(vec![vec![Atom::pos(id("y"))], vec![Atom::pos(id("z"))]]);
        assert_eq!(n, want);
    }

    #[test]
    fn negation_of_mixed_formula() {
        let s = Dnf::new(vec![vec![Atom::pos(id("a")), Atom::pos(id("b"))], vec![Atom::pos(id("c"))]]);
        let want =
            Dnf::new(vec![vec![Atom::neg(id("a")), Atom::neg(id("c"))], vec![Atom::neg(id("b")), Atom::neg(id("c"))]]);
        assert_eq!(s.negate().unwrap(), want);
    }

    #[test]
    fn negating_constants() {
        assert_eq!(Dnf::truth().negate().unwrap(), Dnf::falsity());
        assert_eq!(Dnf::falsity().negate().unwrap(), Dnf::truth());
        let contra = Dnf::new(vec![vec![Atom::pos(id("a")), Atom::neg(id("a"))]]);
        assert_eq!(contra.negate().unwrap(), Dnf::truth());
    }

    #[test]
    fn canonical_is_a_fixpoint() {
        let s = Dnf::new(vec![
            vec![Atom::pos(id("b")), Atom::True, Atom::pos(id("a"))],
            vec![Atom::pos(id("a"))],
            vec![Atom::False, Atom::pos(id("c"))],
        ]);
        let c = s.canonical();
        assert_eq!(c, Dnf::new(vec![vec![Atom::pos(id("a"))]]));
        assert_eq!(c.canonical(), c);
    }

    #[test]
    fn keyed_grouping_materializes_columns() {
        let mut keys = BTreeMap::new();
        keys.insert(id("a"), 1);
        keys.insert(id("b"), 1);
        let spec = DnfSpec::Grouped(Grouping::Keyed(keys));
        let (a, b, c) = (id("a"), id("b"), id("c"));
        let d = spec.materialize([(&a, Sign::Neg), (&b, Sign::Neg), (&c, Sign::Pos)]);
        assert_eq!(d.to_string(), "c | ~a & ~b");
    }
}
