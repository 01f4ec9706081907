//! Line-oriented graph language.
//!
//! ```text
//! # comment
//! node x
//! x -> y          # negative arrow, same as `x -> y -`
//! x -> z +
//! x := ~y & z | T
//! clamp x = T
//! ```
//!
//! Arrow endpoints are declared implicitly. Nodes without a formula
//! line are the conjunction of their arrow-signed successors.

use std::collections::BTreeMap;
use std::fmt;

use paradox_core::formula::{Atom, Dnf, DnfSpec, Grouping, Literal};
use paradox_core::solver::Clamp;
use paradox_core::{Arrow, FiniteGraph, GraphBuilder, GraphError, NodeId, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the error has no single source line.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Node(NodeId),
    Arrow(Arrow),
    Formula(NodeId, Dnf),
    Clamp(Clamp),
    Comment(String),
    Blank,
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Node(n) => write!(f, "node {n}"),
            Decl::Arrow(a) => write!(f, "{} -> {} {}", a.from, a.to, a.sign),
            Decl::Formula(n, d) => write!(f, "{n} := {d}"),
            Decl::Clamp(c) => write!(f, "clamp {} = {}", c.node, if c.value { 'T' } else { 'F' }),
            Decl::Comment(c) if c.is_empty() => f.write_str("#"),
            Decl::Comment(c) => write!(f, "# {c}"),
            Decl::Blank => Ok(()),
        }
    }
}

/// A parsed file: one declaration per source line.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DslDocument {
    pub decls: Vec<Decl>,
}

fn parse_id(text: &str, line: usize) -> Result<NodeId, ParseError> {
    text.parse::<NodeId>().map_err(|e| ParseError::new(line, format!("`{text}`: {e}")))
}

fn parse_value(text: &str, line: usize) -> Result<bool, ParseError> {
    match text {
        "T" => Ok(true),
        "F" => Ok(false),
        v => Err(ParseError::new(line, format!("expected T or F, found `{v}`"))),
    }
}

fn parse_dnf(text: &str, line: usize) -> Result<Dnf, ParseError> {
    let mut disjuncts = Vec::new();
    for conj in text.split('|') {
        let mut atoms = Vec::new();
        for lit in conj.split('&') {
            let lit = lit.trim();
            let atom = match lit {
                "" => return Err(ParseError::new(line, "empty literal in formula")),
                "T" => Atom::True,
                "F" => Atom::False,
                _ => match lit.strip_prefix('~') {
                    Some(rest) => Atom::Lit(Literal::new(parse_id(rest.trim(), line)?, true)),
                    None => Atom::Lit(Literal::new(parse_id(lit, line)?, false)),
                },
            };
            atoms.push(atom);
        }
        disjuncts.push(atoms);
    }
    Ok(Dnf::new(disjuncts))
}

fn parse_line(raw: &str, line: usize) -> Result<Decl, ParseError> {
    let (body, comment) = match raw.find('#') {
        Some(i) => (&raw[..i], Some(raw[i + 1..].trim())),
        None => (raw, None),
    };
    let body = body.trim();
    if body.is_empty() {
        return Ok(match comment {
            Some(c) => Decl::Comment(c.to_string()),
            None => Decl::Blank,
        });
    }
    if let Some((lhs, rhs)) = body.split_once(":=") {
        return Ok(Decl::Formula(parse_id(lhs.trim(), line)?, parse_dnf(rhs, line)?));
    }
    if let Some((lhs, rhs)) = body.split_once("->") {
        let from = parse_id(lhs.trim(), line)?;
        let mut words = rhs.split_whitespace();
        let to = parse_id(words.next().ok_or_else(|| ParseError::new(line, "arrow lacks a target"))?, line)?;
        let sign = match words.next() {
            None | Some("-") => Sign::Neg,
            Some("+") => Sign::Pos,
            Some(w) => return Err(ParseError::new(line, format!("arrow sign must be + or -, found `{w}`"))),
        };
        if let Some(w) = words.next() {
            return Err(ParseError::new(line, format!("unexpected `{w}` after arrow")));
        }
        return Ok(Decl::Arrow(Arrow::new(from, to, sign)));
    }
    let mut words = body.split_whitespace();
    match words.next() {
        Some("node") => {
            let n = words.next().ok_or_else(|| ParseError::new(line, "`node` needs a name"))?;
            if let Some(w) = words.next() {
                return Err(ParseError::new(line, format!("unexpected `{w}` after node name")));
            }
            Ok(Decl::Node(parse_id(n, line)?))
        }
        Some("clamp") => {
            let rest = body["clamp".len()..].trim();
            let (n, v) = rest.split_once('=').ok_or_else(|| ParseError::new(line, "clamp needs `<id> = T|F`"))?;
            Ok(Decl::Clamp(Clamp::new(parse_id(n.trim(), line)?, parse_value(v.trim(), line)?)))
        }
        _ => Err(ParseError::new(line, format!("cannot read `{body}`"))),
    }
}

impl DslDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let decls = text.lines().enumerate().map(|(i, l)| parse_line(l, i + 1)).collect::<Result<_, _>>()?;
        Ok(DslDocument { decls })
    }

    /// Canonical text: one declaration per line, explicit arrow signs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for d in &self.decls {
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }

    pub fn clamps(&self) -> Vec<Clamp> {
        self.decls
            .iter()
            .filter_map(|d| match d {
                Decl::Clamp(c) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }

    /// Builds and validates the graph; errors point at the offending line.
    pub fn build(&self) -> Result<FiniteGraph, ParseError> {
        let mut b = GraphBuilder::new();
        let mut arrow_line: BTreeMap<(NodeId, NodeId), usize> = BTreeMap::new();
        let mut formula_line: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut node_line: BTreeMap<NodeId, usize> = BTreeMap::new();
        for (i, d) in self.decls.iter().enumerate() {
            let line = i + 1;
            match d {
                Decl::Node(n) => {
                    node_line.entry(n.clone()).or_insert(line);
                    b.node(n.clone());
                }
                Decl::Arrow(a) => {
                    if arrow_line.insert((a.from.clone(), a.to.clone()), line).is_some() {
                        return Err(ParseError::new(line, format!("second arrow from {} to {}", a.from, a.to)));
                    }
                    node_line.entry(a.from.clone()).or_insert(line);
                    node_line.entry(a.to.clone()).or_insert(line);
                    b.arrow(a.from.clone(), a.to.clone(), a.sign);
                }
                Decl::Formula(n, f) => {
                    if formula_line.insert(n.clone(), line).is_some() {
                        return Err(ParseError::new(line, format!("second formula for {n}")));
                    }
                    b.formula(n.clone(), DnfSpec::Explicit(f.clone()));
                }
                Decl::Clamp(_) | Decl::Comment(_) | Decl::Blank => {}
            }
        }
        let g = b.build().map_err(|e| {
            let line = match &e {
                GraphError::FormulaVariable { node, .. }
                | GraphError::SignMismatch { node, .. }
                | GraphError::EmptyFormula(node) => formula_line.get(node).copied(),
                GraphError::UnknownNode(n) => formula_line.get(n).copied(),
                GraphError::SelfLoop(n) => arrow_line.get(&(n.clone(), n.clone())).copied(),
                GraphError::Cycle(nodes) => {
                    // the last-declared arrow that closes the cycle
                    let k = nodes.len();
                    (0..k)
                        .filter_map(|i| arrow_line.get(&(nodes[i].clone(), nodes[(i + 1) % k].clone())))
                        .max()
                        .copied()
                }
                _ => None,
            };
            ParseError::new(line.unwrap_or(0), e.to_string())
        })?;
        for (i, d) in self.decls.iter().enumerate() {
            if let Decl::Clamp(c) = d {
                if !g.contains(&c.node) {
                    return Err(ParseError::new(i + 1, format!("clamp on undeclared node {}", c.node)));
                }
            }
        }
        Ok(g)
    }

    /// Document for a graph: nodes in graph order, arrows, formulas that
    /// are not plain conjunctions, then clamps.
    pub fn from_graph(graph: &FiniteGraph, clamps: &[Clamp]) -> Self {
        let mut decls: Vec<Decl> = graph.nodes().iter().cloned().map(Decl::Node).collect();
        for n in graph.nodes() {
            for (m, s) in graph.successors(n) {
                decls.push(Decl::Arrow(Arrow::new(n.clone(), m.clone(), s)));
            }
        }
        for n in graph.nodes() {
            match graph.formula(n) {
                Some(DnfSpec::Explicit(d)) => decls.push(Decl::Formula(n.clone(), d.clone())),
                Some(spec @ DnfSpec::Grouped(Grouping::Keyed(_))) => {
                    decls.push(Decl::Formula(n.clone(), spec.materialize(graph.successors(n))))
                }
                _ => {}
            }
        }
        decls.extend(clamps.iter().cloned().map(Decl::Clamp));
        DslDocument { decls }
    }
}

/// Parses and builds a graph with its clamp fixtures.
pub fn parse_dsl(text: &str) -> Result<(FiniteGraph, Vec<Clamp>), ParseError> {
    let doc = DslDocument::parse(text)?;
    Ok((doc.build()?, doc.clamps()))
}

pub fn render_graph(graph: &FiniteGraph, clamps: &[Clamp]) -> String {
    DslDocument::from_graph(graph, clamps).render()
}
