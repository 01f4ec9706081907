//! Signed acyclic graphs of negated conjunctions and disjunctions: finite
//! windows of infinite constructions, their semantics, contradiction cells,
//! a small SAT solver and a paradoxicality certifier.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cells;
pub mod certify;
pub mod constructions;
pub mod formula;
pub mod generator;
pub mod graph;
pub mod node;
pub mod paths;
pub mod semantics;
pub mod solver;

pub use formula::{Atom, Dnf, DnfSpec, FormulaError, GroupKey, Grouping, Literal, Truth3, Valuation};
pub use generator::{truncate, FormulaRule, Generator, Successor, Window, WindowMode};
pub use graph::{build_finite_graph, FiniteGraph, GraphBuilder, GraphError};
pub use node::{id, Arrow, NodeId, Sign};
