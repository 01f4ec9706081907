use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::yablo::{x, yablo_index};
use super::ConstructionError;
use crate::formula::GroupKey;
use crate::generator::{FormulaRule, Generator, Successor, SuccessorStream};
use crate::node::{NodeId, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapMode {
    /// Finitely many arrows removed, all leaving the root.
    BoundedGapsAtRoot,
    /// Finitely many arrows `x:i -o x:j` removed, all with `j <= bound`.
    BoundedGapsEverywhere(u64),
    /// The root loses its arrows to every even `x:j`, `j >= 2`.
    UnboundedGapsAtRoot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSpec {
    pub mode: GapMode,
    /// Removed arrows as index pairs `(i, j)`, `i < j`.
    pub details: Vec<(u64, u64)>,
}

impl GapSpec {
    /// The shipped presets, numbered 1 to 3.
    pub fn preset(n: u8) -> Option<GapSpec> {
        match n {
            1 => Some(GapSpec { mode: GapMode::BoundedGapsAtRoot, details: (1..=4).map(|j| (0, j)).collect() }),
            2 => {
                let bound = 5;
                let mut details = Vec::new();
                for i in 0..bound {
                    for j in i + 2..=bound {
                        details.push((i, j));
                    }
                }
                Some(GapSpec { mode: GapMode::BoundedGapsEverywhere(bound), details })
            }
            3 => Some(GapSpec { mode: GapMode::UnboundedGapsAtRoot, details: Vec::new() }),
            _ => None,
        }
    }
}

/// Yablo's graph with some arrows of the transitive closure missing.
#[derive(Debug, Clone)]
pub struct GappedYablo {
    spec: GapSpec,
    removed: BTreeSet<(u64, u64)>,
    limit: u64,
    label: String,
}

pub fn make_gapped_yablo(spec: GapSpec) -> Result<GappedYablo, ConstructionError> {
    for &(i, j) in &spec.details {
        if i >= j {
            return Err(ConstructionError::InvalidGap(i, j));
        }
        match spec.mode {
            GapMode::BoundedGapsAtRoot if i != 0 => return Err(ConstructionError::InvalidGap(i, j)),
            GapMode::BoundedGapsEverywhere(bound) if j > bound => return Err(ConstructionError::InvalidGap(i, j)),
            GapMode::UnboundedGapsAtRoot if i != 0 => return Err(ConstructionError::GapUnbounded(i, j)),
            _ => {}
        }
    }
    let removed: BTreeSet<(u64, u64)> = spec.details.iter().copied().collect();
    let limit = removed.iter().map(|p| p.1).max().unwrap_or(0) + 1;
    let label = match spec.mode {
        GapMode::BoundedGapsAtRoot => String::from("gapped-yablo:1"),
        GapMode::BoundedGapsEverywhere(_) => String::from("gapped-yablo:2"),
        GapMode::UnboundedGapsAtRoot => String::from("gapped-yablo:3"),
    };
    Ok(GappedYablo { spec, removed, limit, label })
}

impl GappedYablo {
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = String::from(label);
        self
    }

    pub fn spec(&self) -> &GapSpec {
        &self.spec
    }

    fn is_removed(&self, i: u64, j: u64) -> bool {
        if self.spec.mode == GapMode::UnboundedGapsAtRoot && i == 0 && j >= 2 && j.is_multiple_of(2) {
            return true;
        }
        self.removed.contains(&(i, j))
    }

    fn has(&self, i: u64, j: u64) -> bool {
        i < j && !self.is_removed(i, j)
    }

    /// Whether every successor of `x:j` is a successor of `x:i`.
    fn closes(&self, i: u64, j: u64) -> bool {
        if self.spec.mode == GapMode::UnboundedGapsAtRoot && i == 0 {
            return false;
        }
        (j + 1..=self.limit.max(j + 1)).all(|k| !self.has(j, k) || self.has(i, k))
    }

    fn knee(&self, n: &NodeId) -> Option<NodeId> {
        let i = yablo_index(n)?;
        (i + 1..i + 1 + 64).find(|&j| self.has(i, j) && self.closes(i, j)).map(x)
    }
}

impl Generator for GappedYablo {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn root(&self) -> NodeId {
        x(0)
    }

    fn rank(&self, n: &NodeId) -> usize {
        yablo_index(n).unwrap_or(0) as usize
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        match yablo_index(n) {
            Some(i) => Box::new((i + 1..).filter(move |&j| self.has(i, j)).map(|j| Successor::neg(x(j)))),
            None => Box::new(core::iter::empty()),
        }
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        self.has(yablo_index(from)?, yablo_index(to)?).then_some((Sign::Neg, 0))
    }

    fn formula(&self, _: &NodeId) -> FormulaRule {
        FormulaRule::Conjunction
    }

    fn knee_hint(&self, n: &NodeId, _: GroupKey) -> Option<NodeId> {
        self.knee(n)
    }

    fn transitive_hint(&self, n: &NodeId) -> Option<NodeId> {
        self.knee(n)
    }
}

impl core::fmt::Display for GapSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let pairs: Vec<String> = self.details.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "{:?} [{}]", self.mode, pairs.join(", "))
    }
}
