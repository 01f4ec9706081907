//! Reading Or-And models as falsified columns and choice functions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::SolveError;
use crate::constructions::or_and::parse_cell;
use crate::formula::{Truth3, Valuation};
use crate::generator::Window;
use crate::node::NodeId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OaWitness {
    /// A true node: the visible column all of whose visible members are false.
    Column { column: u64, members: Vec<NodeId> },
    /// A false node: one true visible member per visible column.
    Choice(BTreeMap<u64, NodeId>),
}

/// Interprets every Or-And node of `window` that has visible successors.
/// Column `C[x]` is the smallest visible column that `model` falsifies
/// entirely; the choice `g[x]` takes the first true member of each column.
pub fn interpret_oa_model(window: &Window, model: &Valuation) -> Result<BTreeMap<NodeId, OaWitness>, SolveError> {
    let mut out = BTreeMap::new();
    for n in window.graph.nodes() {
        if parse_cell(n).is_none() || window.graph.is_free(n) {
            continue;
        }
        let mut columns: BTreeMap<u64, Vec<NodeId>> = BTreeMap::new();
        for (m, _) in window.graph.successors(n) {
            if let Some((i, _)) = parse_cell(m) {
                columns.entry(i).or_default().push(m.clone());
            }
        }
        if columns.is_empty() {
            continue;
        }
        let value = |m: &NodeId| model.get(m).copied().ok_or_else(|| SolveError::UnknownNode(m.clone()));
        match value(n)? {
            Truth3::T => {
                let mut found = None;
                for (c, members) in &columns {
                    let mut all_false = true;
                    for m in members {
                        all_false &= value(m)? == Truth3::F;
                    }
                    if all_false {
                        found = Some((*c, members.clone()));
                        break;
                    }
                }
                let (column, members) = found.ok_or_else(|| SolveError::NotAModel(n.clone()))?;
                out.insert(n.clone(), OaWitness::Column { column, members });
            }
            Truth3::F => {
                let mut g = BTreeMap::new();
                for (c, members) in &columns {
                    let mut pick = None;
                    for m in members {
                        if value(m)? == Truth3::T {
                            pick = Some(m.clone());
                            break;
                        }
                    }
                    g.insert(*c, pick.ok_or_else(|| SolveError::NotAModel(n.clone()))?);
                }
                out.insert(n.clone(), OaWitness::Choice(g));
            }
            Truth3::X => return Err(SolveError::NotAModel(n.clone())),
        }
    }
    Ok(out)
}
