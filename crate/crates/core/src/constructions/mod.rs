//! Generators for the shipped constructions, addressable by name.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::generator::Generator;

pub mod chains;
pub mod diamonds;
pub mod finite;
pub mod fixtures;
pub mod gapped;
pub mod or_and;
pub mod sawblade;
pub mod yablo;

pub use chains::{make_procrastination, make_two_arrow_chain, Procrastination, TwoArrowChain};
pub use diamonds::{make_nested_diamond, DiamondVariant, Essential, VersuchLeft};
pub use finite::FiniteGen;
pub use gapped::{make_gapped_yablo, GapMode, GapSpec, GappedYablo};
pub use or_and::{make_or_and, OaOrder, OaSpec, OrAnd};
pub use sawblade::{make_saw_blade, BladeVariant, SawBlade};
pub use yablo::{make_yablo, Yablo};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    InvalidGap(u64, u64),
    GapUnbounded(u64, u64),
    InvalidSpec(String),
    InvalidOrder(String),
    UnknownConstruction(String),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::InvalidGap(i, j) => write!(f, "gap x:{i} -o x:{j} is not allowed in this mode"),
            ConstructionError::GapUnbounded(i, j) => {
                write!(f, "gap x:{i} -o x:{j} leaves the root in a mode with unbounded root gaps")
            }
            ConstructionError::InvalidSpec(m) => write!(f, "invalid parameters: {m}"),
            ConstructionError::InvalidOrder(m) => write!(f, "order is not a strict partial order: {m}"),
            ConstructionError::UnknownConstruction(n) => write!(f, "unknown construction `{n}`"),
        }
    }
}

impl core::error::Error for ConstructionError {}

/// Short names accepted for the Or-And presets.
pub fn oa_preset(name: &str) -> Option<OaSpec> {
    let (order, heights) = match name {
        "oa1" => (OaOrder::Enumeration, None),
        "oa2" => (OaOrder::Enumeration, Some(2)),
        "oa3" => (OaOrder::RankedHorizontal, Some(2)),
        "oa4" => (OaOrder::RankedVertical, None),
        "oa5" => (OaOrder::MaxRank, None),
        _ => return None,
    };
    Some(OaSpec::new(order, None, heights))
}

/// Every construction name `by_name` accepts, for listings.
pub const NAMES: &[&str] = &[
    "yablo",
    "sawblade:raw",
    "sawblade:closed",
    "sawblade:composed:<d>",
    "sawblade:dec-yc",
    "sawblade:dec-pair",
    "sawblade:shared-y",
    "oa:<order>:<cols|inf>:<heights|inf>",
    "oa1",
    "oa2",
    "oa3",
    "oa4",
    "oa5",
    "procrastination",
    "two-arrow",
    "diamond:versuch-left",
    "diamond:versuch-right",
    "diamond:rhombus-basic",
    "diamond:rhombus-basic-sync",
    "diamond:essential",
    "diamond:matrix5",
    "gapped-yablo:1",
    "gapped-yablo:2",
    "gapped-yablo:3",
];

fn count(s: &str) -> Result<Option<u64>, ConstructionError> {
    if s == "inf" {
        return Ok(None);
    }
    s.parse::<u64>()
        .map(Some)
        .map_err(|_| ConstructionError::InvalidSpec(alloc::format!("`{s}` is neither a count nor `inf`")))
}

/// Looks up a construction by its stable name.
pub fn by_name(name: &str) -> Result<Box<dyn Generator>, ConstructionError> {
    let unknown = || ConstructionError::UnknownConstruction(String::from(name));
    let parts: alloc::vec::Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["yablo"] => Ok(Box::new(make_yablo())),
        ["procrastination"] => Ok(Box::new(make_procrastination())),
        ["two-arrow"] => Ok(Box::new(make_two_arrow_chain())),
        ["sawblade", rest @ ..] => {
            let variant = match rest {
                ["raw"] => BladeVariant::Raw,
                ["closed"] => BladeVariant::Closed,
                ["composed", d] => {
                    let d: u32 = d.parse().map_err(|_| unknown())?;
                    if d == 0 {
                        return Err(ConstructionError::InvalidSpec(String::from(
                            "composition depth must be at least 1",
                        )));
                    }
                    BladeVariant::Composed(d)
                }
                ["dec-yc"] => BladeVariant::DecoratedYC,
                ["dec-pair"] => BladeVariant::DecoratedPair,
                ["shared-y"] => BladeVariant::SharedY,
                _ => return Err(unknown()),
            };
            Ok(Box::new(make_saw_blade(variant, "0")))
        }
        [p] if p.starts_with("oa") && p.len() == 3 => {
            let spec = oa_preset(p).ok_or_else(unknown)?;
            Ok(Box::new(make_or_and(spec)?.with_label(p)))
        }
        ["oa", order, cols, heights] => {
            let order = OaOrder::parse(order).ok_or_else(unknown)?;
            Ok(Box::new(make_or_and(OaSpec::new(order, count(cols)?, count(heights)?))?))
        }
        ["diamond", v] => Ok(make_nested_diamond(DiamondVariant::parse(v).ok_or_else(unknown)?)),
        ["gapped-yablo", m] => {
            let n: u8 = m.parse().map_err(|_| unknown())?;
            let spec = GapSpec::preset(n).ok_or_else(unknown)?;
            Ok(Box::new(make_gapped_yablo(spec)?))
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_listed_names_resolve() {
        for n in NAMES {
            let n = n.replace("<d>", "2").replace("<order>", "enumeration").replace("<cols|inf>", "3");
            let n = n.replace("<heights|inf>", "inf");
            let g = by_name(&n).unwrap_or_else(|e| panic!("{n}: {e}"));
            assert!(!g.name().is_empty());
        }
    }

    #[test]
    fn bad_names() {
        assert_eq!(by_name("nope").err(), Some(ConstructionError::UnknownConstruction(String::from("nope"))));
        assert!(matches!(by_name("oa:enumeration:0:2"), Err(ConstructionError::InvalidSpec(_))));
        assert!(by_name("sawblade:composed:0").is_err());
        assert!(by_name("gapped-yablo:4").is_err());
    }
}
