//! Pattern-based total valuations such as "every node false".

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::generator::TruncateError;
use crate::node::{is_id_char, NodeId};

/// One `:`-separated segment of a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegPattern {
    Literal(String),
    /// Any single segment.
    Any,
    /// A numeric segment with even value.
    Even,
    /// A numeric segment with odd value.
    Odd,
    /// Any remaining segments, including none. Only valid last.
    Rest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulePattern {
    pub segments: Vec<SegPattern>,
    pub value: bool,
}

impl RulePattern {
    pub fn matches(&self, n: &NodeId) -> bool {
        let segs: Vec<&str> = n.segments().collect();
        let mut i = 0;
        for p in &self.segments {
            match p {
                SegPattern::Rest => return true,
                _ if i >= segs.len() => return false,
                SegPattern::Literal(l) if l.as_str() != segs[i] => return false,
                SegPattern::Even | SegPattern::Odd => {
                    let Ok(v) = segs[i].parse::<u64>() else { return false };
                    if (v % 2 == 0) != (*p == SegPattern::Even) {
                        return false;
                    }
                }
                _ => {}
            }
            i += 1;
        }
        i == segs.len()
    }
}

impl fmt::Display for RulePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.segments.iter().enumerate() {
            if k > 0 {
                f.write_str(":")?;
            }
            match s {
                SegPattern::Literal(l) => f.write_str(l)?,
                SegPattern::Any => f.write_str("*")?,
                SegPattern::Even => f.write_str("*even")?,
                SegPattern::Odd => f.write_str("*odd")?,
                SegPattern::Rest => f.write_str("**")?,
            }
        }
        write!(f, "={}", if self.value { 'T' } else { 'F' })
    }
}

/// A valuation given by patterns; the first matching pattern wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationRule {
    pub name: String,
    pub patterns: Vec<RulePattern>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleError {
    Syntax(String),
    UnknownRule(String),
    /// No pattern covers this node.
    RuleNotTotal(NodeId),
    Truncate(TruncateError),
}

impl fmt::Display for RuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleError::Syntax(m) => write!(f, "bad rule: {m}"),
            RuleError::UnknownRule(n) => write!(f, "unknown rule `{n}`"),
            RuleError::RuleNotTotal(n) => write!(f, "rule assigns no value to {n}"),
            RuleError::Truncate(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RuleError {}

impl ValuationRule {
    pub fn all_false() -> Self {
        ValuationRule::parse_inline("**=F").expect("valid").named("all-false")
    }

    /// `x:i:0` true and `x:i:1` false in every column.
    pub fn oa2_rows() -> Self {
        ValuationRule::parse_inline("x:*:0=T,x:*:1=F").expect("valid").named("oa2-rows")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "all-false" => Some(Self::all_false()),
            "oa2-rows" => Some(Self::oa2_rows()),
            _ => None,
        }
    }

    /// A built-in name, or an inline list `pat=T|F,...`.
    pub fn parse(text: &str) -> Result<Self, RuleError> {
        if let Some(r) = Self::builtin(text) {
            return Ok(r);
        }
        if !text.contains('=') {
            return Err(RuleError::UnknownRule(text.to_string()));
        }
        Self::parse_inline(text)
    }

    pub fn parse_inline(text: &str) -> Result<Self, RuleError> {
        let mut patterns = Vec::new();
        for item in text.split(',').map(str::trim) {
            let (pat, val) =
                item.split_once('=').ok_or_else(|| RuleError::Syntax(alloc::format!("`{item}` lacks `=`")))?;
            let value = match val.trim() {
                "T" => true,
                "F" => false,
                v => return Err(RuleError::Syntax(alloc::format!("value `{v}` is not T or F"))),
            };
            let parts: Vec<&str> = pat.trim().split(':').collect();
            let mut segments = Vec::new();
            for (k, s) in parts.iter().enumerate() {
                let seg = match *s {
                    "*" => SegPattern::Any,
                    "*even" => SegPattern::Even,
                    "*odd" => SegPattern::Odd,
                    "**" if k + 1 == parts.len() => SegPattern::Rest,
                    s if !s.is_empty() && s.chars().all(is_id_char) => SegPattern::Literal(s.to_string()),
                    s => return Err(RuleError::Syntax(alloc::format!("bad segment `{s}` in `{pat}`"))),
                };
                segments.push(seg);
            }
            patterns.push(RulePattern { segments, value });
        }
        Ok(ValuationRule { name: text.to_string(), patterns })
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn assign(&self, n: &NodeId) -> Option<bool> {
        self.patterns.iter().find(|p| p.matches(n)).map(|p| p.value)
    }

    /// The rule as inline text.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        parts.join(",")
    }
}
