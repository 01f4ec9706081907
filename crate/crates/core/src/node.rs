use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Identifier of a node: one or more non-empty segments joined by `:`.
///
/// Equality is exact text equality. Ordering is "natural": digit runs are
/// compared as numbers, so `x:2` sorts before `x:10`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeId(String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeIdError {
    Empty,
    EmptySegment(String),
    BadChar(String, char),
}

impl fmt::Display for NodeIdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeIdError::Empty => write!(f, "empty node id"),
            NodeIdError::EmptySegment(s) => write!(f, "node id `{s}` has an empty segment"),
            NodeIdError::BadChar(s, c) => write!(f, "node id `{s}` contains `{c}`"),
        }
    }
}

impl core::error::Error for NodeIdError {}

pub(crate) fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

impl NodeId {
    pub fn new(text: &str) -> Result<Self, NodeIdError> {
        if text.is_empty() {
            return Err(NodeIdError::Empty);
        }
        for seg in text.split(':') {
            if seg.is_empty() {
                return Err(NodeIdError::EmptySegment(text.to_string()));
            }
            if let Some(c) = seg.chars().find(|c| !is_id_char(*c)) {
                return Err(NodeIdError::BadChar(text.to_string(), c));
            }
        }
        Ok(NodeId(text.to_string()))
    }

    /// Builds an id from segments that are known to be valid.
    pub fn from_segments<S: AsRef<str>>(segments: &[S]) -> Self {
        let mut out = String::new();
        for (i, s) in segments.iter().enumerate() {
            if i > 0 {
                out.push(':');
            }
            out.push_str(s.as_ref());
        }
        NodeId::new(&out).expect("segments form a valid node id")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn segments(&self) -> impl Iterator<Item = &str> {
        self.0.split(':')
    }

    pub fn segment_count(&self) -> usize {
        self.0.split(':').count()
    }

    pub fn segment(&self, i: usize) -> Option<&str> {
        self.0.split(':').nth(i)
    }

    /// Segment `i` parsed as an unsigned number.
    pub fn index(&self, i: usize) -> Option<u64> {
        self.segment(i)?.parse().ok()
    }

    pub fn kind(&self) -> &str {
        self.segment(0).unwrap_or("")
    }

    pub fn child(&self, seg: &str) -> NodeId {
        NodeId::from_segments(&[self.as_str(), seg])
    }
}

/// Shorthand for `NodeId::new(..).unwrap()` with a readable panic.
pub fn id(text: &str) -> NodeId {
    match NodeId::new(text) {
        Ok(n) => n,
        Err(e) => panic!("{e}"),
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl core::str::FromStr for NodeId {
    type Err = NodeIdError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NodeId::new(s)
    }
}

fn chunks(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    while start < bytes.len() {
        let digit = bytes[start].is_ascii_digit();
        let mut end = start + 1;
        while end < bytes.len() && bytes[end].is_ascii_digit() == digit {
            end += 1;
        }
        out.push((digit, &s[start..end]));
        start = end;
    }
    out
}

fn cmp_digits(a: &str, b: &str) -> Ordering {
    let a = a.trim_start_matches('0');
    let b = b.trim_start_matches('0');
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub(crate) fn natural_cmp(a: &str, b: &str) -> Ordering {
    let ca = chunks(a);
    let cb = chunks(b);
    for (x, y) in ca.iter().zip(cb.iter()) {
        let ord = match (x.0, y.0) {
            (true, true) => cmp_digits(x.1, y.1),
            _ => x.1.cmp(y.1),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

impl Ord for NodeId {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for NodeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arrow polarity. `Neg` is the default for unannotated arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    Pos,
    #[default]
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// Sign of a composite path: `+` iff both parts agree.
    pub fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub from: NodeId,
    pub to: NodeId,
    pub sign: Sign,
}

impl Arrow {
    pub fn new(from: NodeId, to: NodeId, sign: Sign) -> Self {
        Arrow { from, to, sign }
    }

    pub fn neg(from: &str, to: &str) -> Self {
        Arrow::new(id(from), id(to), Sign::Neg)
    }

    pub fn pos(from: &str, to: &str) -> Self {
        Arrow::new(id(from), id(to), Sign::Pos)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.sign {
            Sign::Neg => "-o",
            Sign::Pos => "->",
        };
        write!(f, "{} {} {}", self.from, a, self.to)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_ids() {
        assert_eq!(NodeId::new(""), Err(NodeIdError::Empty));
        assert!(matches!(NodeId::new("x::1"), Err(NodeIdError::EmptySegment(_))));
        assert!(matches!(NodeId::new("x 1"), Err(NodeIdError::BadChar(_, ' '))));
        assert!(NodeId::new("y:s0.3:2").is_ok());
        assert!(NodeId::new("y'").is_ok());
    }

    #[test]
    fn natural_order_compares_numbers() {
        let mut v = [id("x:10"), id("x:2"), id("x:1:0"), id("x"), id("x:02")];
        v.sort();
        let s: Vec<&str> = v.iter().map(|n| n.as_str()).collect();
        assert_eq!(s, ["x", "x:1:0", "x:02", "x:2", "x:10"]);
    }

    #[test]
    fn equality_is_textual() {
        assert_ne!(id("x:02"), id("x:2"));
        assert_ne!(id("x:02").cmp(&id("x:2")), Ordering::Equal);
    }

    #[test]
    fn sign_composition() {
        assert_eq!(Sign::Neg.compose(Sign::Neg), Sign::Pos);
        assert_eq!(Sign::Neg.compose(Sign::Pos), Sign::Neg);
        assert_eq!(Sign::default(), Sign::Neg);
    }
}
