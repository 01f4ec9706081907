//! Saw blades: a back chain `x` with teeth `y`, in several variants.
//!
//! Node names: back node `k` of blade `s` is `x:s:k`, tooth `k` is `y:s:k`.
//! The root blade has the seed as address (`0` for named constructions). A blade started
//! at tooth `y:s:i` has address `s.i`, and its start node is that tooth
//! itself, so its back nodes are numbered from 1.
//!
//! Ranks: back `k` sits at `base + k`, tooth `k` at `base + k + 2`, and
//! `base(s.i) = base(s) + i + 2`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::formula::{Atom, Dnf, GroupKey};
use crate::generator::{FormulaRule, Generator, Successor, SuccessorStream};
use crate::node::{NodeId, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BladeVariant {
    /// Back chain plus teeth arrows only.
    Raw,
    /// Back and teeth closed under negative transitivity.
    Closed,
    /// Closed blades with a fresh blade started at every tooth, nested to
    /// the given depth; the innermost teeth stay free.
    Composed(u32),
    /// Closed blade, each tooth heading a Yablo cell `y -o u -o v`, `y -o v`.
    DecoratedYC,
    /// Closed blade, each tooth `y = yp & ~yp`.
    DecoratedPair,
    /// Closed back sharing a single tooth `y = yp & ~yp`.
    SharedY,
}

impl BladeVariant {
    pub fn label(self) -> String {
        match self {
            BladeVariant::Raw => "sawblade:raw".to_string(),
            BladeVariant::Closed => "sawblade:closed".to_string(),
            BladeVariant::Composed(d) => format!("sawblade:composed:{d}"),
            BladeVariant::DecoratedYC => "sawblade:dec-yc".to_string(),
            BladeVariant::DecoratedPair => "sawblade:dec-pair".to_string(),
            BladeVariant::SharedY => "sawblade:shared-y".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SawBlade {
    variant: BladeVariant,
    seed: String,
}

pub fn make_saw_blade(variant: BladeVariant, seed: &str) -> SawBlade {
    SawBlade { variant, seed: seed.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Role {
    Back(String, u64),
    Tooth(String, u64),
    U(String, u64),
    V(String, u64),
    Yp(String, u64),
    SharedY,
    SharedYp,
}

impl SawBlade {
    pub fn variant(&self) -> BladeVariant {
        self.variant
    }

    fn closed(&self) -> bool {
        self.variant != BladeVariant::Raw
    }

    fn nesting(&self) -> u32 {
        match self.variant {
            BladeVariant::Composed(d) => d,
            _ => 0,
        }
    }

    /// Blade address path below the seed, e.g. `s0.3.1` -> `[3, 1]`.
    fn path(&self, blade: &str) -> Option<Vec<u64>> {
        let rest = blade.strip_prefix(self.seed.as_str())?;
        if rest.is_empty() {
            return Some(Vec::new());
        }
        let rest = rest.strip_prefix('.')?;
        rest.split('.').map(|p| p.parse().ok()).collect()
    }

    fn level(&self, blade: &str) -> Option<u32> {
        self.path(blade).map(|p| p.len() as u32)
    }

    fn base(&self, blade: &str) -> usize {
        self.path(blade).map_or(0, |p| p.iter().map(|i| *i as usize + 2).sum())
    }

    fn role(&self, n: &NodeId) -> Option<Role> {
        let segs: Vec<&str> = n.segments().collect();
        match segs.as_slice() {
            ["y"] if self.variant == BladeVariant::SharedY => Some(Role::SharedY),
            ["yp"] if self.variant == BladeVariant::SharedY => Some(Role::SharedYp),
            [kind, blade, k] => {
                let k: u64 = k.parse().ok()?;
                let level = self.level(blade)?;
                if level > self.nesting() {
                    return None;
                }
                match *kind {
                    "x" if k >= 1 || level == 0 => Some(Role::Back(blade.to_string(), k)),
                    "y" if self.variant != BladeVariant::SharedY => Some(Role::Tooth(blade.to_string(), k)),
                    "u" | "v" if self.variant == BladeVariant::DecoratedYC => {
                        let b = blade.to_string();
                        Some(if *kind == "u" { Role::U(b, k) } else { Role::V(b, k) })
                    }
                    "yp" if self.variant == BladeVariant::DecoratedPair => Some(Role::Yp(blade.to_string(), k)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// The node seen as a back node: `(blade, index)`.
    fn as_back(&self, n: &NodeId) -> Option<(String, u64)> {
        match self.role(n)? {
            Role::Back(b, k) => Some((b, k)),
            Role::Tooth(b, k) if self.level(&b)? < self.nesting() => Some((format!("{b}.{k}"), 0)),
            _ => None,
        }
    }

    fn back(&self, blade: &str, k: u64) -> NodeId {
        if k == 0 && blade != self.seed {
            let (parent, last) = blade.rsplit_once('.').expect("child blade address");
            return tooth(parent, last.parse().expect("numeric address"));
        }
        NodeId::from_segments(&["x", blade, &k.to_string()])
    }

    fn back_successors(&self, blade: &str, k: u64) -> Box<dyn Iterator<Item = Successor> + '_> {
        let blade = blade.to_string();
        match self.variant {
            BladeVariant::Raw => {
                let mut v = vec![Successor::neg(self.back(&blade, k + 1)), Successor::neg(tooth(&blade, k))];
                if k >= 1 {
                    v.push(Successor::neg(tooth(&blade, k - 1)));
                }
                Box::new(v.into_iter())
            }
            BladeVariant::SharedY => {
                Box::new(core::iter::once(Successor::neg(NodeId::from_segments(&["y"]))).chain(
                    (k + 1..).map(move |j| Successor::neg(NodeId::from_segments(&["x", &blade, &j.to_string()]))),
                ))
            }
            _ => Box::new((1..).flat_map(move |step: u64| {
                let mut v = vec![Successor::neg(self.back(&blade, k + step))];
                if k + step >= 2 {
                    v.push(Successor::neg(tooth(&blade, k + step - 2)));
                }
                v.into_iter()
            })),
        }
    }

    fn back_arrow(&self, blade: &str, k: u64, to: &NodeId) -> bool {
        match self.role(to) {
            Some(Role::Back(b, j)) if b == blade => {
                if self.closed() {
                    j > k
                } else {
                    j == k + 1
                }
            }
            Some(Role::Tooth(b, j)) if b == blade && self.variant != BladeVariant::SharedY => {
                if self.closed() {
                    j + 1 >= k
                } else {
                    j == k || j + 1 == k
                }
            }
            Some(Role::SharedY) => true,
            _ => false,
        }
    }

    fn knee(&self, n: &NodeId) -> Option<NodeId> {
        if let Some((b, k)) = self.as_back(n) {
            return self.closed().then(|| self.back(&b, k + 1));
        }
        match self.role(n)? {
            Role::Tooth(b, k) if self.variant == BladeVariant::DecoratedYC => Some(deco("u", &b, k)),
            _ => None,
        }
    }
}

fn tooth(blade: &str, k: u64) -> NodeId {
    NodeId::from_segments(&["y", blade, &k.to_string()])
}

fn deco(kind: &str, blade: &str, k: u64) -> NodeId {
    NodeId::from_segments(&[kind, blade, &k.to_string()])
}

fn pair_formula(var: NodeId) -> Dnf {
    Dnf::new(vec![vec![Atom::pos(var.clone()), Atom::neg(var)]])
}

impl Generator for SawBlade {
    fn name(&self) -> String {
        self.variant.label()
    }

    fn root(&self) -> NodeId {
        self.back(&self.seed.clone(), 0)
    }

    fn rank(&self, n: &NodeId) -> usize {
        match self.role(n) {
            Some(Role::Back(b, k)) => self.base(&b) + k as usize,
            Some(Role::Tooth(b, k)) => self.base(&b) + k as usize + 2,
            Some(Role::U(b, k)) | Some(Role::Yp(b, k)) => self.base(&b) + k as usize + 3,
            Some(Role::V(b, k)) => self.base(&b) + k as usize + 4,
            Some(Role::SharedY) => 1,
            Some(Role::SharedYp) => 2,
            None => 0,
        }
    }

    fn successors<'a>(&'a self, n: &NodeId) -> SuccessorStream<'a> {
        if let Some((b, k)) = self.as_back(n) {
            return self.back_successors(&b, k);
        }
        match self.role(n) {
            Some(Role::Tooth(b, k)) => match self.variant {
                BladeVariant::DecoratedYC => {
                    Box::new(vec![Successor::neg(deco("u", &b, k)), Successor::neg(deco("v", &b, k))].into_iter())
                }
                BladeVariant::DecoratedPair => Box::new(core::iter::once(Successor::neg(deco("yp", &b, k)))),
                _ => Box::new(core::iter::empty()),
            },
            Some(Role::U(b, k)) => Box::new(core::iter::once(Successor::neg(deco("v", &b, k)))),
            Some(Role::SharedY) => Box::new(core::iter::once(Successor::neg(NodeId::from_segments(&["yp"])))),
            _ => Box::new(core::iter::empty()),
        }
    }

    fn arrow(&self, from: &NodeId, to: &NodeId) -> Option<(Sign, GroupKey)> {
        let ok = if let Some((b, k)) = self.as_back(from) {
            self.back_arrow(&b, k, to)
        } else {
            match (self.role(from)?, self.role(to)?) {
                (Role::Tooth(b, k), Role::U(c, j)) | (Role::Tooth(b, k), Role::V(c, j)) => b == c && k == j,
                (Role::Tooth(b, k), Role::Yp(c, j)) => b == c && k == j,
                (Role::U(b, k), Role::V(c, j)) => b == c && k == j,
                (Role::SharedY, Role::SharedYp) => true,
                _ => false,
            }
        };
        ok.then_some((Sign::Neg, 0))
    }

    fn formula(&self, n: &NodeId) -> FormulaRule {
        if self.as_back(n).is_some() {
            return FormulaRule::Conjunction;
        }
        match self.role(n) {
            Some(Role::Tooth(b, k)) => match self.variant {
                BladeVariant::DecoratedYC => FormulaRule::Conjunction,
                BladeVariant::DecoratedPair => FormulaRule::Explicit(pair_formula(deco("yp", &b, k))),
                _ => FormulaRule::Sink,
            },
            Some(Role::U(..)) => FormulaRule::Conjunction,
            Some(Role::SharedY) => FormulaRule::Explicit(pair_formula(NodeId::from_segments(&["yp"]))),
            _ => FormulaRule::Sink,
        }
    }

    fn knee_hint(&self, n: &NodeId, _: GroupKey) -> Option<NodeId> {
        self.knee(n)
    }

    fn transitive_hint(&self, n: &NodeId) -> Option<NodeId> {
        self.knee(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::id;

    fn succ(g: &SawBlade, n: &str, k: usize) -> Vec<NodeId> {
        g.successors(&id(n)).take(k).map(|s| s.to).collect()
    }

    #[test]
    fn raw_blade_arrows() {
        let g = make_saw_blade(BladeVariant::Raw, "s0");
        assert_eq!(succ(&g, "x:s0:0", 10), vec![id("x:s0:1"), id("y:s0:0")]);
        assert_eq!(succ(&g, "x:s0:2", 10), vec![id("x:s0:3"), id("y:s0:2"), id("y:s0:1")]);
        assert!(g.arrow(&id("x:s0:1"), &id("y:s0:0")).is_some());
        assert!(g.arrow(&id("x:s0:0"), &id("x:s0:2")).is_none());
        assert_eq!(g.formula(&id("y:s0:0")), FormulaRule::Sink);
    }

    #[test]
    fn closed_blade_streams_follow_rank() {
        let g = make_saw_blade(BladeVariant::Closed, "s0");
        let s = succ(&g, "x:s0:1", 5);
        assert_eq!(s, vec![id("x:s0:2"), id("y:s0:0"), id("x:s0:3"), id("y:s0:1"), id("x:s0:4")]);
        for t in &s {
            assert!(g.arrow(&id("x:s0:1"), t).is_some(), "{t}");
        }
        assert!(g.arrow(&id("x:s0:2"), &id("y:s0:0")).is_none());
    }

    #[test]
    fn composed_teeth_start_blades() {
        let g = make_saw_blade(BladeVariant::Composed(1), "s0");
        let s = succ(&g, "y:s0:2", 3);
        assert_eq!(s, vec![id("x:s0.2:1"), id("x:s0.2:2"), id("y:s0.2:0")]);
        assert_eq!(g.rank(&id("y:s0:2")), 4);
        assert_eq!(g.rank(&id("x:s0.2:1")), 5);
        assert_eq!(g.formula(&id("y:s0.2:0")), FormulaRule::Sink);
        assert!(g.role(&id("x:s0.2.0:1")).is_none());
    }

    #[test]
    fn decorations() {
        let g = make_saw_blade(BladeVariant::DecoratedYC, "s0");
        assert_eq!(succ(&g, "y:s0:3", 5), vec![id("u:s0:3"), id("v:s0:3")]);
        assert_eq!(g.knee_hint(&id("y:s0:3"), 0), Some(id("u:s0:3")));
        let p = make_saw_blade(BladeVariant::DecoratedPair, "s0");
        assert_eq!(p.formula(&id("y:s0:1")), FormulaRule::Explicit(pair_formula(id("yp:s0:1"))));
        let s = make_saw_blade(BladeVariant::SharedY, "s0");
        assert_eq!(succ(&s, "x:s0:0", 3), vec![id("y"), id("x:s0:1"), id("x:s0:2")]);
    }
}
