//! A small DPLL solver: two watched literals, unit propagation,
//! chronological backtracking, fixed decision order, `false` first.

use alloc::vec;
use alloc::vec::Vec;

/// Variable `v` positive is `2v`, negative `2v + 1`.
pub type Lit = u32;

pub fn lit(var: usize, positive: bool) -> Lit {
    (var as u32) << 1 | (!positive) as u32
}

fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

fn neg(l: Lit) -> Lit {
    l ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat(Vec<bool>),
    Unsat,
    Unknown,
}

pub struct Dpll {
    nvars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    units: Vec<Lit>,
    empty: bool,
    /// `0` unassigned, `1` true, `2` false.
    value: Vec<u8>,
    trail: Vec<Lit>,
    levels: Vec<usize>,
    flipped: Vec<bool>,
    qhead: usize,
    pub conflicts: u64,
}

impl Dpll {
    pub fn new(nvars: usize) -> Self {
        Dpll {
            nvars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * nvars],
            units: Vec::new(),
            empty: false,
            value: vec![0; nvars],
            trail: Vec::new(),
            levels: Vec::new(),
            flipped: Vec::new(),
            qhead: 0,
            conflicts: 0,
        }
    }

    pub fn add_clause(&mut self, mut c: Vec<Lit>) {
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        match c.len() {
            0 => self.empty = true,
            1 => self.units.push(c[0]),
            _ => {
                let i = self.clauses.len();
                self.watches[c[0] as usize].push(i);
                self.watches[c[1] as usize].push(i);
                self.clauses.push(c);
            }
        }
    }

    fn lit_value(&self, l: Lit) -> u8 {
        match self.value[var_of(l)] {
            0 => 0,
            v => {
                let pos = v == 1;
                if (l & 1 == 0) == pos {
                    1
                } else {
                    2
                }
            }
        }
    }

    fn assign(&mut self, l: Lit) {
        self.value[var_of(l)] = if l & 1 == 0 { 1 } else { 2 };
        self.trail.push(l);
    }

    /// Returns `false` on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let falsified = neg(self.trail[self.qhead]);
            self.qhead += 1;
            let mut ws = core::mem::take(&mut self.watches[falsified as usize]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let other = c[0];
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let v = match self.value[var_of(l)] {
                        0 => 0,
                        x => {
                            if (l & 1 == 0) == (x == 1) {
                                1
                            } else {
                                2
                            }
                        }
                    };
                    if v != 2 {
                        c.swap(1, k);
                        let nw = c[1];
                        self.watches[nw as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    ws.swap_remove(i);
                    continue;
                }
                match self.lit_value(other) {
                    1 => {}
                    0 => self.assign(other),
                    _ => {
                        ok = false;
                        break;
                    }
                }
                i += 1;
            }
            let rest = core::mem::take(&mut self.watches[falsified as usize]);
            ws.extend(rest);
            self.watches[falsified as usize] = ws;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, pos: usize) {
        while self.trail.len() > pos {
            let l = self.trail.pop().expect("nonempty");
            self.value[var_of(l)] = 0;
        }
        self.qhead = pos;
    }

    /// Decides variables in index order. The first model found is the
    /// lexicographically least one with `false < true`.
    pub fn solve(&mut self, budget: u64) -> Outcome {
        if self.empty {
            return Outcome::Unsat;
        }
        for l in core::mem::take(&mut self.units) {
            match self.lit_value(l) {
                0 => self.assign(l),
                1 => {}
                _ => return Outcome::Unsat,
            }
        }
        let mut next_var = 0;
        loop {
            if !self.propagate() {
                self.conflicts += 1;
                if self.conflicts > budget {
                    return Outcome::Unknown;
                }
                loop {
                    let Some(pos) = self.levels.pop() else {
                        return Outcome::Unsat;
                    };
                    let was_flipped = self.flipped.pop().expect("parallel stacks");
                    let dec = self.trail[pos];
                    self.undo_to(pos);
                    next_var = next_var.min(var_of(dec));
                    if !was_flipped {
                        self.levels.push(pos);
                        self.flipped.push(true);
                        self.assign(neg(dec));
                        break;
                    }
                }
                continue;
            }
            while next_var < self.nvars && self.value[next_var] != 0 {
                next_var += 1;
            }
            if next_var == self.nvars {
                return Outcome::Sat(self.value.iter().map(|v| *v == 1).collect());
            }
            self.levels.push(self.trail.len());
            self.flipped.push(false);
            self.assign(lit(next_var, false));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_instances() {
        let mut s = Dpll::new(2);
        s.add_clause(vec![lit(0, true), lit(1, true)]);
        assert_eq!(s.solve(100), Outcome::Sat(vec![false, true]));
        let mut s = Dpll::new(1);
        s.add_clause(vec![lit(0, true)]);
        s.add_clause(vec![lit(0, false)]);
        assert_eq!(s.solve(100), Outcome::Unsat);
        let mut s = Dpll::new(1);
        s.add_clause(vec![]);
        assert_eq!(s.solve(100), Outcome::Unsat);
    }

    #[test]
    fn pigeonhole_three_into_two() {
        let v = |p: usize, h: usize| p * 2 + h;
        let mut s = Dpll::new(6);
        for p in 0..3 {
            s.add_clause(vec![lit(v(p, 0), true), lit(v(p, 1), true)]);
        }
        for h in 0..2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    s.add_clause(vec![lit(v(a, h), false), lit(v(b, h), false)]);
                }
            }
        }
        assert_eq!(s.solve(1000), Outcome::Unsat);
    }

    #[test]
    fn budget_gives_unknown() {
        let v = |p: usize, h: usize| p * 4 + h;
        let mut s = Dpll::new(20);
        for p in 0..5 {
            s.add_clause((0..4).map(|h| lit(v(p, h), true)).collect());
        }
        for h in 0..4 {
            for a in 0..5 {
                for b in a + 1..5 {
                    s.add_clause(vec![lit(v(a, h), false), lit(v(b, h), false)]);
                }
            }
        }
        assert_eq!(s.solve(3), Outcome::Unknown);
    }
}
