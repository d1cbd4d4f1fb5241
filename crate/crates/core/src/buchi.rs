//! ω-values of finite weighted graphs with Büchi acceptance.
//!
//! A graph has consuming steps and empty (ε) steps. The value at a node is
//! the sum over infinite paths that take infinitely many consuming steps and
//! enter an accepting node (or cross a flagged step) infinitely often, of the
//! infinite product of edge weights. Paths ending in an ε-cycle contribute
//! nothing since `ε^ω = 0`.
//!
//! ε-steps are folded into the consuming steps that follow them, tracking in
//! one bit whether an accepting node was entered on the way. Node acceptance
//! of the folded graph is then carried by a copy of every node flagged with
//! that bit, and the value is read off `M^{ω,t}` with the flagged copies
//! first.

use crate::matrix::Matrix;
use crate::semiring::{Ext, Semiring};

pub(crate) struct BuchiGraph {
    pub sr: Semiring,
    pub accepting: Vec<bool>,
    pub eps: Vec<(usize, usize, Ext)>,
    /// `(from, to, weight, flag)`; a set flag counts as an accepting visit.
    pub steps: Vec<(usize, usize, Ext, bool)>,
}

impl BuchiGraph {
    pub fn new(sr: Semiring, accepting: Vec<bool>) -> Self {
        BuchiGraph { sr, accepting, eps: Vec::new(), steps: Vec::new() }
    }

    pub fn add_eps(&mut self, from: usize, to: usize, w: Ext) {
        if !self.sr.is_zero(w) {
            self.eps.push((from, to, w));
        }
    }

    pub fn add_step(&mut self, from: usize, to: usize, w: Ext, flag: bool) {
        if !self.sr.is_zero(w) {
            self.steps.push((from, to, w, flag));
        }
    }

    /// ω-values of the given start nodes.
    pub fn omega_from(&self, starts: &[usize]) -> Vec<Ext> {
        let sr = self.sr;
        let n = self.accepting.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(f, t, _) in &self.eps {
            succ[f].push(t);
        }
        for &(f, t, _, _) in &self.steps {
            succ[f].push(t);
        }
        let mut local = vec![usize::MAX; n];
        let mut order = Vec::new();
        for &s in starts {
            if local[s] == usize::MAX {
                local[s] = order.len();
                order.push(s);
            }
        }
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &succ[v] {
                if local[w] == usize::MAX {
                    local[w] = order.len();
                    order.push(w);
                }
            }
        }
        let r = order.len();
        let acc = |v: usize| self.accepting[order[v]];

        // ε-closure with the accepting bit: index (v, b) = 2v + b.
        let closure = if self.eps.iter().any(|&(f, _, _)| local[f] != usize::MAX) {
            let mut e = Matrix::zero(sr, 2 * r, 2 * r);
            for &(f, t, w) in &self.eps {
                let (f, t) = (local[f], local[t]);
                if f == usize::MAX {
                    continue;
                }
                for b in 0..2 {
                    let b2 = usize::from(b == 1 || acc(t));
                    let (i, j) = (2 * f + b, 2 * t + b2);
                    e.set(i, j, sr.add(e.get(i, j), w));
                }
            }
            Some(e.star().expect("square"))
        } else {
            None
        };

        let mut out_steps: Vec<Vec<(usize, Ext, bool)>> = vec![Vec::new(); r];
        for &(f, t, w, flag) in &self.steps {
            if local[f] != usize::MAX {
                out_steps[local[f]].push((local[t], w, flag));
            }
        }

        // Folded graph: (v, 1) at index v, (v, 0) at index r + v.
        let mut g = Matrix::zero(sr, 2 * r, 2 * r);
        let mut add = |from: usize, to: usize, w: Ext| {
            for row in [from, r + from] {
                g.set(row, to, sr.add(g.get(row, to), w));
            }
        };
        for v in 0..r {
            let reach: Vec<(usize, bool, Ext)> = match &closure {
                Some(e) => (0..r)
                    .flat_map(|u| (0..2).map(move |b| (u, b)))
                    .filter_map(|(u, b)| {
                        let x = e.get(2 * v, 2 * u + b);
                        (!sr.is_zero(x)).then_some((u, b == 1, x))
                    })
                    .collect(),
                None => vec![(v, false, sr.one())],
            };
            for (u, b, x) in reach {
                for &(t, w, flag) in &out_steps[u] {
                    let hit = b || flag || acc(t);
                    let col = if hit { t } else { r + t };
                    add(v, col, sr.mul(x, w));
                }
            }
        }
        let vals = g.omega_t(r).expect("in range").entries;
        starts.iter().map(|&s| vals[r + local[s]]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_cycles_do_not_count() {
        let b = Semiring::Boolean;
        let mut g = BuchiGraph::new(b, vec![true]);
        g.add_eps(0, 0, Ext::ONE);
        assert_eq!(g.omega_from(&[0]), vec![Ext::ZERO]);
        g.add_step(0, 0, Ext::ONE, false);
        assert_eq!(g.omega_from(&[0]), vec![Ext::ONE]);
    }

    #[test]
    fn acceptance_through_eps_visits() {
        // 0 -step-> 1 -eps-> 2 (accepting) -eps-> 0, node 0 not accepting
        let t = Semiring::Tropical;
        let mut g = BuchiGraph::new(t, vec![false, false, true]);
        g.add_step(0, 1, Ext::ZERO, false);
        g.add_eps(1, 2, Ext::ZERO);
        g.add_eps(2, 0, Ext::ZERO);
        assert_eq!(g.omega_from(&[0, 1]), vec![Ext::ZERO, Ext::ZERO]);
        let mut g = BuchiGraph::new(t, vec![false, false, false]);
        g.add_step(0, 1, Ext::ZERO, false);
        g.add_eps(1, 0, Ext::ZERO);
        assert_eq!(g.omega_from(&[0]), vec![Ext::Inf]);
        g.steps[0].3 = true;
        assert_eq!(g.omega_from(&[0]), vec![Ext::ZERO]);
    }

    #[test]
    fn counting_paths_are_not_double_counted() {
        // two parallel accepting loops: 2^ω = ∞ in counting, one loop gives 1
        let c = Semiring::Counting;
        let mut g = BuchiGraph::new(c, vec![true]);
        g.add_step(0, 0, Ext::ONE, false);
        assert_eq!(g.omega_from(&[0]), vec![Ext::ONE]);
        g.add_step(0, 0, Ext::ONE, true);
        assert_eq!(g.omega_from(&[0]), vec![Ext::Inf]);
    }
}
