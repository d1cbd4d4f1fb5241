//! Least fixed points of monotone polynomial equation systems over scalars.
//!
//! Boolean and tropical iterations converge on their own and use
//! Gauss–Seidel sweeps. Arctic and counting sums may diverge; there we run
//! Jacobi rounds and, whenever an unknown still grows after `N + 1` rounds
//! (`N` unknowns not yet settled), a derivation tree of that height repeats a
//! variable along some path, so pumping makes the value infinite. Such
//! unknowns are pinned to the top element and the iteration restarts.

use std::ops::Range;

use crate::semiring::{Ext, Semiring};

/// A system `X = F(X)` whose right-hand sides are sums of products.
pub(crate) trait Equations {
    fn blocks(&self) -> usize;
    fn block_range(&self, b: usize) -> Range<usize>;
    /// Writes `F(vals)` restricted to block `b` into `out`.
    fn eval_block(&self, b: usize, vals: &[Ext], out: &mut [Ext]);

    fn unknowns(&self) -> usize {
        (0..self.blocks()).map(|b| self.block_range(b).end).max().unwrap_or(0)
    }
}

/// Returns the least solution, or the number of rounds spent if `max_rounds`
/// ran out first.
pub(crate) fn least_solution(
    sys: &impl Equations,
    sr: Semiring,
    max_rounds: usize,
) -> std::result::Result<Vec<Ext>, usize> {
    match sr {
        Semiring::Boolean | Semiring::Tropical => gauss_seidel(sys, sr, max_rounds),
        Semiring::Arctic | Semiring::Counting => jacobi_with_pumping(sys, sr, max_rounds),
    }
}

fn gauss_seidel(sys: &impl Equations, sr: Semiring, max_rounds: usize) -> std::result::Result<Vec<Ext>, usize> {
    let n = sys.unknowns();
    let mut vals = vec![sr.zero(); n];
    let mut buf = Vec::new();
    for round in 1..=max_rounds {
        let mut changed = false;
        for b in 0..sys.blocks() {
            let r = sys.block_range(b);
            buf.clear();
            buf.resize(r.len(), sr.zero());
            sys.eval_block(b, &vals, &mut buf);
            if vals[r.clone()] != buf[..] {
                vals[r].copy_from_slice(&buf);
                changed = true;
            }
        }
        if !changed {
            return Ok(vals);
        }
        if round == max_rounds {
            break;
        }
    }
    Err(max_rounds)
}

fn jacobi_with_pumping(
    sys: &impl Equations,
    sr: Semiring,
    max_rounds: usize,
) -> std::result::Result<Vec<Ext>, usize> {
    let n = sys.unknowns();
    let top = sr.top();
    let mut pinned = vec![false; n];
    let mut rounds = 0;
    loop {
        let free = pinned.iter().filter(|p| !**p).count();
        let mut vals: Vec<Ext> = pinned.iter().map(|&p| if p { top } else { sr.zero() }).collect();
        let mut next = vals.clone();
        let mut restarted = false;
        for r in 1..=free + 1 {
            rounds += 1;
            if rounds > max_rounds {
                return Err(max_rounds);
            }
            for b in 0..sys.blocks() {
                let range = sys.block_range(b);
                sys.eval_block(b, &vals, &mut next[range]);
            }
            for (x, &p) in next.iter_mut().zip(&pinned) {
                if p {
                    *x = top;
                }
            }
            if next == vals {
                return Ok(vals);
            }
            if r == free + 1 {
                for i in 0..n {
                    if next[i] != vals[i] {
                        pinned[i] = true;
                    }
                }
                restarted = true;
                break;
            }
            std::mem::swap(&mut vals, &mut next);
        }
        if !restarted {
            return Ok(vals);
        }
    }
}

/// Polynomial equations `X_i = Σ c · Π X_j` over scalars.
pub(crate) struct ScalarPolys {
    pub rules: Vec<Vec<(Ext, Vec<usize>)>>,
    pub sr: Semiring,
}

impl Equations for ScalarPolys {
    fn blocks(&self) -> usize {
        self.rules.len()
    }

    fn block_range(&self, b: usize) -> Range<usize> {
        b..b + 1
    }

    fn eval_block(&self, b: usize, vals: &[Ext], out: &mut [Ext]) {
        let sr = self.sr;
        out[0] = sr.sum(
            self.rules[b]
                .iter()
                .map(|(c, vs)| vs.iter().fold(*c, |acc, &v| sr.mul(acc, vals[v]))),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(sr: Semiring, rules: Vec<Vec<(Ext, Vec<usize>)>>) -> Vec<Ext> {
        least_solution(&ScalarPolys { rules, sr }, sr, 10_000).unwrap()
    }

    #[test]
    fn counting_divergence_is_detected() {
        let c = Semiring::Counting;
        // x = x + 1
        assert_eq!(solve(c, vec![vec![(Ext::ONE, vec![0]), (Ext::ONE, vec![])]]), vec![Ext::Inf]);
        // x = x·x + 1 (Catalan numbers)
        assert_eq!(solve(c, vec![vec![(Ext::ONE, vec![0, 0]), (Ext::ONE, vec![])]]), vec![Ext::Inf]);
        // x = 2y, y = 3, z = z·x
        let r = solve(
            c,
            vec![vec![(Ext::Fin(2), vec![1])], vec![(Ext::Fin(3), vec![])], vec![(Ext::ONE, vec![2, 0])]],
        );
        assert_eq!(r, vec![Ext::Fin(6), Ext::Fin(3), Ext::ZERO]);
    }

    #[test]
    fn arctic_positive_cycles_diverge() {
        let a = Semiring::Arctic;
        // x = 1·y + 0, y = x
        let r = solve(a, vec![vec![(Ext::ONE, vec![1]), (Ext::ZERO, vec![])], vec![(Ext::ZERO, vec![0])]]);
        assert_eq!(r, vec![Ext::Inf, Ext::Inf]);
        // x = 0·x + 2
        assert_eq!(solve(a, vec![vec![(Ext::ZERO, vec![0]), (Ext::Fin(2), vec![])]]), vec![Ext::Fin(2)]);
    }

    #[test]
    fn tropical_converges() {
        let t = Semiring::Tropical;
        // x = 1 + x·x, y = x + 4
        let r = solve(t, vec![vec![(Ext::ONE, vec![]), (Ext::ZERO, vec![0, 0])], vec![(Ext::Fin(4), vec![0])]]);
        assert_eq!(r, vec![Ext::ONE, Ext::Fin(5)]);
    }
}
