use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fixpoint::{least_solution, ScalarPolys};
use crate::semiring::Ext;
use crate::series::{substitute, Letter, Sym, TruncatedSeries};

use super::AlgebraicSystem;

impl AlgebraicSystem {
    /// Kleene iteration `σ⁽⁰⁾ = 0, σ⁽ⁱ⁺¹⁾ = p(σ⁽ⁱ⁾)` truncated at `max_len`,
    /// stopped once one full round leaves every coefficient unchanged.
    pub fn least_solution_finite(&self, max_len: usize, max_iter: usize) -> Result<Vec<TruncatedSeries>> {
        let sr = self.semiring;
        let mut cur = vec![TruncatedSeries::zero(sr, max_len); self.len()];
        for _ in 0..max_iter {
            let next = self
                .rhs
                .iter()
                .map(|p| substitute(sr, p, &cur, max_len))
                .collect::<Result<Vec<_>>>()?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::NotStabilized(max_iter))
    }

    /// Number of Kleene rounds until the truncated iteration stabilizes.
    pub fn kleene_rounds(&self, max_len: usize, max_iter: usize) -> Result<usize> {
        let sr = self.semiring;
        let mut cur = vec![TruncatedSeries::zero(sr, max_len); self.len()];
        for round in 0..max_iter {
            let next = self
                .rhs
                .iter()
                .map(|p| substitute(sr, p, &cur, max_len))
                .collect::<Result<Vec<_>>>()?;
            if next == cur {
                return Ok(round);
            }
            cur = next;
        }
        Err(Error::NotStabilized(max_iter))
    }

    /// Brute-force coefficient of `w` in component `comp`, summing the
    /// weights of all leftmost derivations. Requires GNF.
    pub fn oracle_coeff_gnf(&self, comp: usize, w: &[Letter]) -> Result<Ext> {
        if !self.is_gnf() {
            return Err(Error::NotGnf("oracle needs a GNF system".into()));
        }
        if comp >= self.len() {
            return Err(Error::IndexOutOfRange { index: comp, limit: self.len() });
        }
        let mut memo = HashMap::new();
        Ok(self.derive(&[comp as u32], 0, w, &mut memo))
    }

    fn derive(&self, form: &[u32], pos: usize, w: &[Letter], memo: &mut HashMap<(Vec<u32>, usize), Ext>) -> Ext {
        let sr = self.semiring;
        let Some((&head, rest)) = form.split_first() else {
            return if pos == w.len() { sr.one() } else { sr.zero() };
        };
        let key = (form.to_vec(), pos);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut acc = sr.zero();
        for m in self.rhs[head as usize].terms() {
            match m.word.split_first() {
                None => {
                    let r = self.derive(rest, pos, w, memo);
                    acc = sr.add(acc, sr.mul(m.coeff, r));
                }
                Some((&Sym::T(a), tail)) => {
                    if pos < w.len() && w[pos] == a {
                        let mut next: Vec<u32> = tail.iter().map(|s| s.var().unwrap() as u32).collect();
                        next.extend_from_slice(rest);
                        let r = self.derive(&next, pos + 1, w, memo);
                        acc = sr.add(acc, sr.mul(m.coeff, r));
                    }
                }
                Some(_) => unreachable!("checked GNF"),
            }
        }
        memo.insert(key, acc);
        acc
    }

    /// Exact coefficients of the empty word in the least solution.
    pub fn eps_coefficients(&self, max_rounds: usize) -> Result<Vec<Ext>> {
        let sr = self.semiring;
        let rules = self
            .rhs
            .iter()
            .map(|p| {
                p.terms()
                    .iter()
                    .filter(|m| m.word.iter().all(|s| s.var().is_some()))
                    .map(|m| (m.coeff, m.vars().collect()))
                    .collect()
            })
            .collect();
        least_solution(&ScalarPolys { rules, sr }, sr, max_rounds).map_err(Error::NotStabilized)
    }

    /// Which components of the least solution are nonzero.
    pub fn productive(&self) -> Vec<bool> {
        let sr = self.semiring;
        let mut prod = vec![false; self.len()];
        loop {
            let mut changed = false;
            for (i, p) in self.rhs.iter().enumerate() {
                if !prod[i] && p.terms().iter().any(|m| !sr.is_zero(m.coeff) && m.vars().all(|v| prod[v])) {
                    prod[i] = true;
                    changed = true;
                }
            }
            if !changed {
                return prod;
            }
        }
    }

    /// Variables reachable from `roots` through right-hand sides.
    pub fn reachable(&self, roots: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = roots.into_iter().collect();
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(self.rhs[v].vars().filter(|&u| !seen[u]));
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use crate::semiring::{Ext, Semiring};
    use crate::series::{t, v, Alphabet, Polynomial, Sym};
    use crate::system::AlgebraicSystem;

    fn sys(sr: Semiring, al: &str, rhs: Vec<Vec<(u64, Vec<Sym>)>>) -> AlgebraicSystem {
        let vars = (1..=rhs.len()).map(|i| format!("x{i}")).collect();
        let rhs = rhs
            .into_iter()
            .map(|r| Polynomial::from_terms(sr, r.into_iter().map(|(c, w)| (Ext::Fin(c), w))))
            .collect();
        AlgebraicSystem::new(sr, Alphabet::chars(al), vars, rhs).unwrap()
    }

    #[test]
    fn kleene_examples() {
        let tr = Semiring::Tropical;
        let (a, b) = (t(0), t(1));
        let s = sys(tr, "ab", vec![vec![(1, vec![a, v(0), b]), (1, vec![a, b])]]);
        let sol = s.least_solution_finite(6, 100).unwrap();
        assert_eq!(
            sol[0].support(),
            vec![(vec![0, 1], Ext::Fin(1)), (vec![0, 0, 1, 1], Ext::Fin(2)), (vec![0, 0, 0, 1, 1, 1], Ext::Fin(3))]
        );

        let bo = Semiring::Boolean;
        let s = sys(bo, "ab", vec![vec![(1, vec![a, v(0), b]), (1, vec![])]]);
        let sol = s.least_solution_finite(4, 100).unwrap();
        assert_eq!(sol[0].support(), vec![(vec![], Ext::ONE), (vec![0, 1], Ext::ONE), (vec![0, 0, 1, 1], Ext::ONE)]);

        let s = sys(bo, "a", vec![vec![(1, vec![a])]]);
        assert_eq!(s.least_solution_finite(5, 10).unwrap()[0].support(), vec![(vec![0], Ext::ONE)]);
    }

    #[test]
    fn non_strict_systems_report_non_stabilization() {
        let c = Semiring::Counting;
        let s = sys(c, "a", vec![vec![(1, vec![v(0)]), (1, vec![t(0)])]]);
        assert!(matches!(s.least_solution_finite(2, 50), Err(crate::Error::NotStabilized(50))));
    }

    #[test]
    fn oracle_examples() {
        let tr = Semiring::Tropical;
        let (a, b) = (t(0), t(1));
        // x1 = 1 a x2 + 1 a x1 x2, x2 = b
        let s = sys(tr, "ab", vec![vec![(1, vec![a, v(1)]), (1, vec![a, v(0), v(1)])], vec![(0, vec![b])]]);
        assert_eq!(s.oracle_coeff_gnf(0, &[0, 1]).unwrap(), Ext::Fin(1));
        assert_eq!(s.oracle_coeff_gnf(0, &[1, 0]).unwrap(), Ext::Inf);
        assert_eq!(s.oracle_coeff_gnf(0, &[0, 0, 1, 1]).unwrap(), Ext::Fin(2));
        let bad = sys(tr, "ab", vec![vec![(1, vec![v(0), a])]]);
        assert!(bad.oracle_coeff_gnf(0, &[0]).is_err());
    }

    #[test]
    fn eps_coefficients_of_algebraic_example() {
        let bo = Semiring::Boolean;
        let (a, b) = (t(0), t(1));
        let s = sys(bo, "ab", vec![vec![(1, vec![v(1), v(0)]), (1, vec![])], vec![(1, vec![a, v(1), b]), (1, vec![])]]);
        assert_eq!(s.eps_coefficients(100).unwrap(), vec![Ext::ONE, Ext::ONE]);
        let c = Semiring::Counting;
        let s = sys(c, "ab", vec![vec![(1, vec![v(1), v(0)]), (1, vec![])], vec![(1, vec![a, v(1), b]), (1, vec![])]]);
        assert_eq!(s.eps_coefficients(100).unwrap(), vec![Ext::Inf, Ext::ONE]);
    }
}
