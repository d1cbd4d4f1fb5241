//! Greibach normal form for algebraic systems over finite words.
//!
//! The empty-word part of the least solution is split off exactly, unit
//! monomials are eliminated with a matrix star, the remaining system is
//! brought into Chomsky shape and then converted with the Rosenkrantz
//! construction `X = K H*`, `Z = H + H Z`.

use std::collections::{HashMap, HashSet};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::semiring::{Ext, Semiring};
use crate::series::{t, v, Letter, Polynomial, Sym};
use crate::system::{AlgebraicSystem, EvalCaps};

use super::fresh_name;

/// A proper GNF system together with the way the input components map into it:
/// `σ_i = eps[i] ε + σ'_{map[i]}`, where a missing entry stands for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGnf {
    pub system: AlgebraicSystem,
    pub eps: Vec<Ext>,
    pub map: Vec<Option<usize>>,
    pub skipped: bool,
}

impl FiniteGnf {
    /// `σ_i` as a polynomial over the output variables.
    pub fn component(&self, i: usize) -> Polynomial {
        let sr = self.system.semiring;
        let mut terms = vec![(self.eps[i], Vec::new())];
        if let Some(j) = self.map[i] {
            terms.push((sr.one(), vec![v(j)]));
        }
        Polynomial::from_terms(sr, terms)
    }
}

/// Converts `sys` into a proper quadratic GNF system.
pub fn finite_gnf(sys: &AlgebraicSystem, caps: &EvalCaps) -> Result<FiniteGnf> {
    let sr = sys.semiring;
    if sys.is_proper_gnf() {
        return Ok(FiniteGnf {
            system: sys.clone(),
            eps: vec![sr.zero(); sys.len()],
            map: (0..sys.len()).map(Some).collect(),
            skipped: true,
        });
    }
    let (proper, eps) = proper_part(sys, caps)?;
    let chained = eliminate_chains(&proper)?;
    let cnf = chomsky(&chained);
    let (system, x_of) = rosenkrantz(&cnf);
    let roots: Vec<usize> = (0..sys.len()).map(|i| x_of[i]).collect();
    let (system, remap) = trim(&system, &roots);
    let map = roots.iter().map(|&r| remap[r]).collect();
    Ok(FiniteGnf { system, eps, map, skipped: false })
}

/// The system `x' = q(x')` for the ε-free parts, and the ε-coefficients.
pub fn proper_part(sys: &AlgebraicSystem, caps: &EvalCaps) -> Result<(AlgebraicSystem, Vec<Ext>)> {
    let sr = sys.semiring;
    let c = sys.eps_coefficients(caps.max_rounds)?;
    let rhs = sys
        .rhs
        .iter()
        .map(|p| {
            let mut terms = Vec::new();
            for m in p.terms() {
                expand_eps(sr, &c, &m.word, m.coeff, Vec::new(), &mut terms);
            }
            terms.retain(|(_, w): &(Ext, Vec<Sym>)| !w.is_empty());
            Polynomial::from_terms(sr, terms)
        })
        .collect();
    let out = AlgebraicSystem { semiring: sr, alphabet: sys.alphabet.clone(), vars: sys.vars.clone(), rhs };
    Ok((out, c))
}

/// Every way of replacing variable occurrences by `c_v ε` or keeping them.
fn expand_eps(sr: Semiring, c: &[Ext], rest: &[Sym], coeff: Ext, prefix: Vec<Sym>, out: &mut Vec<(Ext, Vec<Sym>)>) {
    let Some((&s, tail)) = rest.split_first() else {
        out.push((coeff, prefix));
        return;
    };
    if let Sym::V(x) = s {
        let cx = c[x as usize];
        if !sr.is_zero(cx) {
            expand_eps(sr, c, tail, sr.mul(coeff, cx), prefix.clone(), out);
        }
    }
    let mut kept = prefix;
    kept.push(s);
    expand_eps(sr, c, tail, coeff, kept, out);
}

/// `x = C x + r(x)` becomes `x = C* r(x)`.
fn eliminate_chains(sys: &AlgebraicSystem) -> Result<AlgebraicSystem> {
    let sr = sys.semiring;
    let n = sys.len();
    let mut c = Matrix::zero(sr, n, n);
    let mut rest = Vec::with_capacity(n);
    for (i, p) in sys.rhs.iter().enumerate() {
        let mut r = Vec::new();
        for m in p.terms() {
            match m.word[..] {
                [Sym::V(j)] => c.set(i, j as usize, sr.add(c.get(i, j as usize), m.coeff)),
                _ => r.push((m.coeff, m.word.clone())),
            }
        }
        rest.push(Polynomial::from_terms(sr, r));
    }
    if (0..n).all(|i| (0..n).all(|j| sr.is_zero(c.get(i, j)))) {
        return Ok(sys.clone());
    }
    let cs = c.star()?;
    let rhs = (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero();
            for (j, r) in rest.iter().enumerate() {
                let w = cs.get(i, j);
                if !sr.is_zero(w) {
                    acc = acc.add(sr, &r.scale(sr, w));
                }
            }
            acc
        })
        .collect();
    Ok(AlgebraicSystem { rhs, ..sys.clone() })
}

/// Rules `A → c a` and `A → c B D` only; the input variables keep their indices.
fn chomsky(sys: &AlgebraicSystem) -> AlgebraicSystem {
    let sr = sys.semiring;
    let mut used: HashSet<String> = sys.vars.iter().cloned().collect();
    used.extend(sys.alphabet.terminals.iter().cloned());
    let mut vars = sys.vars.clone();
    let mut rhs: Vec<Vec<(Ext, Vec<Sym>)>> = vec![Vec::new(); sys.len()];
    let mut term_var: HashMap<Letter, usize> = HashMap::new();
    let mut suffix_var: HashMap<Vec<Sym>, usize> = HashMap::new();

    let mut new_var = |vars: &mut Vec<String>, rhs: &mut Vec<Vec<(Ext, Vec<Sym>)>>, base: String| {
        vars.push(fresh_name(&mut used, base));
        rhs.push(Vec::new());
        vars.len() - 1
    };

    for (i, p) in sys.rhs.iter().enumerate() {
        for m in p.terms() {
            if m.word.len() == 1 {
                rhs[i].push((m.coeff, m.word.clone()));
                continue;
            }
            let mut syms = Vec::with_capacity(m.word.len());
            for &s in &m.word {
                syms.push(match s {
                    Sym::T(a) => {
                        let tv = match term_var.get(&a) {
                            Some(&tv) => tv,
                            None => {
                                let tv = new_var(&mut vars, &mut rhs, format!("T_{}", sys.alphabet.name(a)));
                                rhs[tv].push((sr.one(), vec![t(a)]));
                                term_var.insert(a, tv);
                                tv
                            }
                        };
                        v(tv)
                    }
                    other => other,
                });
            }
            // binarize right to left, sharing suffix variables
            let mut tail = *syms.last().unwrap();
            for k in (1..syms.len() - 1).rev() {
                let key = vec![syms[k], tail];
                let y = match suffix_var.get(&key) {
                    Some(&y) => y,
                    None => {
                        let y = new_var(&mut vars, &mut rhs, format!("Y{}", suffix_var.len() + 1));
                        rhs[y].push((sr.one(), key.clone()));
                        suffix_var.insert(key, y);
                        y
                    }
                };
                tail = v(y);
            }
            rhs[i].push((m.coeff, vec![syms[0], tail]));
        }
    }
    let rhs = rhs.into_iter().map(|r| Polynomial::from_terms(sr, r)).collect();
    AlgebraicSystem { semiring: sr, alphabet: sys.alphabet.clone(), vars, rhs }
}

/// Rosenkrantz conversion of a Chomsky-shaped system. Returns the GNF system
/// and the index of `X_A` for every input variable `A`.
fn rosenkrantz(sys: &AlgebraicSystem) -> (AlgebraicSystem, Vec<usize>) {
    let sr = sys.semiring;
    let n = sys.len();
    // K_A as (letter, coeff) and h(A, B, D) as (B, D, coeff)
    let mut k: Vec<Vec<(Letter, Ext)>> = vec![Vec::new(); n];
    let mut h: Vec<Vec<(usize, usize, Ext)>> = vec![Vec::new(); n];
    for (a, p) in sys.rhs.iter().enumerate() {
        for m in p.terms() {
            match m.word[..] {
                [Sym::T(l)] => k[a].push((l, m.coeff)),
                [Sym::V(b), Sym::V(d)] => h[a].push((b as usize, d as usize, m.coeff)),
                _ => unreachable!("Chomsky shape"),
            }
        }
    }
    let z = |b: usize, a: usize| n + b * n + a;

    // X_D = K_D + Σ_E K_E Z_{E,D}
    let x_gnf: Vec<Vec<(Ext, Vec<Sym>)>> = (0..n)
        .map(|d| {
            let mut out: Vec<(Ext, Vec<Sym>)> = k[d].iter().map(|&(l, c)| (c, vec![t(l)])).collect();
            for e in 0..n {
                for &(l, c) in &k[e] {
                    out.push((c, vec![t(l), v(z(e, d))]));
                }
            }
            out
        })
        .collect();

    // H_{B,A} = Σ_D h(A, B, D) X_D with X_D in GNF
    let mut hmat: Vec<Vec<(Ext, Vec<Sym>)>> = vec![Vec::new(); n * n];
    for (a, rules) in h.iter().enumerate() {
        for &(b, d, c) in rules {
            for (c2, w) in &x_gnf[d] {
                hmat[b * n + a].push((sr.mul(c, *c2), w.clone()));
            }
        }
    }

    let mut rhs: Vec<Polynomial> = Vec::with_capacity(n + n * n);
    for (a, ka) in k.iter().enumerate() {
        let mut out: Vec<(Ext, Vec<Sym>)> = ka.iter().map(|&(l, c)| (c, vec![t(l)])).collect();
        for (b, kb) in k.iter().enumerate() {
            for &(l, c) in kb {
                out.push((c, vec![t(l), v(z(b, a))]));
            }
        }
        rhs.push(Polynomial::from_terms(sr, out));
    }
    for b in 0..n {
        for a in 0..n {
            let mut out = hmat[b * n + a].clone();
            for c in 0..n {
                for (w, word) in &hmat[b * n + c] {
                    let mut word = word.clone();
                    word.push(v(z(c, a)));
                    out.push((*w, word));
                }
            }
            rhs.push(Polynomial::from_terms(sr, out));
        }
    }
    let mut vars = sys.vars.clone();
    let mut used: HashSet<String> = vars.iter().cloned().collect();
    used.extend(sys.alphabet.terminals.iter().cloned());
    for b in 0..n {
        for a in 0..n {
            vars.push(fresh_name(&mut used, format!("Z_{}_{}", sys.vars[b], sys.vars[a])));
        }
    }
    let out = AlgebraicSystem { semiring: sr, alphabet: sys.alphabet.clone(), vars, rhs };
    (out, (0..n).collect())
}

/// Keeps the productive variables reachable from `roots` (through productive
/// monomials). Returns the trimmed system and the old-to-new index map.
pub fn trim(sys: &AlgebraicSystem, roots: &[usize]) -> (AlgebraicSystem, Vec<Option<usize>>) {
    let sr = sys.semiring;
    let prod = sys.productive();
    let live: Vec<Polynomial> = sys
        .rhs
        .iter()
        .map(|p| {
            Polynomial::from_terms(
                sr,
                p.terms().iter().filter(|m| m.vars().all(|u| prod[u])).map(|m| (m.coeff, m.word.clone())),
            )
        })
        .collect();
    let pruned = AlgebraicSystem { rhs: live, ..sys.clone() };
    let reach = pruned.reachable(roots.iter().copied().filter(|&r| prod[r]));
    let mut remap = vec![None; sys.len()];
    let mut vars = Vec::new();
    for i in 0..sys.len() {
        if reach[i] && prod[i] {
            remap[i] = Some(vars.len());
            vars.push(sys.vars[i].clone());
        }
    }
    let rhs = (0..sys.len())
        .filter(|&i| remap[i].is_some())
        .map(|i| pruned.rhs[i].rename(sr, |u| remap[u].expect("kept")))
        .collect();
    (AlgebraicSystem { semiring: sr, alphabet: sys.alphabet.clone(), vars, rhs }, remap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Alphabet, TruncatedSeries};

    fn sys(sr: Semiring, al: &str, rhs: Vec<Vec<(u64, Vec<Sym>)>>) -> AlgebraicSystem {
        let vars = (1..=rhs.len()).map(|i| format!("x{i}")).collect();
        let rhs = rhs
            .into_iter()
            .map(|r| Polynomial::from_terms(sr, r.into_iter().map(|(c, w)| (Ext::Fin(c), w))))
            .collect();
        AlgebraicSystem::new(sr, Alphabet::chars(al), vars, rhs).unwrap()
    }

    fn check(s: &AlgebraicSystem, max_len: usize) -> FiniteGnf {
        let g = finite_gnf(s, &EvalCaps::default()).unwrap();
        assert!(g.system.is_proper_gnf(), "{:?}", g.system);
        let want = s.least_solution_finite(max_len, 1000).unwrap();
        let got = g.system.least_solution_finite(max_len, 1000).unwrap();
        let sr = s.semiring;
        for i in 0..s.len() {
            let mut have = TruncatedSeries::from_pairs(sr, max_len, [(Vec::new(), g.eps[i])]);
            if let Some(j) = g.map[i] {
                have = have.add(&got[j]);
            }
            assert_eq!(have, want[i], "component {i}");
        }
        g
    }

    #[test]
    fn already_gnf_is_kept() {
        let b = Semiring::Boolean;
        let s = sys(b, "ab", vec![vec![(1, vec![t(0), v(0), v(0)]), (1, vec![t(1)])]]);
        let g = check(&s, 6);
        assert!(g.skipped);
        assert_eq!(g.system, s);
    }

    #[test]
    fn dyck_star_example() {
        // x1 = x2 x1 + ε, x2 = a x2 b + ε
        let b = Semiring::Boolean;
        let s = sys(b, "ab", vec![vec![(1, vec![v(1), v(0)]), (1, vec![])], vec![(1, vec![t(0), v(1), t(1)]), (1, vec![])]]);
        let g = check(&s, 6);
        assert_eq!(g.eps, vec![Ext::ONE, Ext::ONE]);
        assert!(!g.skipped);
    }

    #[test]
    fn weighted_left_recursion() {
        let tr = Semiring::Tropical;
        // x1 = 1 x1 a + b + 2 x2 x1, x2 = x1 c + ε
        let s = sys(
            tr,
            "abc",
            vec![
                vec![(1, vec![v(0), t(0)]), (0, vec![t(1)]), (2, vec![v(1), v(0)])],
                vec![(0, vec![v(0), t(2)]), (0, vec![])],
            ],
        );
        check(&s, 6);
    }

    #[test]
    fn counting_chains_and_ambiguity() {
        let c = Semiring::Counting;
        // x1 = x2 + x1 x1 + a, x2 = 2 x1 b + ε   (finitely ambiguous up to length 5)
        let s = sys(
            c,
            "ab",
            vec![vec![(1, vec![v(1)]), (1, vec![v(0), v(0)]), (1, vec![t(0)])], vec![(2, vec![v(0), t(1)]), (1, vec![])]],
        );
        // ε has infinitely many derivations here, so only check the proper part
        let g = finite_gnf(&s, &EvalCaps::default()).unwrap();
        assert!(g.system.is_proper_gnf());
        assert_eq!(g.eps[0], Ext::Inf);
        let s2 = sys(
            c,
            "ab",
            vec![vec![(1, vec![v(1)]), (1, vec![t(0), v(0), v(0)]), (1, vec![t(0)])], vec![(2, vec![v(0), t(1)]), (3, vec![t(1)])]],
        );
        check(&s2, 5);
    }

    #[test]
    fn zero_components_map_to_nothing() {
        let b = Semiring::Boolean;
        let s = sys(b, "a", vec![vec![(1, vec![v(0), t(0)])], vec![(1, vec![]), (1, vec![v(1), t(0)])]]);
        let g = check(&s, 5);
        assert_eq!(g.map[0], None);
        assert_eq!(g.eps[0], Ext::ZERO);
    }
}
