//! Direct Greibach normal form for an arbitrary mixed system.
//!
//! The x-part is converted with [`finite_gnf`]; every `ρ_ij` is rewritten over
//! the new variables, each nonempty monomial becomes `a W` with a word
//! variable `W` standing for the rest of the monomial. Empty-word entries of
//! `ρ` are folded into the following nonempty step: a z-variable `(j, b)`
//! records whether the ε-steps before that step met a Büchi variable.

use std::collections::{HashMap, HashSet};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::semiring::{Ext, Semiring};
use crate::series::{v, Polynomial, Sym};
use crate::system::{AlgebraicSystem, CanonicalSelector, EvalCaps, MixedSystem};

use super::{finite_gnf, fresh_name, SelectedMixed};

struct WordVars<'a> {
    sr: Semiring,
    base: &'a AlgebraicSystem,
    vars: Vec<String>,
    rhs: Vec<Polynomial>,
    memo: HashMap<Vec<Sym>, usize>,
    pending: Vec<(usize, Vec<Sym>)>,
    used: HashSet<String>,
}

impl WordVars<'_> {
    /// A single symbol standing for the nonempty word `w`.
    fn tail(&mut self, w: &[Sym]) -> Sym {
        if let [s @ Sym::V(_)] = w {
            return *s;
        }
        if let Some(&i) = self.memo.get(w) {
            return v(i);
        }
        let i = self.vars.len();
        let name = w
            .iter()
            .map(|s| match *s {
                Sym::T(a) => self.base.alphabet.name(a).to_string(),
                Sym::V(x) => self.base.vars[x as usize].clone(),
            })
            .collect::<Vec<_>>()
            .join(".");
        self.vars.push(fresh_name(&mut self.used, format!("W[{name}]")));
        self.rhs.push(Polynomial::zero());
        self.memo.insert(w.to_vec(), i);
        self.pending.push((i, w.to_vec()));
        v(i)
    }

    /// GNF right-hand side for the word variable of `w`.
    fn word_equation(&mut self, w: &[Sym]) -> Polynomial {
        let sr = self.sr;
        let (first, rest) = w.split_first().expect("nonempty");
        let mut out = Vec::new();
        match *first {
            Sym::T(_) => {
                let mut word = vec![*first];
                if !rest.is_empty() {
                    word.push(self.tail(rest));
                }
                out.push((sr.one(), word));
            }
            Sym::V(a) => {
                for m in self.base.rhs[a as usize].terms().to_vec() {
                    let (b, beta) = m.word.split_first().expect("proper GNF");
                    let mut word = vec![*b];
                    match beta {
                        [] => word.push(self.tail(rest)),
                        [x] => word.extend([*x, self.tail(rest)]),
                        [x, y] => {
                            let mut cont = vec![*y];
                            cont.extend_from_slice(rest);
                            word.extend([*x, self.tail(&cont)]);
                        }
                        _ => unreachable!("quadratic GNF"),
                    }
                    out.push((m.coeff, word));
                }
            }
        }
        Polynomial::from_terms(sr, out)
    }

    /// `c w` as a sum of monomials `a` and `a X`.
    fn step(&mut self, c: Ext, w: &[Sym]) -> Vec<(Ext, Vec<Sym>)> {
        let sr = self.sr;
        let (first, rest) = w.split_first().expect("nonempty");
        match *first {
            Sym::T(_) => {
                let mut word = vec![*first];
                if !rest.is_empty() {
                    word.push(self.tail(rest));
                }
                vec![(c, word)]
            }
            Sym::V(a) => {
                let mut out = Vec::new();
                for m in self.base.rhs[a as usize].terms().to_vec() {
                    let (b, beta) = m.word.split_first().expect("proper GNF");
                    let mut cont = beta.to_vec();
                    cont.extend_from_slice(rest);
                    let mut word = vec![*b];
                    if !cont.is_empty() {
                        word.push(self.tail(&cont));
                    }
                    out.push((sr.mul(c, m.coeff), word));
                }
                out
            }
        }
    }

    fn flush(&mut self) {
        while let Some((i, w)) = self.pending.pop() {
            let p = self.word_equation(&w);
            self.rhs[i] = p;
        }
    }
}

/// A GNF mixed system with the same selected canonical component.
pub fn mixed_gnf(s: &SelectedMixed, caps: &EvalCaps) -> Result<SelectedMixed> {
    let m = &s.system;
    if m.is_gnf() {
        return Ok(s.clone());
    }
    let sr = m.semiring();
    let fg = finite_gnf(&m.x, caps)?;
    let g = &fg.system;
    let mut used: HashSet<String> = g.vars.iter().cloned().collect();
    used.extend(m.z_vars.iter().cloned());
    used.extend(g.alphabet.terminals.iter().cloned());
    let mut wv = WordVars {
        sr,
        base: g,
        vars: g.vars.clone(),
        rhs: g.rhs.clone(),
        memo: HashMap::new(),
        pending: Vec::new(),
        used,
    };

    let mz = m.z_len();
    let mut eps = Matrix::zero(sr, mz, mz);
    let mut steps: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(); mz]; mz];
    for i in 0..mz {
        for j in 0..mz {
            let p = m.rho[i][j].substitute_poly(sr, &|x| fg.component(x));
            let mut out = Vec::new();
            for mono in p.terms() {
                if mono.word.is_empty() {
                    eps.set(i, j, mono.coeff);
                } else {
                    out.extend(wv.step(mono.coeff, &mono.word));
                }
            }
            steps[i][j] = Polynomial::from_terms(sr, out);
        }
    }
    wv.flush();

    let finite = match s.selector.finite {
        Some(f) if !sr.is_zero(fg.eps[f]) => {
            let mut p = Polynomial::monomial(sr, fg.eps[f], Vec::new());
            if let Some(j) = fg.map[f] {
                p = p.add(sr, &g.rhs[j]);
            }
            let name = fresh_name(&mut wv.used, m.x.vars[f].clone());
            wv.vars.push(name);
            wv.rhs.push(p);
            Some(wv.vars.len() - 1)
        }
        Some(f) => fg.map[f],
        None => None,
    };
    let x = AlgebraicSystem { semiring: sr, alphabet: g.alphabet.clone(), vars: wv.vars, rhs: wv.rhs };

    let k = s.selector.buchi;
    if (0..mz).all(|i| (0..mz).all(|j| sr.is_zero(eps.get(i, j)))) {
        let system = MixedSystem { x, z_vars: m.z_vars.clone(), rho: steps };
        return Ok(SelectedMixed { system, selector: CanonicalSelector { finite, ..s.selector } });
    }

    // ε-closure over (j, b): b records a Büchi visit
    let mut e = Matrix::zero(sr, 2 * mz, 2 * mz);
    for i in 0..mz {
        for j in 0..mz {
            let w = eps.get(i, j);
            if sr.is_zero(w) {
                continue;
            }
            for b in 0..2 {
                let b2 = usize::from(b == 1 || j < k);
                e.set(2 * i + b, 2 * j + b2, sr.add(e.get(2 * i + b, 2 * j + b2), w));
            }
        }
    }
    let closure = e.star()?;
    // weights[b][i][j]: segments from i with Büchi bit b ending in a step to j
    let mut weights = vec![vec![vec![Polynomial::zero(); mz]; mz]; 2];
    for i in 0..mz {
        let from = 2 * i + usize::from(i < k);
        for u in 0..mz {
            for b in 0..2 {
                let c = closure.get(from, 2 * u + b);
                if sr.is_zero(c) {
                    continue;
                }
                for j in 0..mz {
                    if !steps[u][j].is_zero() {
                        weights[b][i][j] = weights[b][i][j].add(sr, &steps[u][j].scale(sr, c));
                    }
                }
            }
        }
    }
    // variables: (j, 1) for all j, then (j, 0), then the selected one
    let idx = |j: usize, b: usize| if b == 1 { j } else { mz + j };
    let n2 = 2 * mz + 1;
    let mut rho = vec![vec![Polynomial::zero(); n2]; n2];
    for i in 0..mz {
        for b in 0..2 {
            for j in 0..mz {
                for b2 in 0..2 {
                    rho[idx(i, b)][idx(j, b2)] = weights[b][i][j].clone();
                }
            }
        }
    }
    let sel = s.selector.component;
    for j in 0..mz {
        let p = weights[0][sel][j].add(sr, &weights[1][sel][j]);
        for b2 in 0..2 {
            rho[2 * mz][idx(j, b2)] = p.clone();
        }
    }
    let mut z_vars: Vec<String> = (0..mz).map(|j| format!("{}.1", m.z_vars[j])).collect();
    z_vars.extend((0..mz).map(|j| format!("{}.0", m.z_vars[j])));
    z_vars.push(m.z_vars[sel].clone());
    let system = MixedSystem { x, z_vars, rho };
    Ok(SelectedMixed { system, selector: CanonicalSelector { buchi: mz, component: 2 * mz, finite } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_grammar, GrammarSystem};
    use crate::series::Lasso;

    fn load(text: &str) -> SelectedMixed {
        let g = parse_grammar(text).unwrap();
        let (system, start, finite) = match g.system {
            GrammarSystem::Mixed(m) => {
                let z = m.z_index(g.start.as_deref().unwrap()).unwrap();
                (m, z, None)
            }
            GrammarSystem::Omega(o) => {
                let i = o.vars.iter().position(|v| Some(v.as_str()) == g.start.as_deref()).unwrap();
                (o.induce_mixed(), i, Some(i))
            }
        };
        SelectedMixed { system, selector: CanonicalSelector { buchi: g.buchi.unwrap(), component: start, finite } }
    }

    fn agree(a: &SelectedMixed, b: &SelectedMixed, lassos: &[(&str, &str)]) {
        let caps = EvalCaps::default();
        let al = a.system.alphabet().clone();
        for (u, w) in lassos {
            let l = Lasso::new(al.parse_word(u).unwrap(), al.parse_word(w).unwrap()).unwrap();
            let x = a.system.canonical_omega_lasso(a.selector.buchi, a.selector.component, &l, &caps).unwrap();
            let y = b.system.canonical_omega_lasso(b.selector.buchi, b.selector.component, &l, &caps).unwrap();
            assert_eq!(x, y, "lasso {u}:{w}");
        }
    }

    #[test]
    fn tropical_example_keeps_values() {
        let s = load(include_str!("../../fixtures/mixed_algebraic_system.txt"));
        let g = mixed_gnf(&s, &EvalCaps::default()).unwrap();
        assert!(g.system.is_gnf());
        agree(&s, &g, &[("", "c"), ("ab", "c"), ("aabb", "c"), ("aaabbb", "c"), ("aab", "c"), ("", "ab"), ("c", "c")]);
    }

    #[test]
    fn boolean_example_keeps_values() {
        let mut s = load(include_str!("../../fixtures/algebraic_system.txt"));
        for k in 1..=2 {
            s.selector.buchi = k;
            for comp in 0..2 {
                s.selector.component = comp;
                s.selector.finite = Some(comp);
                let g = mixed_gnf(&s, &EvalCaps::default()).unwrap();
                assert!(g.system.is_gnf());
                agree(&s, &g, &[("", "ab"), ("", "a"), ("ab", "a"), ("aabb", "aabbab"), ("b", "a"), ("", "ba"), ("a", "b")]);
                let fx = g.selector.finite.unwrap();
                let want = s.system.x.least_solution_finite(6, 100).unwrap();
                let got = g.system.x.least_solution_finite(6, 100).unwrap();
                assert_eq!(want[comp], got[fx]);
            }
        }
    }

    #[test]
    fn gnf_input_is_unchanged() {
        let s = load(include_str!("../../fixtures/finite_simple.txt"));
        assert_eq!(mixed_gnf(&s, &EvalCaps::default()).unwrap(), s);
    }
}
