//! Sums `Σ s_j t_j^ω` of products of algebraic series and the mixed systems
//! built from them.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::semiring::{Ext, Semiring};
use crate::series::{v, Alphabet, Polynomial, Sym};
use crate::system::{AlgebraicSystem, CanonicalSelector, EvalCaps, MixedSystem};

use super::{finite_gnf, fresh_name, proper_part, SelectedMixed};

/// Component `component` of the least solution of `system`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRef {
    pub system: AlgebraicSystem,
    pub component: usize,
}

/// The finite factor of a term: a scalar multiple of `ε` or a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SFactor {
    Scalar(Ext),
    Series(SeriesRef),
}

/// `s t^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTerm {
    pub s: SFactor,
    pub t: SeriesRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaDecomposition {
    pub semiring: Semiring,
    pub alphabet: Alphabet,
    pub terms: Vec<OmegaTerm>,
}

impl SeriesRef {
    pub fn new(system: AlgebraicSystem, component: usize) -> Result<SeriesRef> {
        if component >= system.len() {
            return Err(Error::IndexOutOfRange { index: component, limit: system.len() });
        }
        Ok(SeriesRef { system, component })
    }

    /// The same series with its variable moved to index 0.
    fn first(&self) -> AlgebraicSystem {
        let n = self.system.len();
        let c = self.component;
        let pos = |i: usize| match i.cmp(&c) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => i + 1,
            std::cmp::Ordering::Greater => i,
        };
        let sr = self.system.semiring;
        let mut vars = vec![String::new(); n];
        let mut rhs = vec![Polynomial::zero(); n];
        for i in 0..n {
            vars[pos(i)] = self.system.vars[i].clone();
            rhs[pos(i)] = self.system.rhs[i].rename(sr, pos);
        }
        AlgebraicSystem { semiring: sr, alphabet: self.system.alphabet.clone(), vars, rhs }
    }
}

impl OmegaDecomposition {
    fn check(&self) -> Result<()> {
        for term in &self.terms {
            let mut parts = vec![&term.t];
            if let SFactor::Series(s) = &term.s {
                parts.push(s);
            }
            for p in parts {
                if p.system.semiring != self.semiring {
                    return Err(Error::MixedSemirings(self.semiring, p.system.semiring));
                }
                if p.system.alphabet != self.alphabet {
                    return Err(Error::Shape("terms over different alphabets".into()));
                }
            }
        }
        Ok(())
    }
}

/// Adds a variable `y = c · rhs(x_comp)` and returns it as a series.
fn scaled_copy(sys: AlgebraicSystem, comp: usize, c: Ext) -> SeriesRef {
    let sr = sys.semiring;
    let mut used: HashSet<String> = sys.vars.iter().cloned().collect();
    let name = fresh_name(&mut used, format!("{}*", sys.vars[comp]));
    let p = sys.rhs[comp].scale(sr, c);
    let mut out = sys;
    out.vars.push(name);
    out.rhs.push(p);
    let component = out.len() - 1;
    SeriesRef { system: out, component }
}

/// Brings every term into the shape `(s, ε) = 0` or `s = (s, ε) ε`, with
/// `(t, ε) = 0`, using `t^ω = ((t, ε)^* t')^ω` and
/// `s t^ω = (s, ε) t^ω + s' t^ω`. Terms that vanish are dropped.
pub fn normalize_decomposition(d: &OmegaDecomposition, caps: &EvalCaps) -> Result<OmegaDecomposition> {
    d.check()?;
    let sr = d.semiring;
    let mut terms = Vec::new();
    for term in &d.terms {
        let te = term.t.system.eps_coefficients(caps.max_rounds)?[term.t.component];
        let t = if sr.is_zero(te) {
            term.t.clone()
        } else {
            let (proper, _) = proper_part(&term.t.system, caps)?;
            scaled_copy(proper, term.t.component, sr.star(te))
        };
        if !t.system.productive()[t.component] {
            continue;
        }
        match &term.s {
            SFactor::Scalar(e) => {
                if !sr.is_zero(*e) {
                    terms.push(OmegaTerm { s: SFactor::Scalar(*e), t });
                }
            }
            SFactor::Series(s) => {
                let se = s.system.eps_coefficients(caps.max_rounds)?[s.component];
                if sr.is_zero(se) {
                    if s.system.productive()[s.component] {
                        terms.push(OmegaTerm { s: SFactor::Series(s.clone()), t });
                    }
                    continue;
                }
                terms.push(OmegaTerm { s: SFactor::Scalar(se), t: t.clone() });
                let (proper, _) = proper_part(&s.system, caps)?;
                if proper.productive()[s.component] {
                    terms.push(OmegaTerm { s: SFactor::Series(SeriesRef::new(proper, s.component)?), t });
                }
            }
        }
    }
    Ok(OmegaDecomposition { semiring: sr, alphabet: d.alphabet.clone(), terms })
}

/// Splits a proper GNF right-hand side into the part that ends the finite
/// word (`a`, `a X`) and, per last variable `Y`, the prefixes `a X` of `a X Y`.
fn split_last(sr: Semiring, p: &Polynomial, n: usize) -> (Polynomial, Vec<Polynomial>) {
    let mut end = Vec::new();
    let mut cont: Vec<Vec<(Ext, Vec<Sym>)>> = vec![Vec::new(); n];
    for m in p.terms() {
        match m.word[..] {
            [_, _, Sym::V(y)] => cont[y as usize].push((m.coeff, m.word[..2].to_vec())),
            _ => end.push((m.coeff, m.word.clone())),
        }
    }
    (Polynomial::from_terms(sr, end), cont.into_iter().map(|c| Polynomial::from_terms(sr, c)).collect())
}

/// The mixed GNF system whose first canonical solution has `s t^ω` at the
/// selected z-variable. `s` must be ε-free or a scalar; both systems must be
/// in proper GNF.
pub fn build_pair_system(s: &SFactor, t: &SeriesRef) -> Result<SelectedMixed> {
    let tsys = t.first();
    if !tsys.is_proper_gnf() {
        return Err(Error::NotGnf("t-system must be in proper GNF".into()));
    }
    let sr = tsys.semiring;
    let ssys = match s {
        SFactor::Series(s) => {
            let f = s.first();
            if !f.is_proper_gnf() {
                return Err(Error::NotGnf("s-system must be in proper GNF".into()));
            }
            if f.semiring != sr || f.alphabet != tsys.alphabet {
                return Err(Error::Shape("s and t differ in semiring or alphabet".into()));
            }
            Some(f)
        }
        SFactor::Scalar(_) => None,
    };
    let n = ssys.as_ref().map_or(0, |s| s.len());
    let m = tsys.len();

    let mut used: HashSet<String> = tsys.alphabet.terminals.iter().cloned().collect();
    let mut x_vars: Vec<String> = Vec::new();
    let mut x_rhs: Vec<Polynomial> = Vec::new();
    if let Some(s) = &ssys {
        for (name, p) in s.vars.iter().zip(&s.rhs) {
            x_vars.push(fresh_name(&mut used, name.clone()));
            x_rhs.push(p.clone());
        }
    }
    for (name, p) in tsys.vars.iter().zip(&tsys.rhs) {
        x_vars.push(fresh_name(&mut used, format!("{name}'")));
        x_rhs.push(p.rename(sr, |u| u + n));
    }
    let x = AlgebraicSystem { semiring: sr, alphabet: tsys.alphabet.clone(), vars: x_vars, rhs: x_rhs };

    // z'' = 0, z'_i = 1 + i, z_i = 1 + m + i
    let zn = 1 + m + if ssys.is_some() { n } else { 1 };
    let mut z_vars = vec![fresh_name(&mut used, "z''".into())];
    z_vars.extend((1..=m).map(|i| fresh_name(&mut used, format!("z{i}'"))));
    z_vars.extend((1..=zn - 1 - m).map(|i| fresh_name(&mut used, format!("z{i}"))));
    let mut rho = MixedSystem::empty_rho(zn);

    for i in 0..m {
        let (end, cont) = split_last(sr, &x.rhs[n + i], x.len());
        rho[1 + i][0] = end;
        for (y, p) in cont.into_iter().enumerate() {
            if !p.is_zero() {
                rho[1 + i][1 + (y - n)] = p;
            }
        }
    }
    rho[0] = rho[1].clone();
    match (s, &ssys) {
        (_, Some(_)) => {
            for i in 0..n {
                let (end, cont) = split_last(sr, &x.rhs[i], x.len());
                rho[1 + m + i][0] = end;
                for (y, p) in cont.into_iter().enumerate() {
                    if !p.is_zero() {
                        rho[1 + m + i][1 + m + y] = p;
                    }
                }
            }
        }
        (SFactor::Scalar(e), None) => {
            rho[1 + m] = rho[0].iter().map(|p| p.scale(sr, *e)).collect();
        }
        _ => unreachable!(),
    }
    let system = MixedSystem::new(x, z_vars, rho)?;
    Ok(SelectedMixed { system, selector: CanonicalSelector { buchi: 1, component: 1 + m, finite: None } })
}

/// Block assembly with a fresh variable `z'` summing the selected components.
/// The Büchi variables of all parts come first.
pub fn sum_systems(parts: &[SelectedMixed], semiring: Semiring, alphabet: &Alphabet) -> Result<SelectedMixed> {
    let sr = semiring;
    for p in parts {
        if p.system.semiring() != sr {
            return Err(Error::MixedSemirings(sr, p.system.semiring()));
        }
        if p.system.alphabet() != alphabet {
            return Err(Error::Shape("parts over different alphabets".into()));
        }
    }
    let many = parts.len() > 1;
    let rename = |name: &str, i: usize| if many { format!("{name}_{}", i + 1) } else { name.to_string() };
    let mut used: HashSet<String> = alphabet.terminals.iter().cloned().collect();

    let mut x_vars = Vec::new();
    let mut x_rhs = Vec::new();
    let mut x_off = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let off = x_vars.len();
        x_off.push(off);
        for (name, q) in p.system.x.vars.iter().zip(&p.system.x.rhs) {
            x_vars.push(fresh_name(&mut used, rename(name, i)));
            x_rhs.push(q.rename(sr, |u| u + off));
        }
    }
    let x = AlgebraicSystem { semiring: sr, alphabet: alphabet.clone(), vars: x_vars, rhs: x_rhs };

    // new position of every (part, z-variable)
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        order.extend((0..p.selector.buchi).map(|j| (i, j)));
    }
    let buchi = order.len();
    for (i, p) in parts.iter().enumerate() {
        let d = p.selector.component;
        if d >= p.selector.buchi {
            order.push((i, d));
        }
        order.extend((p.selector.buchi..p.system.z_len()).filter(|&j| j != d).map(|j| (i, j)));
    }
    let mut pos: Vec<Vec<usize>> = parts.iter().map(|p| vec![0; p.system.z_len()]).collect();
    for (k, &(i, j)) in order.iter().enumerate() {
        pos[i][j] = k;
    }
    let zn = order.len() + 1;
    let mut rho = MixedSystem::empty_rho(zn);
    let mut z_vars = Vec::with_capacity(zn);
    for (k, &(i, j)) in order.iter().enumerate() {
        let p = &parts[i];
        z_vars.push(fresh_name(&mut used, rename(&p.system.z_vars[j], i)));
        for (j2, q) in p.system.rho[j].iter().enumerate() {
            rho[k][pos[i][j2]] = q.rename(sr, |u| u + x_off[i]);
        }
    }
    z_vars.push(fresh_name(&mut used, "z'".into()));
    for (i, p) in parts.iter().enumerate() {
        let d = p.selector.component;
        for (j2, q) in p.system.rho[d].iter().enumerate() {
            let k = pos[i][j2];
            rho[zn - 1][k] = rho[zn - 1][k].add(sr, &q.rename(sr, |u| u + x_off[i]));
        }
    }
    let system = MixedSystem::new(x, z_vars, rho)?;
    Ok(SelectedMixed { system, selector: CanonicalSelector { buchi, component: zn - 1, finite: None } })
}

/// The mixed system `z_j = x_{l+j} z_j`, `z_{l+1} = Σ_j x_j z_j` over the
/// disjoint union of the term systems, with `s_j` at `x_j` and `t_j` at `x_{l+j}`.
pub fn char_to_mixed(d: &OmegaDecomposition) -> Result<SelectedMixed> {
    d.check()?;
    let sr = d.semiring;
    let l = d.terms.len();
    let mut used: HashSet<String> = d.alphabet.terminals.iter().cloned().collect();
    // blocks: (system, designated var, tag); scalar factors become one-variable systems
    let mut blocks: Vec<(AlgebraicSystem, usize, String)> = Vec::new();
    for (j, term) in d.terms.iter().enumerate() {
        match &term.s {
            SFactor::Series(s) => blocks.push((s.system.clone(), s.component, format!("s{}", j + 1))),
            SFactor::Scalar(e) => {
                let sys = AlgebraicSystem {
                    semiring: sr,
                    alphabet: d.alphabet.clone(),
                    vars: vec!["e".into()],
                    rhs: vec![Polynomial::monomial(sr, *e, Vec::new())],
                };
                blocks.push((sys, 0, format!("s{}", j + 1)));
            }
        }
    }
    for (j, term) in d.terms.iter().enumerate() {
        blocks.push((term.t.system.clone(), term.t.component, format!("t{}", j + 1)));
    }
    let mut index: Vec<Vec<usize>> = Vec::new();
    let mut next = 2 * l;
    for (b, (sys, des, _)) in blocks.iter().enumerate() {
        let mut idx = vec![0; sys.len()];
        for (i, slot) in idx.iter_mut().enumerate() {
            if i == *des {
                *slot = b;
            } else {
                *slot = next;
                next += 1;
            }
        }
        index.push(idx);
    }
    let mut vars = vec![String::new(); next];
    let mut rhs = vec![Polynomial::zero(); next];
    for (b, (sys, _, tag)) in blocks.iter().enumerate() {
        for i in 0..sys.len() {
            let k = index[b][i];
            vars[k] = fresh_name(&mut used, format!("{}_{tag}", sys.vars[i]));
            rhs[k] = sys.rhs[i].rename(sr, |u| index[b][u]);
        }
    }
    let x = AlgebraicSystem { semiring: sr, alphabet: d.alphabet.clone(), vars, rhs };
    let mut z_vars: Vec<String> = (1..=l + 1).map(|j| fresh_name(&mut used, format!("z{j}"))).collect();
    if l == 0 {
        z_vars = vec![fresh_name(&mut used, "z1".into())];
    }
    let mut rho = MixedSystem::empty_rho(l + 1);
    for j in 0..l {
        rho[j][j] = Polynomial::monomial(sr, sr.one(), vec![v(l + j)]);
        rho[l][j] = Polynomial::monomial(sr, sr.one(), vec![v(j)]);
    }
    let system = MixedSystem::new(x, z_vars, rho)?;
    Ok(SelectedMixed { system, selector: CanonicalSelector { buchi: l, component: l, finite: None } })
}

/// Normalization, GNF of every factor, the pair systems and their sum.
pub fn decomposition_to_gnf(d: &OmegaDecomposition, caps: &EvalCaps) -> Result<SelectedMixed> {
    let norm = normalize_decomposition(d, caps)?;
    let mut parts = Vec::new();
    for term in &norm.terms {
        let tg = finite_gnf(&term.t.system, caps)?;
        let Some(tc) = tg.map[term.t.component] else { continue };
        let t = SeriesRef::new(tg.system, tc)?;
        let s = match &term.s {
            SFactor::Scalar(e) => SFactor::Scalar(*e),
            SFactor::Series(s) => {
                let sg = finite_gnf(&s.system, caps)?;
                let Some(sc) = sg.map[s.component] else { continue };
                SFactor::Series(SeriesRef::new(sg.system, sc)?)
            }
        };
        parts.push(build_pair_system(&s, &t)?);
    }
    sum_systems(&parts, d.semiring, &d.alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_grammar, GrammarSystem};
    use crate::series::{t, Lasso};

    fn alg(sr: Semiring, al: &str, names: &[&str], rhs: Vec<Vec<(u64, Vec<Sym>)>>) -> AlgebraicSystem {
        let rhs = rhs
            .into_iter()
            .map(|r| Polynomial::from_terms(sr, r.into_iter().map(|(c, w)| (Ext::Fin(c), w))))
            .collect();
        AlgebraicSystem::new(sr, Alphabet::chars(al), names.iter().map(|s| s.to_string()).collect(), rhs).unwrap()
    }

    fn value(s: &SelectedMixed, u: &str, w: &str) -> Ext {
        let al = s.system.alphabet();
        let l = Lasso::new(al.parse_word(u).unwrap(), al.parse_word(w).unwrap()).unwrap();
        s.system
            .canonical_omega_lasso(s.selector.buchi, s.selector.component, &l, &EvalCaps::default())
            .unwrap()
            .value()
            .unwrap()
    }

    fn finite_simple_parts() -> (SeriesRef, SeriesRef) {
        let tr = Semiring::Tropical;
        let (a, b, c, d) = (t(0), t(1), t(2), t(3));
        let s = alg(tr, "abcd", &["x1", "x2"], vec![vec![(1, vec![a, v(1)]), (1, vec![a, v(0), v(1)])], vec![(0, vec![b])]]);
        let tt = alg(tr, "abcd", &["x1", "x2"], vec![vec![(0, vec![c]), (0, vec![d, v(1), v(0)])], vec![(0, vec![d])]]);
        (SeriesRef::new(s, 0).unwrap(), SeriesRef::new(tt, 0).unwrap())
    }

    #[test]
    fn pair_system_matches_example() {
        let (s, tt) = finite_simple_parts();
        let got = build_pair_system(&SFactor::Series(s), &tt).unwrap();
        let GrammarSystem::Mixed(want) = parse_grammar(include_str!("../../fixtures/finite_simple.txt")).unwrap().system else {
            panic!()
        };
        assert_eq!(got.system, want);
        assert_eq!(got.selector, CanonicalSelector { buchi: 1, component: 3, finite: None });
        assert!(got.system.is_gnf());
        assert_eq!(value(&got, "ab", "ddc"), Ext::Fin(1));
    }

    #[test]
    fn scalar_case_scales_the_omega_power() {
        let (_, tt) = finite_simple_parts();
        let got = build_pair_system(&SFactor::Scalar(Ext::Fin(2)), &tt).unwrap();
        assert!(got.system.is_gnf());
        assert_eq!(value(&got, "", "ddc"), Ext::Fin(2));
        assert_eq!(value(&got, "c", "c"), Ext::Fin(2));
        assert_eq!(value(&got, "", "d"), Ext::Inf);
    }

    #[test]
    fn trivial_t_system() {
        let b = Semiring::Boolean;
        let tt = SeriesRef::new(alg(b, "ab", &["x"], vec![vec![(1, vec![t(0)])]]), 0).unwrap();
        let s = SeriesRef::new(alg(b, "ab", &["x"], vec![vec![(1, vec![t(1)])]]), 0).unwrap();
        let got = build_pair_system(&SFactor::Series(s), &tt).unwrap();
        assert_eq!(value(&got, "b", "a"), Ext::ONE);
        assert_eq!(value(&got, "", "a"), Ext::ZERO);
        let got = build_pair_system(&SFactor::Scalar(Ext::ONE), &tt).unwrap();
        assert_eq!(value(&got, "", "a"), Ext::ONE);
    }

    #[test]
    fn sums_are_pointwise() {
        let tr = Semiring::Tropical;
        let (a, b, c) = (t(0), t(1), t(2));
        // 3 a c^ω and 1 (a + b) c^ω
        let tc = SeriesRef::new(alg(tr, "abc", &["x"], vec![vec![(0, vec![c])]]), 0).unwrap();
        let s1 = SeriesRef::new(alg(tr, "abc", &["x"], vec![vec![(3, vec![a])]]), 0).unwrap();
        let s2 = SeriesRef::new(alg(tr, "abc", &["x"], vec![vec![(1, vec![a]), (1, vec![b])]]), 0).unwrap();
        let p1 = build_pair_system(&SFactor::Series(s1), &tc).unwrap();
        let p2 = build_pair_system(&SFactor::Series(s2), &tc).unwrap();
        let sum = sum_systems(&[p1.clone(), p2.clone()], tr, &Alphabet::chars("abc")).unwrap();
        assert!(sum.system.is_gnf());
        assert_eq!(sum.selector.buchi, 2);
        for (u, w) in [("a", "c"), ("b", "c"), ("c", "c"), ("", "a")] {
            assert_eq!(value(&sum, u, w), tr.add(value(&p1, u, w), value(&p2, u, w)), "{u}:{w}");
        }
        let one = sum_systems(std::slice::from_ref(&p1), tr, &Alphabet::chars("abc")).unwrap();
        assert_eq!(value(&one, "a", "c"), Ext::Fin(3));
        let none = sum_systems(&[], tr, &Alphabet::chars("abc")).unwrap();
        assert_eq!(value(&none, "a", "c"), Ext::Inf);
    }

    #[test]
    fn characterization_examples() {
        let b = Semiring::Boolean;
        let sa = SeriesRef::new(alg(b, "a", &["x"], vec![vec![(1, vec![t(0)])]]), 0).unwrap();
        let d = OmegaDecomposition {
            semiring: b,
            alphabet: Alphabet::chars("a"),
            terms: vec![OmegaTerm { s: SFactor::Series(sa.clone()), t: sa }],
        };
        let m = char_to_mixed(&d).unwrap();
        assert_eq!(value(&m, "a", "a"), Ext::ONE);
        let empty = OmegaDecomposition { semiring: b, alphabet: Alphabet::chars("a"), terms: vec![] };
        assert_eq!(value(&char_to_mixed(&empty).unwrap(), "", "a"), Ext::ZERO);

        let tr = Semiring::Tropical;
        let (a, bb, c) = (t(0), t(1), t(2));
        let s = SeriesRef::new(alg(tr, "abc", &["x"], vec![vec![(1, vec![a, v(0), bb]), (1, vec![a, bb])]]), 0).unwrap();
        let tc = SeriesRef::new(alg(tr, "abc", &["x"], vec![vec![(0, vec![c])]]), 0).unwrap();
        let d = OmegaDecomposition {
            semiring: tr,
            alphabet: Alphabet::chars("abc"),
            terms: vec![OmegaTerm { s: SFactor::Series(s), t: tc }],
        };
        let m = char_to_mixed(&d).unwrap();
        assert_eq!(value(&m, "aabb", "c"), Ext::Fin(2));
        let g = decomposition_to_gnf(&d, &EvalCaps::default()).unwrap();
        assert!(g.system.is_gnf());
        for n in 0..4 {
            let u = "a".repeat(n) + &"b".repeat(n);
            assert_eq!(value(&g, &u, "c"), value(&m, &u, "c"));
        }
    }

    #[test]
    fn normalization() {
        let b = Semiring::Boolean;
        let caps = EvalCaps::default();
        // t = ε + a
        let t1 = SeriesRef::new(alg(b, "a", &["x"], vec![vec![(1, vec![]), (1, vec![t(0)])]]), 0).unwrap();
        let d = OmegaDecomposition {
            semiring: b,
            alphabet: Alphabet::chars("a"),
            terms: vec![OmegaTerm { s: SFactor::Scalar(Ext::ONE), t: t1 }],
        };
        let n = normalize_decomposition(&d, &caps).unwrap();
        let tn = &n.terms[0].t;
        assert_eq!(tn.system.eps_coefficients(100).unwrap()[tn.component], Ext::ZERO);
        let sol = tn.system.least_solution_finite(3, 100).unwrap();
        assert_eq!(sol[tn.component].support(), vec![(vec![0], Ext::ONE)]);
        let before = char_to_mixed(&d).unwrap();
        let after = char_to_mixed(&n).unwrap();
        assert_eq!(value(&before, "", "a"), Ext::ONE);
        assert_eq!(value(&after, "", "a"), Ext::ONE);

        // s = 2 ε + 1 a, tropical
        let tr = Semiring::Tropical;
        let s = SeriesRef::new(alg(tr, "ac", &["x"], vec![vec![(2, vec![]), (1, vec![t(0)])]]), 0).unwrap();
        let tc = SeriesRef::new(alg(tr, "ac", &["x"], vec![vec![(0, vec![t(1)])]]), 0).unwrap();
        let d = OmegaDecomposition {
            semiring: tr,
            alphabet: Alphabet::chars("ac"),
            terms: vec![OmegaTerm { s: SFactor::Series(s), t: tc.clone() }],
        };
        let n = normalize_decomposition(&d, &caps).unwrap();
        assert_eq!(n.terms.len(), 2);
        assert_eq!(n.terms[0].s, SFactor::Scalar(Ext::Fin(2)));
        assert!(matches!(n.terms[1].s, SFactor::Series(_)));
        let unchanged = OmegaDecomposition {
            semiring: tr,
            alphabet: Alphabet::chars("ac"),
            terms: vec![OmegaTerm { s: SFactor::Series(tc.clone()), t: tc }],
        };
        assert_eq!(normalize_decomposition(&unchanged, &caps).unwrap(), unchanged);
    }
}
