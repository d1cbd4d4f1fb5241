//! From a mixed GNF system to an ω-algebraic GNF system.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::system::{CanonicalSelector, OmegaSystem};

use super::{fresh_name, SelectedMixed, SelectedOmega};

/// Variables `ŷ_1..ŷ_m` from the z-equations (Büchi variables stay in
/// front), `ȳ_1..ȳ_n` from the x-equations, and `ẏ = p_k + ρ_l z` combining
/// the selected finite and ω-components.
pub fn unmix(s: &SelectedMixed) -> Result<SelectedOmega> {
    let m = &s.system;
    if !m.is_gnf() {
        return Err(Error::NotGnf("unmix needs a mixed system in GNF".into()));
    }
    let sr = m.semiring();
    let n = m.x.len();
    let mz = m.z_len();
    let sel = s.selector;
    if sel.component >= mz {
        return Err(Error::IndexOutOfRange { index: sel.component, limit: mz });
    }
    if let Some(k) = sel.finite {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, limit: n });
        }
    }
    // z_equation numbers x before z
    let from_z = |u: usize| if u < n { mz + u } else { u - n };

    let mut used: HashSet<String> = m.alphabet().terminals.iter().cloned().collect();
    let mut vars = Vec::with_capacity(mz + n + 1);
    let mut rhs = Vec::with_capacity(mz + n + 1);
    for i in 0..mz {
        vars.push(fresh_name(&mut used, m.z_vars[i].clone()));
        rhs.push(m.z_equation(i).rename(sr, from_z));
    }
    for i in 0..n {
        vars.push(fresh_name(&mut used, m.x.vars[i].clone()));
        rhs.push(m.x.rhs[i].rename(sr, |u| mz + u));
    }
    let mut last = m.z_equation(sel.component).rename(sr, from_z);
    if let Some(k) = sel.finite {
        last = m.x.rhs[k].rename(sr, |u| mz + u).add(sr, &last);
    }
    vars.push(fresh_name(&mut used, "y".into()));
    rhs.push(last);
    let system = OmegaSystem { semiring: sr, alphabet: m.alphabet().clone(), vars, rhs };
    let d = mz + n;
    Ok(SelectedOmega { system, selector: CanonicalSelector { buchi: sel.buchi, component: d, finite: Some(d) } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_grammar, write_grammar, Grammar, GrammarSystem};
    use crate::semiring::Ext;
    use crate::series::Lasso;
    use crate::system::EvalCaps;

    fn contrast() -> SelectedMixed {
        let g = parse_grammar(include_str!("../../fixtures/contrast_mixed.txt")).unwrap();
        let GrammarSystem::Mixed(m) = g.system else { panic!() };
        let z2 = m.z_index("z2").unwrap();
        SelectedMixed { system: m, selector: CanonicalSelector { buchi: 1, component: z2, finite: Some(0) } }
    }

    #[test]
    fn contrast_example_equations() {
        let s = contrast();
        let u = unmix(&s).unwrap();
        assert!(u.system.is_gnf());
        let text = write_grammar(&Grammar::omega(u.system.clone()).with_start(Some("y".into()), Some(1)));
        let eqs: Vec<&str> = text.lines().filter(|l| l.contains('=')).collect();
        assert_eq!(eqs[0], "z1 = c z1");
        assert_eq!(eqs[1], "z2 = a z1 | a x1 z2");
        assert_eq!(eqs[2], "x1 = a | c x1");
        assert_eq!(eqs.last().unwrap(), &"y = a | a z1 | c x1 | a x1 z2");
        assert_eq!(u.selector, CanonicalSelector { buchi: 1, component: 4, finite: Some(4) });
        // Büchi indices land on z-derived variables
        assert_eq!(&u.system.vars[..1], &["z1".to_string()]);
    }

    #[test]
    fn contrast_example_values() {
        let s = contrast();
        let u = unmix(&s).unwrap();
        let caps = EvalCaps::default();
        let mixed = u.system.induce_mixed();
        let al = u.system.alphabet.clone();
        for (p, q, want) in [("", "c", Ext::ZERO), ("", "aa", Ext::ZERO), ("a", "c", Ext::ONE), ("acaa", "c", Ext::ONE)] {
            let l = Lasso::new(al.parse_word(p).unwrap(), al.parse_word(q).unwrap()).unwrap();
            let got = mixed.canonical_omega_lasso(1, 4, &l, &caps).unwrap().value().unwrap();
            let orig = s.system.canonical_omega_lasso(1, 1, &l, &caps).unwrap().value().unwrap();
            assert_eq!(got, orig, "{p}:{q}");
            assert_eq!(got, want, "{p}:{q}");
        }
        let a: crate::system::AlgebraicSystem = u.system.into();
        let got = a.least_solution_finite(6, 100).unwrap();
        let want = s.system.x.least_solution_finite(6, 100).unwrap();
        assert_eq!(got[4], want[0]);
    }

    #[test]
    fn rejects_non_gnf() {
        let g = parse_grammar(include_str!("../../fixtures/mixed_algebraic_system.txt")).unwrap();
        let GrammarSystem::Mixed(m) = g.system else { panic!() };
        let s = SelectedMixed { system: m, selector: CanonicalSelector { buchi: 1, component: 1, finite: None } };
        assert!(matches!(unmix(&s), Err(Error::NotGnf(_))));
    }
}
