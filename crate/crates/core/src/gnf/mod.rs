//! Transformations into Greibach normal form.

mod finite;
mod mixed;
mod pair;
mod pipeline;
mod unmix;

use std::collections::HashSet;

pub use finite::{finite_gnf, proper_part, trim, FiniteGnf};
pub use mixed::mixed_gnf;
pub use pair::{
    decomposition_to_gnf,
    build_pair_system, char_to_mixed, normalize_decomposition, sum_systems, OmegaDecomposition, OmegaTerm,
    SFactor, SeriesRef,
};
pub use pipeline::{gnf_pipeline, select, GnfPipelineReport, GnfTarget, Stage};
pub use unmix::unmix;

use crate::series::Polynomial;
use crate::system::{CanonicalSelector, MixedSystem, OmegaSystem};

/// A mixed system together with the component it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectedMixed {
    pub system: MixedSystem,
    pub selector: CanonicalSelector,
}

/// An ω-algebraic system together with the component it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectedOmega {
    pub system: OmegaSystem,
    pub selector: CanonicalSelector,
}

/// `base`, or `base` with primes appended until it is unused. Records the result.
pub(crate) fn fresh_name(used: &mut HashSet<String>, base: String) -> String {
    let mut name = base;
    while used.contains(&name) {
        name.push('\'');
    }
    used.insert(name.clone());
    name
}

/// Drops unproductive x-variables, z-variables unreachable from the selected
/// one and x-variables no longer referenced. Büchi variables stay in front.
pub fn trim_mixed(s: &SelectedMixed) -> SelectedMixed {
    let m = &s.system;
    let sr = m.semiring();
    let prod = m.x.productive();
    let live = |p: &Polynomial| {
        Polynomial::from_terms(
            sr,
            p.terms().iter().filter(|t| t.vars().all(|u| prod[u])).map(|t| (t.coeff, t.word.clone())),
        )
    };
    let rho: Vec<Vec<Polynomial>> = m.rho.iter().map(|r| r.iter().map(live).collect()).collect();
    let mz = m.z_len();
    let mut seen = vec![false; mz];
    let mut stack = vec![s.selector.component];
    while let Some(j) = stack.pop() {
        if std::mem::replace(&mut seen[j], true) {
            continue;
        }
        stack.extend((0..mz).filter(|&k| !rho[j][k].is_zero() && !seen[k]));
    }
    let kept: Vec<usize> = (0..mz).filter(|&j| seen[j]).collect();
    let mut roots: Vec<usize> = kept.iter().flat_map(|&j| kept.iter().flat_map(|&k| rho[j][k].vars().collect::<Vec<_>>()).collect::<Vec<_>>()).collect();
    roots.extend(s.selector.finite);
    let (x, remap) = trim(&m.x, &roots);
    let rho = kept
        .iter()
        .map(|&j| kept.iter().map(|&k| rho[j][k].rename(sr, |u| remap[u].expect("productive and reachable"))).collect())
        .collect();
    let z_vars = kept.iter().map(|&j| m.z_vars[j].clone()).collect();
    let selector = CanonicalSelector {
        buchi: kept.iter().filter(|&&j| j < s.selector.buchi).count(),
        component: kept.iter().position(|&j| j == s.selector.component).expect("root kept"),
        finite: s.selector.finite.and_then(|f| remap[f]),
    };
    SelectedMixed { system: MixedSystem { x, z_vars, rho }, selector }
}

/// Drops variables the selected one does not depend on.
pub fn trim_omega(s: &SelectedOmega) -> SelectedOmega {
    let o = &s.system;
    let sr = o.semiring;
    let a: crate::system::AlgebraicSystem = o.clone().into();
    let reach = a.reachable([s.selector.component]);
    let kept: Vec<usize> = (0..o.len()).filter(|&i| reach[i]).collect();
    let mut remap = vec![usize::MAX; o.len()];
    for (k, &i) in kept.iter().enumerate() {
        remap[i] = k;
    }
    let system = OmegaSystem {
        semiring: sr,
        alphabet: o.alphabet.clone(),
        vars: kept.iter().map(|&i| o.vars[i].clone()).collect(),
        rhs: kept.iter().map(|&i| o.rhs[i].rename(sr, |u| remap[u])).collect(),
    };
    let component = remap[s.selector.component];
    let selector = CanonicalSelector {
        buchi: kept.iter().filter(|&&i| i < s.selector.buchi).count(),
        component,
        finite: Some(component),
    };
    SelectedOmega { system, selector }
}
