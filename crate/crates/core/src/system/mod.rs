//! ω-algebraic systems `y = p(y)` and mixed systems `x = p(x), z = ρ(x) z`.

mod lasso;
mod solve;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::series::{split_px, Alphabet, Polynomial, Sym};

pub(crate) use lasso::check_lasso;
pub use lasso::{LassoTable, OmegaOutcome};

/// Limits for evaluations that iterate to a fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCaps {
    /// Maximal number of fixed-point rounds before giving up.
    pub max_rounds: usize,
}

impl Default for EvalCaps {
    fn default() -> Self {
        EvalCaps { max_rounds: 10_000 }
    }
}

/// A polynomial system `x = p(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicSystem {
    pub semiring: Semiring,
    pub alphabet: Alphabet,
    pub vars: Vec<String>,
    pub rhs: Vec<Polynomial>,
}

/// An ω-algebraic system `y = p(y)`; same shape as an algebraic system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSystem {
    pub semiring: Semiring,
    pub alphabet: Alphabet,
    pub vars: Vec<String>,
    pub rhs: Vec<Polynomial>,
}

/// A mixed system: the finite part `x` and the z-linear part `ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSystem {
    pub x: AlgebraicSystem,
    pub z_vars: Vec<String>,
    /// `rho[i][j]` is the coefficient of `z_j` in the equation of `z_i`.
    pub rho: Vec<Vec<Polynomial>>,
}

/// Selects a component of the `buchi`-th canonical solution: the ω-part at
/// z-variable `component`, and the finite part at x-variable `finite` if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSelector {
    pub buchi: usize,
    pub component: usize,
    pub finite: Option<usize>,
}

fn check_poly(sr: Semiring, al: &Alphabet, nvars: usize, p: &Polynomial, what: &str) -> Result<()> {
    for m in p.terms() {
        sr.check(m.coeff)?;
        for s in &m.word {
            match *s {
                Sym::T(a) if a as usize >= al.len() => {
                    return Err(Error::Shape(format!("{what}: terminal #{a} outside the alphabet")))
                }
                Sym::V(i) if i as usize >= nvars => {
                    return Err(Error::UnboundVariable(format!("#{i} in {what}")))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Shape check for `{ε} ∪ Σ ∪ ΣV ∪ ΣVV`.
fn quadratic_gnf_word(w: &[Sym], allow_eps: bool) -> bool {
    match w.split_first() {
        None => allow_eps,
        Some((Sym::T(_), rest)) => rest.len() <= 2 && rest.iter().all(|s| s.var().is_some()),
        Some(_) => false,
    }
}

impl AlgebraicSystem {
    pub fn new(semiring: Semiring, alphabet: Alphabet, vars: Vec<String>, rhs: Vec<Polynomial>) -> Result<Self> {
        if vars.len() != rhs.len() {
            return Err(Error::Dimension(format!("{} variables, {} equations", vars.len(), rhs.len())));
        }
        for (name, p) in vars.iter().zip(&rhs) {
            check_poly(semiring, &alphabet, vars.len(), p, name)?;
        }
        Ok(AlgebraicSystem { semiring, alphabet, vars, rhs })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Every monomial lies in `{ε} ∪ Σ ∪ ΣX ∪ ΣXX`.
    pub fn is_gnf(&self) -> bool {
        self.rhs.iter().all(|p| p.terms().iter().all(|m| quadratic_gnf_word(&m.word, true)))
    }

    /// GNF without empty-word monomials.
    pub fn is_proper_gnf(&self) -> bool {
        self.rhs.iter().all(|p| p.terms().iter().all(|m| quadratic_gnf_word(&m.word, false)))
    }
}

impl OmegaSystem {
    pub fn new(semiring: Semiring, alphabet: Alphabet, vars: Vec<String>, rhs: Vec<Polynomial>) -> Result<Self> {
        let a = AlgebraicSystem::new(semiring, alphabet, vars, rhs)?;
        Ok(OmegaSystem::from(a))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_gnf(&self) -> bool {
        self.rhs.iter().all(|p| p.terms().iter().all(|m| quadratic_gnf_word(&m.word, true)))
    }

    /// The induced mixed system: `x = p(x)` and `z = p_x(x, z)`.
    pub fn induce_mixed(&self) -> MixedSystem {
        let sr = self.semiring;
        let n = self.len();
        MixedSystem {
            x: AlgebraicSystem::from(self.clone()),
            z_vars: self.vars.iter().map(|v| format!("z_{v}")).collect(),
            rho: self.rhs.iter().map(|p| split_px(sr, p, n)).collect(),
        }
    }
}

impl From<OmegaSystem> for AlgebraicSystem {
    fn from(s: OmegaSystem) -> Self {
        AlgebraicSystem { semiring: s.semiring, alphabet: s.alphabet, vars: s.vars, rhs: s.rhs }
    }
}

impl From<AlgebraicSystem> for OmegaSystem {
    fn from(s: AlgebraicSystem) -> Self {
        OmegaSystem { semiring: s.semiring, alphabet: s.alphabet, vars: s.vars, rhs: s.rhs }
    }
}

impl MixedSystem {
    pub fn new(x: AlgebraicSystem, z_vars: Vec<String>, rho: Vec<Vec<Polynomial>>) -> Result<Self> {
        let m = z_vars.len();
        if rho.len() != m || rho.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension(format!("rho must be {m}x{m}")));
        }
        for (name, row) in z_vars.iter().zip(&rho) {
            for p in row {
                check_poly(x.semiring, &x.alphabet, x.len(), p, name)?;
            }
        }
        Ok(MixedSystem { x, z_vars, rho })
    }

    pub fn semiring(&self) -> Semiring {
        self.x.semiring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.x.alphabet
    }

    pub fn z_len(&self) -> usize {
        self.z_vars.len()
    }

    /// x-part in `{ε} ∪ Σ ∪ ΣX ∪ ΣXX` and every `ρ_ij` in `Σ ∪ ΣX`.
    pub fn is_gnf(&self) -> bool {
        self.x.is_gnf() && self.z_part_is_gnf()
    }

    pub fn z_part_is_gnf(&self) -> bool {
        self.rho.iter().flatten().all(|p| {
            p.terms().iter().all(|m| match m.word.split_first() {
                Some((Sym::T(_), rest)) => rest.len() <= 1 && rest.iter().all(|s| s.var().is_some()),
                _ => false,
            })
        })
    }

    /// The z-equation of `z_i` as a polynomial over Σ ∪ X ∪ Z, with z-variables
    /// numbered after the x-variables.
    pub fn z_equation(&self, i: usize) -> Polynomial {
        let sr = self.semiring();
        let n = self.x.len();
        let mut terms = Vec::new();
        for (j, p) in self.rho[i].iter().enumerate() {
            for m in p.terms() {
                let mut w = m.word.clone();
                w.push(crate::series::v(n + j));
                terms.push((m.coeff, w));
            }
        }
        Polynomial::from_terms(sr, terms)
    }

    pub fn z_index(&self, name: &str) -> Option<usize> {
        self.z_vars.iter().position(|v| v == name)
    }

    /// Zero entries everywhere except where given.
    pub fn empty_rho(m: usize) -> Vec<Vec<Polynomial>> {
        vec![vec![Polynomial::zero(); m]; m]
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Ext;
    use crate::series::{t, v};

    fn poly(sr: Semiring, terms: &[(u64, Vec<Sym>)]) -> Polynomial {
        Polynomial::from_terms(sr, terms.iter().map(|(c, w)| (Ext::Fin(*c), w.clone())))
    }

    #[test]
    fn induce_algebraic_example() {
        let b = Semiring::Boolean;
        let (a, bb) = (t(0), t(1));
        let sys = OmegaSystem::new(
            b,
            Alphabet::chars("ab"),
            vec!["y1".into(), "y2".into()],
            vec![poly(b, &[(1, vec![v(1), v(0)]), (1, vec![])]), poly(b, &[(1, vec![a, v(1), bb]), (1, vec![])])],
        )
        .unwrap();
        let m = sys.induce_mixed();
        assert_eq!(m.x.rhs, sys.rhs);
        assert_eq!(m.rho[0][0], poly(b, &[(1, vec![v(1)])]));
        assert_eq!(m.rho[0][1], poly(b, &[(1, vec![])]));
        assert_eq!(m.rho[1][1], poly(b, &[(1, vec![a])]));
        assert!(m.rho[1][0].is_zero());
        assert!(!sys.is_gnf());
        assert!(!m.is_gnf());
    }

    #[test]
    fn induce_variable_free() {
        let b = Semiring::Boolean;
        let sys = OmegaSystem::new(b, Alphabet::chars("a"), vec!["y1".into()], vec![poly(b, &[(1, vec![t(0)])])])
            .unwrap();
        let m = sys.induce_mixed();
        assert!(m.rho[0][0].is_zero());
    }

    #[test]
    fn induce_merges_monomials() {
        let c = Semiring::Counting;
        let (a, cc) = (t(0), t(1));
        let sys = OmegaSystem::new(
            c,
            Alphabet::chars("ac"),
            vec!["y1".into(), "y2".into()],
            vec![poly(c, &[(1, vec![a]), (1, vec![cc, v(0)])]), poly(c, &[(1, vec![a, v(0), v(1)]), (1, vec![a, v(0)])])],
        )
        .unwrap();
        let m = sys.induce_mixed();
        assert_eq!(m.rho[0][0], poly(c, &[(1, vec![cc])]));
        assert_eq!(m.rho[1][0], poly(c, &[(2, vec![a])]));
        assert_eq!(m.rho[1][1], poly(c, &[(1, vec![a, v(0)])]));
        assert!(m.is_gnf());
    }

    #[test]
    fn gnf_predicates() {
        let b = Semiring::Boolean;
        let x = AlgebraicSystem::new(
            b,
            Alphabet::chars("a"),
            vec!["x1".into(), "x2".into()],
            vec![poly(b, &[(1, vec![v(1), v(0)]), (1, vec![])]), poly(b, &[(1, vec![t(0)])])],
        )
        .unwrap();
        assert!(!x.is_gnf());
        let mut rho = MixedSystem::empty_rho(1);
        rho[0][0] = poly(b, &[(1, vec![])]);
        let ok_x = AlgebraicSystem::new(b, Alphabet::chars("a"), vec!["x1".into()], vec![poly(b, &[(1, vec![t(0)])])])
            .unwrap();
        let m = MixedSystem::new(ok_x, vec!["z1".into()], rho).unwrap();
        assert!(m.x.is_gnf());
        assert!(!m.is_gnf());
    }

    #[test]
    fn validation() {
        let b = Semiring::Boolean;
        let bad = AlgebraicSystem::new(b, Alphabet::chars("a"), vec!["x".into()], vec![poly(b, &[(1, vec![v(3)])])]);
        assert!(matches!(bad, Err(Error::UnboundVariable(_))));
        let bad = AlgebraicSystem::new(b, Alphabet::chars("a"), vec!["x".into()], vec![poly(b, &[(1, vec![t(4)])])]);
        assert!(bad.is_err());
    }
}
