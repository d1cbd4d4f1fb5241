//! Exact evaluation of canonical ω-solutions at lasso words.
//!
//! The lasso `u v^ω` becomes a graph on its `|u| + |v|` positions. Each
//! position carries a flag recording whether a factor read so far is empty,
//! so factor summaries `T_X[(n,f), (n',f')]` (the sum of `(σ_X, w)` over
//! factors `w` leading from `n` to `n'`) form a finite polynomial system over
//! scalars. Its least solution gives, for every `ρ_ij(σ)`, the weights of
//! empty and nonempty factors between positions. The canonical ω-value is
//! then the Büchi ω-value of the graph on (z-variable, position).

use serde::{Deserialize, Serialize};
use std::ops::Range;

use crate::buchi::BuchiGraph;
use crate::error::{Error, Result};
use crate::fixpoint::{least_solution, Equations};
use crate::semiring::{Ext, Semiring};
use crate::series::{Lasso, Letter, Monomial, Sym};

use super::{AlgebraicSystem, EvalCaps, MixedSystem};

/// Result of an ω-evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OmegaOutcome {
    Value { value: Ext },
    /// The fixed-point rounds ran out before the summaries stabilized.
    Inconclusive { rounds: usize },
}

impl OmegaOutcome {
    pub fn value(self) -> Option<Ext> {
        match self {
            OmegaOutcome::Value { value } => Some(value),
            OmegaOutcome::Inconclusive { .. } => None,
        }
    }

    pub fn is_inconclusive(self) -> bool {
        matches!(self, OmegaOutcome::Inconclusive { .. })
    }
}

/// ω-values at every (z-variable, lasso position) together with the
/// one-step factor weights between them.
#[derive(Clone, Debug)]
pub struct LassoTable {
    pub positions: usize,
    /// `values[j * positions + n]`.
    pub values: Vec<Ext>,
    /// Empty factors `(from, to, weight)` between nodes.
    pub eps: Vec<(usize, usize, Ext)>,
    /// Nonempty factors `(from, to, weight)` between nodes.
    pub steps: Vec<(usize, usize, Ext)>,
}

impl LassoTable {
    pub fn value(&self, j: usize, n: usize) -> Ext {
        self.values[j * self.positions + n]
    }

    /// `Σ` over first factors of weight times the value after them.
    pub fn unfold(&self, sr: Semiring, node: usize) -> Ext {
        let e = self.eps.iter().filter(|e| e.0 == node).map(|&(_, t, w)| sr.mul(w, self.values[t]));
        let s = self.steps.iter().filter(|e| e.0 == node).map(|&(_, t, w)| sr.mul(w, self.values[t]));
        sr.sum(e.chain(s))
    }
}

/// Flagged lasso states `(n, f)` at index `2n + f`; `f = 1` once a letter was read.
pub(crate) struct FlaggedLasso<'a> {
    pub lasso: &'a Lasso,
    pub states: usize,
}

impl<'a> FlaggedLasso<'a> {
    pub fn new(lasso: &'a Lasso) -> Self {
        FlaggedLasso { lasso, states: 2 * lasso.nodes() }
    }

    /// `row · L_a`.
    fn read(&self, sr: Semiring, row: &[Ext], a: Letter) -> Vec<Ext> {
        let mut out = vec![sr.zero(); self.states];
        for n in 0..self.lasso.nodes() {
            if self.lasso.letter(n) != a {
                continue;
            }
            let to = 2 * self.lasso.succ(n) + 1;
            for f in 0..2 {
                out[to] = sr.add(out[to], row[2 * n + f]);
            }
        }
        out
    }

    fn times(&self, sr: Semiring, row: &[Ext], m: &[Ext]) -> Vec<Ext> {
        let s = self.states;
        let mut out = vec![sr.zero(); s];
        for (p, &x) in row.iter().enumerate() {
            if sr.is_zero(x) {
                continue;
            }
            for q in 0..s {
                out[q] = sr.add(out[q], sr.mul(x, m[p * s + q]));
            }
        }
        out
    }

    /// Row of the monomial's factor matrix from `start`, with variable
    /// summaries looked up through `table`.
    pub fn monomial_row<'t>(
        &self,
        sr: Semiring,
        m: &Monomial,
        start: usize,
        table: &dyn Fn(usize) -> &'t [Ext],
    ) -> Vec<Ext> {
        let mut row = vec![sr.zero(); self.states];
        row[start] = m.coeff;
        for &s in &m.word {
            row = match s {
                Sym::T(a) => self.read(sr, &row, a),
                Sym::V(x) => self.times(sr, &row, table(x as usize)),
            };
            if row.iter().all(|&x| sr.is_zero(x)) {
                break;
            }
        }
        row
    }
}

/// The factor-summary system of an algebraic system over a lasso.
pub(crate) struct FactorSystem<'a> {
    pub sys: &'a AlgebraicSystem,
    pub flagged: FlaggedLasso<'a>,
    /// Variables whose summaries are needed, and the inverse map.
    pub vars: Vec<usize>,
    pub block_of: Vec<usize>,
}

impl<'a> FactorSystem<'a> {
    pub fn new(sys: &'a AlgebraicSystem, lasso: &'a Lasso, roots: impl IntoIterator<Item = usize>) -> Self {
        let reach = sys.reachable(roots);
        let vars: Vec<usize> = (0..sys.len()).filter(|&v| reach[v]).collect();
        let mut block_of = vec![usize::MAX; sys.len()];
        for (b, &v) in vars.iter().enumerate() {
            block_of[v] = b;
        }
        FactorSystem { sys, flagged: FlaggedLasso::new(lasso), vars, block_of }
    }

    fn size(&self) -> usize {
        self.flagged.states * self.flagged.states
    }

    pub fn table<'v>(&self, vals: &'v [Ext], x: usize) -> &'v [Ext] {
        let b = self.block_of[x];
        &vals[b * self.size()..(b + 1) * self.size()]
    }
}

impl Equations for FactorSystem<'_> {
    fn blocks(&self) -> usize {
        self.vars.len()
    }

    fn block_range(&self, b: usize) -> Range<usize> {
        b * self.size()..(b + 1) * self.size()
    }

    fn eval_block(&self, b: usize, vals: &[Ext], out: &mut [Ext]) {
        let sr = self.sys.semiring;
        let s = self.flagged.states;
        out.fill(sr.zero());
        let lookup = |x: usize| self.table(vals, x);
        for m in self.sys.rhs[self.vars[b]].terms() {
            for p in 0..s {
                let row = self.flagged.monomial_row(sr, m, p, &lookup);
                for (q, x) in row.into_iter().enumerate() {
                    out[p * s + q] = sr.add(out[p * s + q], x);
                }
            }
        }
    }
}

impl MixedSystem {
    /// Component `i` of `ρ(σ)^{ω,k}` at the lasso word.
    pub fn canonical_omega_lasso(&self, k: usize, i: usize, lasso: &Lasso, caps: &EvalCaps) -> Result<OmegaOutcome> {
        if i >= self.z_len() {
            return Err(Error::IndexOutOfRange { index: i, limit: self.z_len() });
        }
        Ok(match self.canonical_omega_table(k, lasso, caps)? {
            Some(t) => OmegaOutcome::Value { value: t.value(i, 0) },
            None => OmegaOutcome::Inconclusive { rounds: caps.max_rounds },
        })
    }

    /// Values of `ρ(σ)^{ω,k}` at every suffix position of the lasso; `None`
    /// when the factor summaries did not stabilize within the caps.
    pub fn canonical_omega_table(&self, k: usize, lasso: &Lasso, caps: &EvalCaps) -> Result<Option<LassoTable>> {
        let sr = self.semiring();
        if !sr.is_idempotent() {
            return Err(Error::Unsupported(sr, "ω-evaluation needs an idempotent semiring".into()));
        }
        let m = self.z_len();
        if k > m {
            return Err(Error::IndexOutOfRange { index: k, limit: m });
        }
        check_lasso(self.alphabet().len(), lasso)?;
        let roots: Vec<usize> = self.rho.iter().flatten().flat_map(|p| p.vars().collect::<Vec<_>>()).collect();
        let fs = FactorSystem::new(&self.x, lasso, roots);
        let vals = match least_solution(&fs, sr, caps.max_rounds) {
            Ok(v) => v,
            Err(_) => return Ok(None),
        };
        let positions = lasso.nodes();
        let lookup = |x: usize| fs.table(&vals, x);
        let accepting = (0..m * positions).map(|node| node / positions < k).collect();
        let mut g = BuchiGraph::new(sr, accepting);
        for (j, row) in self.rho.iter().enumerate() {
            for (j2, p) in row.iter().enumerate() {
                for n in 0..positions {
                    let mut acc = vec![sr.zero(); fs.flagged.states];
                    for mono in p.terms() {
                        let r = fs.flagged.monomial_row(sr, mono, 2 * n, &lookup);
                        for (q, x) in r.into_iter().enumerate() {
                            acc[q] = sr.add(acc[q], x);
                        }
                    }
                    g.add_eps(j * positions + n, j2 * positions + n, acc[2 * n]);
                    for n2 in 0..positions {
                        g.add_step(j * positions + n, j2 * positions + n2, acc[2 * n2 + 1], false);
                    }
                }
            }
        }
        let all: Vec<usize> = (0..m * positions).collect();
        let values = g.omega_from(&all);
        Ok(Some(LassoTable {
            positions,
            values,
            eps: g.eps.clone(),
            steps: g.steps.iter().map(|&(f, t, w, _)| (f, t, w)).collect(),
        }))
    }
}

pub(crate) fn check_lasso(letters: usize, lasso: &Lasso) -> Result<()> {
    if lasso.prefix().iter().chain(lasso.period()).any(|&a| a as usize >= letters) {
        return Err(Error::InvalidLasso("letter outside the alphabet".into()));
    }
    Ok(())
}
