use rand::Rng;

use crate::error::Result;
use crate::gnf::{char_to_mixed, decomposition_to_gnf, finite_gnf, mixed_gnf, trim_mixed, unmix, SelectedMixed};
use crate::pda::{induced_finite_pda, induced_omega_pda};
use crate::semiring::{Ext, Semiring};
use crate::series::Lasso;
use crate::system::{EvalCaps, OmegaOutcome};

use super::{fixture_decompositions, gen, lasso_test_set, CheckOutcome};

fn show(v: Option<Ext>) -> String {
    v.map_or("inconclusive".into(), |e| e.to_string())
}

/// Kleene iteration, the derivation oracle and the induced automaton agree
/// on every word up to `max_len`, for random GNF systems.
pub fn gnf_oracle_agreement(seed: u64, cases: usize, max_len: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("gnf-least-solution-oracle-automaton");
    let mut rng = gen::rng(seed.wrapping_add(10));
    for case in 0..cases {
        let sr = [Semiring::Boolean, Semiring::Tropical][case % 2];
        let n = rng.random_range(1..=3);
        let letters = rng.random_range(1..=2);
        let sys = gen::gnf_system(&mut rng, sr, n, letters);
        let sol = match sys.least_solution_finite(max_len, max_len + 2) {
            Ok(s) => s,
            Err(e) => {
                out.fail(format!("case {case}: {e}"));
                continue;
            }
        };
        let words = sys.alphabet.words_up_to(max_len);
        let mut bad = None;
        'comp: for (i, series) in sol.iter().enumerate() {
            let pda = induced_finite_pda(&sys, i)?;
            for w in &words {
                let k = series.coeff(w)?;
                let o = sys.oracle_coeff_gnf(i, w)?;
                let a = pda.behavior_finite(w);
                if k != o || k != a {
                    bad = Some(format!(
                        "case {case} ({sr}), x{} at {:?}: kleene {k}, oracle {o}, automaton {a}",
                        i + 1,
                        sys.alphabet.format_word(w)
                    ));
                    break 'comp;
                }
            }
        }
        out.record(bad.is_none(), || bad.unwrap());
    }
    Ok(out)
}

/// The GNF transform keeps the least solution, word by word up to `max_len`.
pub fn finite_gnf_preserves(seed: u64, cases: usize, max_len: usize, caps: &EvalCaps) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("finite-gnf-preserves-least-solution");
    let mut rng = gen::rng(seed.wrapping_add(11));
    for case in 0..cases {
        let sr = [Semiring::Boolean, Semiring::Tropical][case % 2];
        let n = rng.random_range(1..=3);
        let letters = rng.random_range(1..=2);
        let sys = gen::system(&mut rng, sr, n, letters);
        let want = sys.least_solution_finite(max_len, 1000)?;
        let g = finite_gnf(&sys, caps)?;
        if !g.system.is_proper_gnf() {
            out.fail(format!("case {case}: output is not proper GNF"));
            continue;
        }
        let got = g.system.least_solution_finite(max_len, max_len + 2)?;
        let mut bad = None;
        'comp: for i in 0..n {
            for w in sys.alphabet.words_up_to(max_len) {
                let mut c = g.map[i].map_or(Ok(sr.zero()), |j| got[j].coeff(&w))?;
                if w.is_empty() {
                    c = sr.add(c, g.eps[i]);
                }
                let e = want[i].coeff(&w)?;
                if c != e {
                    bad = Some(format!(
                        "case {case} ({sr}), x{} at {:?}: input {e}, gnf {c}",
                        i + 1,
                        sys.alphabet.format_word(&w)
                    ));
                    break 'comp;
                }
            }
        }
        out.record(bad.is_none(), || bad.unwrap());
    }
    Ok(out)
}

fn mixed_value(s: &SelectedMixed, l: &Lasso, caps: &EvalCaps) -> Result<Option<Ext>> {
    Ok(s.system.canonical_omega_lasso(s.selector.buchi, s.selector.component, l, caps)?.value())
}

/// The four routes from a decomposition to a value on a lasso agree.
pub fn pipeline_agreement(caps: &EvalCaps) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("pipeline-agreement");
    let lassos = lasso_test_set();
    for fx in fixture_decompositions()? {
        let d = &fx.decomposition;
        let direct = char_to_mixed(d)?;
        let via_pairs = trim_mixed(&decomposition_to_gnf(d, caps)?);
        let via_mixed = trim_mixed(&mixed_gnf(&direct, caps)?);
        if !via_pairs.system.is_gnf() || !via_mixed.system.is_gnf() {
            out.fail(format!("{}: GNF stage output is not in GNF", fx.name));
            continue;
        }
        let omega = unmix(&via_pairs)?;
        let induced = omega.system.induce_mixed();
        let pda = induced_omega_pda(&via_pairs.system, via_pairs.selector)?;
        for l in &lassos {
            let vals = [
                mixed_value(&direct, l, caps)?,
                mixed_value(&via_pairs, l, caps)?,
                mixed_value(&via_mixed, l, caps)?,
                induced.canonical_omega_lasso(omega.selector.buchi, omega.selector.component, l, caps)?.value(),
                pda.behavior_omega_lasso(l, caps)?.value(),
            ];
            if vals.iter().all(Option::is_none) {
                out.inconclusive += 1;
            }
            out.record(vals.iter().all(|v| *v == vals[0]), || {
                format!(
                    "{} at {}: direct {}, pairs {}, mixed-gnf {}, unmixed {}, automaton {}",
                    fx.name,
                    l.display(&d.alphabet),
                    show(vals[0]),
                    show(vals[1]),
                    show(vals[2]),
                    show(vals[3]),
                    show(vals[4])
                )
            });
        }
    }
    Ok(out)
}

/// The value at Büchi count `k` is below the value at `k + 1`.
pub fn buchi_monotonicity(caps: &EvalCaps) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("buchi-monotonicity");
    let lassos = lasso_test_set();
    for fx in fixture_decompositions()? {
        let s = char_to_mixed(&fx.decomposition)?;
        let sr = s.system.semiring();
        let c = s.selector.component;
        for l in &lassos {
            let vals = (1..=s.system.z_len())
                .map(|k| s.system.canonical_omega_lasso(k, c, l, caps))
                .collect::<Result<Vec<OmegaOutcome>>>()?;
            for (k, w) in vals.windows(2).enumerate() {
                match (w[0].value(), w[1].value()) {
                    (Some(a), Some(b)) => out.record(sr.leq(a, b), || {
                        format!("{} at {}: k = {} gives {a}, k + 1 gives {b}", fx.name, l.display(&fx.decomposition.alphabet), k + 1)
                    }),
                    _ => out.inconclusive += 1,
                }
            }
        }
    }
    Ok(out)
}
