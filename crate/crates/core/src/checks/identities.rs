use rand::Rng;

use crate::error::Result;
use crate::matrix::{Matrix, StarForm};
use crate::semiring::{Ext, Semiring};

use super::gen;
use super::CheckOutcome;

fn pick<R: Rng>(rng: &mut R, case: usize) -> (Semiring, usize) {
    (Semiring::ALL[case % Semiring::ALL.len()], rng.random_range(1..=4))
}

/// Semiring axioms over every triple of grid values.
pub fn semiring_axioms() -> CheckOutcome {
    let mut out = CheckOutcome::new("semiring-axioms");
    for sr in Semiring::ALL {
        let g = sr.grid();
        let (z, o) = (sr.zero(), sr.one());
        for &a in &g {
            out.record(sr.add(a, z) == a && sr.mul(a, o) == a && sr.mul(o, a) == a, || {
                format!("{sr}: identities fail at {a}")
            });
            out.record(sr.mul(a, z) == z && sr.mul(z, a) == z, || format!("{sr}: {a}·0 ≠ 0"));
            for &b in &g {
                out.record(sr.add(a, b) == sr.add(b, a), || format!("{sr}: {a}+{b} not commutative"));
                for &c in &g {
                    let ok = sr.add(sr.add(a, b), c) == sr.add(a, sr.add(b, c))
                        && sr.mul(sr.mul(a, b), c) == sr.mul(a, sr.mul(b, c))
                        && sr.mul(a, sr.add(b, c)) == sr.add(sr.mul(a, b), sr.mul(a, c))
                        && sr.mul(sr.add(a, b), c) == sr.add(sr.mul(a, c), sr.mul(b, c));
                    out.record(ok, || format!("{sr}: associativity or distributivity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    out
}

/// Star and ω identities over all grid values and pairs.
pub fn scalar_identities() -> CheckOutcome {
    let mut out = CheckOutcome::new("scalar-star-omega");
    for sr in Semiring::ALL {
        let g = sr.grid();
        let (o, st, om) = (sr.one(), |x| sr.star(x), |x| sr.omega(x));
        let m = |x, y| sr.mul(x, y);
        let p = |x, y| sr.add(x, y);
        for &a in &g {
            let ok = st(a) == p(o, m(a, st(a))) && st(a) == p(o, m(st(a), a));
            out.record(ok, || format!("{sr}: a* = 1 + a a* fails at {a}"));
            out.record(m(a, om(a)) == om(a), || format!("{sr}: a a^ω = a^ω fails at {a}"));
            for &b in &g {
                let sum_star = st(p(a, b)) == m(st(a), st(m(b, st(a))));
                let prod_star = st(m(a, b)) == p(o, m(m(a, st(m(b, a))), b));
                let ab = m(st(a), b);
                let sum_omega = om(p(a, b)) == p(om(ab), m(st(ab), om(a)));
                let prod_omega = om(m(a, b)) == m(a, om(m(b, a)));
                out.record(sum_star, || format!("{sr}: sum-star fails at ({a}, {b})"));
                out.record(prod_star, || format!("{sr}: product-star fails at ({a}, {b})"));
                out.record(sum_omega, || format!("{sr}: sum-omega fails at ({a}, {b})"));
                out.record(prod_omega, || format!("{sr}: product-omega fails at ({a}, {b})"));
            }
        }
    }
    out
}

/// Both block forms of `M*` agree with the sweep for every split point.
pub fn matrix_star_partition(seed: u64, cases: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("matrix-star-partition");
    let mut rng = gen::rng(seed);
    for case in 0..cases {
        let (sr, n) = pick(&mut rng, case);
        let m = gen::matrix(&mut rng, sr, n);
        let s = m.star()?;
        for n1 in 1..n {
            for form in [StarForm::Left, StarForm::Right] {
                let got = m.star_split(n1, form)?;
                out.record(got == s, || format!("{sr}: split {n1} {form:?} differs for {:?}", m.to_rows()));
            }
        }
        let id = Matrix::identity(sr, n);
        out.record(s == id.add(&m.mul(&s)?)?, || format!("{sr}: M* ≠ 1 + M M* for {:?}", m.to_rows()));
    }
    Ok(out)
}

/// `M^ω` through every split point, and `M^{ω,t}` through every `k ≥ t`.
pub fn matrix_omega_partition(seed: u64, cases: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("matrix-omega-partition");
    let mut rng = gen::rng(seed.wrapping_add(1));
    for case in 0..cases {
        let (sr, n) = pick(&mut rng, case);
        let m = gen::matrix(&mut rng, sr, n);
        let w = m.omega()?;
        for n1 in 1..n {
            out.record(m.omega_split(n1)? == w, || format!("{sr}: ω split {n1} differs for {:?}", m.to_rows()));
        }
        out.record(m.omega_t(n)? == w, || format!("{sr}: M^(ω,n) ≠ M^ω for {:?}", m.to_rows()));
        for t in 0..=n {
            let base = m.omega_t(t)?;
            for k in t..=n {
                let alt = m.omega_t_alt(t, k)?;
                out.record(alt == base, || format!("{sr}: (t, k) = ({t}, {k}) differs for {:?}", m.to_rows()));
            }
        }
    }
    Ok(out)
}

/// `M M^{ω,l} = M^{ω,l}` for every `l`.
pub fn matrix_omega_fixed_point(seed: u64, cases: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("matrix-omega-fixed-point");
    let mut rng = gen::rng(seed.wrapping_add(2));
    for case in 0..cases {
        let (sr, n) = pick(&mut rng, case);
        let m = gen::matrix(&mut rng, sr, n);
        for l in 0..=n {
            let w = m.omega_t(l)?;
            out.record(m.mul_vec(&w)? == w, || format!("{sr}: l = {l} not a fixed point for {:?}", m.to_rows()));
        }
    }
    Ok(out)
}

/// Boolean `M^{ω,t}` against a graph search: some `i < t` on a cycle is
/// reachable from `j`.
pub fn boolean_buchi_oracle(seed: u64, cases: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("boolean-buchi-oracle");
    let mut rng = gen::rng(seed.wrapping_add(3));
    let sr = Semiring::Boolean;
    for _ in 0..cases {
        let n = rng.random_range(1..=5);
        let m = gen::matrix(&mut rng, sr, n);
        let edge = |i: usize, j: usize| m.get(i, j) != Ext::ZERO;
        // reach[i][j]: a path of length ≥ 1 from i to j
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            let mut stack: Vec<usize> = (0..n).filter(|&j| edge(i, j)).collect();
            while let Some(j) = stack.pop() {
                if !row[j] {
                    row[j] = true;
                    stack.extend((0..n).filter(|&k| edge(j, k)));
                }
            }
        }
        for t in 0..=n {
            let w = m.omega_t(t)?;
            for j in 0..n {
                let want = (0..t).any(|i| reach[i][i] && (i == j || reach[j][i]));
                let got = w.entries[j] == Ext::ONE;
                out.record(got == want, || format!("t = {t}, row {j}: got {got} for {:?}", m.to_rows()));
            }
        }
    }
    Ok(out)
}
