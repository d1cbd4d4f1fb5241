use omegalg::checks::gen;
use omegalg::format::{parse_grammar, write_grammar, Grammar, GrammarSystem};
use omegalg::gnf::finite_gnf;
use omegalg::matrix::{Matrix, StarForm};
use omegalg::pda::{induced_finite_pda, induced_omega_pda, Configuration};
use omegalg::series::{split_px, substitute, t, v, Lasso, Letter, Polynomial, TruncatedSeries};
use omegalg::system::{CanonicalSelector, EvalCaps, MixedSystem};
use omegalg::{Ext, Semiring};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::Rng;

fn semiring() -> impl Strategy<Value = Semiring> {
    prop::sample::select(Semiring::ALL.to_vec())
}

fn grid_value(sr: Semiring) -> impl Strategy<Value = Ext> {
    prop::sample::select(sr.grid())
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (semiring(), 1usize..=4).prop_flat_map(|(sr, n)| {
        prop::collection::vec(prop_oneof![Just(sr.zero()), grid_value(sr)], n * n)
            .prop_map(move |vals| Matrix::square(sr, n, &vals).unwrap())
    })
}

fn polynomial(sr: Semiring, vars: usize) -> impl Strategy<Value = Polynomial> {
    let sym = prop_oneof![(0..2 as Letter).prop_map(t), (0..vars).prop_map(v)];
    prop::collection::vec((grid_value(sr), prop::collection::vec(sym, 0..4)), 0..4)
        .prop_map(move |terms| Polynomial::from_terms(sr, terms))
}

fn series(sr: Semiring, max_len: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((prop::collection::vec(0..2 as Letter, 0..=max_len), grid_value(sr)), 0..5)
        .prop_map(move |pairs| TruncatedSeries::from_pairs(sr, max_len, pairs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semiring_laws((sr, a, b, c) in semiring().prop_flat_map(|sr| (Just(sr), grid_value(sr), grid_value(sr), grid_value(sr)))) {
        prop_assert_eq!(sr.add(sr.add(a, b), c), sr.add(a, sr.add(b, c)));
        prop_assert_eq!(sr.mul(sr.mul(a, b), c), sr.mul(a, sr.mul(b, c)));
        prop_assert_eq!(sr.mul(a, sr.add(b, c)), sr.add(sr.mul(a, b), sr.mul(a, c)));
        prop_assert_eq!(sr.mul(sr.add(a, b), c), sr.add(sr.mul(a, c), sr.mul(b, c)));
        prop_assert_eq!(sr.mul(a, sr.zero()), sr.zero());
        prop_assert_eq!(sr.add(a, sr.zero()), a);
        prop_assert_eq!(sr.mul(sr.one(), a), a);
    }

    #[test]
    fn star_and_omega_identities((sr, a, b) in semiring().prop_flat_map(|sr| (Just(sr), grid_value(sr), grid_value(sr)))) {
        let (o, st, om) = (sr.one(), |x| sr.star(x), |x| sr.omega(x));
        let m = |x, y| sr.mul(x, y);
        let p = |x, y| sr.add(x, y);
        prop_assert_eq!(st(a), p(o, m(a, st(a))));
        prop_assert_eq!(st(a), p(o, m(st(a), a)));
        prop_assert_eq!(m(a, om(a)), om(a));
        prop_assert_eq!(st(p(a, b)), m(st(a), st(m(b, st(a)))));
        prop_assert_eq!(st(m(a, b)), p(o, m(m(a, st(m(b, a))), b)));
        prop_assert_eq!(om(p(a, b)), p(om(m(st(a), b)), m(st(m(st(a), b)), om(a))));
        prop_assert_eq!(om(m(a, b)), m(a, om(m(b, a))));
    }

    #[test]
    fn matrix_star_is_partition_independent(m in matrix()) {
        let s = m.star().unwrap();
        for n1 in 1..m.rows() {
            prop_assert_eq!(&m.star_split(n1, StarForm::Left).unwrap(), &s);
            prop_assert_eq!(&m.star_split(n1, StarForm::Right).unwrap(), &s);
        }
        let id = Matrix::identity(m.semiring(), m.rows());
        prop_assert_eq!(&id.add(&s.mul(&m).unwrap()).unwrap(), &s);
    }

    #[test]
    fn matrix_omega_is_partition_independent(m in matrix()) {
        let n = m.rows();
        let w = m.omega().unwrap();
        for n1 in 1..n {
            prop_assert_eq!(&m.omega_split(n1).unwrap(), &w);
        }
        prop_assert_eq!(&m.omega_t(n).unwrap(), &w);
        for t in 0..=n {
            let base = m.omega_t(t).unwrap();
            for k in t..=n {
                prop_assert_eq!(&m.omega_t_alt(t, k).unwrap(), &base, "t = {}, k = {}", t, k);
            }
        }
    }

    #[test]
    fn matrix_omega_is_a_fixed_point(m in matrix()) {
        for l in 0..=m.rows() {
            let w = m.omega_t(l).unwrap();
            prop_assert_eq!(&m.mul_vec(&w).unwrap(), &w, "l = {}", l);
        }
    }

    #[test]
    fn boolean_buchi_semantics(vals in (1usize..=5).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n))) {
        let n = (vals.len() as f64).sqrt() as usize;
        let sr = Semiring::Boolean;
        let m = Matrix::square(sr, n, &vals.iter().map(|&b| if b { Ext::ONE } else { Ext::ZERO }).collect::<Vec<_>>()).unwrap();
        // Warshall closure over paths of length ≥ 1
        let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| vals[i * n + j]).collect()).collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
                }
            }
        }
        for t in 0..=n {
            let w = m.omega_t(t).unwrap();
            for j in 0..n {
                let want = (0..t).any(|i| r[i][i] && (i == j || r[j][i]));
                prop_assert_eq!(w.entries[j] == Ext::ONE, want, "t = {}, j = {}", t, j);
            }
        }
    }

    #[test]
    fn split_is_linear((sr, p, q) in semiring().prop_flat_map(|sr| (Just(sr), polynomial(sr, 3), polynomial(sr, 3)))) {
        let sum = split_px(sr, &p.add(sr, &q), 3);
        let (sp, sq) = (split_px(sr, &p, 3), split_px(sr, &q, 3));
        for j in 0..3 {
            prop_assert_eq!(&sum[j], &sp[j].add(sr, &sq[j]));
        }
    }

    #[test]
    fn substitution_is_monotone(
        (sr, p, base, extra) in semiring().prop_flat_map(|sr| (
            Just(sr),
            polynomial(sr, 2),
            prop::collection::vec(series(sr, 3), 2),
            prop::collection::vec(series(sr, 3), 2),
        ))
    ) {
        let bigger: Vec<TruncatedSeries> = base.iter().zip(&extra).map(|(a, b)| a.add(b)).collect();
        let lo = substitute(sr, &p, &base, 3).unwrap();
        let hi = substitute(sr, &p, &bigger, 3).unwrap();
        prop_assert!(lo.leq(&hi));
    }
}

/// A random mixed GNF system: a GNF x-part and `ρ` entries `a` or `a x`.
fn mixed_gnf_system(seed: u64) -> (MixedSystem, CanonicalSelector, Lasso) {
    let mut rng = gen::rng(seed);
    let sr = [Semiring::Boolean, Semiring::Tropical, Semiring::Arctic][rng.random_range(0..3)];
    let n = rng.random_range(1..=3);
    let letters = rng.random_range(1..=2);
    let x = gen::gnf_system(&mut rng, sr, n, letters);
    let m = rng.random_range(1..=3);
    let coeffs = [Ext::Fin(0), Ext::Fin(1), Ext::Fin(2)];
    let mut rho = MixedSystem::empty_rho(m);
    for row in rho.iter_mut() {
        for cell in row.iter_mut() {
            if rng.random_bool(0.5) {
                let a = t(rng.random_range(0..letters) as Letter);
                let w = if rng.random_bool(0.5) { vec![a] } else { vec![a, v(rng.random_range(0..n))] };
                let c = if sr == Semiring::Boolean { Ext::ONE } else { *coeffs.choose(&mut rng).unwrap() };
                *cell = Polynomial::monomial(sr, c, w);
            }
        }
    }
    let z_vars = (1..=m).map(|i| format!("z{i}")).collect();
    let sys = MixedSystem::new(x, z_vars, rho).unwrap();
    let sel = CanonicalSelector {
        buchi: rng.random_range(1..=m),
        component: rng.random_range(0..m),
        finite: Some(rng.random_range(0..n)),
    };
    let word = |rng: &mut rand_chacha::ChaCha8Rng, lo: usize| -> Vec<Letter> {
        (0..rng.random_range(lo..=3)).map(|_| rng.random_range(0..letters) as Letter).collect()
    };
    let u = word(&mut rng, 0);
    let lasso = Lasso::new(u, word(&mut rng, 1)).unwrap();
    (sys, sel, lasso)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gnf_least_solution_oracle_and_automaton_agree(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let sr = if seed % 2 == 0 { Semiring::Boolean } else { Semiring::Tropical };
        let n = rng.random_range(1..=3);
        let letters = rng.random_range(1..=2);
        let sys = gen::gnf_system(&mut rng, sr, n, letters);
        let sol = sys.least_solution_finite(6, 8).unwrap();
        for (i, s) in sol.iter().enumerate() {
            let a = induced_finite_pda(&sys, i).unwrap();
            for w in sys.alphabet.words_up_to(6) {
                let k = s.coeff(&w).unwrap();
                prop_assert_eq!(k, sys.oracle_coeff_gnf(i, &w).unwrap());
                prop_assert_eq!(k, a.behavior_finite(&w));
            }
        }
    }

    #[test]
    fn finite_gnf_keeps_the_least_solution(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let sr = if seed % 2 == 0 { Semiring::Boolean } else { Semiring::Tropical };
        let n = rng.random_range(1..=3);
        let sys = gen::system(&mut rng, sr, n, 2);
        let want = sys.least_solution_finite(4, 1000).unwrap();
        let g = finite_gnf(&sys, &EvalCaps::default()).unwrap();
        prop_assert!(g.system.is_proper_gnf());
        let got = g.system.least_solution_finite(4, 6).unwrap();
        for i in 0..n {
            for w in sys.alphabet.words_up_to(4) {
                let mut c = g.map[i].map_or(sr.zero(), |j| got[j].coeff(&w).unwrap());
                if w.is_empty() {
                    c = sr.add(c, g.eps[i]);
                }
                prop_assert_eq!(c, want[i].coeff(&w).unwrap());
            }
        }
    }

    #[test]
    fn induced_automaton_realizes_the_canonical_solution(seed in any::<u64>()) {
        let (sys, sel, lasso) = mixed_gnf_system(seed);
        let caps = EvalCaps::default();
        let a = induced_omega_pda(&sys, sel).unwrap();
        let sr = sys.semiring();
        let want = sys.canonical_omega_lasso(sel.buchi, sel.component, &lasso, &caps).unwrap().value();
        let finite = sel.finite.unwrap();
        prop_assert_eq!(a.behavior_omega_lasso(&lasso, &caps).unwrap().value(), want);
        let m = sys.z_len();
        let n = sys.x.len();
        for s in m..=m + n {
            let r = a.omega_from(&Configuration::new(s, vec![]), &lasso, &caps).unwrap();
            prop_assert_eq!(r.value(), Some(sr.zero()), "state {}", s);
        }
        let sol = sys.x.least_solution_finite(4, 6).unwrap();
        for w in sys.alphabet().words_up_to(4) {
            prop_assert_eq!(a.behavior_finite(&w), sol[finite].coeff(&w).unwrap());
            for z in 0..m {
                prop_assert_eq!(a.behavior_finite_from(z, &w), sr.zero());
            }
        }
    }

    #[test]
    fn one_step_unfolding(seed in any::<u64>()) {
        let (sys, sel, lasso) = mixed_gnf_system(seed);
        let caps = EvalCaps::default();
        let a = induced_omega_pda(&sys, sel).unwrap();
        let sr = sys.semiring();
        let rest = lasso.suffix(1);
        let symbols = a.matrix.stack_symbols.len();
        for s in 0..a.n_states() {
            for stack in [vec![], vec![symbols - 1], vec![0, symbols - 1]] {
                let c = Configuration::new(s, stack);
                let here = a.omega_from(&c, &lasso, &caps).unwrap().value();
                let mut sum = Some(sr.zero());
                for (next, w) in a.matrix.successors(&c, lasso.letter(0)) {
                    let x = a.omega_from(&next, &rest, &caps).unwrap().value();
                    sum = sum.zip(x).map(|(s, x)| sr.add(s, sr.mul(w, x)));
                }
                if here.is_some() && sum.is_some() {
                    prop_assert_eq!(here, sum);
                }
            }
        }
    }

    #[test]
    fn grammar_round_trip(seed in any::<u64>()) {
        let (sys, _, _) = mixed_gnf_system(seed);
        let text = write_grammar(&Grammar::mixed(sys.clone()));
        let back = parse_grammar(&text).unwrap();
        prop_assert_eq!(&back.system, &GrammarSystem::Mixed(sys));
        prop_assert_eq!(write_grammar(&back), text);
    }
}
