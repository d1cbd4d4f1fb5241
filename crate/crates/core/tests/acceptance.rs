//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use omegalg::checks::{
    gnf_oracle_agreement, matrix_omega_fixed_point, matrix_omega_partition, matrix_star_partition,
    pipeline_agreement, scalar_identities, CheckOutcome,
};
use omegalg::format::{parse_grammar, GrammarSystem};
use omegalg::pda::{induced_finite_pda, induced_omega_pda, SimpleOmegaPDA};
use omegalg::series::{Alphabet, Lasso};
use omegalg::system::{CanonicalSelector, EvalCaps, MixedSystem};
use omegalg::{Ext, Result};

type Verdict = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Verdict);

fn mixed(text: &str) -> MixedSystem {
    match parse_grammar(text).unwrap().system {
        GrammarSystem::Mixed(m) => m,
        GrammarSystem::Omega(o) => o.induce_mixed(),
    }
}

fn lasso(al: &Alphabet, u: &str, v: &str) -> Lasso {
    Lasso::new(al.parse_word(u).unwrap(), al.parse_word(v).unwrap()).unwrap()
}

fn spell(al: &Alphabet, w: &[u16]) -> String {
    w.iter().map(|&a| al.name(a)).collect()
}

fn anbn(n: usize) -> String {
    "a".repeat(n) + &"b".repeat(n)
}

fn expect(what: String, got: Option<Ext>, want: Ext) -> Verdict {
    if got == Some(want) {
        Ok(())
    } else {
        Err(format!("{what}: expected {want}, got {got:?}"))
    }
}

fn outcome(o: Result<CheckOutcome>) -> Verdict {
    match o {
        Ok(o) if o.passed() => Ok(()),
        Ok(o) => Err(o.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn c1() -> Verdict {
    let m = mixed(include_str!("../fixtures/mixed_algebraic_system.txt"));
    let al = m.alphabet().clone();
    let sol = m.x.least_solution_finite(12, 100).map_err(|e| e.to_string())?;
    for n in 1..=6 {
        let got = sol[0].coeff(&al.parse_word(&anbn(n)).unwrap()).ok();
        expect(format!("σ at {}", anbn(n)), got, Ext::Fin(n as u64))?;
    }
    let z2 = m.z_index("z2").unwrap();
    for n in 0..=4 {
        let l = lasso(&al, &anbn(n), "c");
        let got = m.canonical_omega_lasso(1, z2, &l, &EvalCaps::default()).map_err(|e| e.to_string())?;
        expect(format!("ω at ({}, c)", anbn(n)), got.value(), Ext::Fin(n as u64))?;
    }
    Ok(())
}

/// Membership in `(Σ_{n≥1} a^n b^n)*`.
fn in_block_star(w: &str) -> bool {
    let b = w.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let na = b[i..].iter().take_while(|&&c| c == b'a').count();
        let nb = b[i + na..].iter().take_while(|&&c| c == b'b').count();
        if na == 0 || na != nb {
            return false;
        }
        i += na + nb;
    }
    true
}

fn c2() -> Verdict {
    let m = mixed(include_str!("../fixtures/algebraic_system.txt"));
    let al = m.alphabet().clone();
    let sol = m.x.least_solution_finite(8, 100).map_err(|e| e.to_string())?;
    for w in al.words_up_to(8) {
        let text = spell(&al, &w);
        let want = if in_block_star(&text) { Ext::ONE } else { Ext::ZERO };
        expect(format!("y1 at {text:?}"), sol[0].coeff(&w).ok(), want)?;
    }
    let caps = EvalCaps::default();
    for (v, k, want) in [("ab", 1, Ext::ONE), ("a", 1, Ext::ZERO), ("a", 2, Ext::ONE)] {
        let got = m.canonical_omega_lasso(k, 0, &lasso(&al, "", v), &caps).map_err(|e| e.to_string())?;
        expect(format!("(ε, {v}) at k = {k}"), got.value(), want)?;
    }
    Ok(())
}

fn c3() -> Verdict {
    let m = mixed(include_str!("../fixtures/finite_simple.txt"));
    let al = m.alphabet().clone();
    let z1 = m.z_index("z1").unwrap();
    let caps = EvalCaps::default();
    let mut cases: Vec<(String, u64)> = (1..=3).map(|n| (anbn(n), n as u64)).collect();
    cases.push(("abddc".into(), 1));
    for (u, want) in cases {
        let got = m.canonical_omega_lasso(1, z1, &lasso(&al, &u, "ddc"), &caps).map_err(|e| e.to_string())?;
        expect(format!("({u}, ddc)"), got.value(), Ext::Fin(want))?;
    }
    Ok(())
}

fn c4() -> Verdict {
    let m = mixed(include_str!("../fixtures/simple_automaton.txt"));
    let a = induced_finite_pda(&m.x, m.x.var_index("S").unwrap()).map_err(|e| e.to_string())?;
    let al = a.alphabet().clone();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for k in 1..=3u32 {
        for code in 0..3usize.pow(k) {
            blocks.push((0..k).map(|i| code / 3usize.pow(i) % 3 + 1).collect());
        }
    }
    // 20 of the 39 block sequences, spread over all lengths
    for ns in blocks.iter().step_by(2).take(20) {
        let w: String = ns.iter().map(|&n| anbn(n)).collect();
        let want = Ext::Fin(*ns.iter().max().unwrap() as u64);
        expect(w.clone(), Some(a.behavior_finite(&al.parse_word(&w).unwrap())), want)?;
    }
    for w in ["", "a", "b", "ba", "aab", "abb", "abba", "aabbb", "abaabbb", "bab"] {
        expect(format!("{w:?}"), Some(a.behavior_finite(&al.parse_word(w).unwrap())), Ext::NegInf)?;
    }
    Ok(())
}

fn c5() -> Verdict {
    let a = SimpleOmegaPDA::from_json_str(include_str!("../fixtures/anbn_c_automaton.json")).map_err(|e| e.to_string())?;
    let al = a.alphabet().clone();
    let caps = EvalCaps::default();
    let mut cases: Vec<(String, &str, Ext)> = (0..=4).map(|n| (anbn(n), "c", Ext::Fin(n as u64))).collect();
    cases.push(("a".into(), "a", Ext::Inf));
    cases.push(("ab".into(), "abc", Ext::Inf));
    cases.push(("ab".into(), "abb", Ext::Inf));
    for (u, v, want) in cases {
        let got = a.behavior_omega_lasso(&lasso(&al, &u, v), &caps).map_err(|e| e.to_string())?;
        expect(format!("({u}, {v})"), got.value(), want)?;
    }
    Ok(())
}

/// Membership in `c*a`.
fn in_cstar_a(w: &str) -> bool {
    w.strip_suffix('a').is_some_and(|p| p.chars().all(|c| c == 'c'))
}

/// Membership in `(a c* a)^+`.
fn in_acstara_plus(w: &str) -> bool {
    let b = w.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i] != b'a' {
            return false;
        }
        let nc = b[i + 1..].iter().take_while(|&&c| c == b'c').count();
        if b.get(i + 1 + nc) != Some(&b'a') {
            return false;
        }
        i += nc + 2;
    }
    !b.is_empty()
}

fn c6() -> Verdict {
    let m = mixed(include_str!("../fixtures/contrast_mixed.txt"));
    let sel = CanonicalSelector { buchi: 1, component: m.z_index("z2").unwrap(), finite: m.x.var_index("x2") };
    let a = induced_omega_pda(&m, sel).map_err(|e| e.to_string())?;
    let al = a.alphabet().clone();
    let caps = EvalCaps::default();
    for (u, v, want) in [("", "aa", Ext::ZERO), ("a", "c", Ext::ONE), ("acaa", "c", Ext::ONE)] {
        let got = a.behavior_omega_lasso(&lasso(&al, u, v), &caps).map_err(|e| e.to_string())?;
        expect(format!("({u}, {v})"), got.value(), want)?;
    }
    let x1 = a.matrix.states.iter().position(|s| s == "x1").unwrap();
    let x2 = a.matrix.states.iter().position(|s| s == "x2").unwrap();
    for w in al.words_up_to(8) {
        let text = spell(&al, &w);
        let b = |m: bool| if m { Ext::ONE } else { Ext::ZERO };
        expect(format!("x1 at {text:?}"), Some(a.behavior_finite_from(x1, &w)), b(in_cstar_a(&text)))?;
        expect(format!("x2 at {text:?}"), Some(a.behavior_finite_from(x2, &w)), b(in_acstara_plus(&text)))?;
    }
    Ok(())
}

fn c7() -> Verdict {
    outcome(matrix_star_partition(0, 200))?;
    outcome(matrix_omega_partition(0, 200))?;
    outcome(Ok(scalar_identities()))?;
    outcome(matrix_omega_fixed_point(0, 200))
}

fn c8() -> Verdict {
    outcome(gnf_oracle_agreement(0, 100, 6))
}

fn c9() -> Verdict {
    outcome(pipeline_agreement(&EvalCaps::default()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("tropical mixed system a^n b^n c^ω ↦ n", c1),
        ("boolean system (Σ a^n b^n)* and its canonical solutions", c2),
        ("GNF pair system a^n b^n ((dd)*c)^ω ↦ n", c3),
        ("arctic simple automaton computes the largest block", c4),
        ("tropical ω-automaton a^n b^n c^ω ↦ n", c5),
        ("induced ω-automaton excludes (a c* a)^ω", c6),
        ("star and ω identity suites, 200 cases each", c7),
        ("Kleene, derivation oracle and induced automaton agree", c8),
        ("decomposition pipeline agrees across four routes", c9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}\n    {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
