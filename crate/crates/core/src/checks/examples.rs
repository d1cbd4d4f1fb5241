use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{parse_grammar, GrammarSystem};
use crate::gnf::select;
use crate::pda::{induced_finite_pda, induced_omega_pda, SimpleOmegaPDA};
use crate::semiring::Ext;
use crate::series::{Alphabet, Lasso};
use crate::system::{CanonicalSelector, EvalCaps, MixedSystem};

use super::CheckOutcome;

/// One value of a worked example; `null` stands for an inconclusive result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub example: String,
    pub query: String,
    pub value: Option<Ext>,
}

pub const DEFAULT_GOLDEN: &str = include_str!("../../fixtures/golden_examples.json");

struct Collector {
    example: &'static str,
    out: Vec<GoldenEntry>,
}

impl Collector {
    fn push(&mut self, query: String, value: Option<Ext>) {
        self.out.push(GoldenEntry { example: self.example.into(), query, value });
    }
}

fn lasso(al: &Alphabet, u: &str, v: &str) -> Result<Lasso> {
    Lasso::new(al.parse_word(u)?, al.parse_word(v)?)
}

fn anbn(n: usize) -> String {
    "a".repeat(n) + &"b".repeat(n)
}

fn mixed(text: &str) -> Result<(MixedSystem, CanonicalSelector)> {
    let g = parse_grammar(text)?;
    let sel = select(&g, None, None)?;
    match g.system {
        GrammarSystem::Mixed(m) => Ok((m, sel)),
        GrammarSystem::Omega(o) => Ok((o.induce_mixed(), sel)),
    }
}

/// Values of the worked examples, computed from the bundled fixtures.
pub fn example_values(caps: &EvalCaps) -> Result<Vec<GoldenEntry>> {
    let mut c = Collector { example: "algebraic-system", out: Vec::new() };

    let (m, sel) = mixed(include_str!("../../fixtures/algebraic_system.txt"))?;
    let al = m.alphabet().clone();
    let sol = m.x.least_solution_finite(8, 100)?;
    for w in ["", "ab", "abab", "aabb", "aabbab", "aab", "ba"] {
        c.push(format!("word {w}"), Some(sol[sel.component].coeff(&al.parse_word(w)?)?));
    }
    for (u, v, k) in [("", "ab", 1), ("", "a", 1), ("", "a", 2), ("ab", "aabb", 1)] {
        let l = lasso(&al, u, v)?;
        c.push(format!("lasso {u}:{v} k={k}"), m.canonical_omega_lasso(k, sel.component, &l, caps)?.value());
    }

    c.example = "mixed-algebraic-system";
    let (m, sel) = mixed(include_str!("../../fixtures/mixed_algebraic_system.txt"))?;
    let al = m.alphabet().clone();
    let sol = m.x.least_solution_finite(12, 100)?;
    for n in 1..=6 {
        let w = anbn(n);
        c.push(format!("word {w}"), Some(sol[0].coeff(&al.parse_word(&w)?)?));
    }
    for n in 0..=4 {
        let l = lasso(&al, &anbn(n), "c")?;
        c.push(format!("lasso {}:c k=1", anbn(n)), m.canonical_omega_lasso(1, sel.component, &l, caps)?.value());
    }

    c.example = "finite-simple";
    let (m, sel) = mixed(include_str!("../../fixtures/finite_simple.txt"))?;
    let al = m.alphabet().clone();
    let mut lassos: Vec<(String, &str)> = (1..=3).map(|n| (anbn(n), "ddc")).collect();
    lassos.push(("abddc".into(), "ddc"));
    for (u, v) in lassos {
        let l = lasso(&al, &u, v)?;
        c.push(format!("lasso {u}:{v} k=1"), m.canonical_omega_lasso(1, sel.component, &l, caps)?.value());
    }

    c.example = "simple-automaton";
    let GrammarSystem::Mixed(m) = parse_grammar(include_str!("../../fixtures/simple_automaton.txt"))?.system else {
        return Err(Error::Shape("expected x-variables".into()));
    };
    let start = m.x.var_index("S").ok_or_else(|| Error::UnboundVariable("S".into()))?;
    let a = induced_finite_pda(&m.x, start)?;
    for w in ["ab", "aabb", "abab", "abaaabbbab", "aabbaaabbb", "aab", "ba"] {
        c.push(format!("word {w}"), Some(a.behavior_finite(&a.alphabet().parse_word(w)?)));
    }

    c.example = "automaton";
    let a = SimpleOmegaPDA::from_json_str(include_str!("../../fixtures/anbn_c_automaton.json"))?;
    let al = a.alphabet().clone();
    let mut lassos: Vec<(String, &str)> = (0..=4).map(|n| (anbn(n), "c")).collect();
    lassos.push(("a".into(), "a"));
    lassos.push(("ab".into(), "abc"));
    for (u, v) in lassos {
        c.push(format!("lasso {u}:{v}"), a.behavior_omega_lasso(&lasso(&al, &u, v)?, caps)?.value());
    }

    c.example = "contrast";
    let (m, sel) = mixed(include_str!("../../fixtures/contrast_mixed.txt"))?;
    let finite = m.x.var_index("x2");
    let a = induced_omega_pda(&m, CanonicalSelector { finite, ..sel })?;
    let al = a.alphabet().clone();
    for (u, v) in [("", "aa"), ("a", "c"), ("acaa", "c"), ("", "c")] {
        c.push(format!("lasso {u}:{v}"), a.behavior_omega_lasso(&lasso(&al, u, v)?, caps)?.value());
    }
    for w in ["aa", "acca", "aaaa", "a", "ac"] {
        c.push(format!("word {w}"), Some(a.behavior_finite(&al.parse_word(w)?)));
    }
    Ok(c.out)
}

fn show(v: Option<Ext>) -> String {
    v.map_or("inconclusive".into(), |e| e.to_string())
}

/// Compares computed values with a golden JSON list, one case per entry.
pub fn compare_golden(golden: &str, actual: &[GoldenEntry]) -> Result<CheckOutcome> {
    let want: Vec<GoldenEntry> = serde_json::from_str(golden)?;
    let mut out = CheckOutcome::new("golden-examples");
    for g in &want {
        match actual.iter().find(|a| a.example == g.example && a.query == g.query) {
            Some(a) => out.record(a.value == g.value, || {
                format!("{} / {}: expected {}, got {}", g.example, g.query, show(g.value), show(a.value))
            }),
            None => out.fail(format!("{} / {}: no such query", g.example, g.query)),
        }
    }
    for a in actual {
        if !want.iter().any(|g| a.example == g.example && a.query == g.query) {
            out.fail(format!("{} / {}: missing from the golden file", a.example, a.query));
        }
    }
    Ok(out)
}
