use crate::error::{Error, Result};
use crate::format::{parse_grammar, GrammarSystem};
use crate::gnf::{OmegaDecomposition, OmegaTerm, SFactor, SeriesRef};
use crate::semiring::Semiring;
use crate::series::{Alphabet, Lasso};

/// A named sum `Σ s_j t_j^ω`.
#[derive(Clone, Debug)]
pub struct FixtureDecomposition {
    pub name: &'static str,
    pub decomposition: OmegaDecomposition,
}

const ALPHABET: &str = "a b c";

// (name, semiring, [(s, t)]): `#v` is a scalar, otherwise `;`-separated
// equations whose first left-hand side is the designated variable.
type Row = (&'static str, &'static str, &'static [(&'static str, &'static str)]);

const TABLE: &[Row] = &[
    ("anbn-c", "boolean", &[("x = a x b | a b", "x = c")]),
    ("weighted-anbn-ccc", "tropical", &[("x = (1) a x b | (1) a b", "x = c | b y x; y = b")]),
    ("scalar-bstar-a", "tropical", &[("#2", "x = a | b x")]),
    ("two-terms-arctic", "arctic", &[("x = (1) a x | (1) a", "x = b"), ("x = a b", "x = (2) a b")]),
    ("eps-in-t", "boolean", &[("x = a", "x = b x | c | eps")]),
    ("nested-s", "tropical", &[("x = (1) a x y | (1) a y; y = b", "x = c"), ("#3", "x = a x | b")]),
    ("dyck-s", "boolean", &[("x = a x b x | eps", "x = c | a b")]),
    ("arctic-bstar-a", "arctic", &[("x = (2) a | (1) a x", "x = b x | a")]),
    ("palindromic-t", "tropical", &[("#1", "x = a y | b; y = x a")]),
    ("boolean-pair", "boolean", &[("#1", "x = a"), ("x = b | b x", "x = a b | c")]),
];

fn series(sr: Semiring, eqs: &str) -> Result<SeriesRef> {
    let eqs: Vec<&str> = eqs.split(';').map(str::trim).collect();
    let vars: Vec<&str> = eqs
        .iter()
        .map(|e| e.split('=').next().unwrap_or("").trim())
        .collect();
    let text = format!("@semiring {sr}\n@alphabet {ALPHABET}\n@sort x {}\n{}\n", vars.join(" "), eqs.join("\n"));
    match parse_grammar(&text)?.system {
        GrammarSystem::Mixed(m) => SeriesRef::new(m.x, 0),
        GrammarSystem::Omega(_) => Err(Error::Shape("expected x-variables".into())),
    }
}

/// Ten small decompositions with at most two terms over `{a, b, c}`.
pub fn fixture_decompositions() -> Result<Vec<FixtureDecomposition>> {
    TABLE
        .iter()
        .map(|&(name, sr, terms)| {
            let sr: Semiring = sr.parse()?;
            let terms = terms
                .iter()
                .map(|&(s, t)| {
                    let s = match s.strip_prefix('#') {
                        Some(v) => SFactor::Scalar(sr.parse_value(v)?),
                        None => SFactor::Series(series(sr, s)?),
                    };
                    Ok(OmegaTerm { s, t: series(sr, t)? })
                })
                .collect::<Result<Vec<_>>>()?;
            let decomposition = OmegaDecomposition { semiring: sr, alphabet: Alphabet::chars("abc"), terms };
            Ok(FixtureDecomposition { name, decomposition })
        })
        .collect()
}

/// Ten lassos over `{a, b, c}`.
pub fn lasso_test_set() -> Vec<Lasso> {
    let al = Alphabet::chars("abc");
    [
        ("", "a"),
        ("", "ab"),
        ("a", "c"),
        ("ab", "c"),
        ("aabb", "c"),
        ("", "abc"),
        ("b", "ab"),
        ("aab", "ba"),
        ("c", "cab"),
        ("abab", "bc"),
    ]
    .iter()
    .map(|(u, v)| Lasso::new(al.parse_word(u).unwrap(), al.parse_word(v).unwrap()).unwrap())
    .collect()
}
