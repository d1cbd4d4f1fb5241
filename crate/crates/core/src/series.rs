//! Words, polynomials, truncated series and lasso words.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{Ext, Semiring};

/// Index of a terminal in an [`Alphabet`].
pub type Letter = u16;

/// A terminal word.
pub type Word = Vec<Letter>;

/// A symbol of a monomial: a terminal or a variable index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    T(Letter),
    V(u32),
}

impl Sym {
    pub fn var(self) -> Option<usize> {
        match self {
            Sym::V(v) => Some(v as usize),
            Sym::T(_) => None,
        }
    }

    pub fn letter(self) -> Option<Letter> {
        match self {
            Sym::T(a) => Some(a),
            Sym::V(_) => None,
        }
    }
}

pub fn v(i: usize) -> Sym {
    Sym::V(i as u32)
}

pub fn t(a: Letter) -> Sym {
    Sym::T(a)
}

/// Length-lex comparison of symbol strings.
pub fn length_lex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The terminal alphabet Σ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub terminals: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Alphabet {
        Alphabet { terminals: names.into_iter().map(Into::into).collect() }
    }

    /// Single-character terminals from a string such as `"abc"`.
    pub fn chars(s: &str) -> Alphabet {
        Alphabet::new(s.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terminals.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.terminals.iter().position(|t| t == name).map(|i| i as Letter)
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.terminals[a as usize]
    }

    fn single_chars(&self) -> bool {
        self.terminals.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a terminal word. Single-character alphabets may be written
    /// without separators; otherwise symbols are separated by whitespace.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "eps" || s == "ε" {
            return Ok(Vec::new());
        }
        let tokens: Vec<String> = if self.single_chars() && !s.contains(char::is_whitespace) {
            s.chars().map(String::from).collect()
        } else {
            s.split_whitespace().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|tok| self.index(tok).ok_or_else(|| Error::InvalidValue(format!("unknown terminal `{tok}`"))))
            .collect()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "eps".into();
        }
        let sep = if self.single_chars() { "" } else { " " };
        w.iter().map(|&a| self.name(a)).collect::<Vec<_>>().join(sep)
    }

    /// All words of length at most `max_len`, in length-lex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let k = self.len() as Letter;
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for a in 0..k {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// A weighted word over terminals and variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Ext,
    pub word: Vec<Sym>,
}

impl Monomial {
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.word.iter().filter_map(|s| s.var())
    }

    pub fn is_eps(&self) -> bool {
        self.word.is_empty()
    }
}

/// A finite sum of monomials, kept sorted length-lex and merged by word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn from_terms(sr: Semiring, terms: impl IntoIterator<Item = (Ext, Vec<Sym>)>) -> Polynomial {
        let mut map: BTreeMap<LenLex, Ext> = BTreeMap::new();
        for (c, w) in terms {
            let e = map.entry(LenLex(w)).or_insert(sr.zero());
            *e = sr.add(*e, c);
        }
        Polynomial {
            terms: map
                .into_iter()
                .filter(|(_, c)| !sr.is_zero(*c))
                .map(|(w, coeff)| Monomial { coeff, word: w.0 })
                .collect(),
        }
    }

    pub fn monomial(sr: Semiring, coeff: Ext, word: Vec<Sym>) -> Polynomial {
        Polynomial::from_terms(sr, [(coeff, word)])
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, sr: Semiring, word: &[Sym]) -> Ext {
        self.terms.iter().find(|m| m.word == word).map_or(sr.zero(), |m| m.coeff)
    }

    pub fn eps_coeff(&self, sr: Semiring) -> Ext {
        self.coeff_of(sr, &[])
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().flat_map(Monomial::vars)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.vars().max()
    }

    pub fn add(&self, sr: Semiring, other: &Polynomial) -> Polynomial {
        Polynomial::from_terms(
            sr,
            self.terms.iter().chain(&other.terms).map(|m| (m.coeff, m.word.clone())),
        )
    }

    pub fn scale(&self, sr: Semiring, c: Ext) -> Polynomial {
        Polynomial::from_terms(sr, self.terms.iter().map(|m| (sr.mul(c, m.coeff), m.word.clone())))
    }

    /// The concatenation product.
    pub fn concat(&self, sr: Semiring, other: &Polynomial) -> Polynomial {
        let mut out = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut w = a.word.clone();
                w.extend_from_slice(&b.word);
                out.push((sr.mul(a.coeff, b.coeff), w));
            }
        }
        Polynomial::from_terms(sr, out)
    }

    /// Applies `f` to every symbol.
    pub fn map_syms(&self, sr: Semiring, mut f: impl FnMut(Sym) -> Sym) -> Polynomial {
        Polynomial::from_terms(
            sr,
            self.terms.iter().map(|m| (m.coeff, m.word.iter().map(|&s| f(s)).collect())),
        )
    }

    /// Renames variables by `f`.
    pub fn rename(&self, sr: Semiring, mut f: impl FnMut(usize) -> usize) -> Polynomial {
        self.map_syms(sr, |s| match s {
            Sym::V(i) => v(f(i as usize)),
            other => other,
        })
    }

    /// Replaces every variable occurrence by a polynomial.
    pub fn substitute_poly(&self, sr: Semiring, f: &dyn Fn(usize) -> Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for m in &self.terms {
            let mut prod = Polynomial::monomial(sr, m.coeff, Vec::new());
            for &s in &m.word {
                let factor = match s {
                    Sym::V(i) => f(i as usize),
                    Sym::T(_) => Polynomial::monomial(sr, sr.one(), vec![s]),
                };
                prod = prod.concat(sr, &factor);
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.add(sr, &prod);
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LenLex(Vec<Sym>);

impl PartialOrd for LenLex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LenLex {
    fn cmp(&self, other: &Self) -> Ordering {
        length_lex(&self.0, &other.0)
    }
}

/// The finite observation of a series: coefficients of all words up to `max_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    sr: Semiring,
    max_len: usize,
    coeffs: BTreeMap<Word, Ext>,
}

impl TruncatedSeries {
    pub fn zero(sr: Semiring, max_len: usize) -> Self {
        TruncatedSeries { sr, max_len, coeffs: BTreeMap::new() }
    }

    pub fn from_pairs(sr: Semiring, max_len: usize, pairs: impl IntoIterator<Item = (Word, Ext)>) -> Self {
        let mut s = TruncatedSeries::zero(sr, max_len);
        for (w, c) in pairs {
            s.accumulate(w, c);
        }
        s
    }

    pub fn semiring(&self) -> Semiring {
        self.sr
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Adds `c` to the coefficient of `w`; words beyond `max_len` are dropped.
    pub fn accumulate(&mut self, w: Word, c: Ext) {
        if w.len() > self.max_len || self.sr.is_zero(c) {
            return;
        }
        let sr = self.sr;
        let e = self.coeffs.entry(w).or_insert(sr.zero());
        *e = sr.add(*e, c);
    }

    pub fn coeff(&self, w: &[Letter]) -> Result<Ext> {
        if w.len() > self.max_len {
            return Err(Error::WordTooLong { len: w.len(), max_len: self.max_len });
        }
        Ok(self.coeffs.get(w).copied().unwrap_or(self.sr.zero()))
    }

    /// Nonzero coefficients in length-lex order.
    pub fn support(&self) -> Vec<(Word, Ext)> {
        let mut v: Vec<(Word, Ext)> = self.coeffs.iter().map(|(w, &c)| (w.clone(), c)).collect();
        v.sort_by(|a, b| length_lex(&a.0, &b.0));
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.coeffs {
            out.accumulate(w.clone(), c);
        }
        out
    }

    pub fn concat(&self, other: &Self) -> Self {
        let sr = self.sr;
        let mut out = TruncatedSeries::zero(sr, self.max_len);
        for (u, &a) in &self.coeffs {
            for (w, &b) in &other.coeffs {
                if u.len() + w.len() <= self.max_len {
                    let mut uw = u.clone();
                    uw.extend_from_slice(w);
                    out.accumulate(uw, sr.mul(a, b));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Ext) -> Self {
        let sr = self.sr;
        TruncatedSeries::from_pairs(sr, self.max_len, self.coeffs.iter().map(|(w, &x)| (w.clone(), sr.mul(c, x))))
    }

    /// Pointwise natural order.
    pub fn leq(&self, other: &Self) -> bool {
        self.coeffs.iter().all(|(w, &c)| self.sr.leq(c, other.coeffs.get(w).copied().unwrap_or(self.sr.zero())))
    }
}

/// Evaluates `p` with variables bound to truncated series.
pub fn substitute(
    sr: Semiring,
    p: &Polynomial,
    assignment: &[TruncatedSeries],
    max_len: usize,
) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(sr, max_len);
    for m in p.terms() {
        let mut prod = TruncatedSeries::from_pairs(sr, max_len, [(Vec::new(), m.coeff)]);
        for &s in &m.word {
            match s {
                Sym::T(a) => {
                    let lit = TruncatedSeries::from_pairs(sr, max_len, [(vec![a], sr.one())]);
                    prod = prod.concat(&lit);
                }
                Sym::V(i) => {
                    let x = assignment
                        .get(i as usize)
                        .ok_or_else(|| Error::UnboundVariable(format!("#{i}")))?;
                    prod = prod.concat(x);
                }
            }
            if prod.coeffs.is_empty() {
                break;
            }
        }
        out = out.add(&prod);
    }
    Ok(out)
}

/// Splits a polynomial over Σ ∪ Y into its z-linear part.
///
/// Each monomial `s w0 y_{i1} w1 … y_{ik} wk` contributes
/// `s w0 x_{i1} w1 … w_{j-1} z_{ij}` for every `j`. Entry `j` of the result
/// is the coefficient polynomial of `z_j` (over Σ ∪ X).
pub fn split_px(sr: Semiring, p: &Polynomial, n: usize) -> Vec<Polynomial> {
    let mut rows: Vec<Vec<(Ext, Vec<Sym>)>> = vec![Vec::new(); n];
    for m in p.terms() {
        for (cut, s) in m.word.iter().enumerate() {
            if let Sym::V(z) = *s {
                rows[z as usize].push((m.coeff, m.word[..cut].to_vec()));
            }
        }
    }
    rows.into_iter().map(|r| Polynomial::from_terms(sr, r)).collect()
}

/// An ultimately periodic word `u v^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lasso {
    prefix: Word,
    period: Word,
}

impl Lasso {
    pub fn new(prefix: Word, period: Word) -> Result<Lasso> {
        if period.is_empty() {
            return Err(Error::InvalidLasso("the period must be nonempty".into()));
        }
        Ok(Lasso { prefix, period })
    }

    /// Parses `u:v`; `:v` denotes an empty prefix.
    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<Lasso> {
        let (u, v) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidLasso(format!("`{s}` lacks the `u:v` separator")))?;
        Lasso::new(alphabet.parse_word(u)?, alphabet.parse_word(v)?)
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Number of positions in the lasso graph.
    pub fn nodes(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn letter(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[i - self.prefix.len()]
        }
    }

    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.nodes() {
            i + 1
        } else {
            self.prefix.len()
        }
    }

    /// The suffix starting at lasso position `i`.
    pub fn suffix(&self, i: usize) -> Lasso {
        if i < self.prefix.len() {
            Lasso { prefix: self.prefix[i..].to_vec(), period: self.period.clone() }
        } else {
            let j = i - self.prefix.len();
            let mut period = self.period[j..].to_vec();
            period.extend_from_slice(&self.period[..j]);
            Lasso { prefix: Vec::new(), period }
        }
    }

    /// The first `n` letters of `u v^ω`.
    pub fn take(&self, n: usize) -> Word {
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while out.len() < n {
            out.push(self.letter(i));
            i = self.succ(i);
        }
        out
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let u = if self.prefix.is_empty() { String::new() } else { alphabet.format_word(&self.prefix) };
        format!("{u}:{}", alphabet.format_word(&self.period))
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}", self.prefix, self.period)
    }
}
