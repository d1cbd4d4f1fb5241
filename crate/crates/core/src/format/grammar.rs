//! The grammar text format.
//!
//! ```text
//! # comment
//! @semiring tropical
//! @alphabet a b c
//! @sort x x1
//! @sort z z1 z2
//! @start z2
//! @buchi 1
//! x1 = (1) a x1 b | (1) a b
//! z1 = c z1
//! z2 = x1 z1 | z1
//! ```
//!
//! Variables are declared with a sort: `x` (finite part), `z` (linear
//! ω-part) or `y` (ω-algebraic). A file holds either y-variables only or
//! x- and z-variables. Every declared variable has exactly one equation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::semiring::{Ext, Semiring};
use crate::series::{Alphabet, Polynomial, Sym};
use crate::system::{AlgebraicSystem, MixedSystem, OmegaSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrammarSystem {
    Omega(OmegaSystem),
    Mixed(MixedSystem),
}

/// A parsed grammar file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub system: GrammarSystem,
    pub start: Option<String>,
    pub buchi: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sort {
    X,
    Z,
    Y,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

#[derive(Debug)]
enum Tok<'a> {
    Coeff(&'a str),
    Bar,
    Name(&'a str),
}

fn tokenize(s: &str, line: usize, col0: usize) -> Result<Vec<(usize, Tok<'_>)>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let col = col0 + s[..i].chars().count();
        if c.is_whitespace() {
            chars.next();
        } else if c == '|' {
            chars.next();
            out.push((col, Tok::Bar));
        } else if c == '(' {
            let Some(end) = s[i..].find(')') else {
                return err(line, col, "unclosed `(`");
            };
            out.push((col, Tok::Coeff(&s[i + 1..i + end])));
            while chars.peek().is_some_and(|&(j, _)| j <= i + end) {
                chars.next();
            }
        } else if c == ')' {
            return err(line, col, "unexpected `)`");
        } else {
            let start = i;
            let mut end = s.len();
            while let Some(&(j, d)) = chars.peek() {
                if d.is_whitespace() || d == '|' || d == '(' || d == ')' {
                    end = j;
                    break;
                }
                chars.next();
            }
            out.push((col, Tok::Name(&s[start..end])));
        }
    }
    Ok(out)
}

struct Decls {
    semiring: Option<Semiring>,
    alphabet: Option<Alphabet>,
    vars: Vec<(String, Sort)>,
    start: Option<String>,
    buchi: Option<usize>,
}

/// Parses a grammar file.
pub fn parse_grammar(text: &str) -> Result<Grammar> {
    let mut d = Decls { semiring: None, alphabet: None, vars: Vec::new(), start: None, buchi: None };
    let mut equations: Vec<(usize, usize, String, &str)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col = content.len() - trimmed.len() + 1;
        if let Some(directive) = trimmed.strip_prefix('@') {
            let mut parts = directive.split_whitespace();
            let name = parts.next().unwrap_or("");
            let args: Vec<&str> = parts.collect();
            match name {
                "semiring" => {
                    let [s] = args[..] else { return err(line, col, "@semiring takes one name") };
                    d.semiring = Some(s.parse().map_err(|e: Error| Error::Parse { line, col, msg: e.to_string() })?);
                }
                "alphabet" => {
                    if args.is_empty() {
                        return err(line, col, "@alphabet needs at least one terminal");
                    }
                    d.alphabet = Some(Alphabet::new(args.iter().copied()));
                }
                "sort" => {
                    let sort = match args.first() {
                        Some(&"x") => Sort::X,
                        Some(&"z") => Sort::Z,
                        Some(&"y") => Sort::Y,
                        _ => return err(line, col, "@sort expects x, z or y"),
                    };
                    for v in &args[1..] {
                        d.vars.push((v.to_string(), sort));
                    }
                }
                "start" => {
                    let [s] = args[..] else { return err(line, col, "@start takes one variable") };
                    d.start = Some(s.to_string());
                }
                "buchi" => {
                    let [s] = args[..] else { return err(line, col, "@buchi takes one number") };
                    d.buchi = Some(s.parse().map_err(|_| Error::Parse {
                        line,
                        col,
                        msg: format!("invalid Büchi count `{s}`"),
                    })?);
                }
                other => return err(line, col, format!("unknown directive `@{other}`")),
            }
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return err(line, col, "expected `name = polynomial`");
        };
        let lhs = trimmed[..eq].trim();
        if lhs.is_empty() || lhs.contains(char::is_whitespace) {
            return err(line, col, "malformed left-hand side");
        }
        let rhs_col = col + trimmed[..=eq].chars().count();
        equations.push((line, rhs_col, lhs.to_string(), &trimmed[eq + 1..]));
    }

    let sr = d.semiring.ok_or(Error::Parse { line: 1, col: 1, msg: "missing @semiring".into() })?;
    let alphabet = d.alphabet.ok_or(Error::Parse { line: 1, col: 1, msg: "missing @alphabet".into() })?;
    let mut index: HashMap<&str, (Sort, usize)> = HashMap::new();
    let mut counts = [0usize; 3];
    for (name, sort) in &d.vars {
        if alphabet.index(name).is_some() || ["eps", "ε", "0"].contains(&name.as_str()) {
            return err(1, 1, format!("`{name}` cannot name a variable"));
        }
        let slot = &mut counts[*sort as usize];
        if index.insert(name, (*sort, *slot)).is_some() {
            return err(1, 1, format!("variable `{name}` declared twice"));
        }
        *slot += 1;
    }
    let names = |s: Sort| -> Vec<String> {
        d.vars.iter().filter(|(_, t)| *t == s).map(|(n, _)| n.clone()).collect()
    };
    let (xs, zs, ys) = (names(Sort::X), names(Sort::Z), names(Sort::Y));
    if !ys.is_empty() && !(xs.is_empty() && zs.is_empty()) {
        return err(1, 1, "y-variables cannot be mixed with x- or z-variables");
    }

    let mut x_rhs: Vec<Option<Polynomial>> = vec![None; xs.len()];
    let mut y_rhs: Vec<Option<Polynomial>> = vec![None; ys.len()];
    let mut z_rhs: Vec<Option<Vec<Polynomial>>> = vec![None; zs.len()];
    for (line, col, lhs, rhs) in equations {
        let Some(&(sort, idx)) = index.get(lhs.as_str()) else {
            return err(line, 1, format!("undeclared variable `{lhs}`"));
        };
        let toks = tokenize(rhs, line, col)?;
        let monos = parse_monomials(sr, &alphabet, &index, &toks, line, col)?;
        match sort {
            Sort::X | Sort::Y => {
                let mut terms = Vec::new();
                for (c, w, _) in monos {
                    if let Some(s) = w.iter().find(|s| s.1.is_some_and(|t| t != sort)) {
                        return err(line, s.2, "variable of the wrong sort in this equation");
                    }
                    terms.push((c, w.into_iter().map(|s| s.0).collect()));
                }
                let slot = if sort == Sort::X { &mut x_rhs[idx] } else { &mut y_rhs[idx] };
                if slot.replace(Polynomial::from_terms(sr, terms)).is_some() {
                    return err(line, 1, format!("second equation for `{lhs}`"));
                }
            }
            Sort::Z => {
                let mut row: Vec<Vec<(Ext, Vec<Sym>)>> = vec![Vec::new(); zs.len()];
                for (c, mut w, cl) in monos {
                    let Some(last) = w.pop() else {
                        return err(line, cl, "z-equation monomials must end in a z-variable");
                    };
                    if last.1 != Some(Sort::Z) || w.iter().any(|s| s.1 == Some(Sort::Z)) {
                        return err(line, last.2, "z-equation monomials must be a word over terminals and x-variables followed by one z-variable");
                    }
                    let Sym::V(j) = last.0 else { unreachable!() };
                    row[j as usize].push((c, w.into_iter().map(|s| s.0).collect()));
                }
                let row = row.into_iter().map(|r| Polynomial::from_terms(sr, r)).collect();
                if z_rhs[idx].replace(row).is_some() {
                    return err(line, 1, format!("second equation for `{lhs}`"));
                }
            }
        }
    }
    let missing = |names: &[String], have: &dyn Fn(usize) -> bool| -> Result<()> {
        match (0..names.len()).find(|&i| !have(i)) {
            Some(i) => err(1, 1, format!("no equation for `{}`", names[i])),
            None => Ok(()),
        }
    };
    missing(&xs, &|i| x_rhs[i].is_some())?;
    missing(&ys, &|i| y_rhs[i].is_some())?;
    missing(&zs, &|i| z_rhs[i].is_some())?;

    if let Some(s) = &d.start {
        if !index.contains_key(s.as_str()) {
            return err(1, 1, format!("@start names unknown variable `{s}`"));
        }
    }
    let system = if !ys.is_empty() {
        GrammarSystem::Omega(OmegaSystem::new(sr, alphabet, ys, y_rhs.into_iter().map(Option::unwrap).collect())?)
    } else {
        let x = AlgebraicSystem::new(sr, alphabet, xs, x_rhs.into_iter().map(Option::unwrap).collect())?;
        GrammarSystem::Mixed(MixedSystem::new(x, zs, z_rhs.into_iter().map(Option::unwrap).collect())?)
    };
    Ok(Grammar { system, start: d.start, buchi: d.buchi })
}

type ParsedSym = (Sym, Option<Sort>, usize);

fn parse_monomials(
    sr: Semiring,
    alphabet: &Alphabet,
    index: &HashMap<&str, (Sort, usize)>,
    toks: &[(usize, Tok<'_>)],
    line: usize,
    col: usize,
) -> Result<Vec<(Ext, Vec<ParsedSym>, usize)>> {
    if let [(_, Tok::Name("0"))] = toks {
        return Ok(Vec::new());
    }
    if toks.is_empty() {
        return err(line, col, "empty right-hand side (write `0` for the zero polynomial)");
    }
    let mut out = Vec::new();
    for group in toks.split(|(_, t)| matches!(t, Tok::Bar)) {
        let Some((first_col, _)) = group.first() else {
            return err(line, col, "empty monomial between `|`");
        };
        let mut coeff = sr.one();
        let mut word = Vec::new();
        let mut saw_eps = false;
        for (i, (c, tok)) in group.iter().enumerate() {
            match tok {
                Tok::Coeff(s) => {
                    if i != 0 {
                        return err(line, *c, "coefficient must open the monomial");
                    }
                    coeff = sr
                        .parse_value(s)
                        .map_err(|e| Error::Parse { line, col: *c, msg: e.to_string() })?;
                }
                Tok::Name("eps") | Tok::Name("ε") => saw_eps = true,
                Tok::Name(name) => {
                    if let Some(a) = alphabet.index(name) {
                        word.push((Sym::T(a), None, *c));
                    } else if let Some(&(sort, idx)) = index.get(name) {
                        word.push((Sym::V(idx as u32), Some(sort), *c));
                    } else {
                        return err(line, *c, format!("unknown symbol `{name}`"));
                    }
                }
                Tok::Bar => unreachable!(),
            }
        }
        if saw_eps && !word.is_empty() {
            return err(line, *first_col, "`eps` cannot be combined with other symbols");
        }
        if !saw_eps && word.is_empty() && group.len() == 1 && !matches!(group[0].1, Tok::Coeff(_)) {
            return err(line, *first_col, "empty monomial");
        }
        out.push((coeff, word, *first_col));
    }
    Ok(out)
}

fn format_poly(sr: Semiring, alphabet: &Alphabet, p: &Polynomial, name: &dyn Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms()
        .iter()
        .map(|m| {
            let mut parts = Vec::new();
            if !sr.is_one(m.coeff) {
                parts.push(format!("({})", m.coeff));
            }
            if m.word.is_empty() {
                parts.push("eps".into());
            }
            for s in &m.word {
                parts.push(match *s {
                    Sym::T(a) => alphabet.name(a).to_string(),
                    Sym::V(v) => name(v as usize),
                });
            }
            parts.join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Canonical serialization; `parse_grammar` reads it back unchanged.
pub fn write_grammar(g: &Grammar) -> String {
    let mut out = String::new();
    let (sr, alphabet) = match &g.system {
        GrammarSystem::Omega(s) => (s.semiring, &s.alphabet),
        GrammarSystem::Mixed(m) => (m.semiring(), m.alphabet()),
    };
    out.push_str(&format!("@semiring {sr}\n@alphabet {}\n", alphabet.terminals.join(" ")));
    let sort_line = |tag: &str, names: &[String]| {
        if names.is_empty() {
            String::new()
        } else {
            format!("@sort {tag} {}\n", names.join(" "))
        }
    };
    match &g.system {
        GrammarSystem::Omega(s) => out.push_str(&sort_line("y", &s.vars)),
        GrammarSystem::Mixed(m) => {
            out.push_str(&sort_line("x", &m.x.vars));
            out.push_str(&sort_line("z", &m.z_vars));
        }
    }
    if let Some(s) = &g.start {
        out.push_str(&format!("@start {s}\n"));
    }
    if let Some(k) = g.buchi {
        out.push_str(&format!("@buchi {k}\n"));
    }
    match &g.system {
        GrammarSystem::Omega(s) => {
            let name = |i: usize| s.vars[i].clone();
            for (v, p) in s.vars.iter().zip(&s.rhs) {
                out.push_str(&format!("{v} = {}\n", format_poly(sr, alphabet, p, &name)));
            }
        }
        GrammarSystem::Mixed(m) => {
            let n = m.x.len();
            let name = |i: usize| if i < n { m.x.vars[i].clone() } else { m.z_vars[i - n].clone() };
            for (v, p) in m.x.vars.iter().zip(&m.x.rhs) {
                out.push_str(&format!("{v} = {}\n", format_poly(sr, alphabet, p, &name)));
            }
            for (i, v) in m.z_vars.iter().enumerate() {
                out.push_str(&format!("{v} = {}\n", format_poly(sr, alphabet, &m.z_equation(i), &name)));
            }
        }
    }
    out
}

impl Grammar {
    pub fn omega(system: OmegaSystem) -> Grammar {
        Grammar { system: GrammarSystem::Omega(system), start: None, buchi: None }
    }

    pub fn mixed(system: MixedSystem) -> Grammar {
        Grammar { system: GrammarSystem::Mixed(system), start: None, buchi: None }
    }

    pub fn with_start(mut self, start: Option<String>, buchi: Option<usize>) -> Grammar {
        self.start = start;
        self.buchi = buchi;
        self
    }

    pub fn semiring(&self) -> Semiring {
        match &self.system {
            GrammarSystem::Omega(s) => s.semiring,
            GrammarSystem::Mixed(m) => m.semiring(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match &self.system {
            GrammarSystem::Omega(s) => &s.alphabet,
            GrammarSystem::Mixed(m) => m.alphabet(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MIXED: &str = "\
@semiring tropical
@alphabet a b c
@sort x x1
@sort z z1 z2
@start z2
@buchi 1
x1 = (1) a b | (1) a x1 b
z1 = c z1
z2 = z1 | x1 z1
";

    #[test]
    fn parses_mixed_example() {
        let g = parse_grammar(MIXED).unwrap();
        let GrammarSystem::Mixed(m) = &g.system else { panic!() };
        assert_eq!(m.x.len(), 1);
        assert_eq!(m.z_len(), 2);
        assert_eq!(m.rho[1][0].len(), 2);
        assert_eq!(g.buchi, Some(1));
        assert_eq!(write_grammar(&g), MIXED);
    }

    #[test]
    fn reports_locations() {
        let bad = "@semiring tropical\n@alphabet a\n@sort x x1\nx1 = (zz) a\n";
        match parse_grammar(bad) {
            Err(Error::Parse { line: 4, col: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
        let bad = "@semiring tropical\n@alphabet a\n@sort x x1\nx1 = a q\n";
        assert!(matches!(parse_grammar(bad), Err(Error::Parse { line: 4, col: 8, .. })));
        let bad = "@semiring boolean\n@alphabet a\n@sort z z1\n@sort x x1\nx1 = a\nz1 = z1 a\n";
        assert!(matches!(parse_grammar(bad), Err(Error::Parse { line: 6, .. })));
        assert!(parse_grammar("@alphabet a\n").is_err());
    }

    #[test]
    fn eps_and_zero() {
        let src = "@semiring counting\n@alphabet a\n@sort y y1 y2\ny1 = (2) eps | y2\ny2 = 0\n";
        let g = parse_grammar(src).unwrap();
        assert_eq!(write_grammar(&g), src);
        let src2 = "@semiring counting\n@alphabet a\n@sort y y1 y2\ny1 = (2) | y2\ny2 = 0\n";
        assert_eq!(parse_grammar(src2).unwrap(), g);
    }
}
