use std::fs;
use std::path::Path;
use std::process::ExitCode;

use omegalg::checks::{run_suite, CheckConfig, Suite};
use omegalg::format::{parse_grammar, write_grammar, Grammar, GrammarSystem};
use omegalg::gnf::{gnf_pipeline, select, GnfTarget};
use omegalg::pda::{induced_finite_pda, induced_omega_pda, SimpleOmegaPDA};
use omegalg::series::{Alphabet, Lasso};
use omegalg::system::{AlgebraicSystem, CanonicalSelector, EvalCaps, OmegaOutcome};
use omegalg::{Error, Ext};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, SuiteArg, Target};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Inconclusive = 3,
}

impl From<Code> for ExitCode {
    fn from(c: Code) -> ExitCode {
        ExitCode::from(c as u8)
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::InvalidLasso(_) => Code::Usage,
            Error::NotStabilized(_) => Code::Inconclusive,
            _ => Code::Fail,
        };
        Failure { code, message: e.to_string() }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: Code::Usage, message: message.into() }
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure { code: Code::Fail, message: format!("{}: {e}", path.display()) })
}

fn load_grammar(path: &Path) -> Res<Grammar> {
    parse_grammar(&read(path)?).map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..e.into() })
}

/// Writes through a sibling temporary file so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Res<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let fail = |e: std::io::Error| Failure { code: Code::Fail, message: format!("{}: {e}", path.display()) };
    fs::write(&tmp, contents).map_err(fail)?;
    fs::rename(&tmp, path).map_err(fail)
}

fn print_json(v: Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
}

/// A variable by name or by 1-based index.
fn resolve(names: &[String], s: &str) -> Res<usize> {
    if let Some(i) = names.iter().position(|n| n == s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(k) if (1..=names.len()).contains(&k) => Ok(k - 1),
        Ok(k) => Err(usage(Error::IndexOutOfRange { index: k, limit: names.len() }.to_string())),
        Err(_) => Err(usage(Error::UnboundVariable(s.to_string()).to_string())),
    }
}

fn omega_names(g: &Grammar) -> &[String] {
    match &g.system {
        GrammarSystem::Omega(o) => &o.vars,
        GrammarSystem::Mixed(m) => &m.z_vars,
    }
}

fn selector(g: &Grammar, component: Option<&str>, buchi: Option<usize>) -> Res<CanonicalSelector> {
    let name = component.map(|c| resolve(omega_names(g), c).map(|i| omega_names(g)[i].clone())).transpose()?;
    Ok(select(g, buchi, name.as_deref())?)
}

pub fn run(cli: &Cli) -> Res<Code> {
    let caps = EvalCaps { max_rounds: cli.max_rounds };
    match &cli.command {
        Command::Parse { path } => {
            print_json(summary(&load_grammar(path)?));
            Ok(Code::Pass)
        }
        Command::Gnf { path, target, buchi, component, out } => {
            let g = load_grammar(path)?;
            let sel = selector(&g, component.as_deref(), *buchi)?;
            let target = match target {
                Target::Mixed => GnfTarget::Mixed,
                Target::Omega => GnfTarget::Omega,
            };
            let (report, result) = gnf_pipeline(&g, target, sel, &caps)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(out) = out {
                write_atomic(out, &write_grammar(&result))?;
            }
            print_json(json!(report));
            Ok(Code::Pass)
        }
        Command::BuildPda { path, start, finite, buchi, format, out, dot } => {
            let a = build_pda(&load_grammar(path)?, start.as_deref(), finite.as_deref(), *buchi)?;
            if let Some(out) = out {
                write_atomic(out, &a.to_json_string())?;
            }
            if let Some(dot) = dot {
                write_atomic(dot, &a.to_dot())?;
            }
            match format {
                Format::Json => println!("{}", a.to_json_string()),
                Format::Dot => print!("{}", a.to_dot()),
            }
            Ok(Code::Pass)
        }
        Command::Eval { path, word, lasso, maxlen, component, buchi } => {
            let query = match (word, lasso, maxlen) {
                (Some(w), _, _) => Query::Word(w.clone()),
                (_, Some(l), _) => Query::Lasso(l.clone()),
                (_, _, Some(n)) => Query::Support(*n),
                _ => return Err(usage("one of --word, --lasso or --maxlen is required")),
            };
            let is_json = path.extension().is_some_and(|e| e == "json");
            let result = if is_json {
                let a = SimpleOmegaPDA::from_json_str(&read(path)?)?;
                eval_automaton(&a, &query, &caps)?
            } else {
                eval_grammar(&load_grammar(path)?, &query, component.as_deref(), *buchi, &caps)?
            };
            let inconclusive = result.get("status").is_some_and(|s| s == "inconclusive");
            let mut out = json!({
                "version": VERSION,
                "caps": caps,
                "input": path.display().to_string(),
            });
            out.as_object_mut().unwrap().extend(result.as_object().unwrap().clone());
            print_json(out);
            Ok(if inconclusive { Code::Inconclusive } else { Code::Pass })
        }
        Command::Check { suite, seed, cases, golden, json } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Examples => Suite::Examples,
                SuiteArg::Oracle => Suite::Oracle,
            };
            let golden = golden.as_deref().map(read).transpose()?;
            let cfg = CheckConfig { seed: *seed, cases: *cases, caps, golden };
            let report = run_suite(suite, &cfg)?;
            if *json {
                print_json(json!(report));
            } else {
                for c in &report.checks {
                    println!("{c}");
                }
            }
            Ok(if !report.passed() {
                Code::Fail
            } else if report.inconclusive() > 0 {
                Code::Inconclusive
            } else {
                Code::Pass
            })
        }
    }
}

fn summary(g: &Grammar) -> Value {
    let empty: Vec<String> = Vec::new();
    let (kind, y, x, z) = match &g.system {
        GrammarSystem::Omega(o) => ("omega", &o.vars, &empty, &empty),
        GrammarSystem::Mixed(m) => ("mixed", &empty, &m.x.vars, &m.z_vars),
    };
    let mut s = json!({
        "version": VERSION,
        "kind": kind,
        "semiring": g.semiring(),
        "alphabet": g.alphabet().terminals,
        "y_vars": y,
        "x_vars": x,
        "z_vars": z,
        "start": g.start,
        "buchi": g.buchi,
    });
    let o = s.as_object_mut().unwrap();
    match &g.system {
        GrammarSystem::Omega(sys) => {
            o.insert("is_gnf".into(), json!(sys.is_gnf()));
        }
        GrammarSystem::Mixed(m) => {
            o.insert("is_gnf".into(), json!(m.is_gnf()));
            o.insert("x_part_is_gnf".into(), json!(m.x.is_gnf()));
            o.insert("z_part_is_gnf".into(), json!(m.z_part_is_gnf()));
        }
    }
    o.insert("grammar".into(), json!(write_grammar(g)));
    s
}

fn build_pda(g: &Grammar, start: Option<&str>, finite: Option<&str>, buchi: Option<usize>) -> Res<SimpleOmegaPDA> {
    match &g.system {
        GrammarSystem::Mixed(m) if m.z_vars.is_empty() => {
            let name = start.map(str::to_string).or_else(|| g.start.clone());
            let i = match name {
                Some(n) => resolve(&m.x.vars, &n)?,
                None => m.x.len().checked_sub(1).ok_or_else(|| usage("the grammar has no variables"))?,
            };
            let mut a = induced_finite_pda(&m.x, i)?;
            a.buchi = buchi;
            Ok(a)
        }
        GrammarSystem::Mixed(m) => {
            let sel = selector(g, start, buchi)?;
            let finite = finite.map(|f| resolve(&m.x.vars, f)).transpose()?;
            Ok(induced_omega_pda(m, CanonicalSelector { finite, ..sel })?)
        }
        GrammarSystem::Omega(o) => {
            let sel = selector(g, start, buchi)?;
            let finite = match finite {
                Some(f) => Some(resolve(&o.vars, f)?),
                None => sel.finite,
            };
            Ok(induced_omega_pda(&o.induce_mixed(), CanonicalSelector { finite, ..sel })?)
        }
    }
}

enum Query {
    Word(String),
    Lasso(String),
    Support(usize),
}

fn outcome(o: OmegaOutcome) -> Value {
    match o.value() {
        Some(v) => json!({ "status": "value", "value": v }),
        None => json!({ "status": "inconclusive", "value": null }),
    }
}

fn support(al: &Alphabet, max_len: usize, sr_zero: Ext, f: impl Fn(&[u16]) -> Res<Ext>) -> Res<Value> {
    let mut rows = Vec::new();
    for w in al.words_up_to(max_len) {
        let c = f(&w)?;
        if c != sr_zero {
            rows.push(json!({ "word": al.format_word(&w), "value": c }));
        }
    }
    Ok(json!({ "query": { "maxlen": max_len }, "status": "value", "support": rows }))
}

fn parse_lasso(al: &Alphabet, s: &str) -> Res<Lasso> {
    Lasso::parse(al, s).map_err(|e| usage(format!("--lasso {s}: {e}")))
}

fn eval_automaton(a: &SimpleOmegaPDA, q: &Query, caps: &EvalCaps) -> Res<Value> {
    let al = a.alphabet();
    match q {
        Query::Word(w) => {
            let v = a.behavior_finite(&al.parse_word(w)?);
            Ok(json!({ "query": { "word": w }, "status": "value", "value": v }))
        }
        Query::Lasso(s) => {
            let l = parse_lasso(al, s)?;
            let mut v = outcome(a.behavior_omega_lasso(&l, caps)?);
            v["query"] = json!({ "lasso": s });
            Ok(v)
        }
        Query::Support(n) => support(al, *n, a.semiring().zero(), |w| Ok(a.behavior_finite(w))),
    }
}

/// The algebraic system and the variable a finite-word query refers to.
fn finite_target(g: &Grammar, component: Option<&str>) -> Res<(AlgebraicSystem, usize)> {
    let name = component.map(str::to_string).or_else(|| g.start.clone());
    let sys: AlgebraicSystem = match &g.system {
        GrammarSystem::Omega(o) => o.clone().into(),
        GrammarSystem::Mixed(m) => m.x.clone(),
    };
    let i = match name {
        Some(n) => resolve(&sys.vars, &n).map_err(|_| usage(format!("`{n}` is not a variable with a finite part")))?,
        None => sys.len().checked_sub(1).ok_or_else(|| usage("the grammar has no finite part"))?,
    };
    Ok((sys, i))
}

fn eval_grammar(g: &Grammar, q: &Query, component: Option<&str>, buchi: Option<usize>, caps: &EvalCaps) -> Res<Value> {
    let al = g.alphabet().clone();
    match q {
        Query::Word(w) => {
            let (sys, i) = finite_target(g, component)?;
            let word = al.parse_word(w)?;
            let sol = sys.least_solution_finite(word.len(), caps.max_rounds)?;
            Ok(json!({
                "query": { "word": w },
                "component": sys.vars[i],
                "status": "value",
                "value": sol[i].coeff(&word)?,
            }))
        }
        Query::Support(n) => {
            let (sys, i) = finite_target(g, component)?;
            let sol = sys.least_solution_finite(*n, caps.max_rounds)?;
            let mut v = support(&al, *n, sys.semiring.zero(), |w| Ok(sol[i].coeff(w)?))?;
            v["component"] = json!(sys.vars[i]);
            Ok(v)
        }
        Query::Lasso(s) => {
            let l = parse_lasso(&al, s)?;
            let sel = selector(g, component, buchi)?;
            let m = match &g.system {
                GrammarSystem::Omega(o) => o.induce_mixed(),
                GrammarSystem::Mixed(m) => m.clone(),
            };
            let mut v = outcome(m.canonical_omega_lasso(sel.buchi, sel.component, &l, caps)?);
            v["query"] = json!({ "lasso": s });
            v["component"] = json!(omega_names(g)[sel.component]);
            v["buchi"] = json!(sel.buchi);
            Ok(v)
        }
    }
}
