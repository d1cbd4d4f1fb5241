//! Simple reset pushdown matrices and automata.
//!
//! Only three block families are stored: the neutral block `M_{ε,ε}`, which
//! also serves as `M_{p,p}` at any stack, the push blocks `M_{ε,X}`, which
//! also serve as `M_{p,Xp}`, and the pop blocks `M_{X,ε}`. Every entry reads
//! exactly one letter. Stacks are symbol vectors with the top at index 0.

mod behavior;
mod json;

use crate::error::{Error, Result};
use crate::semiring::{Ext, Semiring};
use crate::series::{Alphabet, Letter, Polynomial, Sym};
use crate::system::{AlgebraicSystem, CanonicalSelector, MixedSystem};

pub use behavior::LassoBehavior;
pub use json::{AutomatonJson, BlockJson, EntryJson, WeightJson};

/// `coeff · letter` at `(from, to)` of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub from: usize,
    pub to: usize,
    pub letter: Letter,
    pub coeff: Ext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackOp {
    Neutral,
    Push(usize),
    Pop(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResetPDMatrix {
    pub semiring: Semiring,
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub stack_symbols: Vec<String>,
    pub neutral: Vec<Entry>,
    pub push: Vec<Vec<Entry>>,
    pub pop: Vec<Vec<Entry>>,
}

/// A state and a stack, top first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: usize,
    pub stack: Vec<usize>,
}

impl Configuration {
    pub fn new(state: usize, stack: Vec<usize>) -> Self {
        Configuration { state, stack }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleOmegaPDA {
    pub matrix: ResetPDMatrix,
    pub initial: Vec<Ext>,
    pub final_weights: Vec<Ext>,
    /// States `0..l` are repeated; `None` for automata on finite words.
    pub buchi: Option<usize>,
}

impl ResetPDMatrix {
    pub fn new(semiring: Semiring, alphabet: Alphabet, states: Vec<String>, stack_symbols: Vec<String>) -> Self {
        let g = stack_symbols.len();
        ResetPDMatrix {
            semiring,
            alphabet,
            states,
            stack_symbols,
            neutral: Vec::new(),
            push: vec![Vec::new(); g],
            pop: vec![Vec::new(); g],
        }
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn block(&self, op: StackOp) -> &[Entry] {
        match op {
            StackOp::Neutral => &self.neutral,
            StackOp::Push(x) => &self.push[x],
            StackOp::Pop(x) => &self.pop[x],
        }
    }

    /// Adds `coeff · letter` to an entry; zero coefficients are dropped.
    pub fn add(&mut self, op: StackOp, from: usize, to: usize, letter: Letter, coeff: Ext) -> Result<()> {
        let sr = self.semiring;
        sr.check(coeff)?;
        let n = self.n_states();
        if from >= n || to >= n {
            return Err(Error::IndexOutOfRange { index: from.max(to), limit: n });
        }
        if letter as usize >= self.alphabet.len() {
            return Err(Error::IndexOutOfRange { index: letter as usize, limit: self.alphabet.len() });
        }
        let g = self.stack_symbols.len();
        let block = match op {
            StackOp::Neutral => &mut self.neutral,
            StackOp::Push(x) | StackOp::Pop(x) if x >= g => return Err(Error::IndexOutOfRange { index: x, limit: g }),
            StackOp::Push(x) => &mut self.push[x],
            StackOp::Pop(x) => &mut self.pop[x],
        };
        if sr.is_zero(coeff) {
            return Ok(());
        }
        match block.iter_mut().find(|e| e.from == from && e.to == to && e.letter == letter) {
            Some(e) => e.coeff = sr.add(e.coeff, coeff),
            None => block.push(Entry { from, to, letter, coeff }),
        }
        Ok(())
    }

    /// All transitions `(op, entry)`.
    pub fn transitions(&self) -> impl Iterator<Item = (StackOp, &Entry)> {
        let neutral = self.neutral.iter().map(|e| (StackOp::Neutral, e));
        let push = self.push.iter().enumerate().flat_map(|(x, b)| b.iter().map(move |e| (StackOp::Push(x), e)));
        let pop = self.pop.iter().enumerate().flat_map(|(x, b)| b.iter().map(move |e| (StackOp::Pop(x), e)));
        neutral.chain(push).chain(pop)
    }

    fn dense(&self, entries: &[Entry]) -> Vec<Vec<Polynomial>> {
        let sr = self.semiring;
        let n = self.n_states();
        let mut out = vec![vec![Polynomial::zero(); n]; n];
        for e in entries {
            let p = Polynomial::monomial(sr, e.coeff, vec![Sym::T(e.letter)]);
            out[e.from][e.to] = out[e.from][e.to].add(sr, &p);
        }
        out
    }

    /// The `n × n` block `M_{π,π'}` of the infinite matrix.
    pub fn expand_entry(&self, pi: &[usize], pi2: &[usize]) -> Vec<Vec<Polynomial>> {
        if pi == pi2 {
            return self.dense(&self.neutral);
        }
        if let Some((&x, rest)) = pi2.split_first() {
            if rest == pi {
                return self.dense(&self.push[x]);
            }
        }
        if let Some((&x, rest)) = pi.split_first() {
            if rest == pi2 {
                return self.dense(&self.pop[x]);
            }
        }
        let n = self.n_states();
        vec![vec![Polynomial::zero(); n]; n]
    }

    /// One-step successors of a configuration reading `letter`.
    pub fn successors(&self, c: &Configuration, letter: Letter) -> Vec<(Configuration, Ext)> {
        let mut out = Vec::new();
        for (op, e) in self.transitions() {
            if e.from != c.state || e.letter != letter {
                continue;
            }
            let stack = match op {
                StackOp::Neutral => c.stack.clone(),
                StackOp::Push(x) => {
                    let mut s = Vec::with_capacity(c.stack.len() + 1);
                    s.push(x);
                    s.extend_from_slice(&c.stack);
                    s
                }
                StackOp::Pop(x) => match c.stack.split_first() {
                    Some((&top, rest)) if top == x => rest.to_vec(),
                    _ => continue,
                },
            };
            out.push((Configuration::new(e.to, stack), e.coeff));
        }
        out
    }
}

impl SimpleOmegaPDA {
    pub fn new(matrix: ResetPDMatrix, initial: Vec<Ext>, final_weights: Vec<Ext>, buchi: Option<usize>) -> Result<Self> {
        let n = matrix.n_states();
        if initial.len() != n || final_weights.len() != n {
            return Err(Error::Dimension(format!("{n} states need initial and final vectors of length {n}")));
        }
        for &w in initial.iter().chain(&final_weights) {
            matrix.semiring.check(w)?;
        }
        if let Some(l) = buchi {
            if l > n {
                return Err(Error::IndexOutOfRange { index: l, limit: n });
            }
        }
        Ok(SimpleOmegaPDA { matrix, initial, final_weights, buchi })
    }

    pub fn semiring(&self) -> Semiring {
        self.matrix.semiring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.matrix.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.matrix.n_states()
    }
}

fn proper_x_part(sys: &AlgebraicSystem) -> Result<()> {
    if !sys.is_gnf() {
        return Err(Error::NotGnf("the x-part must be in GNF".into()));
    }
    if !sys.is_proper_gnf() {
        return Err(Error::NotGnf("empty-word monomials have no pushdown transition".into()));
    }
    Ok(())
}

/// Adds the x-state transitions for `x_i = p_i`. `x(k)` is the state of
/// `x_k`, `sym(k)` its stack symbol; `a` alone moves to `f` at any stack and
/// pops into `x_k` under `X_k`.
fn x_transitions(m: &mut ResetPDMatrix, sys: &AlgebraicSystem, x: impl Fn(usize) -> usize, sym: impl Fn(usize) -> usize, f: usize) -> Result<()> {
    for (i, p) in sys.rhs.iter().enumerate() {
        for mono in p.terms() {
            let (&Sym::T(a), rest) = mono.word.split_first().expect("proper GNF") else {
                unreachable!("checked GNF")
            };
            let c = mono.coeff;
            match rest {
                [] => {
                    m.add(StackOp::Neutral, x(i), f, a, c)?;
                    for k in 0..sys.len() {
                        m.add(StackOp::Pop(sym(k)), x(i), x(k), a, c)?;
                    }
                }
                [Sym::V(j)] => m.add(StackOp::Neutral, x(i), x(*j as usize), a, c)?,
                [Sym::V(j), Sym::V(k)] => m.add(StackOp::Push(sym(*k as usize)), x(i), x(*j as usize), a, c)?,
                _ => unreachable!("checked GNF"),
            }
        }
    }
    Ok(())
}

/// The automaton with states `x_1..x_n, f` and stack symbols `x_1..x_n`
/// whose behavior is component `start` of the least solution.
pub fn induced_finite_pda(sys: &AlgebraicSystem, start: usize) -> Result<SimpleOmegaPDA> {
    let n = sys.len();
    if start >= n {
        return Err(Error::IndexOutOfRange { index: start, limit: n });
    }
    let sr = sys.semiring;
    if !sys.is_gnf() {
        return Err(Error::NotGnf("the system must be in GNF".into()));
    }
    let eps = sys.eps_coefficients(10_000)?[start];
    if !sr.is_zero(eps) {
        return Err(Error::EpsilonCoefficient(eps));
    }
    proper_x_part(sys)?;
    let mut states = sys.vars.clone();
    states.push(fresh_state(&states, "f"));
    let mut m = ResetPDMatrix::new(sr, sys.alphabet.clone(), states, sys.vars.clone());
    x_transitions(&mut m, sys, |i| i, |k| k, n)?;
    let mut initial = vec![sr.zero(); n + 1];
    initial[start] = sr.one();
    let mut fin = vec![sr.zero(); n + 1];
    fin[n] = sr.one();
    SimpleOmegaPDA::new(m, initial, fin, None)
}

fn fresh_state(used: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while used.contains(&name) {
        name.push('\'');
    }
    name
}

/// The ω-automaton with states `z_1..z_m, x_1..x_n, f` and stack symbols
/// `X_1..X_n, Z_1..Z_m`. Starts in the selected z-state and, if a finite
/// component is selected, in that x-state; `z_1..z_k` are repeated.
pub fn induced_omega_pda(sys: &MixedSystem, sel: CanonicalSelector) -> Result<SimpleOmegaPDA> {
    let sr = sys.semiring();
    let n = sys.x.len();
    let mz = sys.z_len();
    if sel.component >= mz {
        return Err(Error::IndexOutOfRange { index: sel.component, limit: mz });
    }
    if sel.buchi > mz {
        return Err(Error::IndexOutOfRange { index: sel.buchi, limit: mz });
    }
    if let Some(k) = sel.finite {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, limit: n });
        }
    }
    proper_x_part(&sys.x)?;
    if !sys.z_part_is_gnf() {
        return Err(Error::Shape("z-entries must lie in Σ ∪ ΣX".into()));
    }
    let mut states: Vec<String> = sys.z_vars.clone();
    states.extend(sys.x.vars.iter().cloned());
    states.push(fresh_state(&states, "f"));
    let mut symbols: Vec<String> = sys.x.vars.iter().map(|v| v.to_uppercase()).collect();
    symbols.extend(sys.z_vars.iter().map(|v| v.to_uppercase()));
    let symbols = dedup_names(symbols);
    let f = mz + n;
    let mut m = ResetPDMatrix::new(sr, sys.alphabet().clone(), states, symbols);
    x_transitions(&mut m, &sys.x, |i| mz + i, |k| k, f)?;
    for (i, p) in sys.x.rhs.iter().enumerate() {
        for mono in p.terms() {
            if let [Sym::T(a)] = mono.word[..] {
                for k in 0..mz {
                    m.add(StackOp::Pop(n + k), mz + i, k, a, mono.coeff)?;
                }
            }
        }
    }
    for (i, row) in sys.rho.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            for mono in p.terms() {
                match mono.word[..] {
                    [Sym::T(a)] => m.add(StackOp::Neutral, i, j, a, mono.coeff)?,
                    [Sym::T(a), Sym::V(x)] => m.add(StackOp::Push(n + j), i, mz + x as usize, a, mono.coeff)?,
                    _ => unreachable!("checked shape"),
                }
            }
        }
    }
    let mut initial = vec![sr.zero(); f + 1];
    initial[sel.component] = sr.one();
    if let Some(k) = sel.finite {
        initial[mz + k] = sr.one();
    }
    let mut fin = vec![sr.zero(); f + 1];
    fin[f] = sr.one();
    SimpleOmegaPDA::new(m, initial, fin, Some(sel.buchi))
}

fn dedup_names(names: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for n in names {
        let name = fresh_state(&out, &n);
        out.push(name);
    }
    out
}

impl SimpleOmegaPDA {
    /// Graphviz rendering: `a↓X` pushes, `a↑X` pops, `a#` keeps the stack;
    /// non-unit weights follow after a colon.
    pub fn to_dot(&self) -> String {
        let m = &self.matrix;
        let sr = self.semiring();
        let mut out = String::from("digraph pda {\n  rankdir=LR;\n");
        let l = self.buchi.unwrap_or(0);
        for (i, s) in m.states.iter().enumerate() {
            let shape = if i < l { "doublecircle" } else { "circle" };
            out.push_str(&format!("  q{i} [label=\"{}\", shape={shape}];\n", escape(s)));
        }
        for (i, &w) in self.initial.iter().enumerate() {
            if !sr.is_zero(w) {
                out.push_str(&format!("  in{i} [shape=point];\n  in{i} -> q{i}{};\n", weight_label(sr, w)));
            }
        }
        for (i, &w) in self.final_weights.iter().enumerate() {
            if !sr.is_zero(w) {
                out.push_str(&format!("  out{i} [shape=point];\n  q{i} -> out{i}{};\n", weight_label(sr, w)));
            }
        }
        for (op, e) in m.transitions() {
            let act = match op {
                StackOp::Neutral => "#".to_string(),
                StackOp::Push(x) => format!("↓{}", m.stack_symbols[x]),
                StackOp::Pop(x) => format!("↑{}", m.stack_symbols[x]),
            };
            let mut label = format!("{}{act}", m.alphabet.name(e.letter));
            if !sr.is_one(e.coeff) {
                label.push_str(&format!(":{}", e.coeff));
            }
            out.push_str(&format!("  q{} -> q{} [label=\"{}\"];\n", e.from, e.to, escape(&label)));
        }
        out.push_str("}\n");
        out
    }
}

fn weight_label(sr: Semiring, w: Ext) -> String {
    if sr.is_one(w) {
        String::new()
    } else {
        format!(" [label=\"{w}\"]")
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
