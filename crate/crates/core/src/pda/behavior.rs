//! Behaviors of simple reset pushdown automata.
//!
//! Finite words: a memoized sum over runs, indexed by (position, state,
//! stack). Each step reads one letter, so the stack height is bounded by the
//! remaining length.
//!
//! Lasso words: the nodes are (state, lasso position). A well-matched segment
//! never pops below its starting height, so its weight does not depend on the
//! stack. The segment summaries `W = (N + H)^*` with hills
//! `H = Σ_X Push_X W Pop_X` are a least fixed point over a finite matrix,
//! carried on (node, bit) where the bit records a repeated state. An infinite
//! run from an empty stack is an infinite path of neutral steps, hills and
//! pushes that are never popped; its value is the Büchi ω-value of that
//! graph. From a nonempty stack a run either stays above it forever or runs a
//! segment, pops the top and continues.

use std::collections::HashMap;

use crate::buchi::BuchiGraph;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{Ext, Semiring};
use crate::series::{Lasso, Letter};
use crate::system::{EvalCaps, OmegaOutcome};

use super::{Configuration, SimpleOmegaPDA, StackOp};

type Memo = HashMap<(usize, Configuration), Ext>;

impl SimpleOmegaPDA {
    /// `I (M^*)_{ε,ε} P` at `w`.
    pub fn behavior_finite(&self, w: &[Letter]) -> Ext {
        let sr = self.semiring();
        let fin = &self.final_weights;
        let mut memo = Memo::new();
        let end = |c: &Configuration| if c.stack.is_empty() { fin[c.state] } else { sr.zero() };
        let mut acc = sr.zero();
        for (i, &x) in self.initial.iter().enumerate() {
            if !sr.is_zero(x) {
                let v = self.runs(&Configuration::new(i, Vec::new()), 0, w, 0, &end, &mut memo);
                acc = sr.add(acc, sr.mul(x, v));
            }
        }
        acc
    }

    /// Finite behavior with the run started in `state` alone.
    pub fn behavior_finite_from(&self, state: usize, w: &[Letter]) -> Ext {
        let sr = self.semiring();
        let fin = &self.final_weights;
        let end = |c: &Configuration| if c.stack.is_empty() { fin[c.state] } else { sr.zero() };
        self.runs(&Configuration::new(state, Vec::new()), 0, w, 0, &end, &mut Memo::new())
    }

    /// Sum of the weights of runs from `from` to `to` reading `w`.
    pub fn run_weight(&self, from: &Configuration, to: &Configuration, w: &[Letter]) -> Ext {
        let sr = self.semiring();
        let end = |c: &Configuration| if c == to { sr.one() } else { sr.zero() };
        self.runs(from, 0, w, to.stack.len(), &end, &mut Memo::new())
    }

    fn runs(
        &self,
        c: &Configuration,
        pos: usize,
        w: &[Letter],
        final_height: usize,
        end: &dyn Fn(&Configuration) -> Ext,
        memo: &mut Memo,
    ) -> Ext {
        let sr = self.semiring();
        if pos == w.len() {
            return end(c);
        }
        if c.stack.len() > w.len() - pos + final_height {
            return sr.zero();
        }
        let key = (pos, c.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut acc = sr.zero();
        for (next, x) in self.matrix.successors(c, w[pos]) {
            let v = self.runs(&next, pos + 1, w, final_height, end, memo);
            acc = sr.add(acc, sr.mul(x, v));
        }
        memo.insert(key, acc);
        acc
    }

    /// `I (M^{ω,l})_ε` at the lasso word.
    pub fn behavior_omega_lasso(&self, lasso: &Lasso, caps: &EvalCaps) -> Result<OmegaOutcome> {
        let sr = self.semiring();
        let roots: Vec<(usize, usize)> =
            (0..self.n_states()).filter(|&i| !sr.is_zero(self.initial[i])).map(|i| (i, 0)).collect();
        let Some(b) = LassoBehavior::new(self, lasso, &roots, caps)? else {
            return Ok(OmegaOutcome::Inconclusive { rounds: caps.max_rounds });
        };
        let mut acc = sr.zero();
        for &(i, _) in &roots {
            let v = b.value(&Configuration::new(i, Vec::new()), 0)?;
            acc = sr.add(acc, sr.mul(self.initial[i], v));
        }
        Ok(OmegaOutcome::Value { value: acc })
    }

    /// `((M^{ω,l})_π)_j` at the lasso word for the configuration `(j, π)`.
    pub fn omega_from(&self, c: &Configuration, lasso: &Lasso, caps: &EvalCaps) -> Result<OmegaOutcome> {
        Ok(match LassoBehavior::new(self, lasso, &[(c.state, 0)], caps)? {
            Some(b) => OmegaOutcome::Value { value: b.value(c, 0)? },
            None => OmegaOutcome::Inconclusive { rounds: caps.max_rounds },
        })
    }
}

/// ω-values at (state, lasso position) nodes reachable from given roots,
/// for any stack.
pub struct LassoBehavior {
    sr: Semiring,
    positions: usize,
    local: HashMap<(usize, usize), usize>,
    omega: Vec<Ext>,
    segments: Matrix,
    pops: Vec<Vec<(usize, usize, Ext)>>,
}

struct Edges {
    neutral: Vec<(usize, usize, Ext)>,
    push: Vec<Vec<(usize, usize, Ext)>>,
    pop: Vec<Vec<(usize, usize, Ext)>>,
}

impl LassoBehavior {
    /// `None` when the segment summaries did not settle within the caps.
    pub fn new(a: &SimpleOmegaPDA, lasso: &Lasso, roots: &[(usize, usize)], caps: &EvalCaps) -> Result<Option<Self>> {
        let sr = a.semiring();
        if !sr.is_idempotent() {
            return Err(Error::Unsupported(sr, "ω-evaluation needs an idempotent semiring".into()));
        }
        let l = a.buchi.ok_or_else(|| Error::Shape("the automaton has no Büchi count".into()))?;
        crate::system::check_lasso(a.alphabet().len(), lasso)?;
        let positions = lasso.nodes();
        let m = &a.matrix;
        for &(q, n) in roots {
            if q >= a.n_states() || n >= positions {
                return Err(Error::IndexOutOfRange { index: q, limit: a.n_states() });
            }
        }

        // reachable nodes, ignoring the stack
        let mut local: HashMap<(usize, usize), usize> = HashMap::new();
        let mut nodes: Vec<(usize, usize)> = Vec::new();
        for &r in roots {
            if let std::collections::hash_map::Entry::Vacant(e) = local.entry(r) {
                e.insert(nodes.len());
                nodes.push(r);
            }
        }
        let mut out: Vec<Vec<(StackOp, usize, usize, Ext)>> = Vec::new();
        let mut head = 0;
        while head < nodes.len() {
            let (q, n) = nodes[head];
            head += 1;
            let letter = lasso.letter(n);
            let n2 = lasso.succ(n);
            let mut edges = Vec::new();
            for (op, e) in m.transitions() {
                if e.from != q || e.letter != letter {
                    continue;
                }
                let key = (e.to, n2);
                let id = *local.entry(key).or_insert_with(|| {
                    nodes.push(key);
                    nodes.len() - 1
                });
                edges.push((op, head - 1, id, e.coeff));
            }
            out.push(edges);
        }
        let d = nodes.len();
        let acc: Vec<bool> = nodes.iter().map(|&(q, _)| q < l).collect();
        let g = m.stack_symbols.len();
        let mut edges = Edges { neutral: Vec::new(), push: vec![Vec::new(); g], pop: vec![Vec::new(); g] };
        for (op, u, v, w) in out.into_iter().flatten() {
            match op {
                StackOp::Neutral => edges.neutral.push((u, v, w)),
                StackOp::Push(x) => edges.push[x].push((u, v, w)),
                StackOp::Pop(x) => edges.pop[x].push((u, v, w)),
            }
        }

        let Some((seg, hills)) = segment_summaries(sr, d, &acc, &edges, caps) else {
            return Ok(None);
        };

        let mut bg = BuchiGraph::new(sr, acc);
        for &(u, v, w) in edges.neutral.iter().chain(edges.push.iter().flatten()) {
            bg.add_step(u, v, w, false);
        }
        for u in 0..d {
            for v in 0..d {
                bg.add_step(u, v, hills.get(2 * u, 2 * v), false);
                bg.add_step(u, v, hills.get(2 * u, 2 * v + 1), true);
            }
        }
        let all: Vec<usize> = (0..d).collect();
        let omega = bg.omega_from(&all);
        let mut segments = Matrix::zero(sr, d, d);
        for u in 0..d {
            for v in 0..d {
                segments.set(u, v, sr.add(seg.get(2 * u, 2 * v), seg.get(2 * u, 2 * v + 1)));
            }
        }
        Ok(Some(LassoBehavior { sr, positions, local, omega, segments, pops: edges.pop }))
    }

    /// Number of (state, position) nodes kept.
    pub fn nodes(&self) -> usize {
        self.omega.len()
    }

    /// ω-value of the configuration at lasso position `pos`.
    pub fn value(&self, c: &Configuration, pos: usize) -> Result<Ext> {
        let sr = self.sr;
        let Some(&start) = self.local.get(&(c.state, pos)) else {
            return Err(Error::Shape(format!(
                "state {} at position {pos} is not reachable from the roots (positions: {})",
                c.state, self.positions
            )));
        };
        let d = self.nodes();
        let mut vals = self.omega.clone();
        for &x in c.stack.iter().rev() {
            let Some(pops) = self.pops.get(x) else {
                return Err(Error::IndexOutOfRange { index: x, limit: self.pops.len() });
            };
            // after a segment, pop x and continue below
            let mut popped = vec![sr.zero(); d];
            for &(u, v, w) in pops {
                popped[u] = sr.add(popped[u], sr.mul(w, vals[v]));
            }
            let mut next = self.omega.clone();
            for (u, slot) in next.iter_mut().enumerate() {
                for (v, &p) in popped.iter().enumerate() {
                    if !sr.is_zero(p) {
                        *slot = sr.add(*slot, sr.mul(self.segments.get(u, v), p));
                    }
                }
            }
            vals = next;
        }
        Ok(vals[start])
    }
}

/// Edges on (node, bit) pairs; the bit becomes one on entering a repeated state.
fn lift(acc: &[bool], edges: &[(usize, usize, Ext)]) -> Vec<(usize, usize, Ext)> {
    let mut out = Vec::with_capacity(2 * edges.len());
    for &(u, v, w) in edges {
        for b in 0..2 {
            let b2 = usize::from(b == 1 || acc[v]);
            out.push((2 * u + b, 2 * v + b2, w));
        }
    }
    out
}

/// `(W, H)` on (node, bit) pairs, or `None` if the caps ran out.
fn segment_summaries(sr: Semiring, d: usize, acc: &[bool], edges: &Edges, caps: &EvalCaps) -> Option<(Matrix, Matrix)> {
    let neutral = lift(acc, &edges.neutral);
    let push: Vec<_> = edges.push.iter().map(|e| lift(acc, e)).collect();
    let pop: Vec<_> = edges.pop.iter().map(|e| lift(acc, e)).collect();
    let step = |sr: Semiring, h: &Matrix| -> (Matrix, Matrix) {
        let mut base = h.clone();
        for &(u, v, w) in &neutral {
            base.set(u, v, sr.add(base.get(u, v), conv(sr, w)));
        }
        let wm = base.star().expect("square");
        let mut next = Matrix::zero(sr, 2 * d, 2 * d);
        for (px, qx) in push.iter().zip(&pop) {
            if px.is_empty() || qx.is_empty() {
                continue;
            }
            // t = W · Pop_x
            let mut t = Matrix::zero(sr, 2 * d, 2 * d);
            for &(a, b, w) in qx {
                let w = conv(sr, w);
                for r in 0..2 * d {
                    let x = wm.get(r, a);
                    if !sr.is_zero(x) {
                        t.set(r, b, sr.add(t.get(r, b), sr.mul(x, w)));
                    }
                }
            }
            for &(u, u2, w) in px {
                let w = conv(sr, w);
                for c in 0..2 * d {
                    let x = t.get(u2, c);
                    if !sr.is_zero(x) {
                        next.set(u, c, sr.add(next.get(u, c), sr.mul(w, x)));
                    }
                }
            }
        }
        (wm, next)
    };

    let n = 2 * d;
    if sr != Semiring::Arctic {
        let mut h = Matrix::zero(sr, n, n);
        for _ in 0..caps.max_rounds {
            let (wm, next) = step(sr, &h);
            if next == h {
                return Some((wm, h));
            }
            h = next;
        }
        return None;
    }

    // Arctic sums may grow without bound. The Boolean support bounds the
    // number of distinct hill entries; an entry still growing after that many
    // rounds has a derivation repeating an entry along a nesting chain with a
    // positive context, so it is pinned to the top element.
    let support = {
        let b = Semiring::Boolean;
        let mut h = Matrix::zero(b, n, n);
        let mut rounds = 0;
        loop {
            rounds += 1;
            if rounds > caps.max_rounds {
                return None;
            }
            let (_, next) = step(b, &h);
            if next == h {
                break h;
            }
            h = next;
        }
    };
    let live: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| support.get(i, j) == Ext::ONE).collect();
    let mut pinned = vec![false; live.len()];
    let mut rounds = 0;
    loop {
        let free = pinned.iter().filter(|p| !**p).count();
        let mut h = Matrix::zero(sr, n, n);
        for (k, &(i, j)) in live.iter().enumerate() {
            if pinned[k] {
                h.set(i, j, sr.top());
            }
        }
        for r in 1..=free + 1 {
            rounds += 1;
            if rounds > caps.max_rounds {
                return None;
            }
            let (wm, mut next) = step(sr, &h);
            for (k, &(i, j)) in live.iter().enumerate() {
                if pinned[k] {
                    next.set(i, j, sr.top());
                }
            }
            if next == h {
                return Some((wm, h));
            }
            if r == free + 1 {
                for (k, &(i, j)) in live.iter().enumerate() {
                    if next.get(i, j) != h.get(i, j) {
                        pinned[k] = true;
                    }
                }
                break;
            }
            h = next;
        }
    }
}

/// Edge weights are stored in the automaton's semiring; the Boolean pass only
/// needs their support.
fn conv(sr: Semiring, w: Ext) -> Ext {
    if sr == Semiring::Boolean {
        Ext::ONE
    } else {
        w
    }
}
