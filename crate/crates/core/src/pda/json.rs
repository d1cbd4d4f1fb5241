//! Automaton JSON: states, stack symbols and letters by name, sparse blocks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{Ext, Semiring};
use crate::series::Alphabet;

use super::{ResetPDMatrix, SimpleOmegaPDA, StackOp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub from: String,
    pub to: String,
    pub letter: String,
    pub weight: Ext,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub symbol: String,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub state: String,
    pub weight: Ext,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub semiring: Semiring,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub stack: Vec<String>,
    pub neutral: Vec<EntryJson>,
    #[serde(default)]
    pub push: Vec<BlockJson>,
    #[serde(default)]
    pub pop: Vec<BlockJson>,
    /// Nonzero initial weights.
    pub initial: Vec<WeightJson>,
    /// Nonzero final weights.
    #[serde(rename = "final", default)]
    pub final_weights: Vec<WeightJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub buchi: Option<usize>,
}

fn lookup(names: &[String], name: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::Shape(format!("unknown {what} `{name}`")))
}

impl SimpleOmegaPDA {
    pub fn to_json(&self) -> AutomatonJson {
        let m = &self.matrix;
        let sr = self.semiring();
        let entry = |e: &super::Entry| EntryJson {
            from: m.states[e.from].clone(),
            to: m.states[e.to].clone(),
            letter: m.alphabet.name(e.letter).to_string(),
            weight: e.coeff,
        };
        let blocks = |bs: &[Vec<super::Entry>]| {
            bs.iter()
                .enumerate()
                .filter(|(_, b)| !b.is_empty())
                .map(|(x, b)| BlockJson { symbol: m.stack_symbols[x].clone(), entries: b.iter().map(entry).collect() })
                .collect()
        };
        let weights = |v: &[Ext]| {
            v.iter()
                .enumerate()
                .filter(|(_, w)| !sr.is_zero(**w))
                .map(|(i, &w)| WeightJson { state: m.states[i].clone(), weight: w })
                .collect()
        };
        AutomatonJson {
            semiring: sr,
            alphabet: m.alphabet.terminals.clone(),
            states: m.states.clone(),
            stack: m.stack_symbols.clone(),
            neutral: m.neutral.iter().map(entry).collect(),
            push: blocks(&m.push),
            pop: blocks(&m.pop),
            initial: weights(&self.initial),
            final_weights: weights(&self.final_weights),
            buchi: self.buchi,
        }
    }

    pub fn from_json(j: &AutomatonJson) -> Result<SimpleOmegaPDA> {
        let sr = j.semiring;
        let alphabet = Alphabet::new(j.alphabet.iter().cloned());
        let mut m = ResetPDMatrix::new(sr, alphabet, j.states.clone(), j.stack.clone());
        let add = |m: &mut ResetPDMatrix, op: StackOp, e: &EntryJson| -> Result<()> {
            let from = lookup(&j.states, &e.from, "state")?;
            let to = lookup(&j.states, &e.to, "state")?;
            let letter = m
                .alphabet
                .index(&e.letter)
                .ok_or_else(|| Error::Shape(format!("unknown letter `{}`", e.letter)))?;
            m.add(op, from, to, letter, e.weight)
        };
        for e in &j.neutral {
            add(&mut m, StackOp::Neutral, e)?;
        }
        for b in &j.push {
            let x = lookup(&j.stack, &b.symbol, "stack symbol")?;
            for e in &b.entries {
                add(&mut m, StackOp::Push(x), e)?;
            }
        }
        for b in &j.pop {
            let x = lookup(&j.stack, &b.symbol, "stack symbol")?;
            for e in &b.entries {
                add(&mut m, StackOp::Pop(x), e)?;
            }
        }
        let n = j.states.len();
        let vector = |ws: &[WeightJson]| -> Result<Vec<Ext>> {
            let mut v = vec![sr.zero(); n];
            for w in ws {
                let i = lookup(&j.states, &w.state, "state")?;
                v[i] = sr.add(v[i], sr.check(w.weight)?);
            }
            Ok(v)
        };
        SimpleOmegaPDA::new(m, vector(&j.initial)?, vector(&j.final_weights)?, j.buchi)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data")
    }

    pub fn from_json_str(s: &str) -> Result<SimpleOmegaPDA> {
        let j: AutomatonJson = serde_json::from_str(s)?;
        SimpleOmegaPDA::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automaton_round_trip() {
        let text = include_str!("../../fixtures/anbn_c_automaton.json");
        let a = SimpleOmegaPDA::from_json_str(text).unwrap();
        assert_eq!(a.n_states(), 4);
        assert_eq!(a.buchi, Some(1));
        let b = SimpleOmegaPDA::from_json_str(&a.to_json_string()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_names_are_rejected() {
        let text = include_str!("../../fixtures/anbn_c_automaton.json").replace("[\"Z0\", \"X\"]", "[\"Y\", \"X\"]");
        assert!(SimpleOmegaPDA::from_json_str(&text).is_err());
    }
}
