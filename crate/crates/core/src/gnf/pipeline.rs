//! The full chain from a grammar file to a GNF system, stage by stage.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{write_grammar, Grammar, GrammarSystem};
use crate::semiring::Semiring;
use crate::system::{CanonicalSelector, EvalCaps};

use super::{mixed_gnf, trim_mixed, trim_omega, unmix, SelectedMixed, SelectedOmega};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GnfTarget {
    Mixed,
    Omega,
}

/// One step of the pipeline: its output and the selector into it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub grammar: String,
    pub is_gnf: bool,
    pub skipped: bool,
    pub selector: CanonicalSelector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnfPipelineReport {
    pub version: String,
    pub caps: EvalCaps,
    pub target: GnfTarget,
    pub stages: Vec<Stage>,
    pub warnings: Vec<String>,
}

impl GnfPipelineReport {
    /// The last stage.
    pub fn output(&self) -> &Stage {
        self.stages.last().expect("at least the input stage")
    }
}

fn mixed_grammar(s: &SelectedMixed) -> Grammar {
    Grammar::mixed(s.system.clone())
        .with_start(Some(s.system.z_vars[s.selector.component].clone()), Some(s.selector.buchi))
}

fn omega_grammar(s: &SelectedOmega) -> Grammar {
    Grammar::omega(s.system.clone())
        .with_start(Some(s.system.vars[s.selector.component].clone()), Some(s.selector.buchi))
}

fn mixed_stage(name: &str, s: &SelectedMixed, skipped: bool) -> Stage {
    Stage {
        name: name.into(),
        grammar: write_grammar(&mixed_grammar(s)),
        is_gnf: s.system.is_gnf(),
        skipped,
        selector: s.selector,
    }
}

fn omega_stage(name: &str, s: &SelectedOmega, skipped: bool) -> Stage {
    Stage {
        name: name.into(),
        grammar: write_grammar(&omega_grammar(s)),
        is_gnf: s.system.is_gnf(),
        skipped,
        selector: s.selector,
    }
}

/// Input selection: `@start` (or the last ω-variable) and `@buchi` (or 1),
/// each overridable.
pub fn select(g: &Grammar, buchi: Option<usize>, component: Option<&str>) -> Result<CanonicalSelector> {
    let name = component.map(str::to_string).or_else(|| g.start.clone());
    let k = buchi.or(g.buchi).unwrap_or(1);
    let (vars, finite) = match &g.system {
        GrammarSystem::Omega(o) => (&o.vars, true),
        GrammarSystem::Mixed(m) => (&m.z_vars, false),
    };
    if vars.is_empty() {
        return Err(Error::Shape("no ω-variables to select".into()));
    }
    let i = match name {
        Some(n) => vars.iter().position(|v| *v == n).ok_or(Error::UnboundVariable(n))?,
        None => vars.len() - 1,
    };
    if k > vars.len() {
        return Err(Error::IndexOutOfRange { index: k, limit: vars.len() });
    }
    Ok(CanonicalSelector { buchi: k, component: i, finite: finite.then_some(i) })
}

/// Runs the pipeline and returns the report and the final grammar.
pub fn gnf_pipeline(
    g: &Grammar,
    target: GnfTarget,
    selector: CanonicalSelector,
    caps: &EvalCaps,
) -> Result<(GnfPipelineReport, Grammar)> {
    let mut stages = Vec::new();
    let mut warnings = Vec::new();
    if g.semiring() == Semiring::Counting {
        warnings.push("ω-evaluation is not supported over the counting semiring".to_string());
    }
    let mixed = match &g.system {
        GrammarSystem::Omega(o) => {
            let input = SelectedOmega { system: o.clone(), selector };
            stages.push(omega_stage("input", &input, false));
            if target == GnfTarget::Omega && o.is_gnf() {
                let mut skip = omega_stage("gnf", &input, true);
                skip.skipped = true;
                stages.push(skip);
                let out = omega_grammar(&input);
                return Ok((report(target, caps, stages, warnings), out));
            }
            let m = SelectedMixed { system: o.induce_mixed(), selector };
            stages.push(mixed_stage("induced-mixed", &m, false));
            m
        }
        GrammarSystem::Mixed(m) => {
            let input = SelectedMixed { system: m.clone(), selector: CanonicalSelector { finite: None, ..selector } };
            stages.push(mixed_stage("input", &input, false));
            input
        }
    };
    let skipped = mixed.system.is_gnf();
    let gnf = mixed_gnf(&mixed, caps)?;
    stages.push(mixed_stage("mixed-gnf", &gnf, skipped));
    let gnf = trim_mixed(&gnf);
    stages.push(mixed_stage("trim", &gnf, false));
    if target == GnfTarget::Mixed {
        let out = mixed_grammar(&gnf);
        return Ok((report(target, caps, stages, warnings), out));
    }
    let om = unmix(&gnf)?;
    stages.push(omega_stage("unmix", &om, false));
    let om = trim_omega(&om);
    stages.push(omega_stage("trim-omega", &om, false));
    let out = omega_grammar(&om);
    Ok((report(target, caps, stages, warnings), out))
}

fn report(target: GnfTarget, caps: &EvalCaps, stages: Vec<Stage>, warnings: Vec<String>) -> GnfPipelineReport {
    GnfPipelineReport { version: env!("CARGO_PKG_VERSION").into(), caps: *caps, target, stages, warnings }
}
