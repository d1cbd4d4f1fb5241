//! Self-check suites: algebraic identities, golden example values and
//! cross-checks against independent oracles.

mod decompositions;
mod examples;
pub mod gen;
mod identities;
mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::system::EvalCaps;

pub use decompositions::{fixture_decompositions, lasso_test_set, FixtureDecomposition};
pub use examples::{compare_golden, example_values, GoldenEntry, DEFAULT_GOLDEN};
pub use identities::{
    boolean_buchi_oracle, matrix_omega_fixed_point, matrix_omega_partition, matrix_star_partition,
    scalar_identities, semiring_axioms,
};
pub use oracle::{buchi_monotonicity, finite_gnf_preserves, gnf_oracle_agreement, pipeline_agreement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Examples,
    Oracle,
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
}

const KEPT_FAILURES: usize = 10;

impl CheckOutcome {
    pub(crate) fn new(name: &str) -> Self {
        CheckOutcome { name: name.into(), cases: 0, failed: 0, inconclusive: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub(crate) fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(msg());
        }
    }

    pub(crate) fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{verdict} {} ({} cases", self.name, self.cases)?;
        if self.inconclusive > 0 {
            write!(f, ", {} inconclusive", self.inconclusive)?;
        }
        if self.failed > 0 {
            write!(f, ", {} failed", self.failed)?;
        }
        f.write_str(")")?;
        for m in &self.failures {
            write!(f, "\n    {m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub seed: u64,
    /// Random cases per property.
    pub cases: usize,
    pub caps: EvalCaps,
    /// Golden values for the examples suite, as JSON; the bundled file if absent.
    pub golden: Option<String>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0, cases: 200, caps: EvalCaps::default(), golden: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub version: String,
    pub suite: Suite,
    pub seed: u64,
    pub caps: EvalCaps,
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn inconclusive(&self) -> usize {
        self.checks.iter().map(|c| c.inconclusive).sum()
    }
}

pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> Result<CheckReport> {
    let seed = cfg.seed;
    let n = cfg.cases;
    let checks = match suite {
        Suite::Identities => vec![
            semiring_axioms(),
            scalar_identities(),
            matrix_star_partition(seed, n)?,
            matrix_omega_partition(seed, n)?,
            matrix_omega_fixed_point(seed, n)?,
            boolean_buchi_oracle(seed, n)?,
        ],
        Suite::Examples => {
            let golden = cfg.golden.as_deref().unwrap_or(DEFAULT_GOLDEN);
            vec![compare_golden(golden, &example_values(&cfg.caps)?)?]
        }
        Suite::Oracle => vec![
            gnf_oracle_agreement(seed, n.div_ceil(2), 6)?,
            finite_gnf_preserves(seed, n.div_ceil(4), 5, &cfg.caps)?,
            pipeline_agreement(&cfg.caps)?,
            buchi_monotonicity(&cfg.caps)?,
        ],
    };
    Ok(CheckReport { version: env!("CARGO_PKG_VERSION").into(), suite, seed, caps: cfg.caps, checks })
}
