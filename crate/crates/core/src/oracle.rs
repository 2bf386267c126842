//! Cross-validation of the Bell-diagonal closed forms against the numerical
//! searches, over seeded random states.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::correlations::{
    classical_correlations_bd, classical_correlations_numeric, discord_bd, max_post_measurement_mi,
    mutual_information,
};
use crate::ncmqc::{d_a_numeric, d_a_optimized};
use crate::optim::SearchConfig;
use crate::sampling::random_bd_state;
use crate::states::BdState;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
    pub search: SearchConfig,
    /// Check these states instead of sampling.
    pub states: Option<Vec<BdState>>,
    /// Perturb the closed-form classical correlations; exercises the
    /// failure path of the harness.
    pub inject_bug: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n: 200,
            seed: 42,
            tol: 1e-5,
            search: SearchConfig::default(),
            states: None,
            inject_bug: false,
        }
    }
}

/// Gaps for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleSample {
    pub c: BdState,
    /// |J closed − J numeric|
    pub j_gap: f64,
    /// |D closed − (I − J numeric)|
    pub d_gap: f64,
    /// |d_A closed − d_A numeric|
    pub d_a_gap: f64,
    /// |D from I − J (closed) − D from I − max I(ρᴹ) (numeric)|
    pub eq_gap: f64,
}

impl OracleSample {
    pub fn worst(&self) -> f64 {
        self.j_gap
            .max(self.d_gap)
            .max(self.d_a_gap)
            .max(self.eq_gap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapSummary {
    pub max: f64,
    pub worst_state: Option<BdState>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub j_gap: GapSummary,
    pub d_gap: GapSummary,
    pub d_a_gap: GapSummary,
    pub eq_gap: GapSummary,
    pub passed: bool,
}

/// Compute all four gaps for one Bell-diagonal state.
pub fn check_state(c: &BdState, search: &SearchConfig, inject_bug: bool) -> OracleSample {
    let rho = c.density_matrix();
    let mi = mutual_information(&rho);
    let (mut j_closed, _) = classical_correlations_bd(c);
    if inject_bug {
        j_closed += 1e-3;
    }
    let d_closed = discord_bd(c);
    let j_num = classical_correlations_numeric(&rho, search).value;
    let mi_post = max_post_measurement_mi(&rho, search).value;
    let d_a_num = d_a_numeric(c, search).value;
    OracleSample {
        c: *c,
        j_gap: (j_closed - j_num).abs(),
        d_gap: (d_closed - (mi - j_num).max(0.0)).abs(),
        d_a_gap: (d_a_optimized(c) - d_a_num).abs(),
        eq_gap: (d_closed - (mi - mi_post).max(0.0)).abs(),
    }
}

/// The states an oracle run will check, in order.
pub fn oracle_states(cfg: &OracleConfig) -> Vec<BdState> {
    match &cfg.states {
        Some(s) => s.iter().copied().take(cfg.n.max(1)).collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..cfg.n).map(|_| random_bd_state(&mut rng)).collect()
        }
    }
}

fn summarize(samples: &[OracleSample], gap: impl Fn(&OracleSample) -> f64) -> GapSummary {
    // first occurrence wins on ties, so the result does not depend on
    // evaluation order
    let mut out = GapSummary {
        max: 0.0,
        worst_state: None,
    };
    for s in samples {
        let g = gap(s);
        if out.worst_state.is_none() || g > out.max {
            out = GapSummary {
                max: g,
                worst_state: Some(s.c),
            };
        }
    }
    out
}

/// Run the cross-validation; samples are evaluated in parallel and reduced
/// in input order.
pub fn run_oracle(cfg: &OracleConfig) -> (OracleReport, Vec<OracleSample>) {
    let states = oracle_states(cfg);
    let samples: Vec<OracleSample> = states
        .par_iter()
        .map(|c| check_state(c, &cfg.search, cfg.inject_bug))
        .collect();
    let j_gap = summarize(&samples, |s| s.j_gap);
    let d_gap = summarize(&samples, |s| s.d_gap);
    let d_a_gap = summarize(&samples, |s| s.d_a_gap);
    let eq_gap = summarize(&samples, |s| s.eq_gap);
    let passed = [j_gap, d_gap, d_a_gap, eq_gap]
        .iter()
        .all(|g| g.max <= cfg.tol);
    let report = OracleReport {
        samples: samples.len(),
        seed: cfg.seed,
        tol: cfg.tol,
        j_gap,
        d_gap,
        d_a_gap,
        eq_gap,
        passed,
    };
    (report, samples)
}
