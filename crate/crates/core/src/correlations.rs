//! Entropic correlation measures (all in bits).
//!
//! Bell-diagonal states have closed forms: `I = 2 − S(ρ)`,
//! `J = 1 − H₂((1 + c)/2)` with `c = max|cᵢ|`, and `D = I − J`. General states
//! go through a numerical search over measurements on A, which is also the
//! oracle the closed forms are checked against.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::measurement::{
    self, conditional_states_general, post_measurement_state, pvm_from_s, Axis, MeasurementParam,
};
use crate::optim::{minimize_on_sphere, SearchConfig};
use crate::qmat::{CMat, Subsystem};
use crate::states::{bd_extract, check_state, fano_decompose, BdState, DensityMatrix, STATE_TOL};

/// Summary of the three entropic measures for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    pub optimal_axis: Axis,
    pub theta_star: f64,
}

/// Which route to take for discord.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscordMethod {
    /// `I − J` with the Bell-diagonal closed form for `J`.
    ClosedBd,
    /// `I − J` with `J` from the numerical measurement search.
    Numeric,
    /// `I(ρ) − max_M I(ρᴹ)`, searched numerically.
    ViaMi,
}

/// A measurement found by numerical search together with the objective
/// value reached there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericOptimum {
    pub value: f64,
    pub s: MeasurementParam,
}

/// `−Σ λ log₂ λ`, with `0·log 0 = 0` and eigenvalues clamped to `[0, 1]`.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    let h: f64 = spectrum
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum();
    h.max(0.0)
}

/// Binary entropy `H₂(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_of_spectrum(&[p, 1.0 - p])
}

/// Von Neumann entropy of a qubit or two-qubit state.
pub fn von_neumann_entropy(rho: &CMat) -> Result<f64> {
    Ok(entropy_of_spectrum(&check_state(rho)?))
}

fn entropy_trusted(rho: &CMat) -> f64 {
    // Operators built internally from valid states: skip the trace check.
    let ev = crate::qmat::hermitian_eigenvalues(rho).expect("Hermitian by construction");
    debug_assert!(ev.iter().all(|&l| l >= -STATE_TOL));
    entropy_of_spectrum(&ev)
}

/// `S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let sa = entropy_trusted(&rho.reduced(Subsystem::A));
    let sb = entropy_trusted(&rho.reduced(Subsystem::B));
    let s = entropy_of_spectrum(&rho.spectrum());
    (sa + sb - s).max(0.0)
}

/// Mutual information of a Bell-diagonal state from its closed-form spectrum.
pub fn mutual_information_bd(c: &BdState) -> f64 {
    (2.0 - entropy_of_spectrum(&c.eigenvalues())).max(0.0)
}

/// `J = 1 − H₂((1 + c_max)/2)` and the optimal axis.
pub fn classical_correlations_bd(c: &BdState) -> (f64, Axis) {
    let opt = measurement::optimal_s(c);
    let j = 1.0 - binary_entropy(0.5 * (1.0 + opt.c_max));
    (j.max(0.0), opt.axis)
}

/// `Σⱼ p'ⱼ S(ρ_B|j)` for the measurement `s` on A.
pub fn measured_conditional_entropy(rho: &DensityMatrix, s: &MeasurementParam) -> f64 {
    conditional_states_general(rho, &pvm_from_s(s))
        .iter()
        .filter_map(|o| {
            o.state
                .as_ref()
                .map(|st| o.probability * entropy_trusted(st))
        })
        .sum()
}

fn param_from_point(p: &[f64]) -> MeasurementParam {
    MeasurementParam::normalized([p[0], p[1], p[2], p[3]]).expect("search point is nonzero")
}

/// `J = S(ρ_B) − min_s Σ p'ⱼ S(ρ_B|j)`, minimized over `s ∈ S³`.
pub fn classical_correlations_numeric(rho: &DensityMatrix, cfg: &SearchConfig) -> NumericOptimum {
    let sb = entropy_trusted(&rho.reduced(Subsystem::B));
    let best = minimize_on_sphere(
        4,
        |p| measured_conditional_entropy(rho, &param_from_point(p)),
        cfg,
    );
    NumericOptimum {
        value: (sb - best.value).max(0.0),
        s: param_from_point(&best.point),
    }
}

/// `max_s I(ρᴹ⁽ˢ⁾)`.
pub fn max_post_measurement_mi(rho: &DensityMatrix, cfg: &SearchConfig) -> NumericOptimum {
    let best = minimize_on_sphere(
        4,
        |p| {
            -mutual_information(&post_measurement_state(
                rho,
                &pvm_from_s(&param_from_point(p)),
            ))
        },
        cfg,
    );
    NumericOptimum {
        value: -best.value,
        s: param_from_point(&best.point),
    }
}

/// Discord of a Bell-diagonal state, `I − J` in closed form.
pub fn discord_bd(c: &BdState) -> f64 {
    let i = mutual_information_bd(c);
    let (j, _) = classical_correlations_bd(c);
    (i - j).max(0.0)
}

/// Quantum discord by the requested route. `ClosedBd` fails on states that
/// are not Bell-diagonal.
pub fn discord(rho: &DensityMatrix, method: DiscordMethod, cfg: &SearchConfig) -> Result<f64> {
    let d = match method {
        DiscordMethod::ClosedBd => discord_bd(&bd_extract(rho)?),
        DiscordMethod::Numeric => {
            mutual_information(rho) - classical_correlations_numeric(rho, cfg).value
        }
        DiscordMethod::ViaMi => mutual_information(rho) - max_post_measurement_mi(rho, cfg).value,
    };
    Ok(d.max(0.0))
}

impl CorrelationReport {
    /// Closed-form report for a Bell-diagonal state.
    pub fn for_bd(c: &BdState) -> Self {
        let mutual_info = mutual_information_bd(c);
        let (classical, axis) = classical_correlations_bd(c);
        Self {
            mutual_info,
            classical,
            discord: (mutual_info - classical).max(0.0),
            optimal_axis: axis,
            theta_star: c.c_max(),
        }
    }

    /// Numerical report for an arbitrary state. The reported axis is the
    /// Pauli direction closest to the optimal measurement direction, and
    /// `theta_star` is `|Tᵀz|` at that direction (equal to θ for
    /// Bell-diagonal input).
    pub fn numeric(rho: &DensityMatrix, cfg: &SearchConfig) -> (Self, NumericOptimum) {
        let mutual_info = mutual_information(rho);
        let opt = classical_correlations_numeric(rho, cfg);
        let z = measurement::z_vector(&opt.s);
        let axis = (0..3)
            .max_by(|&a, &b| z[a].abs().total_cmp(&z[b].abs()).then(b.cmp(&a)))
            .map(Axis::from_index)
            .expect("three axes");
        let t = fano_decompose(rho).t;
        let theta_star = (0..3)
            .map(|j| (0..3).map(|i| t[i][j] * z[i]).sum::<f64>().powi(2))
            .sum::<f64>()
            .sqrt();
        let report = Self {
            mutual_info,
            classical: opt.value,
            discord: (mutual_info - opt.value).max(0.0),
            optimal_axis: axis,
            theta_star,
        };
        (report, opt)
    }
}
