//! Identical local Pauli dephasing channels on both qubits.
//!
//! Each qubit sees `ρ ↦ (1−p)ρ + p σₖρσₖ` with `p = (1 − e^{−γt})/2`. On a
//! Bell-diagonal state this keeps the form and multiplies the two
//! coefficients transverse to `k` by `e^{−2γt}`.

use serde::Serialize;

use crate::correlations::CorrelationReport;
use crate::error::{Error, Result};
use crate::measurement::{optimal_s, t_after_measurement, Axis};
use crate::ncmqc::d_a_optimized;
use crate::qmat::{kron, CMat};
use crate::states::{BdState, DensityMatrix};

/// Tolerance for the freezing initial-condition test.
pub const FREEZING_TOL: f64 = 1e-12;

/// Channel axis (1 = bit flip, 2 = bit-phase flip, 3 = phase flip) and
/// decoherence rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelSpec {
    pub axis: Axis,
    pub gamma: f64,
}

impl ChannelSpec {
    pub fn new(axis: Axis, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidRate(gamma));
        }
        Ok(Self { axis, gamma })
    }

    pub fn name(&self) -> &'static str {
        match self.axis {
            Axis::X => "bit flip",
            Axis::Y => "bit-phase flip",
            Axis::Z => "phase flip",
        }
    }

    /// `e^{−γt}`, the single-qubit attenuation of transverse Bloch components.
    fn attenuation(&self, t: f64) -> f64 {
        (-self.gamma * t).exp()
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}

/// The two nonzero single-qubit Kraus operators
/// `[√((1−e^{−γt})/2) σₖ, √((1+e^{−γt})/2) 𝕀]`.
pub fn kraus_ops(spec: &ChannelSpec, t: f64) -> Result<[CMat; 2]> {
    check_time(t)?;
    let e = spec.attenuation(t);
    let flip = (0.5 * (1.0 - e)).max(0.0).sqrt();
    let keep = (0.5 * (1.0 + e)).sqrt();
    Ok([
        CMat::pauli(spec.axis.number() as usize).scale_re(flip),
        CMat::identity(2).scale_re(keep),
    ])
}

/// `Λ[ρ] = Σᵢⱼ (Eᵢ⊗Eⱼ) ρ (Eᵢ⊗Eⱼ)†`.
pub fn apply_channel(rho: &DensityMatrix, spec: &ChannelSpec, t: f64) -> Result<DensityMatrix> {
    let ops = kraus_ops(spec, t)?;
    let mut acc = CMat::zeros(4, 4);
    for ea in &ops {
        for eb in &ops {
            let k = kron(ea, eb)?;
            acc = &acc + &(&(&k * rho.matrix()) * &k.adjoint());
        }
    }
    Ok(DensityMatrix::from_trusted(acc))
}

/// Coefficients at time `t`: `c_k` kept, the other two scaled by `e^{−2γt}`.
pub fn c_trajectory(c0: &BdState, spec: &ChannelSpec, t: f64) -> Result<BdState> {
    check_time(t)?;
    let decay = (-2.0 * spec.gamma * t).exp();
    let mut c = c0.coeffs();
    for (i, ci) in c.iter_mut().enumerate() {
        if i != spec.axis.index() {
            *ci *= decay;
        }
    }
    BdState::new(c)
}

/// The two axes other than `k`, in increasing order.
fn transverse(axis: Axis) -> [usize; 2] {
    match axis {
        Axis::X => [1, 2],
        Axis::Y => [0, 2],
        Axis::Z => [0, 1],
    }
}

/// One transverse coefficient is ±1 and the other equals ∓c_k.
pub fn is_freezing_initial(c0: &BdState, spec: &ChannelSpec) -> bool {
    let c = c0.coeffs();
    let ck = c[spec.axis.index()];
    let [p, q] = transverse(spec.axis);
    let pair_ok = |unit: f64, other: f64| {
        (unit.abs() - 1.0).abs() <= FREEZING_TOL
            && (other + unit.signum() * ck).abs() <= FREEZING_TOL
    };
    pair_ok(c[p], c[q]) || pair_ok(c[q], c[p])
}

/// `t* = −ln(c₀)/(2γ)` with `c₀ = |c_k(0)|`, the time at which the decaying
/// unit coefficient drops to `c₀`. `None` if the initial condition is not a
/// freezing one, if `c₀ = 0`, or if `γ = 0`.
pub fn freezing_time(c0: &BdState, spec: &ChannelSpec) -> Option<f64> {
    if !is_freezing_initial(c0, spec) || spec.gamma == 0.0 {
        return None;
    }
    let ck = c0.coeffs()[spec.axis.index()].abs();
    if ck == 0.0 {
        return None;
    }
    Some((-ck.ln() / (2.0 * spec.gamma)).max(0.0))
}

/// Everything tracked at one instant of a decoherence run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub c: BdState,
    pub report: CorrelationReport,
    pub d_a: f64,
    /// Correlation matrix after the optimal measurement on A.
    pub t_matrix_after: [[f64; 3]; 3],
    pub optimal_axis: Axis,
}

/// Closed-form analysis of a Bell-diagonal state, i.e. a trajectory point
/// at time `t`.
pub fn analyze_point(t: f64, c: &BdState) -> TrajectoryPoint {
    let opt = optimal_s(c);
    TrajectoryPoint {
        t,
        c: *c,
        report: CorrelationReport::for_bd(c),
        d_a: d_a_optimized(c),
        t_matrix_after: t_after_measurement(c, &opt.s),
        optimal_axis: opt.axis,
    }
}

/// Evaluate the closed-form measures along `t_grid`. Each point is computed
/// from `c(t)` directly.
pub fn trajectory(
    c0: &BdState,
    spec: &ChannelSpec,
    t_grid: &[f64],
) -> Result<Vec<TrajectoryPoint>> {
    let sorted = t_grid.windows(2).all(|w| w[0] <= w[1]);
    if !sorted || t_grid.iter().any(|&t| !t.is_finite() || t < 0.0) {
        return Err(Error::InvalidTimeGrid);
    }
    t_grid
        .iter()
        .map(|&t| Ok(analyze_point(t, &c_trajectory(c0, spec, t)?)))
        .collect()
}

/// `steps` equally spaced times on `[0, t_max]` (just `[0]` when `steps` is 1).
pub fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    t_max
                } else {
                    t_max * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::fano_decompose;

    fn bd(c: [f64; 3]) -> BdState {
        BdState::new(c).unwrap()
    }

    fn phase(gamma: f64) -> ChannelSpec {
        ChannelSpec::new(Axis::Z, gamma).unwrap()
    }

    fn completeness(ops: &[CMat; 2]) -> f64 {
        let sum = &(&ops[0].adjoint() * &ops[0]) + &(&ops[1].adjoint() * &ops[1]);
        sum.max_abs_diff(&CMat::identity(2))
    }

    #[test]
    fn kraus_examples() {
        let spec = phase(1.0);
        let [flip, keep] = kraus_ops(&spec, 0.0).unwrap();
        assert_eq!(flip, CMat::zeros(2, 2));
        assert_eq!(keep, CMat::identity(2));

        let [flip, keep] = kraus_ops(&spec, 1e3).unwrap();
        let h = 0.5f64.sqrt();
        assert!(flip.max_abs_diff(&CMat::pauli(3).scale_re(h)) < 1e-15);
        assert!(keep.max_abs_diff(&CMat::identity(2).scale_re(h)) < 1e-15);

        // e^{−γt} = 0.6
        let t = -(0.6f64.ln());
        let [flip, keep] = kraus_ops(&spec, t).unwrap();
        assert!((flip[(0, 0)].norm_sqr() - 0.2).abs() < 1e-15);
        assert!((keep[(0, 0)].norm_sqr() - 0.8).abs() < 1e-15);
        assert!(completeness(&[flip, keep]) < 1e-15);

        assert!(matches!(
            kraus_ops(&spec, -0.1),
            Err(Error::NegativeTime(_))
        ));
    }

    #[test]
    fn channel_spec_validation() {
        assert!(ChannelSpec::new(Axis::X, -1.0).is_err());
        assert!(ChannelSpec::new(Axis::X, f64::NAN).is_err());
        assert_eq!(
            ChannelSpec::new(Axis::Y, 0.0).unwrap().name(),
            "bit-phase flip"
        );
    }

    #[test]
    fn apply_channel_examples() {
        let spec = phase(1.0);
        let rho = bd([0.6, -0.6, 0.6]).density_matrix();
        assert!(
            apply_channel(&rho, &spec, 0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(rho.matrix())
                < 1e-15
        );

        // e^{−2γt} = 0.25
        let t = -(0.25f64.ln()) / 2.0;
        let out = apply_channel(&rho, &spec, t).unwrap();
        let want = bd([0.15, -0.15, 0.6]).density_matrix();
        assert!(out.matrix().max_abs_diff(want.matrix()) < 1e-15);

        let mixed = DensityMatrix::maximally_mixed();
        for axis in Axis::ALL {
            let spec = ChannelSpec::new(axis, 0.7).unwrap();
            let out = apply_channel(&mixed, &spec, 1.3).unwrap();
            assert!(out.matrix().max_abs_diff(mixed.matrix()) < 1e-15);
        }
    }

    #[test]
    fn c_trajectory_examples() {
        let spec = phase(1.0);
        let t = -(0.5f64.ln()) / 2.0;
        let c = c_trajectory(&bd([0.6, -0.6, 0.6]), &spec, t)
            .unwrap()
            .coeffs();
        for (a, b) in c.iter().zip([0.3, -0.3, 0.6]) {
            assert!((a - b).abs() < 1e-15);
        }
        let c0 = bd([0.2, 0.1, -0.4]);
        assert_eq!(c_trajectory(&c0, &spec, 0.0).unwrap(), c0);
        let c = c_trajectory(&bd([1.0, -0.6, 0.6]), &spec, 0.255413)
            .unwrap()
            .coeffs();
        for (a, b) in c.iter().zip([0.6, -0.36, 0.6]) {
            assert!((a - b).abs() < 1e-6);
        }
        let c = c_trajectory(
            &bd([0.4, 0.2, 0.1]),
            &ChannelSpec::new(Axis::X, 2.0).unwrap(),
            0.3,
        )
        .unwrap()
        .coeffs();
        assert_eq!(c[0], 0.4);
    }

    #[test]
    fn freezing_time_examples() {
        let spec = phase(1.0);
        let t = freezing_time(&bd([1.0, -0.6, 0.6]), &spec).unwrap();
        assert!((t + 0.5 * 0.6f64.ln()).abs() < 1e-15);
        assert!((t - 0.255413).abs() < 5e-7);
        assert_eq!(freezing_time(&bd([1.0, -1.0, 1.0]), &spec), Some(0.0));
        assert_eq!(freezing_time(&bd([1.0, 0.0, 0.0]), &spec), None);
        assert_eq!(freezing_time(&bd([1.0, -0.6, 0.6]), &phase(0.0)), None);
        assert_eq!(freezing_time(&bd([0.6, -0.6, 0.6]), &spec), None);
    }

    #[test]
    fn freezing_initial_examples() {
        let spec = phase(1.0);
        assert!(is_freezing_initial(&bd([1.0, -0.6, 0.6]), &spec));
        assert!(!is_freezing_initial(&bd([0.6, -0.6, 0.6]), &spec));
        assert!(is_freezing_initial(&bd([-1.0, 0.6, 0.6]), &spec));
        // unit coefficient in the second transverse slot
        assert!(is_freezing_initial(&bd([-0.6, 1.0, 0.6]), &spec));
        // bit-flip channel: transverse axes are 2 and 3
        let bf = ChannelSpec::new(Axis::X, 1.0).unwrap();
        assert!(is_freezing_initial(&bd([0.6, 1.0, -0.6]), &bf));
        assert!(!is_freezing_initial(&bd([1.0, -0.6, 0.6]), &bf));
    }

    #[test]
    fn trajectory_examples() {
        let spec = phase(1.0);
        let c0 = bd([0.6, -0.6, 0.6]);
        let pts = trajectory(&c0, &spec, &uniform_grid(1.0, 11)).unwrap();
        for p in &pts {
            assert!((p.report.classical - 0.2780719051126377).abs() < 1e-12);
        }
        assert!((pts[0].report.discord - 0.3651484454403229).abs() < 1e-12);
        assert!(pts
            .windows(2)
            .all(|w| w[1].report.discord < w[0].report.discord));

        let single = trajectory(&c0, &spec, &[0.0]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0], analyze_point(0.0, &c0));

        assert!(trajectory(&c0, &spec, &[0.5, 0.1]).is_err());
        assert!(trajectory(&c0, &spec, &[-0.1]).is_err());
    }

    #[test]
    fn frozen_state_switches_axis() {
        let spec = phase(1.0);
        let pts = trajectory(&bd([1.0, -0.6, 0.6]), &spec, &uniform_grid(1.0, 101)).unwrap();
        assert!((pts[0].report.discord - 0.2780719051126377).abs() < 1e-12);
        assert!((pts[0].report.classical - 1.0).abs() < 1e-12);
        assert_eq!(pts[25].optimal_axis, Axis::X);
        assert_eq!(pts[26].optimal_axis, Axis::Z);
        assert!((pts[26].t_matrix_after[2][2] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn evolved_state_stays_bd() {
        let spec = ChannelSpec::new(Axis::Y, 0.8).unwrap();
        let out = apply_channel(&bd([0.3, -0.5, 0.1]).density_matrix(), &spec, 0.4).unwrap();
        let f = fano_decompose(&out);
        for i in 0..3 {
            assert!(f.a[i].abs() < 1e-15 && f.b[i].abs() < 1e-15);
            for j in 0..3 {
                if i != j {
                    assert!(f.t[i][j].abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn uniform_grid_shape() {
        assert_eq!(uniform_grid(2.0, 1), vec![0.0]);
        let g = uniform_grid(1.0, 101);
        assert_eq!(g.len(), 101);
        assert_eq!(g[100], 1.0);
        assert!((g[26] - 0.26).abs() < 1e-15);
    }
}
