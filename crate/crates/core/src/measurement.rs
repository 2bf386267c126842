//! Rank-1 projective measurements on qubit A.
//!
//! A measurement is the computational-basis PVM conjugated by
//! `V = s₀𝕀 + i(s₁σ₁ + s₂σ₂ + s₃σ₃)` for a unit `s ∈ S³`. The Bloch vector
//! of `V|0⟩` is [`z_vector`]; everything a Bell-diagonal state "sees" of the
//! measurement goes through it.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{self, kron, CMat, Subsystem, I};
use crate::states::{BdState, DensityMatrix};

/// Unit-norm tolerance on measurement parameters.
pub const UNIT_TOL: f64 = 1e-12;

/// Outcomes with probability at or below this carry no conditional state.
pub const PROB_FLOOR: f64 = 1e-14;

/// Ties in `|cᵢ|` within this margin go to the smaller axis index.
pub const AXIS_TIE_TOL: f64 = 1e-12;

/// One of the three Pauli directions, numbered 1..=3 on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// 1, 2 or 3.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// 0, 1 or 2.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    pub fn unit(self) -> [f64; 3] {
        let mut e = [0.0; 3];
        e[self.index()] = 1.0;
        e
    }
}

impl From<Axis> for u8 {
    fn from(a: Axis) -> u8 {
        a.number()
    }
}

impl TryFrom<u8> for Axis {
    type Error = Error;

    fn try_from(k: u8) -> Result<Axis> {
        match k {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            3 => Ok(Axis::Z),
            _ => Err(Error::InvalidAxis(k)),
        }
    }
}

/// Unit vector `s ∈ S³` parametrizing a unitary on a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementParam {
    s: [f64; 4],
}

impl MeasurementParam {
    pub fn new(s: [f64; 4]) -> Result<Self> {
        let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitParam { norm });
        }
        Ok(Self { s })
    }

    /// Normalize an arbitrary nonzero vector onto S³.
    pub fn normalized(v: [f64; 4]) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NonUnitParam { norm });
        }
        Ok(Self {
            s: v.map(|x| x / norm),
        })
    }

    pub fn identity() -> Self {
        Self {
            s: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// A parameter whose [`z_vector`] is the given unit direction (with
    /// `s₃ = 0`).
    pub fn from_z(z: [f64; 3]) -> Result<Self> {
        let norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NonUnitParam { norm });
        }
        let z = z.map(|x| x / norm);
        let polar = z[2].clamp(-1.0, 1.0).acos();
        let azimuth = z[1].atan2(z[0]);
        let (sh, ch) = (0.5 * polar).sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        Self::normalized([ch, sh * sa, -sh * ca, 0.0])
    }

    /// The fixed representative measuring along `axis`.
    pub fn for_axis(axis: Axis) -> Self {
        let s = match axis {
            Axis::X => [FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, 0.0],
            Axis::Y => [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0],
            Axis::Z => [1.0, 0.0, 0.0, 0.0],
        };
        Self { s }
    }

    pub fn components(&self) -> [f64; 4] {
        self.s
    }

    pub fn negated(&self) -> Self {
        Self {
            s: self.s.map(|x| -x),
        }
    }
}

/// Two-outcome rank-1 projective measurement on a qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Pvm {
    m0: CMat,
    m1: CMat,
}

impl Pvm {
    pub fn computational() -> Self {
        pvm_from_s(&MeasurementParam::identity())
    }

    pub fn projectors(&self) -> [&CMat; 2] {
        [&self.m0, &self.m1]
    }

    pub fn m0(&self) -> &CMat {
        &self.m0
    }

    pub fn m1(&self) -> &CMat {
        &self.m1
    }
}

/// `V = s₀𝕀₂ + i(s₁σ₁ + s₂σ₂ + s₃σ₃)`.
pub fn unitary_from_s(s: &MeasurementParam) -> CMat {
    let [s0, s1, s2, s3] = s.s;
    let v = [
        Complex64::new(s0, 0.0) + I * s3,
        I * s1 + s2,
        I * s1 - s2,
        Complex64::new(s0, 0.0) - I * s3,
    ];
    CMat::from_vec(2, 2, v.to_vec()).expect("2x2")
}

/// `Mⱼ = V|j⟩⟨j|V†`.
pub fn pvm_from_s(s: &MeasurementParam) -> Pvm {
    let v = unitary_from_s(s);
    let e0 = v.column(0);
    let e1 = v.column(1);
    Pvm {
        m0: CMat::outer(&e0, &e0),
        m1: CMat::outer(&e1, &e1),
    }
}

/// Bloch vector of `V|0⟩`.
pub fn z_vector(s: &MeasurementParam) -> [f64; 3] {
    let [s0, s1, s2, s3] = s.s;
    [
        2.0 * (-s0 * s2 + s1 * s3),
        2.0 * (s0 * s1 + s2 * s3),
        s0 * s0 + s3 * s3 - s1 * s1 - s2 * s2,
    ]
}

/// One measurement outcome: its probability and, when defined, the
/// conditional state of qubit B.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub probability: f64,
    pub state: Option<CMat>,
}

/// Conditional states `½(𝕀 ± Σ cᵢzᵢσᵢ)` of B, each with probability ½.
pub fn conditional_states_bd(c: &BdState, s: &MeasurementParam) -> [Outcome; 2] {
    let z = z_vector(s);
    let c = c.coeffs();
    let r = [c[0] * z[0], c[1] * z[1], c[2] * z[2]];
    let plus = crate::states::bloch_state(&r);
    let minus = crate::states::bloch_state(&r.map(|x| -x));
    [
        Outcome {
            probability: 0.5,
            state: Some(plus),
        },
        Outcome {
            probability: 0.5,
            state: Some(minus),
        },
    ]
}

fn lift_a(m: &CMat) -> CMat {
    kron(m, &CMat::identity(2)).expect("2x2 projector")
}

/// `ρ_B|j = Tr_A[(Mⱼ⊗𝕀)ρ] / p'ⱼ` with `p'ⱼ = Tr[(Mⱼ⊗𝕀)ρ]`.
///
/// Probabilities are renormalized to sum to one. Outcomes with
/// `p'ⱼ ≤ 1e−14` get probability 0 and no state.
pub fn conditional_states_general(rho: &DensityMatrix, m: &Pvm) -> [Outcome; 2] {
    let unnormalized = m.projectors().map(|mj| {
        let x = &lift_a(mj) * rho.matrix();
        qmat::partial_trace(&x, Subsystem::B).expect("4x4")
    });
    let raw = unnormalized.clone().map(|x| x.trace().re.max(0.0));
    let total: f64 = raw.iter().sum();
    let mut out: [Outcome; 2] = std::array::from_fn(|_| Outcome {
        probability: 0.0,
        state: None,
    });
    for (j, x) in unnormalized.into_iter().enumerate() {
        if raw[j] > PROB_FLOOR {
            out[j] = Outcome {
                probability: raw[j] / total,
                state: Some(x.scale_re(1.0 / raw[j])),
            };
        }
    }
    out
}

/// `ρᴹ = Σⱼ (Mⱼ⊗𝕀) ρ (Mⱼ⊗𝕀)`.
pub fn post_measurement_state(rho: &DensityMatrix, m: &Pvm) -> DensityMatrix {
    let mut acc = CMat::zeros(4, 4);
    for mj in m.projectors() {
        let p = lift_a(mj);
        acc = &acc + &(&(&p * rho.matrix()) * &p);
    }
    DensityMatrix::from_trusted(acc)
}

/// Correlation matrix of a Bell-diagonal state after measuring A with `s`:
/// `T(s)ᵢⱼ = cⱼ zᵢ zⱼ`.
pub fn t_after_measurement(c: &BdState, s: &MeasurementParam) -> [[f64; 3]; 3] {
    let z = z_vector(s);
    let c = c.coeffs();
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, tij) in row.iter_mut().enumerate() {
            *tij = c[j] * z[i] * z[j];
        }
    }
    t
}

/// `θ(s) = sqrt(Σ |cᵢ zᵢ(s)|²)`, the length of the conditional Bloch vector.
pub fn theta(c: &BdState, s: &MeasurementParam) -> f64 {
    let z = z_vector(s);
    c.coeffs()
        .iter()
        .zip(z)
        .map(|(ci, zi)| (ci * zi).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Result of [`optimal_s`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalMeasurement {
    pub s: MeasurementParam,
    pub c_max: f64,
    pub axis: Axis,
}

/// Axis of the largest `|cᵢ|`; near-ties resolve to the smallest index.
pub fn dominant_axis(c: [f64; 3]) -> Axis {
    let max = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        return Axis::Z;
    }
    let i = c
        .iter()
        .position(|x| x.abs() >= max - AXIS_TIE_TOL)
        .expect("max is attained");
    Axis::from_index(i)
}

/// Measurement maximizing θ: along the axis of the largest `|cᵢ|`.
pub fn optimal_s(c: &BdState) -> OptimalMeasurement {
    let axis = dominant_axis(c.coeffs());
    OptimalMeasurement {
        s: MeasurementParam::for_axis(axis),
        c_max: c.c_max(),
        axis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{ONE, ZERO};
    use crate::states::fano_decompose;

    fn close3(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn unitary_examples() {
        let v = unitary_from_s(&MeasurementParam::identity());
        assert_eq!(v, CMat::identity(2));
        let v = unitary_from_s(&MeasurementParam::new([0.0, 1.0, 0.0, 0.0]).unwrap());
        assert!(v.max_abs_diff(&CMat::pauli(1).scale(I)) < 1e-15);
        let h = FRAC_1_SQRT_2;
        let v = unitary_from_s(&MeasurementParam::new([h, 0.0, h, 0.0]).unwrap());
        let want = (&CMat::identity(2) + &CMat::pauli(2).scale(I)).scale_re(h);
        assert!(v.max_abs_diff(&want) < 1e-15);
        assert!((&v.adjoint() * &v).max_abs_diff(&CMat::identity(2)) < 1e-15);
    }

    #[test]
    fn rejects_non_unit() {
        assert!(matches!(
            MeasurementParam::new([1.0, 1.0, 0.0, 0.0]),
            Err(Error::NonUnitParam { .. })
        ));
        assert!(MeasurementParam::normalized([0.0; 4]).is_err());
    }

    #[test]
    fn pvm_examples() {
        let comp = Pvm::computational();
        assert_eq!(comp.m0(), &CMat::diag(&[1.0, 0.0]));
        assert_eq!(comp.m1(), &CMat::diag(&[0.0, 1.0]));

        let phase = pvm_from_s(&MeasurementParam::new([0.0, 0.0, 0.0, 1.0]).unwrap());
        assert!(phase.m0().max_abs_diff(comp.m0()) < 1e-15);
        assert!(phase.m1().max_abs_diff(comp.m1()) < 1e-15);

        let h = FRAC_1_SQRT_2;
        let x = pvm_from_s(&MeasurementParam::new([h, 0.0, h, 0.0]).unwrap());
        let plus = (&CMat::identity(2) + &CMat::pauli(1)).scale_re(0.5);
        let minus = (&CMat::identity(2) - &CMat::pauli(1)).scale_re(0.5);
        // z = (−1, 0, 0): outcome 0 is the −1 eigenprojector of σ₁
        assert!(x.m0().max_abs_diff(&minus) < 1e-15);
        assert!(x.m1().max_abs_diff(&plus) < 1e-15);
    }

    #[test]
    fn z_examples() {
        let h = FRAC_1_SQRT_2;
        assert_eq!(z_vector(&MeasurementParam::identity()), [0.0, 0.0, 1.0]);
        let z = z_vector(&MeasurementParam::new([h, 0.0, h, 0.0]).unwrap());
        assert!(close3(z, [-1.0, 0.0, 0.0], 1e-15));
        let z = z_vector(&MeasurementParam::new([h, h, 0.0, 0.0]).unwrap());
        assert!(close3(z, [0.0, 1.0, 0.0], 1e-15));
    }

    #[test]
    fn from_z_round_trips() {
        for z in [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
            [-0.48, 0.6, 0.64],
        ] {
            let s = MeasurementParam::from_z(z).unwrap();
            assert!(close3(z_vector(&s), z, 1e-15), "{z:?}");
        }
        for axis in Axis::ALL {
            let z = z_vector(&MeasurementParam::for_axis(axis));
            assert!(close3(z, axis.unit(), 1e-15));
        }
    }

    #[test]
    fn conditional_bd_examples() {
        let c = BdState::new([0.6, -0.6, 0.6]).unwrap();
        let [o0, o1] = conditional_states_bd(&c, &MeasurementParam::identity());
        assert_eq!(o0.probability, 0.5);
        assert_eq!(o1.probability, 0.5);
        let want = (&CMat::identity(2) + &CMat::pauli(3).scale_re(0.6)).scale_re(0.5);
        assert!(o0.state.unwrap().max_abs_diff(&want) < 1e-15);

        let zero = BdState::new([0.0; 3]).unwrap();
        let s = MeasurementParam::normalized([0.3, -0.1, 0.8, 0.2]).unwrap();
        for o in conditional_states_bd(&zero, &s) {
            assert!(
                o.state
                    .unwrap()
                    .max_abs_diff(&CMat::identity(2).scale_re(0.5))
                    < 1e-15
            );
        }

        let bell = BdState::new([1.0, -1.0, 1.0]).unwrap();
        let [o0, _] = conditional_states_bd(&bell, &MeasurementParam::for_axis(Axis::X));
        let want = (&CMat::identity(2) + &CMat::pauli(1)).scale_re(0.5);
        assert!(o0.state.unwrap().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn conditional_general_matches_bd() {
        let c = BdState::new([0.6, -0.6, 0.6]).unwrap();
        let s = MeasurementParam::identity();
        let general = conditional_states_general(&c.density_matrix(), &pvm_from_s(&s));
        let closed = conditional_states_bd(&c, &s);
        for (g, b) in general.iter().zip(&closed) {
            assert!((g.probability - b.probability).abs() < 1e-12);
            let (gs, bs) = (g.state.as_ref().unwrap(), b.state.as_ref().unwrap());
            assert!(gs.max_abs_diff(bs) < 1e-12);
        }
    }

    #[test]
    fn conditional_general_product_and_bell() {
        let ra = crate::states::bloch_state(&[0.2, 0.1, 0.4]);
        let rb = crate::states::bloch_state(&[-0.3, 0.5, 0.0]);
        let rho = DensityMatrix::product(&ra, &rb).unwrap();
        let s = MeasurementParam::normalized([0.4, 0.1, -0.7, 0.3]).unwrap();
        for o in conditional_states_general(&rho, &pvm_from_s(&s)) {
            assert!(o.state.unwrap().max_abs_diff(&rb) < 1e-12);
        }

        let bell = BdState::new([1.0, -1.0, 1.0]).unwrap().density_matrix();
        let [o0, o1] = conditional_states_general(&bell, &Pvm::computational());
        assert!((o0.probability - 0.5).abs() < 1e-15 && (o1.probability - 0.5).abs() < 1e-15);
        assert!(o0.state.unwrap().max_abs_diff(&CMat::diag(&[1.0, 0.0])) < 1e-15);
        assert!(o1.state.unwrap().max_abs_diff(&CMat::diag(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn conditional_general_flags_impossible_outcome() {
        // |00⟩: outcome 1 of the computational PVM cannot occur
        let psi = [ONE, ZERO, ZERO, ZERO];
        let rho = DensityMatrix::pure(&psi).unwrap();
        let [o0, o1] = conditional_states_general(&rho, &Pvm::computational());
        assert_eq!(o0.probability, 1.0);
        assert!(o0.state.is_some());
        assert_eq!(o1.probability, 0.0);
        assert!(o1.state.is_none());
    }

    #[test]
    fn post_measurement_examples() {
        let s = MeasurementParam::normalized([0.3, -0.4, 0.5, 0.1]).unwrap();
        let mixed = post_measurement_state(&DensityMatrix::maximally_mixed(), &pvm_from_s(&s));
        assert!(
            mixed
                .matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-15
        );

        let bell = BdState::new([1.0, -1.0, 1.0]).unwrap().density_matrix();
        let m = post_measurement_state(&bell, &Pvm::computational());
        assert!(m.matrix().max_abs_diff(&CMat::diag(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);

        // optimal measurement leaves exactly one correlation
        let c = BdState::new([1.0, -0.6, 0.6]).unwrap();
        let opt = optimal_s(&c);
        let t = fano_decompose(&post_measurement_state(
            &c.density_matrix(),
            &pvm_from_s(&opt.s),
        ))
        .t;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!((t[i][j] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn t_after_measurement_examples() {
        let c = BdState::new([0.6, -0.6, 0.6]).unwrap();
        let t = t_after_measurement(&c, &MeasurementParam::for_axis(Axis::Z));
        assert_eq!(t, [[0.0; 3], [0.0; 3], [0.0, 0.0, 0.6]]);

        let c = BdState::new([1.0, -0.6, 0.6]).unwrap();
        let t = t_after_measurement(&c, &MeasurementParam::for_axis(Axis::X));
        let flat: Vec<f64> = t.iter().flatten().copied().collect();
        assert!((flat[0] - 1.0).abs() < 1e-15);
        assert!(flat[1..].iter().all(|x| x.abs() < 1e-15));

        let c = BdState::new([0.4, 0.2, 0.0]).unwrap();
        let t = t_after_measurement(&c, &MeasurementParam::identity());
        assert!(t.iter().flatten().all(|x| *x == 0.0));
    }

    #[test]
    fn theta_examples() {
        let c = BdState::new([0.6, -0.6, 0.6]).unwrap();
        let s = MeasurementParam::normalized([0.1, 0.7, -0.2, 0.4]).unwrap();
        assert!((theta(&c, &s) - 0.6).abs() < 1e-15);
        let c = BdState::new([1.0, -0.6, 0.6]).unwrap();
        assert!((theta(&c, &MeasurementParam::for_axis(Axis::X)) - 1.0).abs() < 1e-15);
        assert_eq!(theta(&BdState::new([0.0; 3]).unwrap(), &s), 0.0);
    }

    #[test]
    fn optimal_s_examples() {
        let o = optimal_s(&BdState::new([0.6, -0.6, 0.6]).unwrap());
        assert_eq!(o.axis, Axis::X);
        assert!((o.c_max - 0.6).abs() < 1e-15);

        let c = BdState::new([1.0, -0.6, 0.6]).unwrap();
        let o = optimal_s(&c);
        assert_eq!(o.axis, Axis::X);
        assert!(close3(z_vector(&o.s), [1.0, 0.0, 0.0], 1e-15));

        let c = BdState::new([0.2, -0.6, 0.3]).unwrap();
        let o = optimal_s(&c);
        assert_eq!(o.axis, Axis::Y);
        assert!(close3(z_vector(&o.s), [0.0, 1.0, 0.0], 1e-15));
        assert!((theta(&c, &o.s) - 0.6).abs() < 1e-15);

        let o = optimal_s(&BdState::new([0.0; 3]).unwrap());
        assert_eq!(o.axis, Axis::Z);
        assert_eq!(z_vector(&o.s), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn axis_wire_format() {
        assert_eq!(serde_json::to_string(&Axis::Y).unwrap(), "2");
        assert_eq!(serde_json::from_str::<Axis>("3").unwrap(), Axis::Z);
        assert!(serde_json::from_str::<Axis>("4").is_err());
    }
}
