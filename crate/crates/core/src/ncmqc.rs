//! Non-commutativity measure of quantum correlations.
//!
//! A state is written as `ρ = Σᵢⱼ Aᵢⱼ ⊗ |i⟩⟨j|` in an orthonormal basis of B.
//! `D_A` sums the Hilbert–Schmidt norms of the commutators of the four
//! blocks, and `d_A` minimizes `D_A` over bases. For Bell-diagonal states
//! both have closed forms in the Bloch direction `z` of the first basis
//! vector, with the minimum sitting on a coordinate axis.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::{unitary_from_s, z_vector, MeasurementParam};
use crate::optim::{minimize_on_sphere, SearchConfig};
use crate::qmat::{commutator, hs_norm, kron, CMat, Subsystem};
use crate::states::{BdState, DensityMatrix};

pub use crate::correlations::NumericOptimum;

const INV_SQRT_8: f64 = 0.353_553_390_593_273_8;

/// Basis `{U|0⟩, U|1⟩}` of B, with `U` parametrized like a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepresentationBasis {
    pub s: MeasurementParam,
}

impl RepresentationBasis {
    pub fn new(s: MeasurementParam) -> Self {
        Self { s }
    }

    pub fn computational() -> Self {
        Self::new(MeasurementParam::identity())
    }

    /// The two basis vectors.
    pub fn vectors(&self) -> [Vec<Complex64>; 2] {
        let u = unitary_from_s(&self.s);
        [u.column(0), u.column(1)]
    }
}

/// `αᵢ = (cⱼcₖ)²` for `{i, j, k} = {1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaTriple(pub [f64; 3]);

impl AlphaTriple {
    pub fn from_bd(c: &BdState) -> Self {
        let [c1, c2, c3] = c.coeffs();
        Self([(c2 * c3).powi(2), (c1 * c3).powi(2), (c1 * c2).powi(2)])
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Blocks `Aᵢⱼ = Tr_B[(𝕀 ⊗ |j⟩⟨i|) ρ]`, indexed `[i][j]`.
pub fn a_operators(rho: &DensityMatrix, basis: &RepresentationBasis) -> [[CMat; 2]; 2] {
    let v = basis.vectors();
    let block = |i: usize, j: usize| {
        let op = kron(&CMat::identity(2), &CMat::outer(&v[j], &v[i])).expect("2x2 factors");
        crate::qmat::partial_trace(&(&op * rho.matrix()), Subsystem::A).expect("4x4")
    };
    [[block(0, 0), block(0, 1)], [block(1, 0), block(1, 1)]]
}

/// `Σᵢⱼ Aᵢⱼ ⊗ |i⟩⟨j|`; recovers ρ.
pub fn reconstruct(a: &[[CMat; 2]; 2], basis: &RepresentationBasis) -> CMat {
    let v = basis.vectors();
    let mut acc = CMat::zeros(4, 4);
    for (i, row) in a.iter().enumerate() {
        for (j, aij) in row.iter().enumerate() {
            acc = &acc + &kron(aij, &CMat::outer(&v[i], &v[j])).expect("2x2 factors");
        }
    }
    acc
}

/// Index pairs (i, j) in the order A₀₀, A₀₁, A₁₀, A₁₁.
const BLOCKS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// `D_A` in a fixed basis: the sum over the six unordered pairs of distinct
/// blocks of `‖[Aᵢⱼ, Aₖₗ]‖₂`.
pub fn d_a_basis(rho: &DensityMatrix, basis: &RepresentationBasis) -> f64 {
    let a = a_operators(rho, basis);
    let mut total = 0.0;
    for (p, &(i, j)) in BLOCKS.iter().enumerate() {
        for &(k, l) in &BLOCKS[p + 1..] {
            total += hs_norm(&commutator(&a[i][j], &a[k][l]).expect("2x2 blocks"));
        }
    }
    total
}

/// Closed-form `D_A` of a Bell-diagonal state as a function of the Bloch
/// direction `z` of the first basis vector.
pub fn d_a_bd_closed_z(c: &BdState, z: [f64; 3]) -> f64 {
    let alpha = AlphaTriple::from_bd(c).0;
    let along: f64 = (0..3).map(|i| alpha[i] * z[i] * z[i]).sum();
    let across: f64 = (0..3).map(|i| alpha[i] * (1.0 - z[i] * z[i])).sum();
    INV_SQRT_8 * along.max(0.0).sqrt() + across.max(0.0).sqrt() / SQRT_2
}

/// Closed-form `D_A` in the basis parametrized by `s`.
pub fn d_a_bd_closed(c: &BdState, s: &MeasurementParam) -> f64 {
    d_a_bd_closed_z(c, z_vector(s))
}

/// The three axis-point values of `√8·D_A` in the order
/// `(|c₁c₂| + 2√(α₁+α₂), |c₂c₃| + 2√(α₂+α₃), |c₁c₃| + 2√(α₁+α₃))`, i.e. the
/// basis aligned with z, x and y respectively.
pub fn d_a_candidates(c: &BdState) -> [f64; 3] {
    let [c1, c2, c3] = c.coeffs();
    let (p12, p23, p13) = ((c1 * c2).powi(2), (c2 * c3).powi(2), (c1 * c3).powi(2));
    [
        (c1 * c2).abs() + 2.0 * (p23 + p13).sqrt(),
        (c2 * c3).abs() + 2.0 * (p12 + p13).sqrt(),
        (c1 * c3).abs() + 2.0 * (p12 + p23).sqrt(),
    ]
}

/// Optimized `d_A` of a Bell-diagonal state; equal candidates resolve to the
/// first in [`d_a_candidates`] order.
pub fn d_a_optimized(c: &BdState) -> f64 {
    let cand = d_a_candidates(c);
    let best = cand
        .iter()
        .copied()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("three candidates");
    INV_SQRT_8 * best
}

fn z_from_point(p: &[f64]) -> [f64; 3] {
    [p[0], p[1], p[2]]
}

/// Minimize [`d_a_bd_closed_z`] over the Bloch sphere of `z`.
pub fn d_a_numeric(c: &BdState, cfg: &SearchConfig) -> NumericOptimum {
    let best = minimize_on_sphere(3, |p| d_a_bd_closed_z(c, z_from_point(p)), cfg);
    NumericOptimum {
        value: best.value,
        s: MeasurementParam::from_z(z_from_point(&best.point)).expect("unit z"),
    }
}

/// Minimize [`d_a_basis`] over parametrized bases of B, for any state.
/// `D_A` depends on the basis only through the projectors `|i⟩⟨i|`, so the
/// search runs over the Bloch direction of the first basis vector.
pub fn d_a_numeric_general(rho: &DensityMatrix, cfg: &SearchConfig) -> NumericOptimum {
    let basis_at = |p: &[f64]| {
        RepresentationBasis::new(MeasurementParam::from_z(z_from_point(p)).expect("unit z"))
    };
    let best = minimize_on_sphere(3, |p| d_a_basis(rho, &basis_at(p)), cfg);
    NumericOptimum {
        value: best.value,
        s: basis_at(&best.point).s,
    }
}

/// `f̂(θ) = √θ + 2√(α − θ)` on `[0, α]`, `α = α₁ + α₂ + α₃`.
pub fn f_hat(theta: f64, alpha: &AlphaTriple) -> Result<f64> {
    let total = alpha.total();
    if !(0.0..=total).contains(&theta) {
        return Err(Error::ThetaOutOfRange {
            theta,
            alpha: total,
        });
    }
    Ok(theta.sqrt() + 2.0 * (total - theta).sqrt())
}

/// `σₖ` matrix element `⟨i|σₖ|j⟩` in the basis.
fn pauli_element(basis: &RepresentationBasis, k: usize, i: usize, j: usize) -> Complex64 {
    let v = basis.vectors();
    let sk = CMat::pauli(k);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            acc += v[i][a].conj() * sk[(a, b)] * v[j][b];
        }
    }
    acc
}

/// `‖[Aᵢⱼ, Aₖₗ]‖₂²` for a Bell-diagonal state from the Pauli-coefficient
/// expansion: `2⁻⁵ Σ |cₘcₙ|² |α⁽ᵐⁿ⁾ᵢⱼₖₗ|²` with
/// `α⁽ᵐⁿ⁾ᵢⱼₖₗ = σₘ^{ij}σₙ^{kl} − σₙ^{ij}σₘ^{kl}`.
pub fn commutator_norm_sq_bd(
    c: &BdState,
    basis: &RepresentationBasis,
    (i, j): (usize, usize),
    (k, l): (usize, usize),
) -> f64 {
    let cc = c.coeffs();
    let alpha = |m: usize, n: usize| {
        pauli_element(basis, m, i, j) * pauli_element(basis, n, k, l)
            - pauli_element(basis, n, i, j) * pauli_element(basis, m, k, l)
    };
    let terms = [(1, 2), (3, 1), (2, 3)];
    terms
        .iter()
        .map(|&(m, n)| (cc[m - 1] * cc[n - 1]).powi(2) * alpha(m, n).norm_sqr())
        .sum::<f64>()
        / 32.0
}
