//! Two-qubit states: validation, the Fano form and Bell-diagonal states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{self, hermitian_eigenvalues, kron, CMat, Subsystem, HERMITIAN_TOL};

/// Global tolerance for trace and positivity checks.
pub const STATE_TOL: f64 = 1e-10;

/// Slack allowed on Bell-diagonal eigenvalues when checking `0 ≤ λ ≤ 1`.
pub const BD_TOL: f64 = 1e-12;

/// A validated 4×4 two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMat);

/// Marginal Bloch vectors and the covariance-style correlation matrix of a
/// two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoDecomposition {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

/// Bell-diagonal state `¼(𝕀⊗𝕀 + Σ cᵢ σᵢ⊗σᵢ)` with a physical spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BdState {
    c: [f64; 3],
}

/// Validate an operator of any size as a quantum state and return its
/// spectrum (descending).
pub fn check_state(m: &CMat) -> Result<Vec<f64>> {
    let violation = m.hermiticity_violation();
    if violation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { violation });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > STATE_TOL {
        return Err(Error::TraceNotOne {
            trace,
            violation: (trace - 1.0).abs(),
        });
    }
    let ev = hermitian_eigenvalues(m)?;
    let min = ev.last().copied().unwrap_or(0.0);
    if min < -STATE_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(ev)
}

/// Check a 4×4 matrix against the density-matrix invariants.
pub fn validate(rho: &CMat) -> Result<DensityMatrix> {
    if rho.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            op: "validate",
            left: rho.shape(),
            right: (4, 4),
        });
    }
    check_state(rho)?;
    Ok(DensityMatrix(rho.symmetrized()))
}

impl DensityMatrix {
    /// Wrap a matrix that is a state by construction (e.g. the image of a
    /// valid state under a channel). Only the shape is checked.
    pub(crate) fn from_trusted(m: CMat) -> Self {
        debug_assert_eq!(m.shape(), (4, 4));
        DensityMatrix(m.symmetrized())
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(CMat::identity(4).scale_re(0.25))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector in ℂ⁴.
    pub fn pure(psi: &[Complex64; 4]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 == 0.0 {
            return Err(Error::TraceNotOne {
                trace: 0.0,
                violation: 1.0,
            });
        }
        let m = CMat::outer(psi, psi).scale_re(1.0 / norm2);
        Ok(DensityMatrix(m))
    }

    /// `ρ_A ⊗ ρ_B`; both factors must be valid qubit states.
    pub fn product(rho_a: &CMat, rho_b: &CMat) -> Result<Self> {
        check_state(rho_a)?;
        check_state(rho_b)?;
        validate(&kron(rho_a, rho_b)?)
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn into_matrix(self) -> CMat {
        self.0
    }

    pub fn reduced(&self, keep: Subsystem) -> CMat {
        qmat::partial_trace(&self.0, keep).expect("density matrix is 4x4")
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.0).expect("density matrix is Hermitian")
    }

    /// `Tr[O ρ]`, real part.
    pub fn expectation(&self, op: &CMat) -> f64 {
        (op * &self.0).trace().re
    }
}

fn pauli_pair(i: usize, j: usize) -> CMat {
    kron(&CMat::pauli(i), &CMat::pauli(j)).expect("Pauli operators are 2x2")
}

/// Bloch vectors `aᵢ = ⟨σᵢ⊗𝕀⟩`, `bⱼ = ⟨𝕀⊗σⱼ⟩` and
/// `Tᵢⱼ = ⟨σᵢ⊗σⱼ⟩ − aᵢ bⱼ`.
pub fn fano_decompose(rho: &DensityMatrix) -> FanoDecomposition {
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    for k in 0..3 {
        a[k] = rho.expectation(&pauli_pair(k + 1, 0));
        b[k] = rho.expectation(&pauli_pair(0, k + 1));
    }
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, tij) in row.iter_mut().enumerate() {
            *tij = rho.expectation(&pauli_pair(i + 1, j + 1)) - a[i] * b[j];
        }
    }
    FanoDecomposition { a, b, t }
}

/// Qubit state `(𝕀 + r·σ)/2`.
pub fn bloch_state(r: &[f64; 3]) -> CMat {
    let mut m = CMat::identity(2);
    for (k, &rk) in r.iter().enumerate() {
        m = &m + &CMat::pauli(k + 1).scale_re(rk);
    }
    m.scale_re(0.5)
}

/// Assemble `ρ_A⊗ρ_B + ¼ Σ Tᵢⱼ σᵢ⊗σⱼ` and validate it.
pub fn fano_compose(f: &FanoDecomposition) -> Result<DensityMatrix> {
    let mut m = kron(&bloch_state(&f.a), &bloch_state(&f.b))?;
    for i in 0..3 {
        for j in 0..3 {
            if f.t[i][j] != 0.0 {
                m = &m + &pauli_pair(i + 1, j + 1).scale_re(0.25 * f.t[i][j]);
            }
        }
    }
    validate(&m)
}

/// Closed-form spectrum `(λ₀, λ₁, λ₂, λ₃)` of the Bell-diagonal operator with
/// coefficients `c`. No validity check.
pub fn bd_eigenvalues(c: [f64; 3]) -> [f64; 4] {
    let [c1, c2, c3] = c;
    [
        0.25 * (1.0 - c1 - c2 - c3),
        0.25 * (1.0 - c1 + c2 + c3),
        0.25 * (1.0 + c1 - c2 + c3),
        0.25 * (1.0 + c1 + c2 - c3),
    ]
}

/// Inverse of [`bd_eigenvalues`].
pub fn bd_coeffs_from_eigenvalues(l: [f64; 4]) -> [f64; 3] {
    [
        l[2] + l[3] - l[0] - l[1],
        l[1] + l[3] - l[0] - l[2],
        l[1] + l[2] - l[0] - l[3],
    ]
}

impl BdState {
    pub fn new(c: [f64; 3]) -> Result<Self> {
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBdState { c });
        }
        // the eigenvalues sum to one, so any out-of-range triple has a
        // negative eigenvalue
        let min = bd_eigenvalues(c).into_iter().fold(f64::INFINITY, f64::min);
        if min < -BD_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { c })
    }

    pub fn coeffs(&self) -> [f64; 3] {
        self.c
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        bd_eigenvalues(self.c)
    }

    /// Largest `|cᵢ|`.
    pub fn c_max(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        let mut m = CMat::identity(4);
        for (k, &ck) in self.c.iter().enumerate() {
            m = &m + &pauli_pair(k + 1, k + 1).scale_re(ck);
        }
        DensityMatrix(m.scale_re(0.25))
    }
}

impl<'de> Deserialize<'de> for BdState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            c: [f64; 3],
        }
        let raw = Raw::deserialize(d)?;
        BdState::new(raw.c).map_err(serde::de::Error::custom)
    }
}

/// Read off `(T₁₁, T₂₂, T₃₃)` when the marginals vanish and `T` is diagonal.
/// No local-unitary rotation is attempted.
pub fn bd_extract(rho: &DensityMatrix) -> Result<BdState> {
    let f = fano_decompose(rho);
    let mut violation: f64 = 0.0;
    for k in 0..3 {
        violation = violation.max(f.a[k].abs()).max(f.b[k].abs());
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                violation = violation.max(f.t[i][j].abs());
            }
        }
    }
    if violation > STATE_TOL {
        return Err(Error::NotBellDiagonal { violation });
    }
    BdState::new([f.t[0][0], f.t[1][1], f.t[2][2]])
}

/// JSON description of a state: `{"kind":"bd","c":[..]}` or
/// `{"kind":"dense","re":[[..]],"im":[[..]]}` (row-major 4×4).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSpec {
    Bd {
        c: [f64; 3],
    },
    Dense {
        re: Vec<Vec<f64>>,
        #[serde(default)]
        im: Option<Vec<Vec<f64>>>,
    },
}

impl StateSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::StateSpec(e.to_string()))
    }

    pub fn to_matrix(&self) -> Result<CMat> {
        match self {
            StateSpec::Bd { c } => {
                let bd = BdState::new(*c)?;
                Ok(bd.density_matrix().into_matrix())
            }
            StateSpec::Dense { re, im } => {
                let rows_ok = |m: &Vec<Vec<f64>>| m.len() == 4 && m.iter().all(|r| r.len() == 4);
                if !rows_ok(re) || !im.as_ref().is_none_or(rows_ok) {
                    return Err(Error::StateSpec("dense state must be 4x4".into()));
                }
                let mut data = Vec::with_capacity(16);
                for i in 0..4 {
                    for j in 0..4 {
                        let imag = im.as_ref().map_or(0.0, |m| m[i][j]);
                        data.push(Complex64::new(re[i][j], imag));
                    }
                }
                CMat::from_vec(4, 4, data)
            }
        }
    }

    pub fn to_density_matrix(&self) -> Result<DensityMatrix> {
        validate(&self.to_matrix()?)
    }
}
