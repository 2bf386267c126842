//! Small dense complex matrices.
//!
//! Everything in this crate lives in 2×2, 3×3 or 4×4 land, so [`CMat`] is a
//! plain row-major `Vec<Complex64>` with no attempt at blocking or SIMD.
//! Arithmetic operators panic on shape mismatch (like `ndarray`); the named
//! operations that can be reached with user data return [`Result`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance on `‖h − h†‖₂`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Which qubit of a two-qubit operator to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl CMat {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Pauli matrix σ₁, σ₂ or σ₃ for `k` = 1, 2, 3; `k` = 0 gives 𝕀₂.
    pub fn pauli(k: usize) -> Self {
        let d = match k {
            0 => [ONE, ZERO, ZERO, ONE],
            1 => [ZERO, ONE, ONE, ZERO],
            2 => [ZERO, -I, I, ZERO],
            3 => [ONE, ZERO, ZERO, -ONE],
            _ => panic!("Pauli index {k} out of range"),
        };
        Self {
            rows: 2,
            cols: 2,
            data: d.to_vec(),
        }
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Checked matrix product.
    pub fn matmul(&self, other: &CMat) -> Result<CMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(m)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖h − h†‖₂`; infinite for non-square input.
    pub fn hermiticity_violation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        hs_norm(&(self - &self.adjoint()))
    }

    /// `(h + h†)/2`.
    pub fn symmetrized(&self) -> CMat {
        (self + &self.adjoint()).scale_re(0.5)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &CMat {
    type Output = CMat;

    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMat {
    type Output = CMat;

    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CMat {
    type Output = CMat;

    fn neg(self) -> CMat {
        self.scale_re(-1.0)
    }
}

impl Mul for &CMat {
    type Output = CMat;

    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

fn require_2x2(op: &'static str, a: &CMat, b: &CMat) -> Result<()> {
    if a.shape() != (2, 2) || b.shape() != (2, 2) {
        return Err(Error::DimensionMismatch {
            op,
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

/// Kronecker product of two 2×2 operators: `(a⊗b)[2i+k][2j+l] = a[i][j]·b[k][l]`.
pub fn kron(a: &CMat, b: &CMat) -> Result<CMat> {
    require_2x2("kron", a, b)?;
    let mut m = CMat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(m)
}

/// Reduced operator of the `keep` qubit of a 4×4 two-qubit operator.
pub fn partial_trace(rho: &CMat, keep: Subsystem) -> Result<CMat> {
    if rho.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            op: "partial_trace",
            left: rho.shape(),
            right: (4, 4),
        });
    }
    let mut m = CMat::zeros(2, 2);
    for x in 0..2 {
        for y in 0..2 {
            m[(x, y)] = match keep {
                // Tr_B: ρ_A[i][j] = Σ_k ρ[2i+k][2j+k]
                Subsystem::A => rho[(2 * x, 2 * y)] + rho[(2 * x + 1, 2 * y + 1)],
                // Tr_A: ρ_B[k][l] = Σ_i ρ[2i+k][2i+l]
                Subsystem::B => rho[(x, y)] + rho[(2 + x, 2 + y)],
            };
        }
    }
    Ok(m)
}

/// Hilbert–Schmidt norm `sqrt(Tr[a†a])`.
pub fn hs_norm(a: &CMat) -> f64 {
    a.as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `ab − ba` for square operands of equal size.
pub fn commutator(a: &CMat, b: &CMat) -> Result<CMat> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "commutator",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(&(a * b) - &(b * a))
}

/// Eigenvalues of a Hermitian matrix in descending order.
///
/// The input is symmetrized and embedded as the real symmetric matrix
/// `[[Re h, −Im h], [Im h, Re h]]`, whose spectrum is that of `h` with every
/// eigenvalue doubled. A cyclic Jacobi sweep diagonalizes the embedding.
pub fn hermitian_eigenvalues(h: &CMat) -> Result<Vec<f64>> {
    let violation = h.hermiticity_violation();
    if violation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { violation });
    }
    let h = h.symmetrized();
    let n = h.rows();
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            s[i * m + j] = z.re;
            s[(i + n) * m + (j + n)] = z.re;
            s[i * m + (j + n)] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let mut ev = jacobi_symmetric_eigenvalues(&mut s, m);
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev.into_iter().step_by(2).collect())
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j] * a[i * n + j];
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi on a dense row-major real symmetric matrix; destroys `a`.
fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(a, n) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: &CMat, b: &CMat, tol: f64) -> bool {
        a.shape() == b.shape() && a.max_abs_diff(b) <= tol
    }

    #[test]
    fn kron_identity_and_paulis() {
        let i2 = CMat::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), CMat::identity(4));
        let zz = kron(&CMat::pauli(3), &CMat::pauli(3)).unwrap();
        assert_eq!(zz, CMat::diag(&[1.0, -1.0, -1.0, 1.0]));
        let xx = kron(&CMat::pauli(1), &CMat::pauli(1)).unwrap();
        let anti = CMat::from_real(
            4,
            4,
            &[
                0., 0., 0., 1., //
                0., 0., 1., 0., //
                0., 1., 0., 0., //
                1., 0., 0., 0.,
            ],
        )
        .unwrap();
        assert_eq!(xx, anti);
    }

    #[test]
    fn kron_rejects_non_2x2() {
        let err = kron(&CMat::identity(4), &CMat::identity(2)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { op: "kron", .. }));
    }

    #[test]
    fn partial_trace_of_product() {
        let ra = CMat::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        let rb = CMat::from_real(2, 2, &[0.4, 0.1, 0.1, 0.6]).unwrap();
        let rho = kron(&ra, &rb).unwrap();
        assert!(approx(
            &partial_trace(&rho, Subsystem::A).unwrap(),
            &ra,
            1e-15
        ));
        assert!(approx(
            &partial_trace(&rho, Subsystem::B).unwrap(),
            &rb,
            1e-15
        ));
        assert!(partial_trace(&ra, Subsystem::A).is_err());
    }

    #[test]
    fn partial_trace_of_bell_projector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [Complex64::new(h, 0.), ZERO, ZERO, Complex64::new(h, 0.)];
        let rho = CMat::outer(&phi, &phi);
        let half = CMat::identity(2).scale_re(0.5);
        assert!(approx(
            &partial_trace(&rho, Subsystem::B).unwrap(),
            &half,
            1e-15
        ));
        assert!(approx(
            &partial_trace(&rho, Subsystem::A).unwrap(),
            &half,
            1e-15
        ));
    }

    #[test]
    fn eigenvalues_known_spectra() {
        let d = CMat::diag(&[0.1, 0.7, 0.1, 0.1]);
        let ev = hermitian_eigenvalues(&d).unwrap();
        for (a, b) in ev.iter().zip([0.7, 0.1, 0.1, 0.1]) {
            assert!((a - b).abs() < 1e-14);
        }
        let ev = hermitian_eigenvalues(&CMat::pauli(2)).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] + 1.0).abs() < 1e-14);
        let ev = hermitian_eigenvalues(&CMat::pauli(1)).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let m = CMat::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NonHermitian { .. })
        ));
        // within tolerance: accepted and symmetrized
        let m = CMat::from_real(2, 2, &[1.0, 1e-12, 0.0, 1.0]).unwrap();
        assert!(hermitian_eigenvalues(&m).is_ok());
    }

    #[test]
    fn hs_norms() {
        let r2 = 2f64.sqrt();
        assert!((hs_norm(&CMat::identity(2)) - r2).abs() < 1e-15);
        assert!((hs_norm(&CMat::pauli(1)) - r2).abs() < 1e-15);
        assert_eq!(hs_norm(&CMat::zeros(2, 2)), 0.0);
    }

    #[test]
    fn pauli_commutators() {
        let two_i = Complex64::new(0.0, 2.0);
        let c12 = commutator(&CMat::pauli(1), &CMat::pauli(2)).unwrap();
        assert!(approx(&c12, &CMat::pauli(3).scale(two_i), 1e-15));
        let c23 = commutator(&CMat::pauli(2), &CMat::pauli(3)).unwrap();
        assert!(approx(&c23, &CMat::pauli(1).scale(two_i), 1e-15));
        let a = CMat::pauli(2);
        assert_eq!(hs_norm(&commutator(&a, &a).unwrap()), 0.0);
        assert!(commutator(&CMat::identity(2), &CMat::identity(4)).is_err());
    }

    #[test]
    fn adjoint_is_involution() {
        let m = CMat::from_vec(
            2,
            3,
            (0..6)
                .map(|k| Complex64::new(k as f64, -(k as f64) * 0.5))
                .collect(),
        )
        .unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
        assert_eq!(m.adjoint().shape(), (3, 2));
    }
}
