//! Seeded random states and parameters for property checks and the oracle.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::measurement::MeasurementParam;
use crate::qmat::CMat;
use crate::states::{bd_coeffs_from_eigenvalues, validate, BdState, DensityMatrix};

/// Bell-diagonal state with spectrum uniform on the probability simplex.
pub fn random_bd_state<R: Rng + ?Sized>(rng: &mut R) -> BdState {
    let e: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let total: f64 = e.iter().sum();
    let lambda = e.map(|x| x / total);
    BdState::new(bd_coeffs_from_eigenvalues(lambda)).expect("simplex point is a valid BD state")
}

/// Uniform point on S³.
pub fn random_param<R: Rng + ?Sized>(rng: &mut R) -> MeasurementParam {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        if let Ok(s) = MeasurementParam::normalized(v) {
            return s;
        }
    }
}

/// Uniform point on S².
pub fn random_unit3<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.map(|x| x / n);
        }
    }
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let data = (0..n * n)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    CMat::from_vec(n, n, data).expect("square")
}

/// Random full-rank two-qubit state `GG†/Tr(GG†)` with Gaussian `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g = ginibre(rng, 4);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    validate(&w.scale_re(1.0 / tr)).expect("Wishart matrix is a state")
}

/// Random Hermitian 4×4 matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    ginibre(rng, n).symmetrized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let c = random_bd_state(&mut rng);
            assert!(c
                .eigenvalues()
                .iter()
                .all(|&l| (-1e-12..=1.0 + 1e-12).contains(&l)));
            let rho = random_density_matrix(&mut rng);
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
    }
}
