//! Derivative-free minimization on unit spheres.
//!
//! A seeded cloud of points (normalized Gaussian samples) is scanned first;
//! the best few seed a Nelder–Mead descent. Each descent runs in a gnomonic
//! chart `u ↦ normalize(p₀ + Σ uₖeₖ)` centred on its starting point, so the
//! simplex never sees a coordinate singularity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Budget for the grid + refinement search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Number of coarse sample points on the sphere.
    pub grid_points: usize,
    pub seed: u64,
    /// Stop a descent once every vertex is this close to the best one.
    pub simplex_tol: f64,
    pub max_iters: usize,
    /// How many of the best grid points seed a local descent.
    pub starts: usize,
    /// Edge length of the initial simplex, in chart units (≈ radians).
    pub initial_step: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_points: 1000,
            seed: 42,
            simplex_tol: 1e-9,
            max_iters: 5000,
            starts: 4,
            initial_step: 0.15,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereMinimum {
    pub point: Vec<f64>,
    pub value: f64,
}

/// `n` points uniformly distributed on the unit sphere in ℝ^`dim`.
pub fn sphere_grid(dim: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        if let Some(u) = normalize(&v) {
            out.push(u);
        }
    }
    out
}

fn normalize(v: &[f64]) -> Option<Vec<f64>> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (n > 1e-300 && n.is_finite()).then(|| v.iter().map(|x| x / n).collect())
}

/// Orthonormal basis of the tangent space at unit vector `p`.
fn tangent_basis(p: &[f64]) -> Vec<Vec<f64>> {
    let dim = p.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim - 1);
    let mut axes: Vec<usize> = (0..dim).collect();
    // start from the coordinate axes least aligned with p
    axes.sort_by(|&a, &b| p[a].abs().total_cmp(&p[b].abs()));
    for k in axes {
        if basis.len() == dim - 1 {
            break;
        }
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        for q in std::iter::once(p).chain(basis.iter().map(|b| b.as_slice())) {
            let d: f64 = e.iter().zip(q).map(|(x, y)| x * y).sum();
            e.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
        }
        if e.iter().map(|x| x * x).sum::<f64>() > 1e-8 {
            basis.extend(normalize(&e));
        }
    }
    basis
}

fn chart_point(center: &[f64], basis: &[Vec<f64>], u: &[f64]) -> Vec<f64> {
    let mut x = center.to_vec();
    for (uk, ek) in u.iter().zip(basis) {
        x.iter_mut().zip(ek).for_each(|(xi, ei)| *xi += uk * ei);
    }
    normalize(&x).expect("chart point is never zero")
}

/// Scan `cfg.grid_points` seeded points, then refine the best `cfg.starts`
/// with Nelder–Mead. Deterministic for fixed `cfg`; ties go to the lower
/// grid index.
pub fn minimize_on_sphere<F>(dim: usize, f: F, cfg: &SearchConfig) -> SphereMinimum
where
    F: Fn(&[f64]) -> f64,
{
    assert!(dim >= 2, "sphere dimension must be at least 2");
    let grid = sphere_grid(dim, cfg.grid_points.max(1), cfg.seed);
    let mut scored: Vec<(usize, f64)> = grid.iter().map(|p| f(p)).enumerate().collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));

    let mut best = SphereMinimum {
        point: grid[scored[0].0].clone(),
        value: scored[0].1,
    };
    for &(idx, _) in scored.iter().take(cfg.starts.max(1)) {
        let candidate = refine(&f, &grid[idx], cfg);
        if candidate.value < best.value {
            best = candidate;
        }
    }
    best
}

/// Local Nelder–Mead descent from `start`, restarted once from its own
/// result with a fresh simplex.
pub fn refine<F>(f: &F, start: &[f64], cfg: &SearchConfig) -> SphereMinimum
where
    F: Fn(&[f64]) -> f64,
{
    let mut center = start.to_vec();
    let mut value = f(&center);
    for step in [cfg.initial_step, cfg.initial_step * 1e-3] {
        let basis = tangent_basis(&center);
        let chart = |u: &[f64]| f(&chart_point(&center, &basis, u));
        let nm = nelder_mead(&chart, &vec![0.0; basis.len()], step, cfg);
        if nm.value <= value {
            center = chart_point(&center, &basis, &nm.point);
            value = nm.value;
        }
    }
    SphereMinimum {
        point: center,
        value,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Plain Nelder–Mead (reflection 1, expansion 2, contraction ½, shrink ½).
/// Stops when all vertices lie within `cfg.simplex_tol` of the best vertex,
/// when the values agree to machine precision, or at `cfg.max_iters`.
pub fn nelder_mead<F>(f: &F, x0: &[f64], step: f64, cfg: &SearchConfig) -> NelderMeadResult
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for k in 0..n {
        let mut v = x0.to_vec();
        v[k] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    while iterations < cfg.max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let size = simplex[1..]
            .iter()
            .map(|v| dist(v, &simplex[0]))
            .fold(0.0, f64::max);
        let spread = values[n] - values[0];
        if size <= cfg.simplex_tol || spread <= f64::EPSILON * values[0].abs().max(1e-300) {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|v| v[d]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = f(&xr);
        if fr < values[0] {
            let xe = along(2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[n] {
            let xc = along(0.5);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < values[n].min(fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        // shrink towards the best vertex
        for i in 1..=n {
            let v: Vec<f64> = simplex[i]
                .iter()
                .zip(&simplex[0])
                .map(|(x, b)| b + 0.5 * (x - b))
                .collect();
            values[i] = f(&v);
            simplex[i] = v;
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)))
        .expect("nonempty simplex");
    NelderMeadResult {
        point: simplex[best].clone(),
        value: values[best],
        iterations,
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}
