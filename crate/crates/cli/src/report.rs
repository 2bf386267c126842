//! Single-state analysis shared by `analyze` and the first row of `evolve`.

use bdcorr_core::correlations::CorrelationReport;
use bdcorr_core::decoherence::{analyze_point, TrajectoryPoint};
use bdcorr_core::measurement::{post_measurement_state, pvm_from_s, Axis};
use bdcorr_core::ncmqc::d_a_numeric_general;
use bdcorr_core::optim::SearchConfig;
use bdcorr_core::states::{bd_extract, fano_decompose, BdState, DensityMatrix, FanoDecomposition};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Numeric,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub method: Method,
    /// `(c₁, c₂, c₃)` when the state is Bell-diagonal.
    pub bd_coeffs: Option<[f64; 3]>,
    /// Closed-form `λ₀..λ₃` for Bell-diagonal input, otherwise the
    /// numerical spectrum in descending order.
    pub eigenvalues: Vec<f64>,
    pub fano: FanoDecomposition,
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    pub d_a: f64,
    pub optimal_axis: Axis,
    pub theta_star: f64,
    /// Correlation matrix after the optimal measurement on A.
    pub t_after_measurement: [[f64; 3]; 3],
}

/// A state as given on the command line.
pub enum Input {
    Bd(BdState),
    Dense(DensityMatrix),
}

impl Input {
    /// Dense input that happens to be Bell-diagonal takes the closed path.
    pub fn classify(rho: DensityMatrix) -> Self {
        match bd_extract(&rho) {
            Ok(c) => Input::Bd(c),
            Err(_) => Input::Dense(rho),
        }
    }
}

impl Analysis {
    pub fn from_point(p: &TrajectoryPoint) -> Self {
        Analysis {
            method: Method::Closed,
            bd_coeffs: Some(p.c.coeffs()),
            eigenvalues: p.c.eigenvalues().to_vec(),
            fano: fano_decompose(&p.c.density_matrix()),
            mutual_info: p.report.mutual_info,
            classical: p.report.classical,
            discord: p.report.discord,
            d_a: p.d_a,
            optimal_axis: p.optimal_axis,
            theta_star: p.report.theta_star,
            t_after_measurement: p.t_matrix_after,
        }
    }
}

pub fn analyze(input: &Input, search: &SearchConfig) -> Analysis {
    match input {
        Input::Bd(c) => Analysis::from_point(&analyze_point(0.0, c)),
        Input::Dense(rho) => {
            let (report, opt) = CorrelationReport::numeric(rho, search);
            let post = post_measurement_state(rho, &pvm_from_s(&opt.s));
            Analysis {
                method: Method::Numeric,
                bd_coeffs: None,
                eigenvalues: rho.spectrum(),
                fano: fano_decompose(rho),
                mutual_info: report.mutual_info,
                classical: report.classical,
                discord: report.discord,
                d_a: d_a_numeric_general(rho, search).value,
                optimal_axis: report.optimal_axis,
                theta_star: report.theta_star,
                t_after_measurement: fano_decompose(&post).t,
            }
        }
    }
}

fn row(v: &[f64; 3]) -> String {
    // adding +0.0 turns −0.0 into 0.0
    let [a, b, c] = v.map(|x| x + 0.0);
    format!("{a:>10.6} {b:>10.6} {c:>10.6}")
}

pub fn summary(a: &Analysis) -> String {
    let mut out = String::new();
    let method = match a.method {
        Method::Closed => "closed form (Bell-diagonal)",
        Method::Numeric => "numerical search",
    };
    out += &format!("method              {method}\n");
    if let Some(c) = a.bd_coeffs {
        out += &format!("c                   {}\n", row(&c));
    }
    let ev: Vec<String> = a.eigenvalues.iter().map(|l| format!("{l:.6}")).collect();
    out += &format!("eigenvalues         {}\n", ev.join(" "));
    out += &format!("mutual information  {:.6}\n", a.mutual_info);
    out += &format!("classical J         {:.6}\n", a.classical);
    out += &format!("discord D           {:.6}\n", a.discord);
    out += &format!("d_A                 {:.6}\n", a.d_a);
    out += &format!("optimal axis        {}\n", a.optimal_axis.number());
    out += "T                   ";
    out += &a
        .fano
        .t
        .iter()
        .map(row)
        .collect::<Vec<_>>()
        .join("\n                    ");
    out += "\nT after measurement ";
    out += &a
        .t_after_measurement
        .iter()
        .map(row)
        .collect::<Vec<_>>()
        .join("\n                    ");
    out.push('\n');
    out
}
