mod format;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bdcorr_core::decoherence::{
    freezing_time, is_freezing_initial, trajectory, uniform_grid, ChannelSpec,
};
use bdcorr_core::measurement::Axis;
use bdcorr_core::optim::SearchConfig;
use bdcorr_core::oracle::{run_oracle, OracleConfig, OracleReport};
use bdcorr_core::states::{bd_extract, BdState, StateSpec};
use bdcorr_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::general;
use crate::report::{analyze, summary, Analysis, Input};

const EXIT_INVALID: u8 = 1;
const EXIT_BREACH: u8 = 2;
const CSV_DIGITS: usize = 9;
const CSV_HEADER: &str = "t,c1,c2,c3,I,J,D,dA,axis,T11,T22,T33";

/// Correlations and their decoherence dynamics for two-qubit states.
#[derive(Debug, Parser)]
#[command(name = "bdcorr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mutual information, classical correlations, discord and d_A of one state.
    Analyze(AnalyzeArgs),
    /// Trajectory of a Bell-diagonal state under local Pauli dephasing.
    Evolve(EvolveArgs),
    /// Cross-check closed forms against numerical searches on random states.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StateArgs {
    /// Bell-diagonal coefficients, e.g. `--bd 0.6,-0.6,0.6`.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    bd: Option<[f64; 3]>,
    /// JSON state file: {"kind":"bd","c":[..]} or {"kind":"dense","re":[[..]],"im":[[..]]}.
    #[arg(long)]
    state: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Seed for the numerical search (non-Bell-diagonal states).
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Machine-readable output instead of the text summary.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here (JSON unless `--format csv`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Dephasing axis.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
    k: u8,
    /// Decoherence rate.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    t_max: f64,
    /// Number of grid points on [0, t_max].
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Accepted for uniformity; trajectories are deterministic.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; a `.meta.json` sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Number of random Bell-diagonal states.
    #[arg(long, default_value_t = 200)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Largest acceptable gap.
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// Check this state instead of random ones.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    bd: Option<[f64; 3]>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_bug: bool,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected c1,c2,c3, got {s:?}"));
    }
    let mut c = [0.0; 3];
    for (slot, p) in c.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(c)
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: format!("{}: {e}", e.kind()),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    invalid(format!("{}: {e}", path.display()))
}

fn load_state(args: &StateArgs) -> Result<Input, Failure> {
    match (&args.bd, &args.state) {
        (Some(c), _) => Ok(Input::Bd(BdState::new(*c)?)),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            match StateSpec::from_json(&text)? {
                StateSpec::Bd { c } => Ok(Input::Bd(BdState::new(c)?)),
                dense => Ok(Input::classify(dense.to_density_matrix()?)),
            }
        }
        (None, None) => Err(invalid("one of --bd or --state is required")),
    }
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| invalid(format!("stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_row(t: f64, a: &Analysis) -> String {
    let mut fields = vec![general(t, CSV_DIGITS)];
    match a.bd_coeffs {
        Some(c) => fields.extend(c.iter().map(|&x| general(x, CSV_DIGITS))),
        None => fields.extend(std::iter::repeat_n(String::new(), 3)),
    }
    fields.extend(
        [a.mutual_info, a.classical, a.discord, a.d_a]
            .iter()
            .map(|&x| general(x, CSV_DIGITS)),
    );
    fields.push(a.optimal_axis.number().to_string());
    fields.extend((0..3).map(|i| general(a.t_after_measurement[i][i], CSV_DIGITS)));
    fields.join(",")
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<ExitCode, Failure> {
    let input = load_state(&args.state)?;
    let a = analyze(&input, &SearchConfig::default().with_seed(args.seed));
    match args.format {
        None => {
            print!("{}", summary(&a));
            if let Some(path) = &args.out {
                emit(Some(path), &to_json(&a))?;
            }
        }
        Some(Format::Json) => emit(args.out.as_deref(), &to_json(&a))?,
        Some(Format::Csv) => emit(
            args.out.as_deref(),
            &format!("{CSV_HEADER}\n{}\n", csv_row(0.0, &a)),
        )?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize)]
struct EvolveMeta {
    c0: [f64; 3],
    k: u8,
    gamma: f64,
    t_max: f64,
    steps: usize,
    freezing: bool,
    t_star: Option<f64>,
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

fn cmd_evolve(args: &EvolveArgs) -> Result<ExitCode, Failure> {
    if !(args.t_max.is_finite() && args.t_max >= 0.0) {
        return Err(invalid(format!(
            "--t-max must be finite and nonnegative, got {}",
            args.t_max
        )));
    }
    if args.steps < 1 {
        return Err(invalid("--steps must be at least 1"));
    }
    let c0 = match load_state(&args.state)? {
        Input::Bd(c) => c,
        Input::Dense(rho) => bd_extract(&rho)?,
    };
    let spec = ChannelSpec::new(Axis::from_index(usize::from(args.k - 1)), args.gamma)?;
    let points = trajectory(&c0, &spec, &uniform_grid(args.t_max, args.steps))?;

    let body = match args.format {
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for p in &points {
                s += &csv_row(p.t, &Analysis::from_point(p));
                s.push('\n');
            }
            s
        }
        Format::Json => to_json(&points),
    };
    emit(args.out.as_deref(), &body)?;

    let meta = EvolveMeta {
        c0: c0.coeffs(),
        k: args.k,
        gamma: args.gamma,
        t_max: args.t_max,
        steps: args.steps,
        freezing: is_freezing_initial(&c0, &spec),
        t_star: freezing_time(&c0, &spec),
    };
    match &args.out {
        Some(path) => {
            let side = sidecar_path(path);
            fs::write(&side, to_json(&meta)).map_err(|e| io_failure(&side, e))?;
        }
        None => eprint!("{}", to_json(&meta)),
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle_summary(r: &OracleReport) -> String {
    let line = |name: &str, g: &bdcorr_core::oracle::GapSummary| {
        let worst = g
            .worst_state
            .map(|c| format!("{:?}", c.coeffs()))
            .unwrap_or_else(|| "-".into());
        format!("{name:<22} max gap {:.3e}  worst state {worst}\n", g.max)
    };
    let mut s = format!(
        "states {}  seed {}  tolerance {:e}\n",
        r.samples, r.seed, r.tol
    );
    s += &line("J closed vs numeric", &r.j_gap);
    s += &line("D closed vs numeric", &r.d_gap);
    s += &line("dA closed vs numeric", &r.d_a_gap);
    s += &line("D via J vs via I(rhoM)", &r.eq_gap);
    s += if r.passed { "PASS\n" } else { "FAIL\n" };
    s
}

fn cmd_oracle(args: &OracleArgs) -> Result<ExitCode, Failure> {
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(invalid(format!(
            "--tol must be finite and nonnegative, got {}",
            args.tol
        )));
    }
    let states = match args.bd {
        Some(c) => Some(vec![BdState::new(c)?]),
        None if args.n == 0 => return Err(invalid("--n must be at least 1")),
        None => None,
    };
    let cfg = OracleConfig {
        n: args.n,
        seed: args.seed,
        tol: args.tol,
        search: SearchConfig::default().with_seed(args.seed),
        states,
        inject_bug: args.inject_bug,
    };
    let (report, _) = run_oracle(&cfg);
    match args.format {
        Some(Format::Json) => emit(args.out.as_deref(), &to_json(&report))?,
        Some(Format::Csv) => return Err(invalid("oracle reports are JSON only")),
        None => {
            print!("{}", oracle_summary(&report));
            if let Some(path) = &args.out {
                emit(Some(path), &to_json(&report))?;
            }
        }
    }
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprint!("tolerance exceeded\n{}", oracle_summary(&report));
        Ok(ExitCode::from(EXIT_BREACH))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Evolve(a) => cmd_evolve(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    result.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        ExitCode::from(f.code)
    })
}
