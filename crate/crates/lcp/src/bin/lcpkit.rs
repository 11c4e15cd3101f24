//! Command-line front end for the LCP solvers: load a JSON problem, run the
//! fixed-point or hybrid solver (or the brute-force oracle), and print
//! iteration traces.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DVector;

use lcpkit::io::{parse_problem_path, ProblemFile};
use lcpkit::report::SolveReport;
use lcpkit::{fixed_point, gen, hybrid, oracle, LcpProblem, SolverConfig, Status};

#[derive(Parser)]
#[command(
    name = "lcpkit",
    version,
    about = "Dense LCP solvers: fixed-point iteration and a descent/secant hybrid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver and print its iteration trace.
    Solve(SolveArgs),
    /// Enumerate all solutions by brute force (n <= 20).
    Oracle(OracleArgs),
    /// Run both solvers from the same start and compare final answers.
    Compare(CompareArgs),
    /// Emit a random symmetric-positive-definite test problem as JSON.
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    FixedPoint,
    Hybrid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Aligned columns, 7 decimal places.
    Table,
    /// CSV with 7 decimal places.
    Csv,
    /// CSV with full-precision (shortest round-trip) values.
    CsvFull,
}

#[derive(Args)]
struct ConfigArgs {
    /// Smoothing sharpness p (hybrid only).
    #[arg(long)]
    p: Option<f64>,
    /// Termination tolerance on ||F(x)||_inf.
    #[arg(long)]
    eps: Option<f64>,
    /// Restart period for forced steepest-descent steps (hybrid only).
    #[arg(long)]
    kstar: Option<usize>,
    /// Line-search sufficient-decrease constant, in (0, 1/2).
    #[arg(long)]
    rho: Option<f64>,
    /// Line-search curvature constant, in (rho, 1).
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Cap on merit/gradient evaluations per line search (hybrid only).
    #[arg(long)]
    ls_max_trials: Option<usize>,
}

impl ConfigArgs {
    fn build(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            p: self.p.unwrap_or(d.p),
            eps: self.eps.unwrap_or(d.eps),
            kstar: self.kstar.unwrap_or(d.kstar),
            rho: self.rho.unwrap_or(d.rho),
            sigma: self.sigma.unwrap_or(d.sigma),
            max_iters: self.max_iters.unwrap_or(d.max_iters),
            ls_max_trials: self.ls_max_trials.unwrap_or(d.ls_max_trials),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Problem file (JSON: {"n", "M", "q", "x0"?, "name"?}).
    #[arg(long)]
    input: PathBuf,
    /// Starting point "v1,...,vn"; overrides the file's x0. Defaults to the
    /// file's x0, then to the zero vector.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    /// Feasibility slack and duplicate-merge tolerance.
    #[arg(long, default_value_t = oracle::DEFAULT_ORACLE_TOL)]
    tol: f64,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Agreement tolerance for the final-z verdict.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct GenArgs {
    /// Problem dimension.
    #[arg(long)]
    n: usize,
    /// RNG seed; identical seeds give identical problems.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Gen(args) => cmd_gen(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_start(pf: &ProblemFile, flag: &Option<String>) -> Result<DVector<f64>, String> {
    let n = pf.problem.n();
    if let Some(text) = flag {
        let vals: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let vals = vals.map_err(|e| format!("cannot parse --x0: {e}"))?;
        if vals.len() != n {
            return Err(format!(
                "--x0 has {} entries, problem has n = {n}",
                vals.len()
            ));
        }
        return Ok(DVector::from_vec(vals));
    }
    Ok(pf.x0.clone().unwrap_or_else(|| DVector::zeros(n)))
}

fn run_method(
    method: Method,
    problem: &LcpProblem,
    x0: &DVector<f64>,
    config: &SolverConfig,
) -> Result<SolveReport, String> {
    let report = match method {
        Method::FixedPoint => fixed_point::solve(problem, x0, config),
        Method::Hybrid => hybrid::solve(problem, x0, config),
    };
    report.map_err(|e| e.to_string())
}

fn fmt_value(v: f64, format: Format) -> String {
    match format {
        Format::Table | Format::Csv => format!("{v:.7}"),
        Format::CsvFull => format!("{v}"),
    }
}

fn fmt_z(z: &DVector<f64>, format: Format) -> String {
    let parts: Vec<String> = z.iter().map(|&v| fmt_value(v, format)).collect();
    format!("({})", parts.join(", "))
}

fn print_trace(report: &SolveReport, n: usize, format: Format) {
    let header: String = std::iter::once("k".to_string())
        .chain((1..=n).map(|i| format!("z{i}")))
        .chain(["merit".to_string(), "res_inf".to_string()])
        .collect::<Vec<_>>()
        .join(",");
    match format {
        Format::Table => {
            let cells: Vec<&str> = header.split(',').collect();
            println!(
                "{}",
                cells
                    .iter()
                    .map(|c| format!("{c:>14}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            for r in &report.records {
                let mut row = vec![format!("{:>14}", r.k)];
                for &v in r.z.iter() {
                    row.push(format!("{:>14}", fmt_value(v, format)));
                }
                row.push(format!("{:>14}", fmt_value(r.merit, format)));
                row.push(format!("{:>14}", fmt_value(r.residual_f_inf, format)));
                println!("{}", row.join(" "));
            }
        }
        Format::Csv | Format::CsvFull => {
            println!("{header}");
            for r in &report.records {
                let mut row = vec![r.k.to_string()];
                for &v in r.z.iter() {
                    row.push(fmt_value(v, format));
                }
                row.push(fmt_value(r.merit, format));
                row.push(fmt_value(r.residual_f_inf, format));
                println!("{}", row.join(","));
            }
        }
    }
}

fn print_summary(report: &SolveReport, format: Format) {
    println!("status: {:?}", report.status);
    println!("iterations: {}", report.iterations());
    println!("z: {}", fmt_z(&report.z(), format));
    let m = &report.final_residuals;
    println!(
        "gap: {:e}  min_z: {:e}  min_w: {:e}  natural_residual: {:e}",
        m.gap, m.min_z, m.min_w, m.natural_residual
    );
    if let Some(est) = report.contraction_estimate {
        println!("contraction estimate ||D||_2: {est:.7}");
        if report.non_contractive {
            println!(
                "warning: ||D||_2 >= 1; convergence is not certified by the contraction argument"
            );
        }
    }
}

fn exit_for(status: Status) -> ExitCode {
    match status {
        Status::Converged => ExitCode::from(0),
        Status::MaxIters | Status::LineSearchFailed => ExitCode::from(2),
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<ExitCode, String> {
    let pf = parse_problem_path(&args.input).map_err(|e| e.to_string())?;
    let x0 = load_start(&pf, &args.x0)?;
    let config = args.config.build();
    config.validate().map_err(|e| e.to_string())?;
    let report = run_method(args.method, &pf.problem, &x0, &config)?;
    print_trace(&report, pf.problem.n(), args.format);
    print_summary(&report, args.format);
    Ok(exit_for(report.status))
}

fn cmd_oracle(args: &OracleArgs) -> Result<ExitCode, String> {
    let pf = parse_problem_path(&args.input).map_err(|e| e.to_string())?;
    let sols = oracle::enumerate_solutions(&pf.problem, args.tol).map_err(|e| e.to_string())?;
    println!(
        "{} solution{}",
        sols.len(),
        if sols.len() == 1 { "" } else { "s" }
    );
    for s in &sols {
        let basis: Vec<String> = s.basis.iter().map(|i| (i + 1).to_string()).collect();
        println!(
            "z = {}  basis = {{{}}}",
            fmt_z(&s.z, Format::Table),
            basis.join(",")
        );
    }
    Ok(ExitCode::from(0))
}

fn cmd_compare(args: &CompareArgs) -> Result<ExitCode, String> {
    let pf = parse_problem_path(&args.input).map_err(|e| e.to_string())?;
    let x0 = load_start(&pf, &args.x0)?;
    let config = args.config.build();
    config.validate().map_err(|e| e.to_string())?;

    // Fixed ordering keeps stdout deterministic.
    let mut reports = Vec::new();
    for (label, method) in [
        ("fixed-point", Method::FixedPoint),
        ("hybrid", Method::Hybrid),
    ] {
        let report = run_method(method, &pf.problem, &x0, &config)?;
        println!("== {label} ==");
        print_trace(&report, pf.problem.n(), args.format);
        print_summary(&report, args.format);
        println!();
        reports.push(report);
    }
    let diff = (reports[0].z() - reports[1].z()).amax();
    let agree = diff <= args.tol;
    println!(
        "verdict: final z agree within {:e}: {} (max diff {:e})",
        args.tol,
        if agree { "yes" } else { "no" },
        diff
    );
    let both_converged = reports.iter().all(|r| r.status == Status::Converged);
    Ok(ExitCode::from(if both_converged { 0 } else { 2 }))
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode, String> {
    if args.n == 0 {
        return Err("--n must be at least 1".into());
    }
    let mut rng = gen::seeded_rng(args.seed);
    let (problem, x0) = gen::spd_problem(args.n, &mut rng);
    let m_rows: Vec<Vec<f64>> = (0..args.n)
        .map(|r| problem.m().row(r).iter().copied().collect())
        .collect();
    let doc = serde_json::json!({
        "n": args.n,
        "M": m_rows,
        "q": problem.q().iter().copied().collect::<Vec<f64>>(),
        "x0": x0.iter().copied().collect::<Vec<f64>>(),
        "name": format!("spd-n{}-seed{}", args.n, args.seed),
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    match &args.output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string())?,
        None => println!("{text}"),
    }
    Ok(ExitCode::from(0))
}
