mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kron_tensor::apps::bench::{bench2d, bench_tucker};
use kron_tensor::apps::evolution::{exponential_experiment, Formulation};
use kron_tensor::apps::imex::{imex_evolve, imex_problem, ImexBackend, IMEX_MAXIT, IMEX_TOL};
use kron_tensor::apps::interp::{interp_memory_bytes, lagrange_interp, runge};
use kron_tensor::apps::spectral::{hlf_experiment, HlfParams};
use kron_tensor::validate::{run_validation, Fault, Suite};
use kron_tensor::Error;

use output::{num, opt, sizes, Table};

const GIB: f64 = (1u64 << 30) as f64;

#[derive(Parser)]
#[command(name = "kron", version, about = "Tensor mu-mode kernels: validation, benchmarks and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Comma-separated sizes; meaning depends on the subcommand.
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Timed repetitions after one discarded warm-up.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    reps: u32,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Memory cap in GiB.
    #[arg(long, default_value_t = 8.0)]
    mem_cap: f64,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("sizes must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl Common {
    fn mem_cap_bytes(&self) -> u64 {
        (self.mem_cap * GIB) as u64
    }

    fn table(&self, header: &[&str]) -> Result<Table, Failure> {
        Table::create(self.out.as_deref(), header).map_err(|e| Failure::Usage(format!("cannot open output: {e}")))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Oracle,
    Appendix,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulationArg {
    Tensor,
    Vector,
}

#[derive(Subcommand)]
enum Command {
    /// Tucker variants against the Kronecker oracle, and Kronecker identities.
    Validate {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Nested loops vs loop matrix products vs GEMM for L1 T L2^T.
    Bench2d {
        #[command(flatten)]
        common: Common,
    },
    /// Fused tucker vs a chain of independent mode products.
    BenchTucker {
        /// Tensor order.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(3..=6))]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Hermite-Laguerre-Fourier approximation; --sizes m1,m2,m3 for one configuration.
    Spectral {
        /// Evaluation points per direction.
        #[arg(long, default_value_t = 301)]
        eval: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Chebyshev interpolation of a Runge function; --sizes lists node counts.
    Interp {
        #[arg(long, default_value_t = 5)]
        dim: usize,
        #[arg(long, default_value_t = 35)]
        eval: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exponential solve of the advection-diffusion-absorption problem vs RK4.
    Exponential {
        #[arg(long, default_value_t = 0.5)]
        t_final: f64,
        #[arg(long, default_value_t = 1351)]
        steps: usize,
        #[arg(long, value_enum, default_value = "tensor")]
        formulation: FormulationArg,
        #[command(flatten)]
        common: Common,
    },
    /// Backward-forward Euler for the semilinear problem.
    Imex {
        /// direct, cg-vector, cg-tensor, pcg-tensor or all.
        #[arg(long, default_value = "all")]
        backend: String,
        #[arg(long, default_value_t = 0.01)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        t_final: f64,
        #[arg(long, default_value_t = IMEX_TOL)]
        tol: f64,
        #[arg(long, default_value_t = IMEX_MAXIT)]
        maxit: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(format!("write failed: {e}"))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { suite, inject_fault, common } => cmd_validate(suite, inject_fault, &common),
        Command::Bench2d { common } => cmd_bench2d(&common),
        Command::BenchTucker { d, common } => cmd_bench_tucker(d as usize, &common),
        Command::Spectral { eval, common } => cmd_spectral(eval, &common),
        Command::Interp { dim, eval, common } => cmd_interp(dim, eval, &common),
        Command::Exponential { t_final, steps, formulation, common } => cmd_exponential(t_final, steps, formulation, &common),
        Command::Imex { backend, tau, t_final, tol, maxit, common } => cmd_imex(&backend, tau, t_final, tol, maxit, &common),
    }
}

fn cmd_validate(suite: SuiteArg, inject_fault: bool, c: &Common) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Appendix => Suite::Appendix,
    };
    let fault = if inject_fault { Fault::Skew(1e-6) } else { Fault::None };
    let report = run_validation(c.seed, suite, fault)?;
    let mut t = c.table(&["suite", "cases", "failures", "worst_error", "tolerance", "status"])?;
    for s in &report.suites {
        let status = if s.passed() { "PASS" } else { "FAIL" };
        t.row(&[s.name.into(), s.cases.to_string(), s.failures.to_string(), num(s.worst_error), num(s.tolerance), status.into()])?;
    }
    if report.passed() {
        eprintln!("validation passed (seed {})", c.seed);
        Ok(())
    } else {
        Err(Failure::Failed(format!("validation failed (seed {})", c.seed)))
    }
}

fn cmd_bench2d(c: &Common) -> Result<(), Failure> {
    let ns = c.sizes.clone().unwrap_or_else(|| vec![50, 100, 200, 400]);
    let mut t = c.table(&["n", "t_loops", "t_matloops", "t_blas"])?;
    for n in ns {
        let r = bench2d(n, c.reps as usize, c.seed)?;
        if r.disagreement > 1e-10 {
            return Err(Failure::Failed(format!("n={n}: implementations disagree by {:e}", r.disagreement)));
        }
        t.row(&[n.to_string(), num(r.t_loops), num(r.t_matloops), num(r.t_blas)])?;
        eprintln!("n={n}: loops/blas {:.0}x, matloops/blas {:.1}x", r.t_loops / r.t_blas, r.t_matloops / r.t_blas);
    }
    Ok(())
}

/// Sizes whose `n^d` spans the same range as `12^6 ..= 18^6`.
fn default_tucker_sizes(d: usize) -> Vec<usize> {
    let lo = (12f64.powi(6)).powf(1.0 / d as f64).round() as usize;
    let hi = (18f64.powi(6)).powf(1.0 / d as f64).round() as usize;
    let step = ((hi - lo) / 6).max(1);
    (lo..=hi).step_by(step).collect()
}

fn cmd_bench_tucker(d: usize, c: &Common) -> Result<(), Failure> {
    let ns = c.sizes.clone().unwrap_or_else(|| default_tucker_sizes(d));
    let mut t = c.table(&["n", "t_tucker", "t_sequential"])?;
    for n in ns {
        let r = bench_tucker(d, n, c.reps as usize, c.seed, c.mem_cap_bytes())?;
        if r.disagreement > 1e-12 {
            return Err(Failure::Failed(format!("n={n}: paths disagree by {:e}", r.disagreement)));
        }
        t.row(&[n.to_string(), num(r.t_tucker), num(r.t_sequential)])?;
    }
    Ok(())
}

fn cmd_spectral(eval: usize, c: &Common) -> Result<(), Failure> {
    let configs: Vec<[usize; 3]> = match &c.sizes {
        None => vec![[45, 31, 8], [53, 59, 24], [69, 105, 38]],
        Some(s) => match s.as_slice() {
            &[a, b, d] => vec![[a, b, d]],
            _ => return Err(Failure::Usage("spectral expects --sizes m1,m2,m3".into())),
        },
    };
    let p = HlfParams { n: [eval; 3], ..HlfParams::default() };
    let mut t = c.table(&["m", "error", "time"])?;
    for m in configs {
        let r = hlf_experiment(m, &p)?;
        t.row(&[sizes(&m), num(r.error), num(r.report.wall_time_seconds)])?;
        eprintln!("m={}: error {:.3e}, time {:.3}s", sizes(&m), r.error, r.report.wall_time_seconds);
    }
    Ok(())
}

fn cmd_interp(dim: usize, eval: usize, c: &Common) -> Result<(), Failure> {
    if dim == 0 || eval == 0 {
        return Err(Failure::Usage("--dim and --eval must be positive".into()));
    }
    let ms = c.sizes.clone().unwrap_or_else(|| vec![5, 15, 25, 35, 45]);
    let cap = c.mem_cap_bytes();
    let mut t = c.table(&["m", "error", "time"])?;
    for m in ms {
        let need = interp_memory_bytes(&vec![m; dim], &vec![eval; dim]);
        if need > cap {
            eprintln!("m={m}: needs {:.2} GiB, over the {:.2} GiB cap; stopping the sweep", need as f64 / GIB, c.mem_cap);
            break;
        }
        let r = lagrange_interp(runge, &vec![m; dim], &vec![eval; dim], cap)?;
        t.row(&[m.to_string(), num(r.error), num(r.report.wall_time_seconds)])?;
        eprintln!("m={m}: error {:.3e}, time {:.3}s", r.error, r.report.wall_time_seconds);
    }
    Ok(())
}

fn cmd_exponential(t_final: f64, steps: usize, formulation: FormulationArg, c: &Common) -> Result<(), Failure> {
    let n = c.sizes.clone().unwrap_or_else(|| vec![50, 55, 60]);
    let formulation = match formulation {
        FormulationArg::Tensor => Formulation::Tensor,
        FormulationArg::Vector => Formulation::Vector,
    };
    let r = exponential_experiment(&n, t_final, steps, formulation)?;
    let mut t = c.table(&["grid", "method", "steps", "time", "error"])?;
    t.row(&[sizes(&n), "tucker".into(), "1".into(), num(r.exact_seconds), String::new()])?;
    t.row(&[sizes(&n), "rk4".into(), steps.to_string(), num(r.rk4.wall_time_seconds), opt(r.rk4.error_inf_relative)])?;
    eprintln!(
        "grid {}: tucker {:.3}s, RK4 {steps} steps {:.2}s, difference {:.3e}",
        sizes(&n),
        r.exact_seconds,
        r.rk4.wall_time_seconds,
        r.rk4.error_inf_relative.unwrap_or(f64::NAN)
    );
    Ok(())
}

fn cmd_imex(backend: &str, tau: f64, t_final: f64, tol: f64, maxit: usize, c: &Common) -> Result<(), Failure> {
    let backends = if backend == "all" {
        ImexBackend::ALL.to_vec()
    } else {
        vec![backend.parse::<ImexBackend>().map_err(|e| Failure::Usage(e.to_string()))?]
    };
    let n = c.sizes.clone().unwrap_or_else(|| vec![40, 44, 48]);
    let prob = imex_problem(&n, t_final)?;
    let mut t = c.table(&["backend", "steps", "avg_iterations", "time", "error", "converged"])?;
    let mut all_converged = true;
    for b in backends {
        let (_, r) = imex_evolve(&prob, tau, b, tol, maxit)?;
        all_converged &= r.converged;
        t.row(&[
            b.name().into(),
            r.steps.to_string(),
            opt(r.avg_inner_iterations),
            num(r.wall_time_seconds),
            opt(r.error_inf_relative),
            r.converged.to_string(),
        ])?;
        eprintln!(
            "{}: error {:.3e}, time {:.2}s, avg iterations {}",
            b.name(),
            r.error_inf_relative.unwrap_or(f64::NAN),
            r.wall_time_seconds,
            r.avg_inner_iterations.map_or("-".into(), |v| format!("{v:.1}"))
        );
    }
    if all_converged {
        Ok(())
    } else {
        Err(Failure::Failed(format!("an inner solve reached maxit={maxit}")))
    }
}
