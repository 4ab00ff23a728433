//! Command-line front end: parse problems, run the solve modes, re-verify
//! reports, and export sample curves.
//!
//! Exit codes: 0 on success (solve: converged and bound satisfied; verify:
//! residual within tolerance), 2 when the run completed but did not meet its
//! target, 1 on input or i/o errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use orthophase::funcspace::{parse_problem, Problem};
use orthophase::phase::TreeKind;
use orthophase::quadrature::{FunctionalSpec, SpecMode};
use orthophase::solver::{
    solve_complex, solve_generic, solve_hobby_rice, solve_improved_real, verify, SolveConfig,
    SolveMode, SolveReport,
};

#[derive(Parser)]
#[command(name = "orthophase", version, about = "Smooth circle-valued annihilators with certified W^{1,1} bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Annihilate complex integrals; bound 1 + 2πn.
    Complex,
    /// Annihilate real parts only; bound 1 + πn.
    RealPart,
    /// ±1-valued output with at most n sign changes.
    HobbyRice,
    /// Real inputs, sharper bound 1 + π(2n−1) + ε.
    Improved,
    /// Functional-spec input (linear plus odd powers); bound 1 + πm.
    Generic,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem (or functional spec) and write a report.
    Solve {
        /// Problem JSON (functional-spec JSON in generic mode).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Bound slack for improved mode (required there, rejected elsewhere).
        #[arg(long)]
        epsilon: Option<f64>,
        /// Residual tolerance; defaults to 1e-8 * (1 + sum ||f||_1).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Deepest triangulation level for the zero search.
        #[arg(long, default_value_t = 8)]
        max_level: u32,
        /// Report JSON destination (stdout when omitted).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Optional CSV of sampled curve values.
        #[arg(long)]
        samples: Option<PathBuf>,
        #[arg(long, default_value_t = 201)]
        n_samples: usize,
    },
    /// Re-verify a report against its problem at a tighter quadrature.
    Verify {
        #[arg(long)]
        report: PathBuf,
        /// The problem (or functional spec, for generic reports).
        #[arg(long)]
        input: PathBuf,
        /// Acceptance tolerance; defaults to the tolerance stated in the report.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Export `t, g(t), re_h, im_h` rows at uniform sample points.
    Sample {
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = 201)]
        n_samples: usize,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        samples: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve { input, mode, epsilon, tol, seed, max_level, report, samples, n_samples } => {
            run_solve(input, mode, epsilon, tol, seed, max_level, report, samples, n_samples)
        }
        Command::Verify { report, input, tol } => run_verify(report, input, tol),
        Command::Sample { report, n_samples, samples } => run_sample(report, n_samples, samples),
    }
}

fn read_problem(path: &PathBuf) -> anyhow::Result<Problem> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading problem {}", path.display()))?;
    Ok(parse_problem(&text)?)
}

#[allow(clippy::too_many_arguments)]
fn run_solve(
    input: PathBuf,
    mode: ModeArg,
    epsilon: Option<f64>,
    tol: Option<f64>,
    seed: u64,
    max_level: u32,
    report_path: Option<PathBuf>,
    samples: Option<PathBuf>,
    n_samples: usize,
) -> anyhow::Result<ExitCode> {
    if mode == ModeArg::Improved && epsilon.is_none() {
        return Err(anyhow!("--epsilon is required in improved mode"));
    }
    if mode != ModeArg::Improved && epsilon.is_some() {
        return Err(anyhow!("--epsilon only applies to improved mode"));
    }
    let cfg = SolveConfig {
        abs_tol: tol,
        seed,
        max_refine_level: max_level,
        ..Default::default()
    };
    let report = match mode {
        ModeArg::Complex => solve_complex(&read_problem(&input)?, &cfg)?,
        ModeArg::HobbyRice => solve_hobby_rice(&read_problem(&input)?, &cfg)?,
        ModeArg::Improved => {
            solve_improved_real(&read_problem(&input)?, epsilon.unwrap(), &cfg)?
        }
        ModeArg::RealPart => {
            let problem = read_problem(&input)?;
            let spec =
                FunctionalSpec::new(problem.functions().to_vec(), SpecMode::RealPart, vec![])?;
            solve_generic(&spec, &cfg)?
        }
        ModeArg::Generic => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading spec {}", input.display()))?;
            let spec = FunctionalSpec::from_json(&text)?;
            solve_generic(&spec, &cfg)?
        }
    };

    let json = report.to_json();
    match &report_path {
        Some(p) => std::fs::write(p, &json).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{json}"),
    }
    if let Some(path) = samples {
        std::fs::write(&path, sample_csv(&report, n_samples))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!(
        "{:?}: converged={} residual={:.3e} w11={:.6} bound={:.6}",
        report.mode, report.converged, report.residual_norm, report.w11, report.bound
    );
    Ok(if report.converged && report.bound_satisfied {
        ExitCode::from(0)
    } else {
        ExitCode::from(2)
    })
}

fn run_verify(
    report_path: PathBuf,
    input: PathBuf,
    tol: Option<f64>,
) -> anyhow::Result<ExitCode> {
    let report = SolveReport::from_json(
        &std::fs::read_to_string(&report_path)
            .with_context(|| format!("reading report {}", report_path.display()))?,
    )?;
    let spec = match report.mode {
        SolveMode::Complex | SolveMode::Improved => FunctionalSpec::new(
            read_problem(&input)?.functions().to_vec(),
            SpecMode::Complex,
            vec![],
        )?,
        SolveMode::RealPart | SolveMode::HobbyRice => FunctionalSpec::new(
            read_problem(&input)?.functions().to_vec(),
            SpecMode::RealPart,
            vec![],
        )?,
        SolveMode::Generic => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading spec {}", input.display()))?;
            FunctionalSpec::from_json(&text)?
        }
    };
    // structural consistency before any numerics
    let expected_kind = match report.mode {
        SolveMode::HobbyRice => TreeKind::Integer,
        _ => TreeKind::Smooth,
    };
    if report.phase_tree.kind() != expected_kind {
        return Err(anyhow!("tree kind does not match report mode"));
    }
    if report.residuals.len() != spec.output_dim() {
        return Err(anyhow!(
            "dimension mismatch: report has {} residual components, spec yields {}",
            report.residuals.len(),
            spec.output_dim()
        ));
    }

    let record = verify(&report.phase_tree, &spec, &SolveConfig::default())?;
    let accept = tol.unwrap_or(report.diagnostics.abs_tol);
    println!(
        "residual_norm={:.6e} (tolerance {:.3e}), w11={:.9}",
        record.residual_norm, accept, record.w11
    );
    Ok(if record.residual_norm <= accept { ExitCode::from(0) } else { ExitCode::from(2) })
}

fn sample_csv(report: &SolveReport, n_samples: usize) -> String {
    let tree = &report.phase_tree;
    let mut out = String::from("t,g,re_h,im_h\n");
    let n = n_samples.max(1);
    for k in 0..n {
        let t = if n == 1 { 0.0 } else { k as f64 / (n - 1) as f64 };
        let g = tree.eval_g(t);
        let h = tree.eval_h(t);
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", t, g, h.re, h.im);
    }
    out
}

fn run_sample(
    report_path: PathBuf,
    n_samples: usize,
    samples: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let report = SolveReport::from_json(
        &std::fs::read_to_string(&report_path)
            .with_context(|| format!("reading report {}", report_path.display()))?,
    )?;
    let csv = sample_csv(&report, n_samples);
    match samples {
        Some(p) => std::fs::write(&p, csv).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::from(0))
}
