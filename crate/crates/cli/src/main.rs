//! Batch command-line front end: synthesize composite-pulse sequences, run
//! fidelity sweeps, fit infidelity orders, verify exact identities, and
//! emit deterministic CSV.
//!
//! Angles at the CLI boundary are degrees (radians internally). Exit
//! codes: 0 success, 1 verification failure, 2 usage or parse error.

mod format;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cpulse_core::verify::{run_identity_checks, DEFAULT_SEED};
use cpulse_core::{
    bb1, composite_z, corpse, fit_order, naive, rot, rot_z, sweep, tycko90, zz_evolution,
    Bb1Placement, CorpseParams, ErrorAxis, GateHandle, PulseSequence, SweepResult, SweepSpec,
    Unitary,
};
use format::sig12;

#[derive(Parser)]
#[command(
    name = "cpulse",
    about = "Composite-pulse gate synthesis and robustness analysis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in sequence generators
    List,
    /// Write a sequence file for a built-in generator
    Synth(SynthArgs),
    /// Tabulate fidelity against one error axis as CSV
    Sweep(SweepArgs),
    /// Run a sweep and fit the infidelity order
    Order(OrderArgs),
    /// Check the exact gate identities and report residuals
    Verify,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SynthArgs {
    /// Generator name (see `cpulse list`)
    #[arg(long)]
    seq: String,
    /// Target flip angle in degrees
    #[arg(long)]
    theta: f64,
    /// Pulse phase in degrees
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// Generator name (see `cpulse list`)
    #[arg(long, conflicts_with = "file")]
    seq: Option<String>,
    /// Sequence file to sweep instead of a built-in generator
    #[arg(long)]
    file: Option<PathBuf>,
    /// Target flip angle in degrees
    #[arg(long)]
    theta: f64,
    /// Pulse phase in degrees
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Error axis to sweep
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// First grid value
    #[arg(long)]
    start: f64,
    /// Last grid value
    #[arg(long)]
    stop: f64,
    /// Number of grid points
    #[arg(long)]
    points: usize,
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct OrderArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Smallest error magnitude used in the fit
    #[arg(long)]
    fit_min: f64,
    /// Largest error magnitude used in the fit
    #[arg(long)]
    fit_max: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Epsilon,
    Offres,
    Coupling,
}

impl From<AxisArg> for ErrorAxis {
    fn from(axis: AxisArg) -> Self {
        match axis {
            AxisArg::Epsilon => ErrorAxis::Epsilon,
            AxisArg::Offres => ErrorAxis::OffResonance,
            AxisArg::Coupling => ErrorAxis::Coupling,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::List => {
            print!("{}", generator_table());
            Ok(0)
        }
        Command::Synth(args) => cmd_synth(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Order(args) => cmd_order(args),
        Command::Verify => cmd_verify(),
    }
}

fn generator_table() -> &'static str {
    "naive        --theta DEG [--phi DEG]  single rectangular pulse\n\
     corpse       --theta DEG [--phi DEG]  off-resonance-robust triple (windings 1,1,0)\n\
     tycko90      --theta 90  [--phi DEG]  Tycko's literal 385/320/25 composite 90\n\
     bb1-before   --theta DEG [--phi DEG]  W1 block, then the naive pulse\n\
     bb1-after    --theta DEG [--phi DEG]  naive pulse, then the W1 block\n\
     bb1-mid      --theta DEG [--phi DEG]  naive pulse split around the W1 block\n\
     composite-z  --theta DEG              90_y theta_x 90_-y composite z-rotation\n\
     bb1-ising    --theta DEG              coupling-robust two-qubit zz gate (axis: coupling)\n"
}

/// A gate under test together with its nominal target and the header
/// descriptions echoed into reports.
struct GateSpec {
    handle: GateHandle,
    target: Unitary,
    seq_desc: String,
    target_desc: String,
}

fn check_finite(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        bail!("--{name} must be finite, got {value}");
    }
    Ok(())
}

/// Builds a gate from a generator name and degree-valued flags.
fn build_named_gate(name: &str, theta_deg: f64, phi_deg: f64) -> Result<GateSpec> {
    check_finite("theta", theta_deg)?;
    check_finite("phi", phi_deg)?;
    let theta = theta_deg.to_radians();
    let phi = phi_deg.to_radians();
    let rot_target = || -> Result<(Unitary, String)> {
        Ok((
            rot(theta, phi)?,
            format!("rot theta={theta_deg} phi={phi_deg}"),
        ))
    };

    let seq_desc = format!("{name} theta={theta_deg} phi={phi_deg}");
    let spec = match name {
        "naive" => {
            let (target, target_desc) = rot_target()?;
            GateSpec {
                handle: GateHandle::Sequence(naive(theta, phi)?),
                target,
                seq_desc,
                target_desc,
            }
        }
        "corpse" => {
            let (target, target_desc) = rot_target()?;
            GateSpec {
                handle: GateHandle::Sequence(corpse(theta, phi, CorpseParams::default())?),
                target,
                seq_desc,
                target_desc,
            }
        }
        "tycko90" => {
            if (theta_deg - 90.0).abs() > 1e-9 {
                bail!("tycko90 is a fixed 90 degree pulse; pass --theta 90");
            }
            let (target, target_desc) = rot_target()?;
            GateSpec {
                handle: GateHandle::Sequence(tycko90(phi)?),
                target,
                seq_desc,
                target_desc,
            }
        }
        "bb1-before" | "bb1-after" | "bb1-mid" => {
            let placement = match name {
                "bb1-before" => Bb1Placement::Before,
                "bb1-after" => Bb1Placement::After,
                _ => Bb1Placement::Middle,
            };
            let (target, target_desc) = rot_target()?;
            GateSpec {
                handle: GateHandle::Sequence(bb1(theta, phi, placement)?),
                target,
                seq_desc,
                target_desc,
            }
        }
        "composite-z" => {
            if phi_deg != 0.0 {
                bail!("composite-z does not take --phi");
            }
            GateSpec {
                handle: GateHandle::Sequence(composite_z(theta)?),
                target: rot_z(theta),
                seq_desc: format!("composite-z theta={theta_deg}"),
                target_desc: format!("rot-z theta={theta_deg}"),
            }
        }
        "bb1-ising" => {
            if phi_deg != 0.0 {
                bail!("bb1-ising does not take --phi");
            }
            GateSpec {
                handle: GateHandle::CouplingBb1 { theta },
                target: zz_evolution(theta),
                seq_desc: format!("bb1-ising theta={theta_deg}"),
                target_desc: format!("zz theta={theta_deg}"),
            }
        }
        other => bail!("unknown sequence `{other}` (see `cpulse list`)"),
    };
    Ok(spec)
}

fn build_gate(args: &SweepArgs) -> Result<GateSpec> {
    match (&args.seq, &args.file) {
        (Some(name), None) => build_named_gate(name, args.theta, args.phi),
        (None, Some(path)) => {
            check_finite("theta", args.theta)?;
            check_finite("phi", args.phi)?;
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let seq = PulseSequence::parse(&text, path.display().to_string())
                .with_context(|| format!("parsing {}", path.display()))?;
            let theta = args.theta.to_radians();
            let phi = args.phi.to_radians();
            Ok(GateSpec {
                handle: GateHandle::Sequence(seq),
                target: rot(theta, phi)?,
                seq_desc: format!(
                    "file:{} theta={} phi={}",
                    path.display(),
                    args.theta,
                    args.phi
                ),
                target_desc: format!("rot theta={} phi={}", args.theta, args.phi),
            })
        }
        _ => bail!("exactly one of --seq or --file is required"),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_synth(args: SynthArgs) -> Result<u8> {
    let spec = build_named_gate(&args.seq, args.theta, args.phi)?;
    let GateHandle::Sequence(seq) = spec.handle else {
        bail!(
            "{} is a two-qubit gate; synth writes single-qubit pulse files",
            args.seq
        );
    };
    emit(&args.out, &seq.to_file_format())?;
    Ok(0)
}

fn run_sweep(args: &SweepArgs) -> Result<(GateSpec, SweepResult)> {
    let gate = build_gate(args)?;
    let spec = SweepSpec::new(args.axis.into(), args.start, args.stop, args.points)?;
    let result = sweep(&gate.handle, &gate.target, &gate.target_desc, &spec)?;
    Ok((gate, result))
}

fn cmd_sweep(args: SweepArgs) -> Result<u8> {
    let (gate, result) = run_sweep(&args)?;
    let mut csv = String::new();
    csv.push_str(&format!("# sequence={}\n", gate.seq_desc));
    csv.push_str(&format!("# target={}\n", gate.target_desc));
    csv.push_str(&format!("# axis={}\n", ErrorAxis::from(args.axis).name()));
    csv.push_str("error_value,fidelity\n");
    for row in &result.rows {
        csv.push_str(&format!(
            "{},{}\n",
            sig12(row.error_value),
            sig12(row.fidelity)
        ));
    }
    emit(&args.out, &csv)?;
    Ok(0)
}

fn cmd_order(args: OrderArgs) -> Result<u8> {
    let (gate, result) = run_sweep(&args.sweep)?;
    let fit = fit_order(&result, (args.fit_min, args.fit_max))?;
    let mut report = String::new();
    report.push_str(&format!("# sequence={}\n", gate.seq_desc));
    report.push_str(&format!("# target={}\n", gate.target_desc));
    report.push_str(&format!(
        "# axis={} fit range [{}, {}]\n",
        ErrorAxis::from(args.sweep.axis).name(),
        args.fit_min,
        args.fit_max
    ));
    report.push_str(&format!(
        "slope={:.4} r2={:.6} points={}\n",
        fit.slope, fit.r_squared, fit.points_used
    ));
    emit(&args.sweep.out, &report)?;
    Ok(0)
}

fn cmd_verify() -> Result<u8> {
    println!("# seed={DEFAULT_SEED}");
    let checks = run_identity_checks(DEFAULT_SEED);
    let mut failures = 0;
    for check in &checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        if !check.passed() {
            failures += 1;
        }
        println!(
            "{status} {} = {:.1e} (tol {:.1e})",
            check.name, check.residual, check.tolerance
        );
    }
    if failures == 0 {
        println!("{} checks passed", checks.len());
        Ok(0)
    } else {
        println!("{failures} of {} checks failed", checks.len());
        Ok(1)
    }
}
