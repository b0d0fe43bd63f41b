//! Command-line front end: runs the benchmark chain and writes series files.

use clap::{Args, Parser, Subcommand};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use wkbchain::dlw::{
    coeffs_from_geometry, linear_ramp_profile, realize_phase_profile, ModelConstants,
};
use wkbchain::experiment::{
    emit_outputs, riccati_residuals, run_experiment, ComparisonReport, ExperimentConfig,
    ExperimentError, Method, OutputFormat, PartialConfig,
};
use wkbchain::recurrence::assign_branches;

#[derive(Parser)]
#[command(
    name = "wkbchain",
    version,
    about = "Exact and WKB wave propagation through a cavity chain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the chain and write per-method series and a summary.
    Scatter(ChainArgs),
    /// Run every method (unless restricted) and report deviations from the exact solution.
    Compare(ChainArgs),
    /// Print the characteristic roots along the chain as CSV.
    Dispersion(ChainArgs),
    /// Residual of the Riccati equation for the corrected and bare-root gauges under ramp refinement.
    RiccatiCheck {
        #[command(flatten)]
        chain: ChainArgs,
        /// Ramp lengths to compare (default: the configured ramp, doubled twice).
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<usize>,
    },
    /// Print a disk-loaded waveguide geometry realising the ramp, with its coefficients.
    Geometry {
        #[command(flatten)]
        chain: ChainArgs,
        /// Iris radius in the input lead, cm.
        #[arg(long, default_value_t = 1.0)]
        a_lead: f64,
        /// Reference cell radius, cm.
        #[arg(long, default_value_t = 4.0)]
        b_star: f64,
        /// Reference cell length, cm.
        #[arg(long, default_value_t = 3.0989)]
        d_star: f64,
        /// Disk thickness, cm.
        #[arg(long, default_value_t = 0.4)]
        thickness: f64,
    },
}

#[derive(Args)]
struct ChainArgs {
    /// TOML file with any of phi_I, phi_II, N, N_h, methods, output_dir, format.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Phase advance per cell in the input lead, radians.
    #[arg(long)]
    phi_in: Option<f64>,
    /// Phase advance per cell in the output lead, radians.
    #[arg(long)]
    phi_out: Option<f64>,
    /// Total number of cells N.
    #[arg(long)]
    cells: Option<usize>,
    /// Plateau length N_h at each end.
    #[arg(long)]
    lead_cells: Option<usize>,
    /// Comma-separated methods: exact, wkb-riccati, wkb-direct, closed-riccati, closed-direct, oracle.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for series files.
    #[arg(long)]
    format: Option<String>,
}

impl ChainArgs {
    fn resolve(&self, default_methods: &[Method]) -> Result<ExperimentConfig, ExperimentError> {
        let base = PartialConfig {
            methods: Some(default_methods.iter().copied().collect()),
            ..Default::default()
        };
        let file = match &self.config {
            Some(path) => PartialConfig::load(path)?,
            None => PartialConfig::default(),
        };
        let methods = match &self.methods {
            Some(names) => Some(
                names
                    .iter()
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.parse())
                    .collect::<Result<BTreeSet<Method>, _>>()?,
            ),
            None => None,
        };
        let flags = PartialConfig {
            phi_i: self.phi_in,
            phi_ii: self.phi_out,
            n: self.cells,
            n_h: self.lead_cells,
            methods,
            output_dir: self.out.clone(),
            format: self
                .format
                .as_deref()
                .map(str::parse::<OutputFormat>)
                .transpose()?,
        };
        base.overlay(file).overlay(flags).resolve()
    }
}

fn print_summary(report: &ComparisonReport) {
    for m in &report.methods {
        println!(
            "{:<15} |R| = {:.6e}  |T| = {:.7}  arg T = {:.7}",
            m.method.name(),
            m.r.norm(),
            m.t.norm(),
            m.t.arg()
        );
    }
}

fn scatter(args: &ChainArgs) -> Result<(), ExperimentError> {
    let cfg = args.resolve(&[Method::Exact])?;
    let report = run_experiment(&cfg)?;
    emit_outputs(&report)?;
    print_summary(&report);
    Ok(())
}

fn compare(args: &ChainArgs) -> Result<(), ExperimentError> {
    let cfg = args.resolve(&Method::ALL)?;
    let report = run_experiment(&cfg)?;
    emit_outputs(&report)?;
    print_summary(&report);
    let peak = report
        .method(Method::Exact)
        .map(|e| e.abs_y.values().iter().copied().fold(0.0, f64::max));
    for d in &report.deviations {
        let max_abs = d.d_abs.values().iter().map(|v| v.abs()).fold(0.0, f64::max);
        let max_phase = d
            .d_phase
            .values()
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        let rel = peak.map_or(f64::NAN, |p| max_abs / p);
        println!(
            "{:<15} max|d|y|| = {max_abs:.3e} ({:.3}% of peak)  max|d phase shift| = {max_phase:.3e}",
            d.method.name(),
            100.0 * rel
        );
    }
    if let Some(g) = &report.phase_gap {
        println!(
            "phase gap at N   = {:.6}  (predicted {:.6})",
            g.at_end, g.predicted
        );
    }
    if let Some(f) = report.flux_defect {
        println!("flux defect      = {f:.3e}");
    }
    Ok(())
}

fn numerical(context: &str) -> impl FnOnce(wkbchain::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Numerical {
        context: context.to_string(),
        source,
    }
}

fn ramp(
    args: &ChainArgs,
) -> Result<(ExperimentConfig, wkbchain::dlw::PhaseProfile), ExperimentError> {
    let cfg = args.resolve(&[])?;
    let profile = linear_ramp_profile(cfg.phi_i, cfg.phi_ii, cfg.n_h, cfg.n)
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    Ok((cfg, profile))
}

fn dispersion(args: &ChainArgs) -> Result<(), ExperimentError> {
    let (_, profile) = ramp(args)?;
    let seq = wkbchain::dlw::coeffs_from_phase(&profile).map_err(numerical("coefficients"))?;
    let roots = assign_branches(&seq).map_err(numerical("characteristic roots"))?;
    println!("k,phi,rho1_re,rho1_im,rho2_re,rho2_im");
    for k in seq.k_min()..=seq.k_max() {
        let (a, b) = (roots.rho1(k), roots.rho2(k));
        // Coefficient k couples cells k+1 and k+2; its roots follow phi[k+1].
        println!(
            "{k},{},{},{},{},{}",
            profile.phi(k + 1),
            a.re,
            a.im,
            b.re,
            b.im
        );
    }
    Ok(())
}

fn riccati_check(args: &ChainArgs, lengths: &[usize]) -> Result<(), ExperimentError> {
    let cfg = args.resolve(&[])?;
    let base = cfg.n - 2 * cfg.n_h;
    let lengths = if lengths.is_empty() {
        vec![base, 2 * base, 4 * base]
    } else {
        lengths.to_vec()
    };
    println!("ramp_len,corrected,root,corrected_ratio,root_ratio");
    let mut prev: Option<wkbchain::experiment::RiccatiResiduals> = None;
    for len in lengths {
        let r = riccati_residuals(cfg.phi_i, cfg.phi_ii, cfg.n_h, len)
            .map_err(numerical(&format!("ramp of {len} cells")))?;
        let (rc, rr) = match prev {
            Some(p) => (p.corrected / r.corrected, p.root / r.root),
            None => (f64::NAN, f64::NAN),
        };
        println!("{},{},{},{},{}", r.ramp_len, r.corrected, r.root, rc, rr);
        prev = Some(r);
    }
    Ok(())
}

fn geometry(
    args: &ChainArgs,
    a_lead: f64,
    b_star: f64,
    d_star: f64,
    thickness: f64,
) -> Result<(), ExperimentError> {
    let (_, profile) = ramp(args)?;
    let consts = ModelConstants::compute();
    let geom = realize_phase_profile(&profile, &consts, a_lead, b_star, d_star, thickness)
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let seq = coeffs_from_geometry(&geom, &consts).map_err(numerical("geometry coefficients"))?;
    println!("k,a,b,d,t,f0,f1");
    for k in seq.k_min()..=seq.k_max() {
        println!(
            "{k},{},{},{},{},{},{}",
            geom.a(k),
            geom.b(k),
            geom.d(k),
            geom.t(k),
            seq.f0(k).re,
            seq.f1(k).re
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Scatter(args) => scatter(args),
        Command::Compare(args) => compare(args),
        Command::Dispersion(args) => dispersion(args),
        Command::RiccatiCheck { chain, lengths } => riccati_check(chain, lengths),
        Command::Geometry {
            chain,
            a_lead,
            b_star,
            d_star,
            thickness,
        } => geometry(chain, *a_lead, *b_star, *d_star, *thickness),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if let Some(k) = err.cell() {
                eprintln!("cell: {k}");
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
