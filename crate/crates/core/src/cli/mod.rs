//! The `asymho` command-line front-end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver failure,
//! 4 check failure.

mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::check::{run_checks, specfun_oracle_errors, CheckOptions, Group};
use crate::coherent::{
    auto_truncation, basis_functions, dephased_left_probability, left_probability, build_coherent, coherence_fidelity, evolve, position_matrix, position_trace,
    spectral_peaks, superpose, BasisSource, CoherentState, OCCUPATION_THRESHOLD,
};
use crate::spectrum::{locate_subspace_in_spectrum, subspace_rule, OscillatorConfig, Spectrum, SubspaceRule};
use crate::wavefun::{grid_half_width_for, Grid};
use crate::{table1, Error};

pub use cache::{cache_dir, load_or_compute_spectrum};
pub use output::write_atomic;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;
pub const EXIT_CHECK: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "asymho", version, about = "Asymmetric quantum harmonic oscillator: spectra, eigenfunctions, coherent states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the lowest levels and write them as CSV or JSON.
    Spectrum(SpectrumArgs),
    /// Write the position-space wavefunction and Fock coefficients of a coherent state.
    Coherent(CoherentArgs),
    /// Evolve a coherent state and record its coherence fidelity.
    Evolve(EvolveArgs),
    /// Run the invariant suite and print a JSON report.
    Check(CheckArgs),
    #[command(hide = true)]
    Selftest {
        #[arg(value_parser = ["specfun"])]
        target: String,
    },
}

/// Either a real `s` or a rational pair `p/q`.
#[derive(Debug, Clone, Args)]
pub struct Asymmetry {
    /// Frequency ratio ω₊/ω₋, as a number ("1.4") or a square root ("26:sqrt").
    #[arg(long, value_parser = parse_s, conflicts_with_all = ["p", "q"])]
    pub s: Option<f64>,
    /// Numerator of a rational s = p/q.
    #[arg(long, requires = "q")]
    pub p: Option<u64>,
    /// Denominator of a rational s = p/q.
    #[arg(long, requires = "p")]
    pub q: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Grid half-width L (default: from the highest occupied level, at least 12).
    #[arg(long)]
    pub half_width: Option<f64>,
    /// Grid spacing.
    #[arg(long, default_value_t = 2e-3)]
    pub dx: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub asym: Asymmetry,
    #[arg(long, default_value_t = 8)]
    pub count: usize,
    /// Compare with the embedded published table and print max |Δν|.
    #[arg(long)]
    pub compare_table1: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (default: spectrum.csv or spectrum.json).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Skip the on-disk spectrum cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub asym: Asymmetry,
    /// Coherent parameter as "re" or "re,im".
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    pub alpha: Complex64,
    /// Use the equidistant sub-ladder of s = p/q.
    #[arg(long, requires = "p")]
    pub subspace: bool,
    /// Fock truncation, a number or "auto" for max(64, ceil(4|α|²)).
    #[arg(long, default_value = "auto")]
    pub n_trunc: String,
    /// Skip the on-disk spectrum cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct CoherentArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output stem: writes STEM_psi.csv and STEM_fock.csv.
    #[arg(long, default_value = "coherent")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// End of the time window, in units of 1/ω₋.
    #[arg(long)]
    pub t_max: f64,
    /// Number of time samples, endpoints included.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Also write this many wavefunction frames (long CSV "t,x,re,im,prob").
    #[arg(long, default_value_t = 0)]
    pub frames: usize,
    /// Also write ⟨x⟩(t) and report its spectral peaks.
    #[arg(long)]
    pub position: bool,
    /// Output stem: writes STEM_fidelity.csv (and STEM_frames.csv, STEM_position.csv).
    #[arg(long, default_value = "evolve")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Run a single group: specfun, table1, symmetric, glued, properties,
    /// identity-resolution, subspace or eigenfunctions.
    #[arg(long)]
    pub only: Option<Group>,
    /// Number of Fock states (0..N) in the identity-resolution check.
    #[arg(long, default_value_t = 8)]
    pub n_check: usize,
    /// Disc radius for the identity-resolution check.
    #[arg(long, default_value_t = 8.0)]
    pub radius: f64,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parse "1.4" or "26:sqrt".
pub fn parse_s(text: &str) -> Result<f64, String> {
    let (num, sqrt) = match text.strip_suffix(":sqrt") {
        Some(n) => (n, true),
        None => (text, false),
    };
    let v: f64 = num.trim().parse().map_err(|_| format!("cannot parse '{text}' as s"))?;
    let s = if sqrt { v.sqrt() } else { v };
    if !s.is_finite() || s < 1.0 {
        return Err(format!("s = {s} must be >= 1"));
    }
    Ok(s)
}

/// Parse "re" or "re,im".
pub fn parse_alpha(text: &str) -> Result<Complex64, String> {
    let mut parts = text.split(',');
    let re = parts.next().unwrap_or("").trim().parse::<f64>();
    let im = parts.next().map(|t| t.trim().parse::<f64>()).unwrap_or(Ok(0.0));
    match (re, im, parts.next()) {
        (Ok(re), Ok(im), None) if re.is_finite() && im.is_finite() => Ok(Complex64::new(re, im)),
        _ => Err(format!("cannot parse '{text}' as alpha (expected re or re,im)")),
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::InvalidRule { .. } | Error::BasisMismatch(_) | Error::Io(_) => EXIT_CONFIG,
            _ => EXIT_SOLVER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("asymho: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::Coherent(a) => cmd_coherent(&a),
        Command::Evolve(a) => cmd_evolve(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Selftest { .. } => cmd_selftest(),
    }
}

/// The validated physical setup of a command.
#[derive(Debug, Clone, Copy)]
struct Setup {
    config: OscillatorConfig,
    rule: Option<SubspaceRule>,
}

fn setup(a: &Asymmetry) -> Result<Setup, Failure> {
    match (a.s, a.p, a.q) {
        (Some(s), None, None) => Ok(Setup {
            config: OscillatorConfig::new(s)?,
            rule: None,
        }),
        (None, Some(p), Some(q)) => {
            let rule = subspace_rule(p, q)?;
            Ok(Setup {
                config: rule.config(),
                rule: Some(rule),
            })
        }
        _ => Err(config_error("give exactly one of --s or --p/--q")),
    }
}

fn spectrum_for(config: &OscillatorConfig, count: usize, no_cache: bool) -> Result<Spectrum, Failure> {
    if no_cache {
        Ok(crate::spectrum::find_eigenvalues(config, count)?)
    } else {
        Ok(load_or_compute_spectrum(config, count)?)
    }
}

fn cmd_spectrum(a: &SpectrumArgs) -> CmdResult {
    let st = setup(&a.asym)?;
    let count = if a.compare_table1 { a.count.max(8) } else { a.count };
    let sp = spectrum_for(&st.config, count, a.no_cache)?;
    let members: Vec<Option<usize>> = match st.rule {
        Some(rule) if rule.valid => {
            let pos = locate_subspace_in_spectrum(&rule, &sp)?;
            (0..sp.levels.len()).map(|n| pos.iter().position(|&m| m == n)).collect()
        }
        _ => vec![None; sp.levels.len()],
    };
    let text = match a.format {
        Format::Json => sp.to_json()?,
        Format::Csv => output::spectrum_csv(&sp, st.rule.is_some().then_some(&members[..])),
    };
    let default = match a.format {
        Format::Csv => "spectrum.csv",
        Format::Json => "spectrum.json",
    };
    let path = a.output.clone().unwrap_or_else(|| PathBuf::from(default));
    write_atomic(&path, &text)?;
    println!("s = {:.12}: {} levels written to {}", sp.s(), sp.levels.len(), path.display());
    for l in sp.levels.iter().take(12) {
        println!("  n = {:>3}  nu_plus = {:>16.10}  energy/w+ = {:.10}", l.index, l.nu_plus, l.energy);
    }
    if let Some(rule) = st.rule {
        if rule.valid {
            let rows: Vec<usize> = members.iter().enumerate().filter(|(_, m)| m.is_some()).map(|(n, _)| n).collect();
            println!("subspace ({}, {}) members at rows {:?}", rule.p, rule.q, rows);
        } else {
            println!("({}, {}) differ mod 4: no equidistant sub-ladder", rule.p, rule.q);
        }
    }
    if a.compare_table1 {
        let row = table1::row_for(sp.s()).ok_or_else(|| config_error(format!("no published row for s = {}", sp.s())))?;
        let diff = sp.levels[..8].iter().zip(&row.nu).map(|(l, v)| (l.nu_plus - v).abs()).fold(0.0, f64::max);
        println!("table1 row {}: max |dnu| = {diff:.3e} (tolerance {:.0e})", row.label, table1::TOLERANCE);
        if diff > table1::TOLERANCE {
            return Err(Failure {
                code: EXIT_CHECK,
                message: format!("table1 row {} differs by {diff:.3e}", row.label),
            });
        }
    }
    Ok(())
}

/// A coherent state together with what is needed to put it on a grid.
struct Prepared {
    state: CoherentState,
    spectrum: Option<Spectrum>,
    /// Highest occupied `ν₊`, used for the grid extent.
    top_nu_plus: f64,
    config: OscillatorConfig,
}

fn prepare(a: &StateArgs) -> Result<Prepared, Failure> {
    let st = setup(&a.asym)?;
    let n = if a.n_trunc == "auto" {
        auto_truncation(a.alpha)
    } else {
        a.n_trunc
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| config_error(format!("--n-trunc must be a positive integer or auto, got '{}'", a.n_trunc)))?
    };
    if a.subspace {
        let rule = st.rule.ok_or_else(|| config_error("--subspace needs --p and --q"))?;
        if !rule.valid {
            return Err(Error::InvalidRule {
                p: rule.p,
                q: rule.q,
                reason: "p and q differ mod 4, no glued sub-ladder exists".into(),
            }
            .into());
        }
        let state = build_coherent(a.alpha, BasisSource::Subspace { rule, spectrum: None }, n)?;
        let occ = state.fock.occupied(OCCUPATION_THRESHOLD).max(1);
        let top_nu_plus = rule.n_plus(occ as u64 - 1) as f64;
        Ok(Prepared {
            state,
            spectrum: None,
            top_nu_plus,
            config: st.config,
        })
    } else {
        let sp = spectrum_for(&st.config, n, a.no_cache)?;
        let state = build_coherent(a.alpha, BasisSource::Full(&sp), n)?;
        let occ = state.fock.occupied(OCCUPATION_THRESHOLD).max(1);
        let top_nu_plus = sp.levels[occ - 1].nu_plus;
        Ok(Prepared {
            state,
            spectrum: Some(sp),
            top_nu_plus,
            config: st.config,
        })
    }
}

fn grid_for(p: &Prepared, g: &GridArgs) -> Result<Grid, Failure> {
    let l = g.half_width.unwrap_or_else(|| grid_half_width_for(&p.config, p.top_nu_plus));
    Ok(Grid::new(l, g.dx)?)
}

fn cmd_coherent(a: &CoherentArgs) -> CmdResult {
    let p = prepare(&a.state)?;
    let grid = grid_for(&p, &a.grid)?;
    let occ = p.state.fock.occupied(OCCUPATION_THRESHOLD).max(1);
    let fs = basis_functions(&p.state, p.spectrum.as_ref(), &grid, occ)?;
    let psi = superpose(&p.state.fock, &fs)?;
    let psi_path = output::with_suffix(&a.output, "_psi.csv");
    let fock_path = output::with_suffix(&a.output, "_fock.csv");
    write_atomic(&psi_path, &psi.to_csv())?;
    write_atomic(&fock_path, &p.state.fock.to_csv())?;
    let left = left_probability(&psi);
    let dephased = dephased_left_probability(&p.state.fock, &fs);
    let norm = psi.norm_sq();
    println!("alpha = {} , basis = {:?}, N_trunc = {}, occupied = {occ}", p.state.alpha, p.state.basis(), p.state.truncation());
    println!("grid L = {}, dx = {}", grid.half_width, grid.dx);
    println!("norm = {norm:.12}");
    println!("tail mass = {:.3e}", p.state.tail_mass);
    println!("probability on x < 0 = {left:.6}");
    println!("time-averaged probability on x < 0 = {dephased:.6}");
    println!("wrote {} and {}", psi_path.display(), fock_path.display());
    if p.state.tail_mass > 1e-6 {
        eprintln!("warning: truncation tail mass {:.3e} exceeds 1e-6", p.state.tail_mass);
    }
    Ok(())
}

fn cmd_evolve(a: &EvolveArgs) -> CmdResult {
    if !(a.t_max > 0.0) || a.samples < 2 {
        return Err(config_error("need --t-max > 0 and --samples >= 2"));
    }
    let p = prepare(&a.state)?;
    let times: Vec<f64> = (0..a.samples).map(|j| a.t_max * j as f64 / (a.samples - 1) as f64).collect();
    let fidelity: Vec<f64> = {
        use rayon::prelude::*;
        times.par_iter().map(|&t| coherence_fidelity(&p.state, t)).collect()
    };
    let path = output::with_suffix(&a.output, "_fidelity.csv");
    write_atomic(&path, &output::two_column_csv("t,F", &times, &fidelity))?;
    let (min, max) = fidelity.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &f| (lo.min(f), hi.max(f)));
    let t_min = times[fidelity.iter().position(|&f| f == min).unwrap_or(0)];
    println!("fidelity over [0, {}] ({} samples): min = {min:.12} at t = {t_min:.6}, max = {max:.12}", a.t_max, a.samples);
    println!("wrote {}", path.display());

    if a.frames > 0 || a.position {
        let grid = grid_for(&p, &a.grid)?;
        let occ = p.state.fock.occupied(OCCUPATION_THRESHOLD).max(1);
        let fs = basis_functions(&p.state, p.spectrum.as_ref(), &grid, occ)?;
        if a.frames > 0 {
            let mut text = String::from("t,x,re,im,prob\n");
            for j in 0..a.frames {
                let t = if a.frames == 1 { 0.0 } else { a.t_max * j as f64 / (a.frames - 1) as f64 };
                let psi = superpose(&evolve(&p.state, t), &fs)?;
                output::append_frame(&mut text, t, &psi);
            }
            let path = output::with_suffix(&a.output, "_frames.csv");
            write_atomic(&path, &text)?;
            println!("wrote {} ({} frames)", path.display(), a.frames);
        }
        if a.position {
            let x = position_matrix(&fs);
            let dt = times[1] - times[0];
            let trace = position_trace(&p.state, &x, dt, a.samples);
            let path = output::with_suffix(&a.output, "_position.csv");
            write_atomic(&path, &output::two_column_csv("t,x", &times, &trace))?;
            let peaks = spectral_peaks(&trace, dt, 0.05);
            println!("<x>(t): {} spectral peaks above 5% of the dominant one", peaks.len());
            for pk in peaks.iter().take(6) {
                println!("  omega = {:.6}  amplitude = {:.6e}", pk.omega, pk.amplitude);
            }
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs) -> CmdResult {
    let report = run_checks(&CheckOptions {
        only: a.only,
        n_check: a.n_check,
        radius: a.radius,
    });
    let json = serde_json::to_string_pretty(&report).map_err(Error::from)?;
    println!("{json}");
    if let Some(path) = &a.output {
        write_atomic(path, &json)?;
    }
    match report.first_failure {
        None => Ok(()),
        Some(name) => Err(Failure {
            code: EXIT_CHECK,
            message: format!("check failed: {name}"),
        }),
    }
}

fn cmd_selftest() -> CmdResult {
    let mut ok = true;
    for (name, err, tol) in specfun_oracle_errors() {
        let pass = err <= tol;
        ok &= pass;
        println!("{:<24} max error {err:.3e}  tolerance {tol:.0e}  {}", name, if pass { "ok" } else { "FAIL" });
    }
    if ok {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_CHECK,
            message: "special-function oracle failed".into(),
        })
    }
}
