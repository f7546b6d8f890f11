//! Command-line front end: ingest a JSON experiment config, run the
//! model, and emit figure-ready CSV data and JSON parameter reports.
//!
//! Three formats total: JSON config in, CSV data out, JSON reports out.
//! Identical invocations produce byte-identical output files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use twoslit::numerics::tolerances::{INFO_QUAD_TOL, PATTERN_QUAD_TOL};
use twoslit::{
    derive, info_curve, joint_xk_distribution, linear_grid, momentum_span, pattern_analytic,
    pattern_numeric_oracle, validate_regime, DerivedParams, ExperimentConfig, InfoMethod,
    PhysicalConstants, SpreadingForm,
};

const DEFAULT_PATTERN_HALF_SPAN: f64 = 120e-6;

#[derive(Parser)]
#[command(
    name = "twoslit",
    version,
    about = "Monitored double-slit model: parameters, interference patterns, joint \
             distributions, and which-way information curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print derived model parameters and regime warnings as JSON
    Params {
        /// Path to the JSON experiment config
        config: PathBuf,
        #[command(flatten)]
        manifest: ManifestFlag,
    },
    /// Sample the screen interference pattern into a CSV file
    Pattern {
        /// Path to the JSON experiment config
        config: PathBuf,
        /// Evolution time in seconds (default: screen arrival time D/v)
        #[arg(long)]
        time: Option<f64>,
        /// Lower edge of the screen grid in meters
        #[arg(long, default_value_t = -DEFAULT_PATTERN_HALF_SPAN, allow_hyphen_values = true)]
        xmin: f64,
        /// Upper edge of the screen grid in meters
        #[arg(long, default_value_t = DEFAULT_PATTERN_HALF_SPAN, allow_hyphen_values = true)]
        xmax: f64,
        /// Number of grid points (at least 2)
        #[arg(long, default_value_t = 2001)]
        points: usize,
        /// Add a column computed by the brute-force quadrature oracle
        #[arg(long)]
        oracle: bool,
        /// Absolute quadrature tolerance per screen point (oracle only)
        #[arg(long, default_value_t = PATTERN_QUAD_TOL)]
        quad_tol: f64,
        #[command(flatten)]
        out: OutFlag,
        #[command(flatten)]
        manifest: ManifestFlag,
    },
    /// Sample the joint position-momentum distribution into long-format CSV
    Joint {
        /// Path to the JSON experiment config
        config: PathBuf,
        /// Evolution time in seconds (default: screen arrival time D/v)
        #[arg(long)]
        time: Option<f64>,
        /// Lower edge of the screen grid in meters
        #[arg(long, default_value_t = -DEFAULT_PATTERN_HALF_SPAN, allow_hyphen_values = true)]
        xmin: f64,
        /// Upper edge of the screen grid in meters
        #[arg(long, default_value_t = DEFAULT_PATTERN_HALF_SPAN, allow_hyphen_values = true)]
        xmax: f64,
        /// Number of position samples
        #[arg(long, default_value_t = 401)]
        xpoints: usize,
        /// Lower edge of the wavenumber grid in 1/m (default: covers both lobes)
        #[arg(long, allow_hyphen_values = true)]
        kmin: Option<f64>,
        /// Upper edge of the wavenumber grid in 1/m
        #[arg(long, allow_hyphen_values = true)]
        kmax: Option<f64>,
        /// Number of wavenumber samples
        #[arg(long, default_value_t = 201)]
        kpoints: usize,
        #[command(flatten)]
        out: OutFlag,
        #[command(flatten)]
        manifest: ManifestFlag,
    },
    /// Tabulate information gain against visibility into a CSV file
    InfoCurve {
        /// Comma-separated method names among BE, M, WZ, Q, vN, quantumMI
        #[arg(long, value_delimiter = ',', default_value = "BE,M,WZ,Q,vN,quantumMI")]
        methods: Vec<String>,
        /// Number of interior visibility samples V_i = i/(n+1) (at least 3)
        #[arg(long, default_value_t = 99)]
        points: usize,
        /// Absolute quadrature tolerance for the BE column
        #[arg(long, default_value_t = INFO_QUAD_TOL)]
        quad_tol: f64,
        #[command(flatten)]
        out: OutFlag,
        #[command(flatten)]
        manifest: ManifestFlag,
    },
}

#[derive(Args)]
struct OutFlag {
    /// Output path; `-` streams to standard output
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct ManifestFlag {
    /// Write a run manifest JSON beside the output
    #[arg(long)]
    manifest: bool,
}

/// Record of one invocation: what ran, with what resolved inputs, and
/// which files it produced.
#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    tool_version: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<&'a ExperimentConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    derived_params: Option<&'a DerivedParams>,
    emitted_files: Vec<String>,
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    let constants = PhysicalConstants::codata2018();
    match cli.command {
        Command::Params { config, manifest } => cmd_params(&config, manifest.manifest, &constants),
        Command::Pattern {
            config,
            time,
            xmin,
            xmax,
            points,
            oracle,
            quad_tol,
            out,
            manifest,
        } => cmd_pattern(
            &config,
            time,
            (xmin, xmax, points),
            oracle,
            quad_tol,
            &out.out,
            manifest.manifest,
            &constants,
        ),
        Command::Joint {
            config,
            time,
            xmin,
            xmax,
            xpoints,
            kmin,
            kmax,
            kpoints,
            out,
            manifest,
        } => cmd_joint(
            &config,
            time,
            (xmin, xmax, xpoints),
            (kmin, kmax, kpoints),
            &out.out,
            manifest.manifest,
            &constants,
        ),
        Command::InfoCurve {
            methods,
            points,
            quad_tol,
            out,
            manifest,
        } => cmd_info_curve(&methods, points, quad_tol, &out.out, manifest.manifest),
    }
}

fn load_config(path: &Path, constants: &PhysicalConstants) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config `{}`", path.display()))?;
    ExperimentConfig::from_json(&text, constants)
        .with_context(|| format!("invalid config `{}`", path.display()))
}

/// Full round-trip float precision (17 significant digits) so
/// downstream plotting never re-derives values.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write atomically: temp file in the destination directory, then
/// rename over the final path.
fn write_atomic(path: &str, bytes: &[u8]) -> Result<()> {
    if path == "-" {
        std::io::stdout()
            .write_all(bytes)
            .context("cannot write to standard output")?;
        return Ok(());
    }
    let target = Path::new(path);
    let dir = match target.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create temporary file beside `{path}`"))?;
    tmp.write_all(bytes)
        .with_context(|| format!("cannot write output for `{path}`"))?;
    tmp.persist(target)
        .with_context(|| format!("cannot move output into place at `{path}`"))?;
    Ok(())
}

fn manifest_path(out: &str, command: &str) -> String {
    if out == "-" {
        format!("{command}.manifest.json")
    } else {
        format!("{out}.manifest.json")
    }
}

#[allow(clippy::too_many_arguments)]
fn emit_manifest(
    enabled: bool,
    command: &str,
    out: &str,
    config: Option<&ExperimentConfig>,
    derived: Option<&DerivedParams>,
) -> Result<()> {
    if !enabled {
        return Ok(());
    }
    let path = manifest_path(out, command);
    let mut emitted_files = Vec::new();
    if out != "-" {
        emitted_files.push(out.to_string());
    }
    emitted_files.push(path.clone());
    let manifest = RunManifest {
        command,
        tool_version: env!("CARGO_PKG_VERSION"),
        config,
        derived_params: derived,
        emitted_files,
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    write_atomic(&path, text.as_bytes())
}

fn cmd_params(config_path: &Path, manifest: bool, constants: &PhysicalConstants) -> Result<()> {
    let config = load_config(config_path, constants)?;
    let derived = derive(&config, constants);
    let warnings = validate_regime(&config, constants);

    let mut report = serde_json::to_value(derived)?;
    report["regime_warnings"] = serde_json::to_value(&warnings)?;
    println!("{}", serde_json::to_string_pretty(&report)?);

    emit_manifest(manifest, "params", "-", Some(&config), Some(&derived))
}

#[allow(clippy::too_many_arguments)]
fn cmd_pattern(
    config_path: &Path,
    time: Option<f64>,
    (xmin, xmax, points): (f64, f64, usize),
    oracle: bool,
    quad_tol: f64,
    out: &str,
    manifest: bool,
    constants: &PhysicalConstants,
) -> Result<()> {
    if points < 2 {
        bail!("--points must be at least 2 (got {points})");
    }
    if xmin >= xmax || xmin.is_nan() || xmax.is_nan() {
        bail!("--xmin must lie below --xmax (got {xmin}, {xmax})");
    }
    let config = load_config(config_path, constants)?;
    let t = time.unwrap_or_else(|| config.propagation_time());
    let grid = linear_grid(xmin, xmax, points);

    let analytic = pattern_analytic(&config, constants, t, &grid, SpreadingForm::Exact)?;
    let oracle_density = if oracle {
        Some(pattern_numeric_oracle(&config, constants, t, &grid, quad_tol)?.density)
    } else {
        None
    };

    let mut csv = String::new();
    match &oracle_density {
        None => csv.push_str("x_m,density_per_m\n"),
        Some(_) => csv.push_str("x_m,density_per_m,oracle_density_per_m\n"),
    }
    for (i, (&x, &rho)) in grid.iter().zip(analytic.density.iter()).enumerate() {
        match &oracle_density {
            None => csv.push_str(&format!("{},{}\n", fmt17(x), fmt17(rho))),
            Some(numeric) => csv.push_str(&format!(
                "{},{},{}\n",
                fmt17(x),
                fmt17(rho),
                fmt17(numeric[i])
            )),
        }
    }
    write_atomic(out, csv.as_bytes())?;
    emit_manifest(manifest, "pattern", out, Some(&config), Some(&analytic.meta))
}

#[allow(clippy::too_many_arguments)]
fn cmd_joint(
    config_path: &Path,
    time: Option<f64>,
    (xmin, xmax, xpoints): (f64, f64, usize),
    (kmin, kmax, kpoints): (Option<f64>, Option<f64>, usize),
    out: &str,
    manifest: bool,
    constants: &PhysicalConstants,
) -> Result<()> {
    if xpoints < 1 || kpoints < 1 {
        bail!("--xpoints and --kpoints must be at least 1");
    }
    let config = load_config(config_path, constants)?;
    let t = time.unwrap_or_else(|| config.propagation_time());
    let k_half = momentum_span(&config, constants);
    let kmin = kmin.unwrap_or(-k_half);
    let kmax = kmax.unwrap_or(k_half);
    let x_grid = if xpoints == 1 {
        vec![0.5 * (xmin + xmax)]
    } else {
        linear_grid(xmin, xmax, xpoints)
    };
    let k_grid = if kpoints == 1 {
        vec![0.5 * (kmin + kmax)]
    } else {
        linear_grid(kmin, kmax, kpoints)
    };

    let joint = joint_xk_distribution(&config, constants, t, &x_grid, &k_grid)?;

    let mut csv = String::from("x_m,k_per_m,density\n");
    for (ix, &x) in joint.positions.iter().enumerate() {
        for (ik, &k) in joint.wavenumbers.iter().enumerate() {
            csv.push_str(&format!(
                "{},{},{}\n",
                fmt17(x),
                fmt17(k),
                fmt17(joint.at(ix, ik))
            ));
        }
    }
    write_atomic(out, csv.as_bytes())?;
    let derived = derive(&config, constants);
    emit_manifest(manifest, "joint", out, Some(&config), Some(&derived))
}

fn cmd_info_curve(
    methods: &[String],
    points: usize,
    quad_tol: f64,
    out: &str,
    manifest: bool,
) -> Result<()> {
    if points < 3 {
        bail!("--points must be at least 3 (got {points})");
    }
    let methods: Vec<InfoMethod> = methods
        .iter()
        .map(|name| {
            InfoMethod::parse(name).ok_or_else(|| {
                let valid: Vec<&str> = InfoMethod::ALL.iter().map(|m| m.label()).collect();
                anyhow!(
                    "unknown method `{name}`; valid methods: {}",
                    valid.join(", ")
                )
            })
        })
        .collect::<Result<_>>()?;
    if methods.is_empty() {
        bail!("--methods must name at least one method");
    }

    let curves = methods
        .iter()
        .map(|&m| info_curve(m, points, quad_tol))
        .collect::<Result<Vec<_>, _>>()?;

    let mut header = String::from("visibility");
    for curve in &curves {
        header.push(',');
        header.push_str(curve.method.label());
    }
    let mut csv = header;
    csv.push('\n');
    for (row, &v) in curves[0].visibilities.iter().enumerate() {
        csv.push_str(&fmt17(v));
        for curve in &curves {
            csv.push(',');
            csv.push_str(&fmt17(curve.values[row]));
        }
        csv.push('\n');
    }
    write_atomic(out, csv.as_bytes())?;
    emit_manifest(manifest, "info-curve", out, None, None)
}
