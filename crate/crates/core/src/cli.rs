//! Command-line front end: `gaps`, `band`, `zones`, `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
//! failure. Output goes to stdout only once the whole result is known.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::brillouin::{third_zone_edge_lines, zone_edges, MAX_RANK};
use crate::error::Error;
use crate::lattice::{make_config, ConfigDocument, FormulaMode, LatticeConfig, Species, WavenumberConvention};
use crate::oracle::{selection_rule_scan, QuadratureSpec};
use crate::report::svg::render_band_svg;
use crate::report::{band_csv, manifest_path, to_json, write_atomic, RunManifest};
use crate::solver::scan::{band_scan, symmetric_offsets};
use crate::spectra::forbidden_band;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const VERIFY_WAVELENGTH_NM: f64 = 589.0;
const VERIFY_INTENSITY_W_CM2: f64 = 3.13e12;

#[derive(Debug, Parser)]
#[command(name = "stcrystal", version, about = "Band structure of a charged particle in a standing-wave spacetime lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Forbidden kinetic-energy band at the third-zone edge.
    Gaps(ConfigArgs),
    /// Scan both branches along a third-zone edge and write CSV (and SVG).
    Band(BandArgs),
    /// Zone-edge transfer table.
    Zones(ZonesArgs),
    /// Compare quadrature of the field against the closed-form couplings.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// k = 1/λ
    #[value(name = "paper")]
    Reciprocal,
    /// k = 2π/λ
    #[value(name = "standard")]
    Angular,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormulaArg {
    Literal,
    Chained,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpeciesArg {
    Electron,
    Positron,
    Muon,
    Proton,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EdgeArg {
    #[value(name = "E+")]
    EnergyPlus,
    #[value(name = "E-")]
    EnergyMinus,
    #[value(name = "P+")]
    MomentumPlus,
    #[value(name = "P-")]
    MomentumMinus,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Beam wavelength in nm.
    #[arg(long = "wavelength-nm", allow_hyphen_values = true)]
    wavelength_nm: Option<f64>,
    /// Beam intensity in W/cm².
    #[arg(long = "intensity-W-cm2", allow_hyphen_values = true)]
    intensity_w_cm2: Option<f64>,
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    #[arg(long, value_enum)]
    formula: Option<FormulaArg>,
    #[arg(long, value_enum)]
    species: Option<SpeciesArg>,
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BandArgs {
    #[arg(long, value_enum, default_value = "P+")]
    edge: EdgeArg,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    points: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..))]
    truncation: u32,
    /// Width of the scan window in eV, centred on the degeneracy point.
    /// Defaults to 16β.
    #[arg(long = "span-eV", allow_hyphen_values = true)]
    span_ev: Option<f64>,
    #[arg(long, default_value = "band.csv")]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug, Args)]
struct ZonesArgs {
    #[arg(long = "max-rank", default_value_t = MAX_RANK as i64, allow_hyphen_values = true)]
    max_rank: i64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = QuadratureSpec::DEFAULT_POINTS)]
    points: usize,
    #[command(flatten)]
    config: ConfigArgs,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } => Failure::Numerical(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl ConfigArgs {
    fn resolve(&self, fallback: Option<(f64, f64)>) -> Result<LatticeConfig, Failure> {
        let file: Option<ConfigDocument> = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                Some(
                    serde_json::from_str(&text)
                        .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))?,
                )
            }
            None => None,
        };
        let wavelength = self
            .wavelength_nm
            .or(file.map(|d| d.wavelength_nm))
            .or(fallback.map(|f| f.0))
            .ok_or_else(|| Failure::Usage("--wavelength-nm is required".into()))?;
        let intensity = self
            .intensity_w_cm2
            .or(file.map(|d| d.intensity_w_cm2))
            .or(fallback.map(|f| f.1))
            .ok_or_else(|| Failure::Usage("--intensity-W-cm2 is required".into()))?;
        let convention = match self.convention {
            Some(ConventionArg::Reciprocal) => WavenumberConvention::Reciprocal,
            Some(ConventionArg::Angular) => WavenumberConvention::Angular,
            None => file.map(|d| d.convention).unwrap_or_default(),
        };
        let formula = match self.formula {
            Some(FormulaArg::Literal) => FormulaMode::Literal,
            Some(FormulaArg::Chained) => FormulaMode::Chained,
            None => file.map(|d| d.formula_mode).unwrap_or_default(),
        };
        let species = match self.species {
            Some(SpeciesArg::Electron) => Species::Electron,
            Some(SpeciesArg::Positron) => Species::Positron,
            Some(SpeciesArg::Muon) => Species::Muon,
            Some(SpeciesArg::Proton) => Species::Proton,
            None => file.map(|d| d.species).unwrap_or_default(),
        };
        Ok(make_config(wavelength, intensity, convention, formula, species)?)
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    to_json(value).map_err(|e| Failure::Io(e.to_string()))
}

fn gaps(args: &ConfigArgs) -> Result<(String, i32), Failure> {
    let config = args.resolve(None)?;
    Ok((json(&forbidden_band(&config)?)?, EXIT_OK))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    write_atomic(path, contents).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn band(args: &BandArgs) -> Result<(String, i32), Failure> {
    let config = args.config.resolve(None)?;
    let lines = third_zone_edge_lines(&config);
    let line = lines[match args.edge {
        EdgeArg::EnergyPlus => 0,
        EdgeArg::EnergyMinus => 1,
        EdgeArg::MomentumPlus => 2,
        EdgeArg::MomentumMinus => 3,
    }];
    let span = match args.span_ev {
        Some(s) if s.is_finite() && s >= 0.0 => s,
        Some(s) => return Err(Failure::Usage(format!("--span-eV must be finite and non-negative, got {s}"))),
        None if config.beta() > 0.0 => 16.0 * config.beta(),
        None => 1.0,
    };
    let offsets = symmetric_offsets(args.points as usize, span);
    let table = band_scan(&line, &offsets, args.truncation as usize, &config)?;

    let mut outputs = vec![args.out.clone()];
    let csv = band_csv(&table);
    let svg = args.svg.as_ref().map(|p| {
        outputs.push(p.clone());
        render_band_svg(&table, config.particle_rest_energy())
    });
    write_file(&args.out, csv.as_bytes())?;
    if let (Some(path), Some(svg)) = (&args.svg, svg) {
        write_file(path, svg.as_bytes())?;
    }
    let manifest = RunManifest::new("band", config.document(), outputs);
    write_file(&manifest_path(&args.out), json(&manifest)?.as_bytes())?;
    Ok((format!("wrote {} rows to {}\n", table.rows.len(), args.out.display()), EXIT_OK))
}

fn zones(args: &ZonesArgs) -> Result<(String, i32), Failure> {
    if !(1..=MAX_RANK as i64).contains(&args.max_rank) {
        return Err(Error::RankOutOfRange(args.max_rank).into());
    }
    let table = (1..=args.max_rank).map(zone_edges).collect::<Result<Vec<_>, _>>()?;
    Ok((json(&table)?, EXIT_OK))
}

fn verify(args: &VerifyArgs) -> Result<(String, i32), Failure> {
    let config = args.config.resolve(Some((VERIFY_WAVELENGTH_NM, VERIFY_INTENSITY_W_CM2)))?;
    let spec = QuadratureSpec::square(args.points)?;
    let report = selection_rule_scan(&config, args.samples as usize, args.seed, spec)?;
    let code = if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok((json(&report)?, code))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Gaps(a) => gaps(a),
        Command::Band(a) => band(a),
        Command::Zones(a) => zones(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return EXIT_NUMERICAL;
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(err, "numerical failure: {msg}");
            EXIT_NUMERICAL
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_NUMERICAL
        }
    }
}
