//! The `ebubble` command-line surface.
//!
//! Five subcommands expose the library over reproducible, machine-readable
//! output: `radius`, `critical`, `curve`, `sweep`, and `estimate-gamma`.
//! Command-line flags override values from the config file named by the
//! `EBUBBLE_CONFIG` environment variable; the effective configuration is
//! echoed in a header line of every output.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal cross-check failure,
//! 4 I/O failure.

pub mod config;
mod output;

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::model::{
    critical_point_closed_form, energy_breakdown, equilibrium_radius_zero_pressure,
    estimate_surface_tension, MediumParams,
};
use crate::solvers::critical_pressure_numeric;
use crate::sweep::{
    default_radius_grid, energy_curves, fit_scaling_exponent, gamma_scan, PcColumn, SweepError,
};
use crate::units::{Quantity, Unit};

use config::{
    validate, CommandKind, Effective, GridScale, OutputFormat, RawConfig, CONFIG_ENV_VAR,
};
use output::{fmt_float, CurveBlock, CurveReport, KeyValueReport, SweepReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_CONSISTENCY_FAILURE: i32 = 3;
pub const EXIT_IO_FAILURE: i32 = 4;

/// Closed-form and numeric critical values must agree to this relative
/// tolerance for a zero exit status.
const CRITICAL_AGREEMENT: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "ebubble",
    version,
    about = "Electron-bubble energetics in liquid helium: equilibrium radii, explosion pressures, and energy landscapes"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Zero-pressure equilibrium radius and the energy split there
    Radius(SharedArgs),
    /// Critical (explosion) radius and pressure, closed form vs numeric
    Critical(SharedArgs),
    /// Energy-vs-radius curves for a family of pressures
    Curve(SharedArgs),
    /// Scan surface tensions and fit the critical-pressure scaling exponent
    Sweep(SharedArgs),
    /// Surface tension from a binding energy and an atom spacing
    EstimateGamma(SharedArgs),
}

/// Every flag of the run configuration; commands validate the subset they
/// need. Flags override config-file values.
#[derive(Args, Debug, Default)]
struct SharedArgs {
    /// Surface tension value, in --gamma-unit
    #[arg(long)]
    gamma: Option<f64>,
    /// Unit for --gamma: N_per_m | erg_per_cm2 | eV_per_cm2
    #[arg(long)]
    gamma_unit: Option<String>,
    /// Zero-point model: c1 | exact | infinite_well | custom
    #[arg(long)]
    model: Option<String>,
    /// Coefficient for --model custom
    #[arg(long)]
    coefficient: Option<f64>,
    /// Constant profile: precise | paper_rounded
    #[arg(long)]
    constants: Option<String>,
    /// Ambient pressure(s) in --pressure-unit, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pressure: Option<Vec<f64>>,
    /// Unit for pressures: Pa | bar | dyn_per_cm2
    #[arg(long)]
    pressure_unit: Option<String>,
    /// Radius grid start, in --radius-unit (curve)
    #[arg(long)]
    radius_min: Option<f64>,
    /// Radius grid end, in --radius-unit (curve)
    #[arg(long)]
    radius_max: Option<f64>,
    /// Number of radius grid points (curve)
    #[arg(long)]
    radius_count: Option<usize>,
    /// Grid spacing: linear | log (curve)
    #[arg(long)]
    radius_scale: Option<String>,
    /// Unit for radii in the output: m | cm | angstrom
    #[arg(long)]
    radius_unit: Option<String>,
    /// Unit for energies in the output: J | erg | eV
    #[arg(long)]
    energy_unit: Option<String>,
    /// Output format: csv | json
    #[arg(long)]
    format: Option<String>,
    /// Output path; `-` or omitted writes to standard output
    #[arg(long)]
    output: Option<String>,
    /// Explicit surface-tension list for sweep, in --gamma-unit
    #[arg(long, value_delimiter = ',')]
    gammas: Option<Vec<f64>>,
    /// Log-spaced sweep range start, in --gamma-unit
    #[arg(long)]
    gamma_min: Option<f64>,
    /// Log-spaced sweep range end, in --gamma-unit
    #[arg(long)]
    gamma_max: Option<f64>,
    /// Number of sweep points
    #[arg(long)]
    gamma_count: Option<usize>,
    /// Binding energy per surface atom, in --binding-energy-unit
    #[arg(long)]
    binding_energy: Option<f64>,
    /// Unit for --binding-energy: J | erg | eV
    #[arg(long)]
    binding_energy_unit: Option<String>,
    /// Atom spacing, in --spacing-unit
    #[arg(long)]
    spacing: Option<f64>,
    /// Unit for --spacing: m | cm | angstrom
    #[arg(long)]
    spacing_unit: Option<String>,
}

impl SharedArgs {
    fn into_raw(self) -> RawConfig {
        RawConfig {
            gamma: self.gamma,
            gamma_unit: self.gamma_unit,
            model: self.model,
            coefficient: self.coefficient,
            constants: self.constants,
            pressure: self.pressure,
            pressure_unit: self.pressure_unit,
            radius_min: self.radius_min,
            radius_max: self.radius_max,
            radius_count: self.radius_count,
            radius_scale: self.radius_scale,
            radius_unit: self.radius_unit,
            energy_unit: self.energy_unit,
            format: self.format,
            output: self.output,
            gammas: self.gammas,
            gamma_min: self.gamma_min,
            gamma_max: self.gamma_max,
            gamma_count: self.gamma_count,
            binding_energy: self.binding_energy,
            binding_energy_unit: self.binding_energy_unit,
            spacing: self.spacing,
            spacing_unit: self.spacing_unit,
        }
    }
}

/// A failure that prevents producing output.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }

    fn consistency(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONSISTENCY_FAILURE,
            message: message.into(),
        }
    }
}

/// Entry point for the binary. Parses flags, merges the config file from
/// `EBUBBLE_CONFIG`, dispatches, and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        CliCommand::Radius(a) => (CommandKind::Radius, a),
        CliCommand::Critical(a) => (CommandKind::Critical, a),
        CliCommand::Curve(a) => (CommandKind::Curve, a),
        CliCommand::Sweep(a) => (CommandKind::Sweep, a),
        CliCommand::EstimateGamma(a) => (CommandKind::EstimateGamma, a),
    };

    let file_config = match std::env::var(CONFIG_ENV_VAR) {
        Err(_) => RawConfig::default(),
        Ok(path) => match std::fs::read_to_string(&path) {
            Err(err) => {
                eprintln!("error: cannot read config file `{path}`: {err}");
                return EXIT_INVALID_INPUT;
            }
            Ok(text) => match RawConfig::from_file_text(&text) {
                Ok(cfg) => cfg,
                Err(errors) => {
                    for error in errors {
                        eprintln!("error: {error}");
                    }
                    return EXIT_INVALID_INPUT;
                }
            },
        },
    };

    let raw = file_config.overlay(args.into_raw());
    let effective = match validate(kind, &raw) {
        Ok(effective) => effective,
        Err(errors) => {
            for error in errors {
                eprintln!("error: {error}");
            }
            return EXIT_INVALID_INPUT;
        }
    };

    let (content, exit) = match execute(&effective) {
        Ok(pair) => pair,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            return failure.code;
        }
    };

    if let Err(message) = write_output(&effective.output, &content) {
        eprintln!("error: {message}");
        return EXIT_IO_FAILURE;
    }
    exit
}

fn write_output(target: &Option<String>, content: &str) -> Result<(), String> {
    match target {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|err| format!("cannot write to standard output: {err}"))
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|err| format!("cannot write output file `{path}`: {err}")),
    }
}

fn execute(eff: &Effective) -> Result<(String, i32), Failure> {
    match eff.command {
        CommandKind::Radius => cmd_radius(eff),
        CommandKind::Critical => cmd_critical(eff),
        CommandKind::Curve => cmd_curve(eff),
        CommandKind::Sweep => cmd_sweep(eff),
        CommandKind::EstimateGamma => cmd_estimate_gamma(eff),
    }
}

fn in_unit(value_si: f64, unit: Unit) -> f64 {
    Quantity::from_si(value_si, unit).value()
}

fn float_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| fmt_float(*v))
        .collect::<Vec<_>>()
        .join(",")
}

/// Fixed-order `key=value` pairs describing the effective run configuration.
fn config_echo(eff: &Effective) -> Vec<(String, String)> {
    let mut pairs: Vec<(String, String)> = vec![
        ("command".into(), eff.command.tag().into()),
        ("constants".into(), eff.profile_name.tag().into()),
    ];
    let physics = !matches!(eff.command, CommandKind::EstimateGamma);
    if physics {
        pairs.push(("model".into(), eff.model_tag.clone()));
        pairs.push(("coefficient".into(), fmt_float(eff.coefficient)));
    }
    match eff.command {
        CommandKind::Radius | CommandKind::Critical | CommandKind::Curve => {
            if let Some(gamma) = eff.gamma_display {
                pairs.push(("gamma".into(), fmt_float(gamma)));
            }
            pairs.push(("gamma_unit".into(), eff.gamma_unit.tag().into()));
            pairs.push(("pressure".into(), float_list(&eff.pressures_display)));
            pairs.push(("pressure_unit".into(), eff.pressure_unit.tag().into()));
        }
        CommandKind::Sweep => {
            pairs.push(("gammas".into(), float_list(&eff.sweep_gammas_display)));
            pairs.push(("gamma_unit".into(), eff.gamma_unit.tag().into()));
            pairs.push(("pressure_unit".into(), eff.pressure_unit.tag().into()));
        }
        CommandKind::EstimateGamma => {
            if let Some(e) = eff.binding_energy_display {
                pairs.push(("binding_energy".into(), fmt_float(e)));
            }
            pairs.push((
                "binding_energy_unit".into(),
                eff.binding_energy_unit.tag().into(),
            ));
            if let Some(s) = eff.spacing_display {
                pairs.push(("spacing".into(), fmt_float(s)));
            }
            pairs.push(("spacing_unit".into(), eff.spacing_unit.tag().into()));
        }
    }
    if eff.command == CommandKind::Curve {
        let grid = match eff.grid_spec {
            None => "default".to_string(),
            Some((min, max, n, scale)) => format!(
                "{},{},{},{}",
                fmt_float(min),
                fmt_float(max),
                n,
                match scale {
                    GridScale::Linear => "linear",
                    GridScale::Log => "log",
                }
            ),
        };
        pairs.push(("radius_grid".into(), grid));
    }
    if physics {
        pairs.push(("radius_unit".into(), eff.radius_unit.tag().into()));
        pairs.push(("energy_unit".into(), eff.energy_unit.tag().into()));
    }
    pairs.push(("format".into(), eff.format.tag().into()));
    pairs.push((
        "output".into(),
        eff.output.clone().unwrap_or_else(|| "-".into()),
    ));
    pairs
}

fn render_key_value(eff: &Effective, report: &KeyValueReport) -> String {
    match eff.format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    }
}

fn cmd_radius(eff: &Effective) -> Result<(String, i32), Failure> {
    let gamma = eff.gamma_si.expect("validated");
    let pressure = eff.pressures_si.first().copied().unwrap_or(0.0);
    let a0 = equilibrium_radius_zero_pressure(gamma, &eff.model, &eff.profile)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let medium = MediumParams::new(gamma, pressure).map_err(|e| Failure::invalid(e.to_string()))?;
    let energy = energy_breakdown(a0, &medium, &eff.model, &eff.profile)
        .map_err(|e| Failure::invalid(e.to_string()))?;

    let ru = eff.radius_unit;
    let eu = eff.energy_unit;
    let report = KeyValueReport {
        command: "radius",
        config: config_echo(eff),
        results: vec![
            (format!("a0_{}", ru.tag()), in_unit(a0, ru)),
            (
                format!("zero_point_{}", eu.tag()),
                in_unit(energy.zero_point, eu),
            ),
            (format!("surface_{}", eu.tag()), in_unit(energy.surface, eu)),
            (
                format!("pressure_work_{}", eu.tag()),
                in_unit(energy.pressure_work, eu),
            ),
            (format!("total_{}", eu.tag()), in_unit(energy.total, eu)),
        ],
        comparisons: vec![
            "measured electron-bubble radius in liquid helium is about 17 angstrom".into(),
        ],
    };
    Ok((render_key_value(eff, &report), EXIT_OK))
}

fn cmd_critical(eff: &Effective) -> Result<(String, i32), Failure> {
    let gamma = eff.gamma_si.expect("validated");
    let a0 = equilibrium_radius_zero_pressure(gamma, &eff.model, &eff.profile)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let closed = critical_point_closed_form(gamma, &eff.model, &eff.profile)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let numeric = critical_pressure_numeric(gamma, &eff.model, &eff.profile)
        .map_err(|e| Failure::consistency(e.to_string()))?;

    let gap_radius = ((closed.radius - numeric.radius) / closed.radius).abs();
    let gap_pressure = ((closed.pressure - numeric.pressure) / closed.pressure).abs();
    let agreed = gap_radius < CRITICAL_AGREEMENT && gap_pressure < CRITICAL_AGREEMENT;

    let ru = eff.radius_unit;
    let pu = eff.pressure_unit;
    let report = KeyValueReport {
        command: "critical",
        config: config_echo(eff),
        results: vec![
            (format!("a0_{}", ru.tag()), in_unit(a0, ru)),
            (
                format!("a_critical_closed_{}", ru.tag()),
                in_unit(closed.radius, ru),
            ),
            (
                format!("a_critical_numeric_{}", ru.tag()),
                in_unit(numeric.radius, ru),
            ),
            (
                format!("p_critical_closed_{}", pu.tag()),
                in_unit(closed.pressure, pu),
            ),
            (
                format!("p_critical_numeric_{}", pu.tag()),
                in_unit(numeric.pressure, pu),
            ),
            ("relative_gap_radius".into(), gap_radius),
            ("relative_gap_pressure".into(), gap_pressure),
            ("reduced_x_critical".into(), numeric.reduced.x_critical),
            ("reduced_p_critical".into(), numeric.reduced.p_critical),
            (
                "solver_iterations".into(),
                numeric.reduced.iterations as f64,
            ),
        ],
        comparisons: vec![
            "rounded arithmetic with gamma = 0.004 N/m and C = 1 gives about -64 bar".into(),
            "with gamma = 0.0004 N/m and C = pi^2/2 the estimate is about -2.4 bar".into(),
            "the measured explosion pressure is about -1.6 bar".into(),
        ],
    };
    let exit = if agreed {
        EXIT_OK
    } else {
        EXIT_CONSISTENCY_FAILURE
    };
    Ok((render_key_value(eff, &report), exit))
}

fn cmd_curve(eff: &Effective) -> Result<(String, i32), Failure> {
    let gamma = eff.gamma_si.expect("validated");
    let grid = match &eff.radius_grid_si {
        Some(grid) => grid.clone(),
        None => default_radius_grid(gamma, &eff.model, &eff.profile)
            .map_err(|e| Failure::invalid(e.to_string()))?,
    };
    let table = energy_curves(&grid, &eff.pressures_si, gamma, &eff.model, &eff.profile)
        .map_err(|e| Failure::invalid(e.to_string()))?;

    let ru = eff.radius_unit;
    let eu = eff.energy_unit;
    let blocks = table
        .pressures
        .iter()
        .enumerate()
        .map(|(i, &pressure)| CurveBlock {
            pressure: in_unit(pressure, eff.pressure_unit),
            rows: table
                .radius_grid
                .iter()
                .zip(&table.energies[i])
                .map(|(&radius, energy)| {
                    [
                        in_unit(radius, ru),
                        in_unit(energy.total, eu),
                        in_unit(energy.zero_point, eu),
                        in_unit(energy.surface, eu),
                        in_unit(energy.pressure_work, eu),
                    ]
                })
                .collect(),
        })
        .collect();

    let report = CurveReport {
        config: config_echo(eff),
        columns: [
            format!("radius_{}", ru.tag()),
            format!("U_total_{}", eu.tag()),
            format!("U_zp_{}", eu.tag()),
            format!("U_surf_{}", eu.tag()),
            format!("U_pv_{}", eu.tag()),
        ],
        pressure_key: format!("pressure_{}", eff.pressure_unit.tag()),
        blocks,
    };
    let content = match eff.format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    };
    Ok((content, EXIT_OK))
}

fn cmd_sweep(eff: &Effective) -> Result<(String, i32), Failure> {
    let scan = gamma_scan(&eff.sweep_gammas_si, &eff.model, &eff.profile).map_err(|e| match e {
        SweepError::ConsistencyFailure { .. } => Failure::consistency(e.to_string()),
        SweepError::Solver(_) => Failure::consistency(e.to_string()),
        other => Failure::invalid(other.to_string()),
    })?;
    let exponent_closed = fit_scaling_exponent(&scan, PcColumn::ClosedForm)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let exponent_numeric = fit_scaling_exponent(&scan, PcColumn::Numeric)
        .map_err(|e| Failure::invalid(e.to_string()))?;

    let gu = eff.gamma_unit;
    let ru = eff.radius_unit;
    let pu = eff.pressure_unit;
    let rows = scan
        .rows
        .iter()
        .map(|row| {
            [
                in_unit(row.gamma, gu),
                row.coefficient,
                in_unit(row.a0, ru),
                in_unit(row.a_critical, ru),
                in_unit(row.p_critical_closed, pu),
                in_unit(row.p_critical_numeric, pu),
            ]
        })
        .collect();
    let report = SweepReport {
        config: config_echo(eff),
        columns: [
            format!("gamma_{}", gu.tag()),
            "coefficient".into(),
            format!("a0_{}", ru.tag()),
            format!("a_critical_{}", ru.tag()),
            format!("p_critical_closed_{}", pu.tag()),
            format!("p_critical_numeric_{}", pu.tag()),
        ],
        rows,
        exponent_closed,
        exponent_numeric,
    };
    let content = match eff.format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    };
    Ok((content, EXIT_OK))
}

fn cmd_estimate_gamma(eff: &Effective) -> Result<(String, i32), Failure> {
    let binding_energy = eff.binding_energy_si.expect("validated");
    let spacing = eff.spacing_si.expect("validated");
    let gamma = estimate_surface_tension(binding_energy, spacing)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let report = KeyValueReport {
        command: "estimate-gamma",
        config: config_echo(eff),
        results: vec![
            ("gamma_erg_per_cm2".into(), in_unit(gamma, Unit::ErgPerCm2)),
            ("gamma_N_per_m".into(), in_unit(gamma, Unit::NewtonPerMeter)),
        ],
        comparisons: vec![],
    };
    Ok((render_key_value(eff, &report), EXIT_OK))
}
