//! Run configuration: flat `key = value` config files, flag overlay, and
//! all-at-once validation into per-command effective settings.

use std::str::FromStr;

use crate::model::ZeroPointModel;
use crate::sweep;
use crate::units::{constants, ConstantProfile, Dimension, ProfileName, Unit};

/// Environment variable that may point at a config file.
pub const CONFIG_ENV_VAR: &str = "EBUBBLE_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn tag(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    Linear,
    Log,
}

impl GridScale {
    pub fn tag(self) -> &'static str {
        match self {
            GridScale::Linear => "linear",
            GridScale::Log => "log",
        }
    }
}

/// Which subcommand is being validated; decides the required fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Radius,
    Critical,
    Curve,
    Sweep,
    EstimateGamma,
}

impl CommandKind {
    pub fn tag(self) -> &'static str {
        match self {
            CommandKind::Radius => "radius",
            CommandKind::Critical => "critical",
            CommandKind::Curve => "curve",
            CommandKind::Sweep => "sweep",
            CommandKind::EstimateGamma => "estimate-gamma",
        }
    }
}

/// Raw configuration before validation: config-file values overlaid by flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub gamma: Option<f64>,
    pub gamma_unit: Option<String>,
    pub model: Option<String>,
    pub coefficient: Option<f64>,
    pub constants: Option<String>,
    pub pressure: Option<Vec<f64>>,
    pub pressure_unit: Option<String>,
    pub radius_min: Option<f64>,
    pub radius_max: Option<f64>,
    pub radius_count: Option<usize>,
    pub radius_scale: Option<String>,
    pub radius_unit: Option<String>,
    pub energy_unit: Option<String>,
    pub format: Option<String>,
    pub output: Option<String>,
    pub gammas: Option<Vec<f64>>,
    pub gamma_min: Option<f64>,
    pub gamma_max: Option<f64>,
    pub gamma_count: Option<usize>,
    pub binding_energy: Option<f64>,
    pub binding_energy_unit: Option<String>,
    pub spacing: Option<f64>,
    pub spacing_unit: Option<String>,
}

impl RawConfig {
    /// Parses a flat `key = value` file (`#` starts a comment). All problems
    /// are collected rather than stopping at the first.
    pub fn from_file_text(text: &str) -> Result<RawConfig, Vec<String>> {
        let mut cfg = RawConfig::default();
        let mut errors = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                errors.push(format!("config line {line_no}: expected `key = value`"));
                continue;
            };
            let key = key.trim();
            let value = value.trim();
            if let Err(message) = cfg.set(key, value) {
                errors.push(format!("config line {line_no}: {message}"));
            }
        }
        if errors.is_empty() {
            Ok(cfg)
        } else {
            Err(errors)
        }
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn float(value: &str) -> Result<f64, String> {
            value
                .parse::<f64>()
                .map_err(|_| format!("`{value}` is not a number"))
        }
        fn count(value: &str) -> Result<usize, String> {
            value
                .parse::<usize>()
                .map_err(|_| format!("`{value}` is not a count"))
        }
        fn float_list(value: &str) -> Result<Vec<f64>, String> {
            value.split(',').map(|item| float(item.trim())).collect()
        }
        match key {
            "gamma" => self.gamma = Some(float(value)?),
            "gamma_unit" => self.gamma_unit = Some(value.to_string()),
            "model" => self.model = Some(value.to_string()),
            "coefficient" => self.coefficient = Some(float(value)?),
            "constants" => self.constants = Some(value.to_string()),
            "pressure" => self.pressure = Some(float_list(value)?),
            "pressure_unit" => self.pressure_unit = Some(value.to_string()),
            "radius_min" => self.radius_min = Some(float(value)?),
            "radius_max" => self.radius_max = Some(float(value)?),
            "radius_count" => self.radius_count = Some(count(value)?),
            "radius_scale" => self.radius_scale = Some(value.to_string()),
            "radius_unit" => self.radius_unit = Some(value.to_string()),
            "energy_unit" => self.energy_unit = Some(value.to_string()),
            "format" => self.format = Some(value.to_string()),
            "output" => self.output = Some(value.to_string()),
            "gammas" => self.gammas = Some(float_list(value)?),
            "gamma_min" => self.gamma_min = Some(float(value)?),
            "gamma_max" => self.gamma_max = Some(float(value)?),
            "gamma_count" => self.gamma_count = Some(count(value)?),
            "binding_energy" => self.binding_energy = Some(float(value)?),
            "binding_energy_unit" => self.binding_energy_unit = Some(value.to_string()),
            "spacing" => self.spacing = Some(float(value)?),
            "spacing_unit" => self.spacing_unit = Some(value.to_string()),
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// Returns `overrides` applied on top of `self` (flags beat config file).
    pub fn overlay(mut self, overrides: RawConfig) -> RawConfig {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if overrides.$field.is_some() { self.$field = overrides.$field; })*
            };
        }
        take!(
            gamma,
            gamma_unit,
            model,
            coefficient,
            constants,
            pressure,
            pressure_unit,
            radius_min,
            radius_max,
            radius_count,
            radius_scale,
            radius_unit,
            energy_unit,
            format,
            output,
            gammas,
            gamma_min,
            gamma_max,
            gamma_count,
            binding_energy,
            binding_energy_unit,
            spacing,
            spacing_unit
        );
        self
    }
}

/// Fully validated settings for one command invocation. Every value is
/// resolved, converted to SI where physical, and guaranteed usable.
#[derive(Debug, Clone)]
pub struct Effective {
    pub command: CommandKind,
    pub profile_name: ProfileName,
    pub profile: ConstantProfile,
    pub model: ZeroPointModel,
    pub model_tag: String,
    pub coefficient: f64,
    /// Surface tension in N/m (commands that need one).
    pub gamma_si: Option<f64>,
    /// The same value in `gamma_unit`, for the config echo.
    pub gamma_display: Option<f64>,
    pub gamma_unit: Unit,
    /// Pressures in Pa, command-dependent default.
    pub pressures_si: Vec<f64>,
    pub pressures_display: Vec<f64>,
    pub pressure_unit: Unit,
    /// Explicit radius grid in m, when one was requested.
    pub radius_grid_si: Option<Vec<f64>>,
    pub grid_spec: Option<(f64, f64, usize, GridScale)>,
    pub radius_unit: Unit,
    pub energy_unit: Unit,
    pub format: OutputFormat,
    /// `None` means standard output.
    pub output: Option<String>,
    /// Sweep surface tensions in N/m.
    pub sweep_gammas_si: Vec<f64>,
    pub sweep_gammas_display: Vec<f64>,
    /// Binding energy in J and spacing in m for the estimator.
    pub binding_energy_si: Option<f64>,
    pub binding_energy_display: Option<f64>,
    pub binding_energy_unit: Unit,
    pub spacing_si: Option<f64>,
    pub spacing_display: Option<f64>,
    pub spacing_unit: Unit,
}

fn resolve_unit(
    raw: &Option<String>,
    default: Unit,
    dimension: Dimension,
    flag: &str,
    errors: &mut Vec<String>,
) -> Unit {
    match raw {
        None => default,
        Some(tag) => match Unit::from_str(tag) {
            Ok(unit) if unit.dimension() == dimension => unit,
            Ok(unit) => {
                errors.push(format!(
                    "--{flag}: `{tag}` is a {} unit, expected {dimension}",
                    unit.dimension()
                ));
                default
            }
            Err(_) => {
                errors.push(format!("--{flag}: unknown unit tag `{tag}`"));
                default
            }
        },
    }
}

/// Validates `raw` for `command`, reporting every problem at once.
pub fn validate(command: CommandKind, raw: &RawConfig) -> Result<Effective, Vec<String>> {
    let mut errors = Vec::new();

    let profile_name = match raw.constants.as_deref() {
        None => ProfileName::Precise,
        Some(tag) => match tag.parse::<ProfileName>() {
            Ok(name) => name,
            Err(_) => {
                errors.push(format!(
                    "--constants: unknown profile `{tag}` (expected precise or paper_rounded)"
                ));
                ProfileName::Precise
            }
        },
    };
    let profile = constants(profile_name);

    // Zero-point model. The curve command defaults to the standard family's
    // infinite-well model; everything else defaults to c1.
    let default_model = if command == CommandKind::Curve {
        "infinite_well"
    } else {
        "c1"
    };
    let model_tag = raw
        .model
        .clone()
        .unwrap_or_else(|| default_model.to_string());
    let model = match model_tag.as_str() {
        "c1" => Some(ZeroPointModel::UncertaintyRounded),
        "exact" => Some(ZeroPointModel::UncertaintyExact),
        "infinite_well" => Some(ZeroPointModel::InfiniteWell),
        "custom" => match raw.coefficient {
            Some(c) => match ZeroPointModel::custom(c) {
                Ok(model) => Some(model),
                Err(_) => {
                    errors.push(format!(
                        "--coefficient: must be positive and finite, got {c}"
                    ));
                    None
                }
            },
            None => {
                errors.push("--model custom requires --coefficient".to_string());
                None
            }
        },
        other => {
            errors.push(format!(
                "--model: unknown kind `{other}` (expected c1, exact, infinite_well, or custom)"
            ));
            None
        }
    };
    if model_tag != "custom" && raw.coefficient.is_some() {
        errors.push("--coefficient is only meaningful with --model custom".to_string());
    }

    let gamma_unit = resolve_unit(
        &raw.gamma_unit,
        Unit::NewtonPerMeter,
        Dimension::SurfaceTension,
        "gamma-unit",
        &mut errors,
    );
    let pressure_unit = resolve_unit(
        &raw.pressure_unit,
        Unit::Bar,
        Dimension::Pressure,
        "pressure-unit",
        &mut errors,
    );
    let radius_unit = resolve_unit(
        &raw.radius_unit,
        Unit::Angstrom,
        Dimension::Length,
        "radius-unit",
        &mut errors,
    );
    let energy_unit = resolve_unit(
        &raw.energy_unit,
        Unit::ElectronVolt,
        Dimension::Energy,
        "energy-unit",
        &mut errors,
    );
    let binding_energy_unit = resolve_unit(
        &raw.binding_energy_unit,
        Unit::ElectronVolt,
        Dimension::Energy,
        "binding-energy-unit",
        &mut errors,
    );
    let spacing_unit = resolve_unit(
        &raw.spacing_unit,
        Unit::Angstrom,
        Dimension::Length,
        "spacing-unit",
        &mut errors,
    );

    let format = match raw.format.as_deref() {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            errors.push(format!("--format: expected csv or json, got `{other}`"));
            OutputFormat::Csv
        }
    };

    // Surface tension: required for radius/critical, defaulted for curve,
    // unused by sweep (which takes a list) and the estimator.
    let needs_gamma = matches!(command, CommandKind::Radius | CommandKind::Critical);
    let gamma_value = match (raw.gamma, command) {
        (Some(g), _) => Some(g),
        (None, CommandKind::Curve) => {
            // Express the default in the configured unit before converting
            // back, so the echoed config stays truthful.
            Some(sweep::DEFAULT_CURVE_GAMMA / gamma_unit.si_factor())
        }
        (None, _) => None,
    };
    if needs_gamma && gamma_value.is_none() {
        errors.push("missing required flag --gamma (config key `gamma`)".to_string());
    }
    let gamma_si = gamma_value.map(|g| g * gamma_unit.si_factor());
    if let Some(g) = gamma_si {
        if g <= 0.0 || !g.is_finite() {
            errors.push(format!(
                "--gamma: surface tension must be positive and finite, got {g} N/m"
            ));
        }
    }

    // Pressures.
    let pressures_display = match (&raw.pressure, command) {
        (Some(list), _) => list.clone(),
        (None, CommandKind::Curve) => {
            let factor = Unit::Bar.si_factor() / pressure_unit.si_factor();
            sweep::DEFAULT_CURVE_PRESSURES_BAR
                .iter()
                .map(|bar| bar * factor)
                .collect()
        }
        (None, _) => vec![0.0],
    };
    match command {
        CommandKind::Radius | CommandKind::Critical => {
            if pressures_display.len() > 1 {
                errors.push(format!(
                    "{} takes a single pressure, got {}",
                    command.tag(),
                    pressures_display.len()
                ));
            }
        }
        CommandKind::Curve => {
            if pressures_display.is_empty() {
                errors.push("--pressure: need at least one value".to_string());
            }
            if !pressures_display.windows(2).all(|w| w[0] < w[1]) {
                errors.push("--pressure: values must be strictly increasing".to_string());
            }
        }
        _ => {}
    }
    if pressures_display.iter().any(|p| !p.is_finite()) {
        errors.push("--pressure: values must be finite".to_string());
    }
    let pressures_si: Vec<f64> = pressures_display
        .iter()
        .map(|p| p * pressure_unit.si_factor())
        .collect();

    // Radius grid (curve only). Either all of min/max/count or none.
    let mut radius_grid_si = None;
    let mut grid_spec = None;
    if command == CommandKind::Curve {
        let any_given =
            raw.radius_min.is_some() || raw.radius_max.is_some() || raw.radius_count.is_some();
        if any_given {
            let scale = match raw.radius_scale.as_deref() {
                None | Some("linear") => GridScale::Linear,
                Some("log") => GridScale::Log,
                Some(other) => {
                    errors.push(format!(
                        "--radius-scale: expected linear or log, got `{other}`"
                    ));
                    GridScale::Linear
                }
            };
            match (raw.radius_min, raw.radius_max, raw.radius_count) {
                (Some(min), Some(max), Some(n)) => {
                    if !min.is_finite() || !max.is_finite() || min >= max {
                        errors.push(format!(
                            "--radius-min/--radius-max: need finite min < max, got {min}, {max}"
                        ));
                    }
                    if n < 2 {
                        errors.push(format!("--radius-count: need at least 2 points, got {n}"));
                    }
                    if min <= 0.0 {
                        errors.push(format!("--radius-min: must be positive, got {min}"));
                    }
                    if errors.is_empty() {
                        let factor = radius_unit.si_factor();
                        let grid: Vec<f64> = match scale {
                            GridScale::Linear => (0..n)
                                .map(|i| factor * (min + (max - min) * i as f64 / (n - 1) as f64))
                                .collect(),
                            GridScale::Log => {
                                let (ln_min, ln_max) = (min.ln(), max.ln());
                                (0..n)
                                    .map(|i| {
                                        factor
                                            * (ln_min
                                                + (ln_max - ln_min) * i as f64 / (n - 1) as f64)
                                                .exp()
                                    })
                                    .collect()
                            }
                        };
                        radius_grid_si = Some(grid);
                    }
                    grid_spec = Some((min, max, n, scale));
                }
                _ => errors.push(
                    "--radius-min, --radius-max, and --radius-count must be given together"
                        .to_string(),
                ),
            }
        }
    }

    // Sweep gamma list: explicit list wins over a log-spaced range.
    let mut sweep_gammas_si = Vec::new();
    let mut sweep_gammas_display = Vec::new();
    if command == CommandKind::Sweep {
        let display: Vec<f64> = if let Some(list) = &raw.gammas {
            list.clone()
        } else {
            match (raw.gamma_min, raw.gamma_max, raw.gamma_count) {
                (Some(min), Some(max), Some(n)) => {
                    if !min.is_finite() || !max.is_finite() || min <= 0.0 || min >= max {
                        errors.push(format!(
                            "--gamma-min/--gamma-max: need finite 0 < min < max, got {min}, {max}"
                        ));
                        Vec::new()
                    } else if n < 3 {
                        errors.push(format!("--gamma-count: need at least 3, got {n}"));
                        Vec::new()
                    } else {
                        let (ln_min, ln_max) = (min.ln(), max.ln());
                        (0..n)
                            .map(|i| (ln_min + (ln_max - ln_min) * i as f64 / (n - 1) as f64).exp())
                            .collect()
                    }
                }
                _ => {
                    errors.push(
                        "sweep needs --gammas or all of --gamma-min, --gamma-max, --gamma-count"
                            .to_string(),
                    );
                    Vec::new()
                }
            }
        };
        if !display.is_empty() {
            let mut distinct: Vec<f64> = Vec::new();
            for g in &display {
                if !distinct.contains(g) {
                    distinct.push(*g);
                }
            }
            if distinct.len() < 3 {
                errors.push(format!(
                    "sweep needs at least 3 distinct surface tensions, got {}",
                    distinct.len()
                ));
            }
            for g in &display {
                if *g <= 0.0 || !g.is_finite() {
                    errors.push(format!("--gammas: values must be positive, got {g}"));
                    break;
                }
            }
        }
        sweep_gammas_si = display.iter().map(|g| g * gamma_unit.si_factor()).collect();
        sweep_gammas_display = display;
    }

    // Estimator inputs.
    let mut binding_energy_si = None;
    let mut spacing_si = None;
    if command == CommandKind::EstimateGamma {
        match raw.binding_energy {
            Some(e) if e >= 0.0 && e.is_finite() => {
                binding_energy_si = Some(e * binding_energy_unit.si_factor());
            }
            Some(e) => errors.push(format!(
                "--binding-energy: must be non-negative and finite, got {e}"
            )),
            None => errors.push(
                "missing required flag --binding-energy (config key `binding_energy`)".to_string(),
            ),
        }
        match raw.spacing {
            Some(s) if s > 0.0 && s.is_finite() => {
                spacing_si = Some(s * spacing_unit.si_factor());
            }
            Some(s) => errors.push(format!("--spacing: must be positive and finite, got {s}")),
            None => {
                errors.push("missing required flag --spacing (config key `spacing`)".to_string())
            }
        }
    }

    let output = match raw.output.as_deref() {
        None | Some("-") => None,
        Some(path) => Some(path.to_string()),
    };

    if !errors.is_empty() {
        return Err(errors);
    }
    let model = model.expect("model errors already collected");
    let coefficient = model.coefficient().expect("validated above");
    Ok(Effective {
        command,
        profile_name,
        profile,
        model,
        model_tag,
        coefficient,
        gamma_si,
        gamma_display: gamma_value,
        gamma_unit,
        pressures_si,
        pressures_display,
        pressure_unit,
        radius_grid_si,
        grid_spec,
        radius_unit,
        energy_unit,
        format,
        output,
        sweep_gammas_si,
        sweep_gammas_display,
        binding_energy_si,
        binding_energy_display: raw.binding_energy,
        binding_energy_unit,
        spacing_si,
        spacing_display: raw.spacing,
        spacing_unit,
    })
}
