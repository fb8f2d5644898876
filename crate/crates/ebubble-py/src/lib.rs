//! Python bindings for the electron-bubble energetics library.
//!
//! Exposes the main operations as plain functions working in SI units
//! (metres, pascals, joules, N/m), plus the dimensionless landscape tools
//! and unit conversion. Build with `cargo build -p ebubble-py --release` and
//! import the produced shared library as `ebubble_py`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ebubble::model::{self, MediumParams, ZeroPointModel};
use ebubble::solvers;
use ebubble::sweep;
use ebubble::units::{self, ProfileName, Quantity, Unit};

fn parse_model(model: &str, coefficient: Option<f64>) -> PyResult<ZeroPointModel> {
    match (model, coefficient) {
        ("c1", None) => Ok(ZeroPointModel::UncertaintyRounded),
        ("exact", None) => Ok(ZeroPointModel::UncertaintyExact),
        ("infinite_well", None) => Ok(ZeroPointModel::InfiniteWell),
        ("custom", Some(c)) => {
            ZeroPointModel::custom(c).map_err(|e| PyValueError::new_err(e.to_string()))
        }
        ("custom", None) => Err(PyValueError::new_err(
            "model 'custom' requires a coefficient",
        )),
        (other, Some(_)) if other != "custom" => Err(PyValueError::new_err(
            "coefficient is only meaningful with model 'custom'",
        )),
        (other, _) => Err(PyValueError::new_err(format!(
            "unknown model '{other}' (expected c1, exact, infinite_well, or custom)"
        ))),
    }
}

fn parse_profile(constants: &str) -> PyResult<units::ConstantProfile> {
    let name: ProfileName = constants
        .parse()
        .map_err(|e: units::UnitError| PyValueError::new_err(e.to_string()))?;
    Ok(units::constants(name))
}

fn check_reduced_pressure(p: f64) -> PyResult<()> {
    let supported = p.is_finite()
        && (p == 0.0
            || (solvers::REDUCED_PRESSURE_MIN_MAGNITUDE..=solvers::REDUCED_PRESSURE_MAX_MAGNITUDE)
                .contains(&p.abs()));
    if supported {
        Ok(())
    } else {
        Err(PyValueError::new_err(format!(
            "reduced pressure {p} outside the supported range (finite, magnitude in [1e-140, 1e9])"
        )))
    }
}

/// Zero-pressure equilibrium bubble radius in metres.
#[pyfunction]
#[pyo3(signature = (gamma, model = "c1", coefficient = None, constants = "precise"))]
fn zero_pressure_radius(
    gamma: f64,
    model: &str,
    coefficient: Option<f64>,
    constants: &str,
) -> PyResult<f64> {
    let zp = parse_model(model, coefficient)?;
    let profile = parse_profile(constants)?;
    model::equilibrium_radius_zero_pressure(gamma, &zp, &profile)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Closed-form critical point as `(radius_m, pressure_pa)`.
#[pyfunction]
#[pyo3(signature = (gamma, model = "c1", coefficient = None, constants = "precise"))]
fn critical_point(
    gamma: f64,
    model: &str,
    coefficient: Option<f64>,
    constants: &str,
) -> PyResult<(f64, f64)> {
    let zp = parse_model(model, coefficient)?;
    let profile = parse_profile(constants)?;
    let cp = model::critical_point_closed_form(gamma, &zp, &profile)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((cp.radius, cp.pressure))
}

/// Critical point from the coalescence solver, as a dict with the reduced
/// solution and its dimensional values.
#[pyfunction]
#[pyo3(signature = (gamma, model = "c1", coefficient = None, constants = "precise"))]
fn critical_point_numeric<'py>(
    py: Python<'py>,
    gamma: f64,
    model: &str,
    coefficient: Option<f64>,
    constants: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let zp = parse_model(model, coefficient)?;
    let profile = parse_profile(constants)?;
    let solution = solvers::critical_pressure_numeric(gamma, &zp, &profile)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = PyDict::new(py);
    out.set_item("radius_m", solution.radius)?;
    out.set_item("pressure_pa", solution.pressure)?;
    out.set_item("x_critical", solution.reduced.x_critical)?;
    out.set_item("p_critical", solution.reduced.p_critical)?;
    out.set_item("iterations", solution.reduced.iterations)?;
    out.set_item("residual_slope", solution.reduced.residual_slope)?;
    out.set_item("residual_curvature", solution.reduced.residual_curvature)?;
    Ok(out)
}

/// Energy contributions at one radius, as a dict in joules.
#[pyfunction]
#[pyo3(signature = (radius, gamma, pressure = 0.0, model = "c1", coefficient = None, constants = "precise"))]
fn energy_breakdown<'py>(
    py: Python<'py>,
    radius: f64,
    gamma: f64,
    pressure: f64,
    model: &str,
    coefficient: Option<f64>,
    constants: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let zp = parse_model(model, coefficient)?;
    let profile = parse_profile(constants)?;
    let medium =
        MediumParams::new(gamma, pressure).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let energy = model::energy_breakdown(radius, &medium, &zp, &profile)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = PyDict::new(py);
    out.set_item("zero_point_j", energy.zero_point)?;
    out.set_item("surface_j", energy.surface)?;
    out.set_item("pressure_work_j", energy.pressure_work)?;
    out.set_item("total_j", energy.total)?;
    Ok(out)
}

/// dU/da and d²U/da² at one radius, as `(first, second)` in SI.
#[pyfunction]
#[pyo3(signature = (radius, gamma, pressure = 0.0, model = "c1", coefficient = None, constants = "precise"))]
fn energy_derivatives(
    radius: f64,
    gamma: f64,
    pressure: f64,
    model: &str,
    coefficient: Option<f64>,
    constants: &str,
) -> PyResult<(f64, f64)> {
    let zp = parse_model(model, coefficient)?;
    let profile = parse_profile(constants)?;
    let medium =
        MediumParams::new(gamma, pressure).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let first = model::energy_first_derivative(radius, &medium, &zp, &profile)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let second = model::energy_second_derivative(radius, &medium, &zp, &profile)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((first, second))
}

/// Surface tension estimate E_bind/d² in N/m from SI inputs.
#[pyfunction]
fn estimate_surface_tension(binding_energy: f64, atom_spacing: f64) -> PyResult<f64> {
    model::estimate_surface_tension(binding_energy, atom_spacing)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Stationary points of the reduced landscape at reduced pressure `p`,
/// as a list of `(x, kind)` with kind one of "minimum", "maximum",
/// "degenerate".
#[pyfunction]
fn stationary_points(p: f64) -> PyResult<Vec<(f64, &'static str)>> {
    check_reduced_pressure(p)?;
    Ok(solvers::find_stationary_points(p)
        .points
        .into_iter()
        .map(|point| {
            let kind = match point.kind {
                solvers::StationaryKind::Minimum => "minimum",
                solvers::StationaryKind::Maximum => "maximum",
                solvers::StationaryKind::Degenerate => "degenerate",
            };
            (point.x, kind)
        })
        .collect())
}

/// Reduced barrier height u(x_max) − u(x_min), or None when no barrier
/// exists.
#[pyfunction]
fn barrier_height(p: f64) -> PyResult<Option<f64>> {
    check_reduced_pressure(p)?;
    Ok(solvers::barrier_height(p))
}

/// The universal reduced critical point `(x_c, p_c)` = (5^(1/4), −8·5^(−5/4)).
#[pyfunction]
fn reduced_critical_point() -> (f64, f64) {
    (
        model::ReducedLandscape::critical_x(),
        model::ReducedLandscape::critical_p(),
    )
}

/// Converts `value` between unit tags of one dimension
/// (e.g. `convert(4.0, "erg_per_cm2", "N_per_m")`).
#[pyfunction]
fn convert(value: f64, from_unit: &str, to_unit: &str) -> PyResult<f64> {
    let from: Unit = from_unit
        .parse()
        .map_err(|e: units::UnitError| PyValueError::new_err(e.to_string()))?;
    let to: Unit = to_unit
        .parse()
        .map_err(|e: units::UnitError| PyValueError::new_err(e.to_string()))?;
    units::convert(Quantity::new(value, from), to)
        .map(|q| q.value())
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Critical pressures over a list of surface tensions, as a dict of columns
/// plus the fitted log-log scaling exponents.
#[pyfunction]
#[pyo3(signature = (gammas, model = "c1", coefficient = None, constants = "precise"))]
fn gamma_scan<'py>(
    py: Python<'py>,
    gammas: Vec<f64>,
    model: &str,
    coefficient: Option<f64>,
    constants: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let zp = parse_model(model, coefficient)?;
    let profile = parse_profile(constants)?;
    let scan = sweep::gamma_scan(&gammas, &zp, &profile)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = PyDict::new(py);
    out.set_item(
        "gamma",
        scan.rows.iter().map(|r| r.gamma).collect::<Vec<_>>(),
    )?;
    out.set_item("a0_m", scan.rows.iter().map(|r| r.a0).collect::<Vec<_>>())?;
    out.set_item(
        "a_critical_m",
        scan.rows.iter().map(|r| r.a_critical).collect::<Vec<_>>(),
    )?;
    out.set_item(
        "p_critical_closed_pa",
        scan.rows
            .iter()
            .map(|r| r.p_critical_closed)
            .collect::<Vec<_>>(),
    )?;
    out.set_item(
        "p_critical_numeric_pa",
        scan.rows
            .iter()
            .map(|r| r.p_critical_numeric)
            .collect::<Vec<_>>(),
    )?;
    if scan.rows.len() >= 3 {
        out.set_item(
            "exponent_closed",
            sweep::fit_scaling_exponent(&scan, sweep::PcColumn::ClosedForm)
                .map_err(|e| PyValueError::new_err(e.to_string()))?,
        )?;
        out.set_item(
            "exponent_numeric",
            sweep::fit_scaling_exponent(&scan, sweep::PcColumn::Numeric)
                .map_err(|e| PyValueError::new_err(e.to_string()))?,
        )?;
    }
    Ok(out)
}

#[pymodule]
fn ebubble_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(zero_pressure_radius, m)?)?;
    m.add_function(wrap_pyfunction!(critical_point, m)?)?;
    m.add_function(wrap_pyfunction!(critical_point_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(energy_breakdown, m)?)?;
    m.add_function(wrap_pyfunction!(energy_derivatives, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_surface_tension, m)?)?;
    m.add_function(wrap_pyfunction!(stationary_points, m)?)?;
    m.add_function(wrap_pyfunction!(barrier_height, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_critical_point, m)?)?;
    m.add_function(wrap_pyfunction!(convert, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_scan, m)?)?;
    Ok(())
}
