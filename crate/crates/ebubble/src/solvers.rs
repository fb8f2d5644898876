//! Numerical machinery independent of the closed forms it validates:
//! stationary-point enumeration on the reduced landscape, critical-pressure
//! location by watching the two extrema coalesce, and finite-difference
//! validation of the analytic derivatives.
//!
//! All root finding happens on the dimensionless form u(x) = x⁻² + x² +
//! (p/3)x³; dimensional answers are scaled out afterwards. The structure of
//! u′ is known: writing g(x) = x³·u′(x) = −2 + 2x⁴ + p·x⁵, g increases up to
//! x\* = −8/(5p) and decreases beyond it (for p < 0), so the sign of g(x\*)
//! decides between two roots, one degenerate root, and none — no blind
//! scanning is needed. The test suite cross-checks against a dense-grid
//! sign-scan oracle that shares none of this structure.

use thiserror::Error;

use crate::fitting::least_squares_slope;
use crate::model::{
    energy_breakdown, energy_first_derivative, energy_second_derivative,
    equilibrium_radius_zero_pressure, MediumParams, ModelError, ReducedLandscape, ZeroPointModel,
};
use crate::units::ConstantProfile;

/// Lower edge of the stationary-point search interval in x.
const X_LOWER: f64 = 1e-2;

/// Supported magnitude range for a nonzero reduced pressure. Outside it the
/// bracket arithmetic over- or underflows f64: below the minimum the barrier
/// root near −2/p has x² beyond the float range, above the maximum the
/// single minimum drops below the search interval.
pub const REDUCED_PRESSURE_MIN_MAGNITUDE: f64 = 1e-140;
pub const REDUCED_PRESSURE_MAX_MAGNITUDE: f64 = 1e9;

/// Bisection terminates once the bracket width drops below this (or the
/// midpoint stops moving).
const BISECTION_WIDTH: f64 = 1e-12;

/// Hard cap on bisection iterations; generous enough for any finite bracket.
const MAX_BISECTION_ITERATIONS: usize = 4096;

/// Number of Newton steps applied after bisection.
const NEWTON_POLISH_STEPS: usize = 3;

/// A stationary point is classified degenerate when |u″| falls below this.
const DEGENERATE_CURVATURE: f64 = 1e-6;

/// Slope tolerance for accepting the tangency point as a degenerate root.
const DEGENERATE_SLOPE: f64 = 1e-12;

/// Initial reduced-pressure bracket for the coalescence search; guaranteed to
/// straddle p_c ≈ −1.07.
const PRESSURE_BRACKET: (f64, f64) = (-2.0, -1e-6);

/// Cap on outer bisection iterations over the pressure.
const MAX_PRESSURE_ITERATIONS: usize = 200;

/// Step sizes for the finite-difference derivative check, as fractions of a₀.
pub const DERIVATIVE_STEP_FRACTIONS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Residual bound a numeric critical solution must satisfy.
const CRITICAL_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("pressure bisection bracket failure: {0}")]
    BracketFailure(String),
    #[error(
        "critical solution residuals exceed {CRITICAL_RESIDUAL:e}: |u'| = {slope:e}, |u''| = {curvature:e}"
    )]
    ResidualExceeded { slope: f64, curvature: f64 },
    #[error("derivative grid must hold at least 3 strictly increasing radii, all larger than the biggest finite-difference step")]
    DegenerateGrid,
}

/// Classification of a root of u′ by the sign of u″ there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryKind {
    Minimum,
    Maximum,
    /// |u″| below [`DEGENERATE_CURVATURE`]; the coalescence point.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    /// Reduced radius of the root.
    pub x: f64,
    pub kind: StationaryKind,
}

/// All positive roots of u′ at one reduced pressure, sorted ascending in x.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryPointSet {
    pub pressure: f64,
    pub points: Vec<StationaryPoint>,
}

/// Converged output of the coalescence search in reduced coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalSolution {
    pub x_critical: f64,
    pub p_critical: f64,
    /// Outer bisection iterations consumed.
    pub iterations: usize,
    /// |u′| at the solution.
    pub residual_slope: f64,
    /// |u″| at the solution.
    pub residual_curvature: f64,
}

/// Reduced critical solution plus its dimensional counterparts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericCriticalPoint {
    pub reduced: CriticalSolution,
    /// Critical radius in m.
    pub radius: f64,
    /// Critical pressure in Pa.
    pub pressure: f64,
}

/// Upper edge of the search interval. For p < 0 the barrier root sits near
/// −2/p (from u′ ≈ 2x + px² at large x), so twice that is a safe cap.
fn search_upper_bound(p: f64) -> f64 {
    if p < 0.0 {
        (4.0 / p.abs()).max(10.0)
    } else {
        10.0
    }
}

/// Bracketed bisection on u′ followed by a fixed number of Newton polish
/// steps. Requires a sign change of u′ across `[lo, hi]`.
fn refine_root(landscape: &ReducedLandscape, mut lo: f64, mut hi: f64) -> f64 {
    let (lo0, hi0) = (lo, hi);
    let mut f_lo = landscape.slope(lo);
    for _ in 0..MAX_BISECTION_ITERATIONS {
        if hi - lo <= BISECTION_WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let f_mid = landscape.slope(mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_lo < 0.0) != (f_mid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_POLISH_STEPS {
        let curvature = landscape.curvature(x);
        if curvature == 0.0 {
            break;
        }
        let next = x - landscape.slope(x) / curvature;
        if !next.is_finite() || next <= lo0 || next >= hi0 {
            break;
        }
        x = next;
    }
    x
}

fn classify(landscape: &ReducedLandscape, x: f64) -> StationaryPoint {
    let curvature = landscape.curvature(x);
    let kind = if curvature.abs() < DEGENERATE_CURVATURE {
        StationaryKind::Degenerate
    } else if curvature > 0.0 {
        StationaryKind::Minimum
    } else {
        StationaryKind::Maximum
    };
    StationaryPoint { x, kind }
}

/// Locates and classifies all positive roots of u′(x) = −2x⁻³ + 2x + p·x².
///
/// The returned points are sorted ascending. An empty set is a valid result
/// (every bubble grows without limit). Two roots that both classify as
/// degenerate have coalesced within floating-point resolution and are merged
/// into a single degenerate point.
///
/// Panics when `p` is not finite or a nonzero `p` has magnitude outside
/// [1e-140, 1e9].
pub fn find_stationary_points(p: f64) -> StationaryPointSet {
    assert!(p.is_finite(), "reduced pressure must be finite");
    assert!(
        p == 0.0
            || (REDUCED_PRESSURE_MIN_MAGNITUDE..=REDUCED_PRESSURE_MAX_MAGNITUDE).contains(&p.abs()),
        "reduced pressure magnitude {} outside the supported range [1e-140, 1e9]",
        p.abs()
    );
    let landscape = ReducedLandscape::new(p);
    let lo = X_LOWER;
    let hi = search_upper_bound(p);

    let points = if p >= 0.0 {
        // u′ rises monotonically through zero exactly once.
        vec![classify(&landscape, refine_root(&landscape, lo, hi))]
    } else {
        // Maximum of g(x) = x³u′(x); its sign decides the root count.
        let x_star = -8.0 / (5.0 * p);
        if x_star <= lo {
            Vec::new()
        } else {
            let slope_at_star = landscape.slope(x_star);
            if slope_at_star > 0.0 {
                let inner = classify(&landscape, refine_root(&landscape, lo, x_star));
                let outer = classify(&landscape, refine_root(&landscape, x_star, hi));
                if inner.kind == StationaryKind::Degenerate
                    && outer.kind == StationaryKind::Degenerate
                {
                    vec![StationaryPoint {
                        x: 0.5 * (inner.x + outer.x),
                        kind: StationaryKind::Degenerate,
                    }]
                } else {
                    vec![inner, outer]
                }
            } else if slope_at_star.abs() < DEGENERATE_SLOPE
                && landscape.curvature(x_star).abs() < DEGENERATE_CURVATURE
            {
                // u′ touches zero without crossing: the coalescence point.
                vec![StationaryPoint {
                    x: x_star,
                    kind: StationaryKind::Degenerate,
                }]
            } else {
                Vec::new()
            }
        }
    };

    StationaryPointSet {
        pressure: p,
        points,
    }
}

/// Energy difference u(x_max) − u(x_min) between the barrier maximum and the
/// metastable minimum.
///
/// `Some(0.0)` at the coalescence point, `None` when no barrier exists
/// (either a single minimum at p ≥ 0, or no stationary points below the
/// critical pressure). Same domain restrictions as
/// [`find_stationary_points`].
pub fn barrier_height(p: f64) -> Option<f64> {
    let set = find_stationary_points(p);
    let landscape = ReducedLandscape::new(p);
    match set.points.as_slice() {
        [inner, outer]
            if inner.kind == StationaryKind::Minimum && outer.kind == StationaryKind::Maximum =>
        {
            Some(landscape.energy(outer.x) - landscape.energy(inner.x))
        }
        [single] if single.kind == StationaryKind::Degenerate => Some(0.0),
        _ => None,
    }
}

/// Locates the critical pressure by bisecting on the reduced pressure with
/// the root-count predicate: above p_c the landscape has two stationary
/// points, below it none.
///
/// Agrees with the closed form to better than 1e-8 relative in both
/// coordinates; the residuals of u′ and u″ at the solution are checked
/// against that tolerance before returning.
pub fn critical_pressure_numeric(
    gamma: f64,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<NumericCriticalPoint, SolverError> {
    let a0 = equilibrium_radius_zero_pressure(gamma, model, constants)?;

    let (mut p_lo, mut p_hi) = PRESSURE_BRACKET;
    let below = find_stationary_points(p_lo);
    let above = find_stationary_points(p_hi);
    if !below.points.is_empty() || above.points.len() != 2 {
        return Err(SolverError::BracketFailure(format!(
            "expected 0 stationary points at p = {p_lo} and 2 at p = {p_hi}, found {} and {}",
            below.points.len(),
            above.points.len()
        )));
    }

    let mut iterations = 0usize;
    let mut coalesced: Option<(f64, f64)> = None;
    for _ in 0..MAX_PRESSURE_ITERATIONS {
        let mid = 0.5 * (p_lo + p_hi);
        if mid == p_lo || mid == p_hi {
            break;
        }
        iterations += 1;
        let set = find_stationary_points(mid);
        match set.points.as_slice() {
            [] => p_lo = mid,
            [single] if single.kind == StationaryKind::Degenerate => {
                coalesced = Some((single.x, mid));
                break;
            }
            _ => p_hi = mid,
        }
    }

    let (x_critical, p_critical) = match coalesced {
        Some(found) => found,
        None => {
            // Midpoint of the two surviving roots on the two-root side: the
            // leading-order asymmetry cancels there.
            let set = find_stationary_points(p_hi);
            let x = match set.points.as_slice() {
                [inner, outer] => 0.5 * (inner.x + outer.x),
                [single] => single.x,
                _ => {
                    return Err(SolverError::BracketFailure(
                        "two-root side of the bracket lost its roots".to_string(),
                    ))
                }
            };
            (x, 0.5 * (p_lo + p_hi))
        }
    };

    let landscape = ReducedLandscape::new(p_critical);
    let residual_slope = landscape.slope(x_critical).abs();
    let residual_curvature = landscape.curvature(x_critical).abs();
    if residual_slope >= CRITICAL_RESIDUAL || residual_curvature >= CRITICAL_RESIDUAL {
        return Err(SolverError::ResidualExceeded {
            slope: residual_slope,
            curvature: residual_curvature,
        });
    }

    let reduced = CriticalSolution {
        x_critical,
        p_critical,
        iterations,
        residual_slope,
        residual_curvature,
    };
    Ok(NumericCriticalPoint {
        reduced,
        radius: x_critical * a0,
        pressure: p_critical * (gamma / a0),
    })
}

/// One derivative order's worth of finite-difference comparison results.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDifferenceCheck {
    /// Per step fraction: max |fd − analytic| over the grid, normalised by
    /// the largest |analytic| on the grid. (A pointwise relative error would
    /// blow up at stationary points.)
    pub max_rel_errors: Vec<f64>,
    /// Least-squares slope of log error vs log step; ≈ 2 for central
    /// differences.
    pub fitted_order: f64,
}

/// Report of [`validate_derivatives`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeReport {
    /// Step sizes used, as fractions of a₀.
    pub step_fractions: Vec<f64>,
    /// Central differences of the total energy against dU/da.
    pub first: FiniteDifferenceCheck,
    /// Central differences of dU/da against d²U/da².
    pub second: FiniteDifferenceCheck,
}

/// Validates the analytic derivatives against central finite differences over
/// `radius_grid`, at steps of 1e-3, 1e-4, and 1e-5 times a₀.
///
/// The first derivative is checked against differences of the total energy;
/// the second against differences of the analytic first derivative, which
/// keeps both checks in the clean O(h²) regime instead of amplifying
/// round-off by h⁻².
pub fn validate_derivatives(
    radius_grid: &[f64],
    medium: &MediumParams,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<DerivativeReport, SolverError> {
    let a0 = equilibrium_radius_zero_pressure(medium.gamma(), model, constants)?;
    let max_step = DERIVATIVE_STEP_FRACTIONS
        .iter()
        .fold(f64::MIN, |acc, f| acc.max(*f))
        * a0;
    let grid_ok = radius_grid.len() >= 3
        && radius_grid.windows(2).all(|w| w[0] < w[1])
        && radius_grid.first().is_some_and(|r| *r > max_step);
    if !grid_ok {
        return Err(SolverError::DegenerateGrid);
    }

    let total = |r: f64| -> Result<f64, SolverError> {
        Ok(energy_breakdown(r, medium, model, constants)?.total)
    };
    let first = |r: f64| -> Result<f64, SolverError> {
        Ok(energy_first_derivative(r, medium, model, constants)?)
    };
    let second = |r: f64| -> Result<f64, SolverError> {
        Ok(energy_second_derivative(r, medium, model, constants)?)
    };

    let mut analytic_first_scale = 0f64;
    let mut analytic_second_scale = 0f64;
    for &r in radius_grid {
        analytic_first_scale = analytic_first_scale.max(first(r)?.abs());
        analytic_second_scale = analytic_second_scale.max(second(r)?.abs());
    }

    let mut first_errors = Vec::with_capacity(DERIVATIVE_STEP_FRACTIONS.len());
    let mut second_errors = Vec::with_capacity(DERIVATIVE_STEP_FRACTIONS.len());
    for fraction in DERIVATIVE_STEP_FRACTIONS {
        let h = fraction * a0;
        let mut worst_first = 0f64;
        let mut worst_second = 0f64;
        for &r in radius_grid {
            let fd1 = (total(r + h)? - total(r - h)?) / (2.0 * h);
            worst_first = worst_first.max((fd1 - first(r)?).abs());
            let fd2 = (first(r + h)? - first(r - h)?) / (2.0 * h);
            worst_second = worst_second.max((fd2 - second(r)?).abs());
        }
        first_errors.push(worst_first / analytic_first_scale);
        second_errors.push(worst_second / analytic_second_scale);
    }

    let log_steps: Vec<f64> = DERIVATIVE_STEP_FRACTIONS.iter().map(|f| f.ln()).collect();
    let order = |errors: &[f64]| {
        let log_errors: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
        least_squares_slope(&log_steps, &log_errors)
    };

    Ok(DerivativeReport {
        step_fractions: DERIVATIVE_STEP_FRACTIONS.to_vec(),
        first: FiniteDifferenceCheck {
            fitted_order: order(&first_errors),
            max_rel_errors: first_errors,
        },
        second: FiniteDifferenceCheck {
            fitted_order: order(&second_errors),
            max_rel_errors: second_errors,
        },
    })
}
