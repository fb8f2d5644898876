//! Batch generation of energy-vs-radius curve families and surface-tension
//! scans that exhibit the γ^(5/4) scaling of the critical pressure.

use thiserror::Error;

use crate::fitting::least_squares_slope;
use crate::model::{
    critical_point_closed_form, energy_breakdown, equilibrium_radius_zero_pressure,
    EnergyBreakdown, MediumParams, ModelError, ZeroPointModel,
};
use crate::solvers::{critical_pressure_numeric, SolverError};
use crate::units::{ConstantProfile, ProfileName};

/// Relative agreement required between the closed-form and numeric critical
/// pressures on every scan row.
pub const SCAN_CONSISTENCY: f64 = 1e-8;

/// Default surface tension (N/m) for the standard curve family.
pub const DEFAULT_CURVE_GAMMA: f64 = 0.0004;

/// Default zero-point model for the standard curve family.
pub const DEFAULT_CURVE_MODEL: ZeroPointModel = ZeroPointModel::InfiniteWell;

/// Default curve-family pressures in bar, ascending. Chosen to straddle the
/// interesting range down to the critical pressure of about −2.3 bar for the
/// default medium.
pub const DEFAULT_CURVE_PRESSURES_BAR: [f64; 6] = [-2.3, -2.0, -1.5, -1.0, -0.5, 0.0];

/// Default radius grid for the standard curve family: linear in
/// [0.5, 12]·a₀ with this many points, wide enough to show the barrier
/// maximum of the least-negative curve.
pub const DEFAULT_CURVE_GRID_POINTS: usize = 241;
pub const DEFAULT_CURVE_GRID_SPAN: (f64, f64) = (0.5, 12.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("radius and pressure grids must be non-empty and strictly increasing")]
    InvalidGrid,
    #[error("energy overflowed at radius {radius} m, pressure {pressure} Pa")]
    NonFiniteEnergy { radius: f64, pressure: f64 },
    #[error("scan needs at least 3 distinct surface tensions, got {0}")]
    TooFewGammas(usize),
    #[error("scaling fit requires a single shared coefficient across rows")]
    MixedCoefficients,
    #[error(
        "closed-form and numeric critical pressures disagree at gamma = {gamma} N/m: relative gap {gap:e}"
    )]
    ConsistencyFailure { gamma: f64, gap: f64 },
}

/// Parameters a curve table was generated with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveMetadata {
    pub gamma: f64,
    pub coefficient: f64,
    pub profile: ProfileName,
}

/// Energy curves over a radius grid, one row per pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    /// Strictly increasing radii in m.
    pub radius_grid: Vec<f64>,
    /// Strictly increasing pressures in Pa.
    pub pressures: Vec<f64>,
    /// `energies[i][j]` is the breakdown at `pressures[i]`, `radius_grid[j]`.
    pub energies: Vec<Vec<EnergyBreakdown>>,
    pub metadata: CurveMetadata,
}

/// One row of a surface-tension scan, all SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub gamma: f64,
    pub coefficient: f64,
    pub a0: f64,
    pub a_critical: f64,
    pub p_critical_closed: f64,
    pub p_critical_numeric: f64,
}

/// Scan rows in input order. Construction enforces closed-vs-numeric
/// agreement to [`SCAN_CONSISTENCY`] on every row.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

/// Which critical-pressure column of a scan to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcColumn {
    ClosedForm,
    Numeric,
}

fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

/// Evaluates the energy breakdown over `radius_grid` for every pressure.
pub fn energy_curves(
    radius_grid: &[f64],
    pressures: &[f64],
    gamma: f64,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<CurveTable, SweepError> {
    if radius_grid.is_empty()
        || pressures.is_empty()
        || !strictly_increasing(radius_grid)
        || !strictly_increasing(pressures)
    {
        return Err(SweepError::InvalidGrid);
    }
    let coefficient = model.coefficient()?;
    let mut energies = Vec::with_capacity(pressures.len());
    for &pressure in pressures {
        let medium = MediumParams::new(gamma, pressure)?;
        let mut row = Vec::with_capacity(radius_grid.len());
        for &radius in radius_grid {
            let breakdown = energy_breakdown(radius, &medium, model, constants)?;
            if !breakdown.total.is_finite() {
                return Err(SweepError::NonFiniteEnergy { radius, pressure });
            }
            row.push(breakdown);
        }
        energies.push(row);
    }
    Ok(CurveTable {
        radius_grid: radius_grid.to_vec(),
        pressures: pressures.to_vec(),
        energies,
        metadata: CurveMetadata {
            gamma,
            coefficient,
            profile: constants.name,
        },
    })
}

/// The default radius grid for the standard curve family, in m.
pub fn default_radius_grid(
    gamma: f64,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<Vec<f64>, SweepError> {
    let a0 = equilibrium_radius_zero_pressure(gamma, model, constants)?;
    let (lo, hi) = DEFAULT_CURVE_GRID_SPAN;
    let n = DEFAULT_CURVE_GRID_POINTS;
    Ok((0..n)
        .map(|i| a0 * (lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .collect())
}

/// Runs the closed form and the coalescence solver over every γ.
pub fn gamma_scan(
    gammas: &[f64],
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<ScanTable, SweepError> {
    let coefficient = model.coefficient()?;
    let mut rows = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let a0 = equilibrium_radius_zero_pressure(gamma, model, constants)?;
        let closed = critical_point_closed_form(gamma, model, constants)?;
        let numeric = critical_pressure_numeric(gamma, model, constants)?;
        let gap = ((closed.pressure - numeric.pressure) / closed.pressure).abs();
        if gap >= SCAN_CONSISTENCY {
            return Err(SweepError::ConsistencyFailure { gamma, gap });
        }
        rows.push(ScanRow {
            gamma,
            coefficient,
            a0,
            a_critical: closed.radius,
            p_critical_closed: closed.pressure,
            p_critical_numeric: numeric.pressure,
        });
    }
    Ok(ScanTable { rows })
}

/// Least-squares slope of log|P_c| against log γ over the scan rows.
///
/// Requires at least three distinct surface tensions and one shared
/// coefficient; the exact power law makes the closed-form column come out as
/// 5/4 to near machine precision.
pub fn fit_scaling_exponent(scan: &ScanTable, column: PcColumn) -> Result<f64, SweepError> {
    let mut distinct: Vec<f64> = Vec::new();
    for row in &scan.rows {
        if !distinct.contains(&row.gamma) {
            distinct.push(row.gamma);
        }
    }
    if distinct.len() < 3 {
        return Err(SweepError::TooFewGammas(distinct.len()));
    }
    if scan
        .rows
        .windows(2)
        .any(|w| w[0].coefficient != w[1].coefficient)
    {
        return Err(SweepError::MixedCoefficients);
    }
    let log_gamma: Vec<f64> = scan.rows.iter().map(|r| r.gamma.ln()).collect();
    let log_pc: Vec<f64> = scan
        .rows
        .iter()
        .map(|r| {
            match column {
                PcColumn::ClosedForm => r.p_critical_closed,
                PcColumn::Numeric => r.p_critical_numeric,
            }
            .abs()
            .ln()
        })
        .collect();
    Ok(least_squares_slope(&log_gamma, &log_pc))
}

/// Kind of a discrete interior extremum of a sampled curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridExtremum {
    Minimum,
    Maximum,
}

/// Indices of strict interior extrema of a sampled curve.
pub fn interior_extrema(values: &[f64]) -> Vec<(usize, GridExtremum)> {
    let mut found = Vec::new();
    for i in 1..values.len().saturating_sub(1) {
        if values[i] < values[i - 1] && values[i] < values[i + 1] {
            found.push((i, GridExtremum::Minimum));
        } else if values[i] > values[i - 1] && values[i] > values[i + 1] {
            found.push((i, GridExtremum::Maximum));
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::constants;
    use approx::assert_relative_eq;

    fn precise() -> ConstantProfile {
        constants(ProfileName::Precise)
    }

    fn totals(table: &CurveTable, row: usize) -> Vec<f64> {
        table.energies[row].iter().map(|e| e.total).collect()
    }

    #[test]
    fn zero_pressure_curve_has_minimum_nearest_a0() {
        let model = DEFAULT_CURVE_MODEL;
        let profile = precise();
        let grid = default_radius_grid(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let table = energy_curves(&grid, &[0.0], DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let row = totals(&table, 0);
        let argmin = row
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        let a0 = equilibrium_radius_zero_pressure(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let nearest = grid
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - a0).abs().total_cmp(&(b.1 - a0).abs()))
            .unwrap()
            .0;
        assert_eq!(argmin, nearest);
        let extrema = interior_extrema(&row);
        assert_eq!(extrema.len(), 1);
        assert_eq!(extrema[0].1, GridExtremum::Minimum);
    }

    #[test]
    fn intermediate_pressures_show_minimum_then_maximum() {
        let model = DEFAULT_CURVE_MODEL;
        let profile = precise();
        let grid = default_radius_grid(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let pressures_pa: Vec<f64> = [-2.0, -1.5, -1.0, -0.5]
            .iter()
            .map(|bar| bar * 1e5)
            .collect();
        let table =
            energy_curves(&grid, &pressures_pa, DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        for (row_idx, pressure) in pressures_pa.iter().enumerate() {
            let extrema = interior_extrema(&totals(&table, row_idx));
            assert_eq!(
                extrema.len(),
                2,
                "pressure {} bar: {extrema:?}",
                pressure / 1e5
            );
            assert_eq!(extrema[0].1, GridExtremum::Minimum);
            assert_eq!(extrema[1].1, GridExtremum::Maximum);
            assert!(extrema[0].0 < extrema[1].0);
        }
    }

    #[test]
    fn critical_pressure_curve_is_monotone_plateau() {
        let model = DEFAULT_CURVE_MODEL;
        let profile = precise();
        let cp = critical_point_closed_form(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let grid = default_radius_grid(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let table =
            energy_curves(&grid, &[cp.pressure], DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        // At the coalescence pressure the slope only touches zero, so the
        // sampled curve has no interior extrema at all.
        assert!(interior_extrema(&totals(&table, 0)).is_empty());
    }

    #[test]
    fn below_critical_curve_decreases_everywhere() {
        let model = DEFAULT_CURVE_MODEL;
        let profile = precise();
        let cp = critical_point_closed_form(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let grid = default_radius_grid(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let table = energy_curves(
            &grid,
            &[1.1 * cp.pressure],
            DEFAULT_CURVE_GAMMA,
            &model,
            &profile,
        )
        .unwrap();
        let row = totals(&table, 0);
        assert!(row.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn grid_refinement_keeps_extremum_counts() {
        let model = DEFAULT_CURVE_MODEL;
        let profile = precise();
        let a0 = equilibrium_radius_zero_pressure(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let gamma_over_a0 = DEFAULT_CURVE_GAMMA / a0;
        // Reduced pressures comfortably inside (p_c + 1e-3, -1e-3).
        for reduced_p in [-1.0, -0.5, -0.2, -0.05, -0.002] {
            let pressure = reduced_p * gamma_over_a0;
            let counts: Vec<usize> = [DEFAULT_CURVE_GRID_POINTS, 2 * DEFAULT_CURVE_GRID_POINTS]
                .iter()
                .map(|&n| {
                    let grid: Vec<f64> = (0..n)
                        .map(|i| a0 * (0.5 + 11.5 * i as f64 / (n - 1) as f64))
                        .collect();
                    let table =
                        energy_curves(&grid, &[pressure], DEFAULT_CURVE_GAMMA, &model, &profile)
                            .unwrap();
                    interior_extrema(&totals(&table, 0)).len()
                })
                .collect();
            assert_eq!(counts[0], counts[1], "reduced p = {reduced_p}");
        }
    }

    #[test]
    fn energy_curves_rejects_bad_grids() {
        let model = DEFAULT_CURVE_MODEL;
        let profile = precise();
        assert_eq!(
            energy_curves(&[], &[0.0], 0.0004, &model, &profile),
            Err(SweepError::InvalidGrid)
        );
        assert_eq!(
            energy_curves(&[1e-10, 2e-10], &[], 0.0004, &model, &profile),
            Err(SweepError::InvalidGrid)
        );
        assert_eq!(
            energy_curves(&[2e-10, 1e-10], &[0.0], 0.0004, &model, &profile),
            Err(SweepError::InvalidGrid)
        );
        assert_eq!(
            energy_curves(&[1e-10, 2e-10], &[0.0, 0.0], 0.0004, &model, &profile),
            Err(SweepError::InvalidGrid)
        );
    }

    #[test]
    fn scan_reproduces_reference_pressures() {
        let profile = precise();
        let scan1 = gamma_scan(&[0.004], &ZeroPointModel::UncertaintyRounded, &profile).unwrap();
        assert_eq!(scan1.rows.len(), 1);
        let row = &scan1.rows[0];
        assert_relative_eq!(
            row.p_critical_closed / 1e5,
            -60.966_197,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            row.a_critical / row.a0,
            5f64.powf(0.25),
            max_relative = 1e-12
        );

        let scan2 = gamma_scan(&[0.0004], &ZeroPointModel::InfiniteWell, &profile).unwrap();
        assert_relative_eq!(
            scan2.rows[0].p_critical_closed / 1e5,
            -2.300_232_1,
            max_relative = 1e-6
        );
    }

    #[test]
    fn doubling_gamma_scales_critical_pressure() {
        let profile = precise();
        let scan = gamma_scan(
            &[0.002, 0.004],
            &ZeroPointModel::UncertaintyRounded,
            &profile,
        )
        .unwrap();
        let ratio = scan.rows[1].p_critical_closed / scan.rows[0].p_critical_closed;
        assert_relative_eq!(ratio, 2f64.powf(1.25), max_relative = 1e-10);
    }

    #[test]
    fn scan_rejects_nonpositive_gamma() {
        let profile = precise();
        assert!(matches!(
            gamma_scan(
                &[0.004, -0.001],
                &ZeroPointModel::UncertaintyRounded,
                &profile
            ),
            Err(SweepError::Model(_))
        ));
    }

    #[test]
    fn exponent_fit_closed_and_numeric() {
        let profile = precise();
        let gammas: Vec<f64> = (0..7).map(|i| 1e-4 * 10f64.powf(i as f64 / 3.0)).collect();
        let scan = gamma_scan(&gammas, &ZeroPointModel::UncertaintyRounded, &profile).unwrap();
        let closed = fit_scaling_exponent(&scan, PcColumn::ClosedForm).unwrap();
        assert!((closed - 1.25).abs() < 1e-10, "closed exponent {closed}");
        let numeric = fit_scaling_exponent(&scan, PcColumn::Numeric).unwrap();
        assert!((numeric - 1.25).abs() < 1e-6, "numeric exponent {numeric}");
    }

    #[test]
    fn exponent_fit_preconditions() {
        let profile = precise();
        let scan = gamma_scan(
            &[0.001, 0.004],
            &ZeroPointModel::UncertaintyRounded,
            &profile,
        )
        .unwrap();
        assert_eq!(
            fit_scaling_exponent(&scan, PcColumn::ClosedForm),
            Err(SweepError::TooFewGammas(2))
        );

        // Mixed coefficients are rejected.
        let mut mixed = gamma_scan(
            &[0.001, 0.002, 0.004],
            &ZeroPointModel::UncertaintyRounded,
            &profile,
        )
        .unwrap();
        mixed.rows[2].coefficient = 2.0;
        assert_eq!(
            fit_scaling_exponent(&mixed, PcColumn::ClosedForm),
            Err(SweepError::MixedCoefficients)
        );
    }

    #[test]
    fn tables_are_reproducible() {
        let model = DEFAULT_CURVE_MODEL;
        let profile = precise();
        let grid = default_radius_grid(DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let pressures = [-1e5, 0.0];
        let a = energy_curves(&grid, &pressures, DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        let b = energy_curves(&grid, &pressures, DEFAULT_CURVE_GAMMA, &model, &profile).unwrap();
        assert_eq!(a, b);
        let scan_a = gamma_scan(&[0.001, 0.002], &model, &profile).unwrap();
        let scan_b = gamma_scan(&[0.001, 0.002], &model, &profile).unwrap();
        assert_eq!(scan_a, scan_b);
    }

    #[test]
    fn interior_extrema_on_known_shapes() {
        assert!(interior_extrema(&[3.0, 2.0, 1.0]).is_empty());
        assert_eq!(
            interior_extrema(&[3.0, 1.0, 2.0]),
            vec![(1, GridExtremum::Minimum)]
        );
        assert_eq!(
            interior_extrema(&[1.0, 4.0, 2.0, 3.0, 1.0]),
            vec![
                (1, GridExtremum::Maximum),
                (2, GridExtremum::Minimum),
                (3, GridExtremum::Maximum),
            ]
        );
        assert!(interior_extrema(&[1.0]).is_empty());
        assert!(interior_extrema(&[]).is_empty());
    }
}
