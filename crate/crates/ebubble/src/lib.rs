//! Energy-minimisation model of an electron bubble in liquid helium.
//!
//! A low-energy electron injected into the liquid opens a cavity that is
//! stabilised by its zero-point pressure against surface tension. This crate
//! computes the equilibrium bubble radius, the energy-vs-radius landscape at
//! arbitrary ambient pressure, and the negative (spinodal) pressure at which
//! the landscape loses its minimum and every bubble grows without limit.
//! Closed forms are cross-validated by an independent coalescence solver.
//!
//! - [`units`]: dimension-tagged quantities and the two constant profiles
//! - [`model`]: the energy functional, derivatives, and closed forms
//! - [`solvers`]: stationary-point enumeration and the coalescence search
//! - [`sweep`]: curve families and scaling-law scans
//! - [`cli`]: the `ebubble` command-line surface

pub mod cli;
mod fitting;
pub mod model;
pub mod solvers;
pub mod sweep;
pub mod units;

pub use model::{
    critical_point_closed_form, energy_breakdown, energy_first_derivative,
    energy_second_derivative, equilibrium_radius_zero_pressure, estimate_surface_tension,
    nondimensionalize, CriticalPoint, DimensionlessState, EnergyBreakdown, MediumParams,
    ModelError, ReducedLandscape, ZeroPointModel,
};
pub use solvers::{
    barrier_height, critical_pressure_numeric, find_stationary_points, validate_derivatives,
    CriticalSolution, DerivativeReport, NumericCriticalPoint, SolverError, StationaryKind,
    StationaryPoint, StationaryPointSet,
};
pub use sweep::{
    energy_curves, fit_scaling_exponent, gamma_scan, CurveTable, PcColumn, ScanRow, ScanTable,
    SweepError,
};
pub use units::{
    constants, convert, ConstantProfile, Dimension, ProfileName, Quantity, Unit, UnitError,
};
