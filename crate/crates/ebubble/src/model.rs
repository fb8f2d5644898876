//! The bubble energy functional and everything solvable in closed form.
//!
//! A spherical cavity of radius `a` holding one electron costs
//!
//! ```text
//! U(a) = C ħ²/(a² m)  +  4π a² γ  +  4π a³ P / 3
//! ```
//!
//! confinement energy, surface energy, and the work done against the ambient
//! pressure. This module provides the three terms and their radial
//! derivatives, the zero-pressure equilibrium radius, the closed-form critical
//! (spinodal) point where minimum and barrier coalesce, a heuristic
//! surface-tension estimator, and the dimensionless normal form
//! `u(x) = x⁻² + x² + (p/3)x³` that the numerical solvers operate on.
//!
//! All quantities are SI: metres, joules, pascals, newtons per metre.

use std::f64::consts::PI;

use thiserror::Error;

use crate::units::ConstantProfile;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("surface tension must be positive and finite, got {0} N/m")]
    InvalidSurfaceTension(f64),
    #[error("pressure must be finite, got {0} Pa")]
    InvalidPressure(f64),
    #[error("zero-point coefficient must be positive and finite, got {0}")]
    InvalidCoefficient(f64),
    #[error("atom spacing must be positive and finite, got {0} m")]
    InvalidSpacing(f64),
    #[error("binding energy must be non-negative and finite, got {0} J")]
    InvalidBindingEnergy(f64),
}

/// Choice of the dimensionless coefficient `C` in the confinement term
/// `C ħ²/(a² m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroPointModel {
    /// Uncertainty-principle estimate rounded to C = 1.
    UncertaintyRounded,
    /// The same estimate kept un-rounded: C = 27/32, from δx = 2a/3,
    /// δp = 3ħ/4a and ⟨p²⟩ = 3⟨p_x²⟩.
    UncertaintyExact,
    /// Ground state of an infinite spherical well: C = π²/2.
    InfiniteWell,
    /// Caller-supplied positive coefficient.
    Custom(f64),
}

impl ZeroPointModel {
    /// Validating constructor for the custom variant.
    pub fn custom(coefficient: f64) -> Result<Self, ModelError> {
        if coefficient <= 0.0 || !coefficient.is_finite() {
            return Err(ModelError::InvalidCoefficient(coefficient));
        }
        Ok(ZeroPointModel::Custom(coefficient))
    }

    /// The coefficient C. Rejects a custom value that is not strictly positive.
    pub fn coefficient(&self) -> Result<f64, ModelError> {
        match *self {
            ZeroPointModel::UncertaintyRounded => Ok(1.0),
            ZeroPointModel::UncertaintyExact => Ok(27.0 / 32.0),
            ZeroPointModel::InfiniteWell => Ok(PI * PI / 2.0),
            ZeroPointModel::Custom(c) => {
                if c <= 0.0 || !c.is_finite() {
                    Err(ModelError::InvalidCoefficient(c))
                } else {
                    Ok(c)
                }
            }
        }
    }
}

/// Surface tension and ambient pressure of the liquid, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    gamma: f64,
    pressure: f64,
}

impl MediumParams {
    /// `gamma` in N/m (must be positive), `pressure` in Pa (any finite sign).
    pub fn new(gamma: f64, pressure: f64) -> Result<Self, ModelError> {
        if gamma <= 0.0 || !gamma.is_finite() {
            return Err(ModelError::InvalidSurfaceTension(gamma));
        }
        if !pressure.is_finite() {
            return Err(ModelError::InvalidPressure(pressure));
        }
        Ok(MediumParams { gamma, pressure })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn pressure(&self) -> f64 {
        self.pressure
    }
}

/// The three energy contributions and their sum at one radius, in joules.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EnergyBreakdown {
    pub zero_point: f64,
    pub surface: f64,
    pub pressure_work: f64,
    pub total: f64,
}

/// Closed-form critical point: the radius and (negative) pressure at which
/// the energy minimum and the barrier maximum coalesce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    /// Critical radius in m.
    pub radius: f64,
    /// Critical pressure in Pa; always negative.
    pub pressure: f64,
}

/// State in the parameter-free normal form of the energy landscape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessState {
    /// Reduced radius a/a₀.
    pub x: f64,
    /// Reduced pressure P·a₀/γ.
    pub p: f64,
    /// Reduced energy U/(4πγa₀²); satisfies u = x⁻² + x² + (p/3)x³.
    pub u: f64,
    /// Length scale a₀ = (Cħ²/(4πγm))^¼ in m.
    pub a0: f64,
}

impl DimensionlessState {
    /// Scales the state back out to `(radius, pressure, energy)` in SI units.
    /// Exact inverse of [`nondimensionalize`] for the same medium.
    pub fn dimensionalize(&self, medium: &MediumParams) -> (f64, f64, f64) {
        let radius = self.x * self.a0;
        let pressure = self.p * (medium.gamma() / self.a0);
        let energy = self.u * (4.0 * PI * medium.gamma() * self.a0 * self.a0);
        (radius, pressure, energy)
    }
}

/// The reduced energy landscape u(x) = x⁻² + x² + (p/3)x³ at fixed reduced
/// pressure. All stationary-point analysis happens on this form; the only
/// remaining parameter is `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedLandscape {
    pub pressure: f64,
}

impl ReducedLandscape {
    pub fn new(pressure: f64) -> Self {
        ReducedLandscape { pressure }
    }

    /// u(x); valid for x > 0.
    pub fn energy(&self, x: f64) -> f64 {
        1.0 / (x * x) + x * x + self.pressure * x * x * x / 3.0
    }

    /// u′(x) = −2x⁻³ + 2x + p·x².
    pub fn slope(&self, x: f64) -> f64 {
        -2.0 / (x * x * x) + 2.0 * x + self.pressure * x * x
    }

    /// u″(x) = 6x⁻⁴ + 2 + 2p·x.
    pub fn curvature(&self, x: f64) -> f64 {
        6.0 / (x * x * x * x) + 2.0 + 2.0 * self.pressure * x
    }

    /// Reduced critical radius x_c = 5^¼, where u′ and u″ vanish together.
    pub fn critical_x() -> f64 {
        5f64.powf(0.25)
    }

    /// Reduced critical pressure p_c = −8·5^(−5/4) ≈ −1.0699845.
    pub fn critical_p() -> f64 {
        -8.0 * 5f64.powf(-1.25)
    }
}

fn check_radius(radius: f64) -> Result<(), ModelError> {
    if radius <= 0.0 || !radius.is_finite() {
        return Err(ModelError::InvalidRadius(radius));
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<(), ModelError> {
    if gamma <= 0.0 || !gamma.is_finite() {
        return Err(ModelError::InvalidSurfaceTension(gamma));
    }
    Ok(())
}

/// The coefficient C for a zero-point model. Mirror of
/// [`ZeroPointModel::coefficient`] as a free function.
pub fn zero_point_coefficient(model: &ZeroPointModel) -> Result<f64, ModelError> {
    model.coefficient()
}

/// Heuristic surface tension from the binding energy of one surface atom and
/// the atom spacing: γ = E_bind / d².
///
/// Inputs in J and m, output in N/m.
pub fn estimate_surface_tension(binding_energy: f64, atom_spacing: f64) -> Result<f64, ModelError> {
    if binding_energy < 0.0 || !binding_energy.is_finite() {
        return Err(ModelError::InvalidBindingEnergy(binding_energy));
    }
    if atom_spacing <= 0.0 || !atom_spacing.is_finite() {
        return Err(ModelError::InvalidSpacing(atom_spacing));
    }
    Ok(binding_energy / (atom_spacing * atom_spacing))
}

/// Evaluates the three energy terms independently and their sum at `radius`.
pub fn energy_breakdown(
    radius: f64,
    medium: &MediumParams,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<EnergyBreakdown, ModelError> {
    check_radius(radius)?;
    let c = model.coefficient()?;
    let zero_point = c * constants.hbar_sq_over_m() / (radius * radius);
    let surface = 4.0 * PI * radius * radius * medium.gamma();
    let pressure_work = 4.0 * PI * radius * radius * radius * medium.pressure() / 3.0;
    Ok(EnergyBreakdown {
        zero_point,
        surface,
        pressure_work,
        total: zero_point + surface + pressure_work,
    })
}

/// dU/da = −2Cħ²/(a³m) + 8πaγ + 4πa²P, in J/m.
///
/// Negative values mean the energy decreases as the bubble grows.
pub fn energy_first_derivative(
    radius: f64,
    medium: &MediumParams,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<f64, ModelError> {
    check_radius(radius)?;
    let c = model.coefficient()?;
    Ok(
        -2.0 * c * constants.hbar_sq_over_m() / (radius * radius * radius)
            + 8.0 * PI * radius * medium.gamma()
            + 4.0 * PI * radius * radius * medium.pressure(),
    )
}

/// d²U/da² = 6Cħ²/(a⁴m) + 8πγ + 8πaP, in J/m².
pub fn energy_second_derivative(
    radius: f64,
    medium: &MediumParams,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<f64, ModelError> {
    check_radius(radius)?;
    let c = model.coefficient()?;
    let r2 = radius * radius;
    Ok(6.0 * c * constants.hbar_sq_over_m() / (r2 * r2)
        + 8.0 * PI * medium.gamma()
        + 8.0 * PI * radius * medium.pressure())
}

/// Radius minimising the energy at zero pressure: a₀ = (Cħ²/(4πγm))^¼.
pub fn equilibrium_radius_zero_pressure(
    gamma: f64,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<f64, ModelError> {
    check_gamma(gamma)?;
    let c = model.coefficient()?;
    Ok((c * constants.hbar_sq_over_m() / (4.0 * PI * gamma)).powf(0.25))
}

/// Closed-form critical point: a_c = 5^¼·a₀ and P_c = −8γ/(5a_c).
///
/// At (a_c, P_c) both dU/da and d²U/da² vanish; for any more negative
/// pressure every bubble grows without limit.
pub fn critical_point_closed_form(
    gamma: f64,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<CriticalPoint, ModelError> {
    let a0 = equilibrium_radius_zero_pressure(gamma, model, constants)?;
    let radius = ReducedLandscape::critical_x() * a0;
    let pressure = -8.0 * gamma / (5.0 * radius);
    Ok(CriticalPoint { radius, pressure })
}

/// Maps `(radius, medium)` into the parameter-free normal form.
///
/// The reduced energy is evaluated from the normal form itself, so the
/// identity u = x⁻² + x² + (p/3)x³ holds exactly.
pub fn nondimensionalize(
    radius: f64,
    medium: &MediumParams,
    model: &ZeroPointModel,
    constants: &ConstantProfile,
) -> Result<DimensionlessState, ModelError> {
    check_radius(radius)?;
    let a0 = equilibrium_radius_zero_pressure(medium.gamma(), model, constants)?;
    let x = radius / a0;
    let p = medium.pressure() * (a0 / medium.gamma());
    let u = ReducedLandscape::new(p).energy(x);
    Ok(DimensionlessState { x, p, u, a0 })
}
