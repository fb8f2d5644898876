//! Dimension-tagged physical quantities, unit conversion, and physical-constant
//! profiles.
//!
//! Internally every computation runs in SI (m, kg, J, Pa, N/m); the types here
//! exist so that mixed-unit inputs and outputs (erg/cm², bar, Å, eV) convert
//! through a single site. Conversions within a dimension are plain rational
//! scalings: a round trip A→B→A reproduces the original value to within one
//! unit in the last place.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// 1 eV in joules. Exact by the SI definition of the elementary charge.
pub const EV_IN_JOULES: f64 = 1.602_176_634e-19;

/// Speed of light in m/s. Exact by the SI definition of the metre.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant in J·s (CODATA 2018 recommended value).
const HBAR_PRECISE: f64 = 1.054_571_817e-34;

/// Electron mass in kg (CODATA 2018 recommended value).
const ELECTRON_MASS_PRECISE: f64 = 9.109_383_701_5e-31;

/// ħc for the rounded profile, in eV·cm.
const HBAR_C_ROUNDED_EV_CM: f64 = 2e-5;

/// Electron rest energy mc² for the rounded profile, in eV.
const MC2_ROUNDED_EV: f64 = 5e5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnitError {
    /// Cross-dimension conversions are rejected outright.
    #[error("cannot convert {from} to {to}: dimensions differ")]
    DimensionMismatch { from: Dimension, to: Dimension },
    #[error("unknown unit tag `{0}`")]
    UnknownUnit(String),
    #[error("unknown constant profile `{0}` (expected `precise` or `paper_rounded`)")]
    UnknownProfile(String),
}

/// Physical dimension of a [`Quantity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Length,
    Mass,
    Energy,
    Pressure,
    SurfaceTension,
    /// Energy per pressure; the dimension of the cavity volume in the
    /// pressure-work term.
    Volume,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Dimension::Length => "length",
            Dimension::Mass => "mass",
            Dimension::Energy => "energy",
            Dimension::Pressure => "pressure",
            Dimension::SurfaceTension => "surface tension",
            Dimension::Volume => "volume",
        };
        f.write_str(name)
    }
}

/// Symbolic unit tag. The spellings from [`Unit::tag`] appear verbatim in CLI
/// flags and output headers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Meter,
    Centimeter,
    Angstrom,
    Kilogram,
    Gram,
    Joule,
    Erg,
    ElectronVolt,
    Pascal,
    Bar,
    DynePerCm2,
    NewtonPerMeter,
    ErgPerCm2,
    ElectronVoltPerCm2,
    CubicMeter,
    CubicCentimeter,
}

impl Unit {
    pub const ALL: [Unit; 16] = [
        Unit::Meter,
        Unit::Centimeter,
        Unit::Angstrom,
        Unit::Kilogram,
        Unit::Gram,
        Unit::Joule,
        Unit::Erg,
        Unit::ElectronVolt,
        Unit::Pascal,
        Unit::Bar,
        Unit::DynePerCm2,
        Unit::NewtonPerMeter,
        Unit::ErgPerCm2,
        Unit::ElectronVoltPerCm2,
        Unit::CubicMeter,
        Unit::CubicCentimeter,
    ];

    pub fn dimension(self) -> Dimension {
        match self {
            Unit::Meter | Unit::Centimeter | Unit::Angstrom => Dimension::Length,
            Unit::Kilogram | Unit::Gram => Dimension::Mass,
            Unit::Joule | Unit::Erg | Unit::ElectronVolt => Dimension::Energy,
            Unit::Pascal | Unit::Bar | Unit::DynePerCm2 => Dimension::Pressure,
            Unit::NewtonPerMeter | Unit::ErgPerCm2 | Unit::ElectronVoltPerCm2 => {
                Dimension::SurfaceTension
            }
            Unit::CubicMeter | Unit::CubicCentimeter => Dimension::Volume,
        }
    }

    /// Multiplicative factor taking one of this unit to the dimension's SI unit.
    pub fn si_factor(self) -> f64 {
        match self {
            Unit::Meter => 1.0,
            Unit::Centimeter => 1e-2,
            Unit::Angstrom => 1e-10,
            Unit::Kilogram => 1.0,
            Unit::Gram => 1e-3,
            Unit::Joule => 1.0,
            Unit::Erg => 1e-7,
            Unit::ElectronVolt => EV_IN_JOULES,
            Unit::Pascal => 1.0,
            Unit::Bar => 1e5,
            Unit::DynePerCm2 => 0.1,
            Unit::NewtonPerMeter => 1.0,
            Unit::ErgPerCm2 => 1e-3,
            // 1 eV/cm² = 1.602176634e-19 J / 1e-4 m²
            Unit::ElectronVoltPerCm2 => 1.602_176_634e-15,
            Unit::CubicMeter => 1.0,
            Unit::CubicCentimeter => 1e-6,
        }
    }

    /// The tag spelling used on the command line and in file headers.
    pub fn tag(self) -> &'static str {
        match self {
            Unit::Meter => "m",
            Unit::Centimeter => "cm",
            Unit::Angstrom => "angstrom",
            Unit::Kilogram => "kg",
            Unit::Gram => "g",
            Unit::Joule => "J",
            Unit::Erg => "erg",
            Unit::ElectronVolt => "eV",
            Unit::Pascal => "Pa",
            Unit::Bar => "bar",
            Unit::DynePerCm2 => "dyn_per_cm2",
            Unit::NewtonPerMeter => "N_per_m",
            Unit::ErgPerCm2 => "erg_per_cm2",
            Unit::ElectronVoltPerCm2 => "eV_per_cm2",
            Unit::CubicMeter => "m3",
            Unit::CubicCentimeter => "cm3",
        }
    }
}

impl FromStr for Unit {
    type Err = UnitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Unit::ALL
            .iter()
            .copied()
            .find(|u| u.tag() == s)
            .ok_or_else(|| UnitError::UnknownUnit(s.to_string()))
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A numeric value tagged with its unit (and hence dimension).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    value: f64,
    unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Quantity { value, unit }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn dimension(&self) -> Dimension {
        self.unit.dimension()
    }

    /// The value expressed in the dimension's SI unit.
    pub fn to_si(&self) -> f64 {
        self.value * self.unit.si_factor()
    }

    /// Wraps an SI value and expresses it in `unit`.
    pub fn from_si(value_si: f64, unit: Unit) -> Self {
        Quantity::new(value_si / unit.si_factor(), unit)
    }

    /// Re-expresses the quantity in `target`, which must share its dimension.
    ///
    /// The conversion is a single multiplication by the precomputed factor
    /// ratio, which keeps round trips within 1 ulp.
    pub fn convert(&self, target: Unit) -> Result<Quantity, UnitError> {
        convert(*self, target)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

/// Converts `q` to `target_unit` within the same dimension.
pub fn convert(q: Quantity, target_unit: Unit) -> Result<Quantity, UnitError> {
    let from_dim = q.unit.dimension();
    let to_dim = target_unit.dimension();
    if from_dim != to_dim {
        return Err(UnitError::DimensionMismatch {
            from: from_dim,
            to: to_dim,
        });
    }
    if q.unit == target_unit {
        return Ok(q);
    }
    let ratio = q.unit.si_factor() / target_unit.si_factor();
    Ok(Quantity::new(q.value * ratio, target_unit))
}

/// Which set of physical constants to compute with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileName {
    /// CODATA values of ħ and the electron mass.
    Precise,
    /// Rounded values defined by ħc = 2×10⁻⁵ eV·cm and mc² = 5×10⁵ eV, so that
    /// ħ²/m = 8×10⁻¹⁶ eV·cm² exactly. Useful for reproducing back-of-envelope
    /// arithmetic done with those figures.
    PaperRounded,
}

impl ProfileName {
    pub fn tag(self) -> &'static str {
        match self {
            ProfileName::Precise => "precise",
            ProfileName::PaperRounded => "paper_rounded",
        }
    }
}

impl FromStr for ProfileName {
    type Err = UnitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "precise" => Ok(ProfileName::Precise),
            "paper_rounded" => Ok(ProfileName::PaperRounded),
            other => Err(UnitError::UnknownProfile(other.to_string())),
        }
    }
}

impl fmt::Display for ProfileName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An immutable pair (ħ, electron mass) in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantProfile {
    pub name: ProfileName,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Electron mass, kg.
    pub electron_mass: f64,
}

impl ConstantProfile {
    /// ħ²/m in J·m², the combination every radius formula consumes.
    pub fn hbar_sq_over_m(&self) -> f64 {
        self.hbar * self.hbar / self.electron_mass
    }
}

/// Returns the fixed constant profile for `name`. Repeated calls are identical.
pub fn constants(name: ProfileName) -> ConstantProfile {
    match name {
        ProfileName::Precise => ConstantProfile {
            name,
            hbar: HBAR_PRECISE,
            electron_mass: ELECTRON_MASS_PRECISE,
        },
        ProfileName::PaperRounded => {
            // The rounded profile is defined through ħc and mc²; divide out
            // the exact speed of light to store SI ħ and m.
            let hbar_c_j_m = HBAR_C_ROUNDED_EV_CM * EV_IN_JOULES * 1e-2;
            let mc2_j = MC2_ROUNDED_EV * EV_IN_JOULES;
            ConstantProfile {
                name,
                hbar: hbar_c_j_m / SPEED_OF_LIGHT,
                electron_mass: mc2_j / (SPEED_OF_LIGHT * SPEED_OF_LIGHT),
            }
        }
    }
}
