//! Physical constants and model-wide defaults.

use std::f64::consts::PI;

/// Free-space wave impedance, Ohm. The thin-dipole formulas use the
/// textbook value 120*pi rather than the CODATA one.
pub const ETA_0: f64 = 120.0 * PI;

/// Permeability of free space, H/m.
pub const MU_0: f64 = 4.0e-7 * PI;

/// Conductivity of copper, S/m.
pub const SIGMA_COPPER: f64 = 5.8e7;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Default operating frequency, Hz. Not hard-coded anywhere in the
/// formulas; every entry point takes the frequency as an argument.
pub const DEFAULT_FREQUENCY: f64 = 9.9e9;

/// Default feed-line reference impedance, Ohm.
pub const DEFAULT_Z0: f64 = 50.0;

/// Wire radius as a fraction of the wavelength (rho = lambda / 200).
pub const RADIUS_FRACTION: f64 = 1.0 / 200.0;

/// Floor applied to dB quantities in file exports where the intensity is zero.
pub const DB_FLOOR: f64 = -100.0;

/// Bundle of the physical constants entering the dipole model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Free-space impedance, Ohm.
    pub eta: f64,
    /// Permeability, H/m.
    pub mu: f64,
    /// Conductor conductivity, S/m.
    pub sigma_c: f64,
    /// Speed of light, m/s.
    pub c: f64,
}

impl PhysicalConstants {
    /// Free space with a copper conductor.
    pub const fn free_space() -> Self {
        Self {
            eta: ETA_0,
            mu: MU_0,
            sigma_c: SIGMA_COPPER,
            c: SPEED_OF_LIGHT,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::free_space()
    }
}

/// Linear power ratio to dBi. Zero or negative input maps to `-inf`.
pub fn to_dbi(linear: f64) -> f64 {
    if linear > 0.0 {
        10.0 * linear.log10()
    } else {
        f64::NEG_INFINITY
    }
}

/// dB value clamped to the export floor.
pub fn floor_db(db: f64) -> f64 {
    if db.is_finite() {
        db.max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}
