//! Array geometry and excitation types.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{RADIUS_FRACTION, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Guard against resonant lengths where the sinusoidal feed-current
/// normalization 1/sin(k l / 2) blows up.
pub const RESONANT_SIN_GUARD: f64 = 1e-6;

/// A thin z-directed dipole with its feed point on the x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole {
    /// Feed-point position along x, meters.
    pub position_x: f64,
    /// Total length, meters.
    pub length: f64,
    /// Wire radius, meters.
    pub radius: f64,
}

impl Dipole {
    pub fn new(position_x: f64, length: f64, radius: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Geometry(format!("length must be > 0, got {length}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Geometry(format!("radius must be > 0, got {radius}")));
        }
        if radius >= length / 10.0 {
            return Err(Error::Geometry(format!(
                "thin-wire model requires radius < length/10 (radius {radius}, length {length})"
            )));
        }
        if !position_x.is_finite() {
            return Err(Error::Geometry("non-finite position".into()));
        }
        Ok(Self {
            position_x,
            length,
            radius,
        })
    }

    /// Half length, the quantity entering most of the formulas.
    pub fn half_length(&self) -> f64 {
        0.5 * self.length
    }
}

/// Complex feed current expressed as amplitude and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Excitation {
    amplitude: f64,
    phase: f64,
}

impl Excitation {
    /// Phase is normalized into (-pi, pi].
    pub fn new(amplitude: f64, phase: f64) -> Result<Self> {
        if !amplitude.is_finite() || amplitude < 0.0 {
            return Err(Error::Excitation(format!(
                "amplitude must be finite and >= 0, got {amplitude}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::Excitation("phase must be finite".into()));
        }
        Ok(Self {
            amplitude,
            phase: wrap_phase(phase),
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Phase in radians, in (-pi, pi].
    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// The complex current `A e^{j phase}`.
    pub fn phasor(&self) -> Complex64 {
        Complex64::from_polar(self.amplitude, self.phase)
    }
}

/// Wrap an angle into (-pi, pi].
pub fn wrap_phase(phase: f64) -> f64 {
    let mut p = phase.rem_euclid(2.0 * PI);
    if p > PI {
        p -= 2.0 * PI;
    }
    p
}

/// A validated parallel dipole array: geometry plus complex excitations.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayDesign {
    frequency: f64,
    elements: Vec<Dipole>,
    excitations: Vec<Excitation>,
}

impl ArrayDesign {
    pub fn new(frequency: f64, elements: Vec<Dipole>, excitations: Vec<Excitation>) -> Result<Self> {
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(Error::Geometry(format!(
                "frequency must be > 0, got {frequency}"
            )));
        }
        if elements.is_empty() {
            return Err(Error::Geometry("array needs at least one element".into()));
        }
        if elements.len() != excitations.len() {
            return Err(Error::Excitation(format!(
                "{} elements but {} excitations",
                elements.len(),
                excitations.len()
            )));
        }
        let k = 2.0 * PI * frequency / SPEED_OF_LIGHT;
        for (idx, el) in elements.iter().enumerate() {
            // reject lengths at (or numerically near) integer multiples of lambda
            if (k * el.half_length()).sin().abs() < RESONANT_SIN_GUARD {
                return Err(Error::Geometry(format!(
                    "element {idx}: length {} is an integer multiple of the wavelength",
                    el.length
                )));
            }
        }
        for pair in elements.windows(2) {
            let gap = pair[1].position_x - pair[0].position_x;
            if gap <= 0.0 {
                return Err(Error::Geometry(
                    "element positions must be strictly increasing along x".into(),
                ));
            }
            if gap <= 2.0 * pair[0].radius.max(pair[1].radius) {
                return Err(Error::Geometry(format!(
                    "center-to-center spacing {gap} must exceed twice the wire radius"
                )));
            }
        }
        if !excitations.iter().any(|e| e.amplitude() > 0.0) {
            return Err(Error::Excitation(
                "at least one excitation amplitude must be positive".into(),
            ));
        }
        Ok(Self {
            frequency,
            elements,
            excitations,
        })
    }

    /// Uniformly spaced array of identical dipoles centered on the origin,
    /// wire radius lambda/200.
    pub fn uniform(
        frequency: f64,
        n: usize,
        spacing: f64,
        length: f64,
        excitations: Vec<Excitation>,
    ) -> Result<Self> {
        let lambda = SPEED_OF_LIGHT / frequency;
        let radius = lambda * RADIUS_FRACTION;
        let elements = (0..n)
            .map(|i| Dipole::new((i as f64 - 0.5 * (n as f64 - 1.0)) * spacing, length, radius))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frequency, elements, excitations)
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.frequency
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Dipole] {
        &self.elements
    }

    pub fn excitations(&self) -> &[Excitation] {
        &self.excitations
    }

    /// Complex feed currents in element order.
    pub fn currents(&self) -> Vec<Complex64> {
        self.excitations.iter().map(Excitation::phasor).collect()
    }

    /// Extent of the array along x (last minus first feed position).
    pub fn aperture(&self) -> f64 {
        self.elements.last().unwrap().position_x - self.elements.first().unwrap().position_x
    }

    /// Same geometry with different excitations.
    pub fn with_excitations(&self, excitations: Vec<Excitation>) -> Result<Self> {
        Self::new(self.frequency, self.elements.clone(), excitations)
    }
}
