//! Element and array far-field model: element factor, array response,
//! radiation intensity, conductor loss, input power, gain and directivity.
//!
//! The radiating current on each dipole is the sinusoidal profile
//! `I(z) = i_f * sin(k(l/2 - |z|)) / sin(k l / 2)` normalized to the feed
//! current `i_f`, so every power quantity here is referred to the feed
//! terminals and is directly comparable with the induced-EMF impedances.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::constants::{to_dbi, ETA_0};
use crate::error::{Error, Result};
use crate::geometry::ArrayDesign;

/// Threshold below which sin(theta) is handled by the analytic limit.
const AXIAL_SIN_EPS: f64 = 1e-7;

/// Pattern factor of a z-directed dipole of length `l`,
/// `[cos((kl/2) cos t) - cos(kl/2)] / sin t`, with the axial limit 0
/// evaluated through its first-order expansion.
pub fn element_factor(length: f64, wavenumber: f64, theta: f64) -> f64 {
    let a = 0.5 * wavenumber * length;
    let s = theta.sin();
    if s.abs() < AXIAL_SIN_EPS {
        // near the axis F ~ (a sin a / 2) * sin(theta)
        return 0.5 * a * a.sin() * s;
    }
    ((a * theta.cos()).cos() - a.cos()) / s
}

/// Element factor normalized to the feed current, `F(theta)/sin(k l / 2)`.
pub(crate) fn feed_element_factor(length: f64, wavenumber: f64, theta: f64) -> f64 {
    element_factor(length, wavenumber, theta) / (0.5 * wavenumber * length).sin()
}

/// Far-field array response vector; entry n is `e^{-j k x_n sin(theta) cos(phi)}`.
pub fn array_response(design: &ArrayDesign, theta: f64, phi: f64) -> Vec<Complex64> {
    let k = design.wavenumber();
    let u = theta.sin() * phi.cos();
    design
        .elements()
        .iter()
        .map(|el| Complex64::from_polar(1.0, -k * el.position_x * u))
        .collect()
}

/// Coherent far-field sum `sum_n f_n(theta) conj(a_n) i_n` with `f_n` the
/// feed-referred element factor. `|.|^2` of this drives every pattern quantity.
fn field_sum(design: &ArrayDesign, theta: f64, phi: f64) -> Complex64 {
    let k = design.wavenumber();
    let u = theta.sin() * phi.cos();
    design
        .elements()
        .iter()
        .zip(design.excitations())
        .map(|(el, ex)| {
            let f = feed_element_factor(el.length, k, theta);
            // conj(a_n) = e^{+j k x u}
            Complex64::from_polar(f * ex.amplitude(), ex.phase() + k * el.position_x * u)
        })
        .sum()
}

/// Radiation intensity in W/sr: `eta/(8 pi^2) * |sum_n f_n conj(a_n) i_n|^2`.
/// For equal element lengths this is the familiar `eta/(8 pi^2) |F|^2 |a^H i|^2`.
pub fn radiation_intensity(design: &ArrayDesign, theta: f64, phi: f64) -> f64 {
    let s = field_sum(design, theta, phi);
    ETA_0 / (8.0 * std::f64::consts::PI * std::f64::consts::PI) * s.norm_sqr()
}

/// Ohmic loss resistance of a dipole wire referred to the feed current:
/// `(1/(4 k rho)) sqrt(f mu / (pi sigma)) (kl - sin kl) / sin^2(kl/2)`.
pub fn loss_resistance(
    length: f64,
    frequency: f64,
    radius: f64,
    sigma_c: f64,
    mu: f64,
) -> Result<f64> {
    let k = 2.0 * std::f64::consts::PI * frequency / crate::constants::SPEED_OF_LIGHT;
    let s = (0.5 * k * length).sin();
    if s.abs() < crate::geometry::RESONANT_SIN_GUARD {
        return Err(Error::Domain(format!(
            "loss resistance undefined at resonant length {length}"
        )));
    }
    let surface = (frequency * mu / (std::f64::consts::PI * sigma_c)).sqrt();
    Ok(surface / (4.0 * k * radius) * (k * length - (k * length).sin()) / (s * s))
}

/// Total input power `(1/2) i^H Re{Z} i` in watts. `re_z` must be symmetric.
pub fn input_power(re_z: &DMatrix<f64>, currents: &[Complex64]) -> Result<f64> {
    let n = currents.len();
    if re_z.nrows() != n || re_z.ncols() != n {
        return Err(Error::NonPhysical(format!(
            "matrix is {}x{} but current vector has length {n}",
            re_z.nrows(),
            re_z.ncols()
        )));
    }
    let scale = re_z.amax().max(f64::MIN_POSITIVE);
    for m in 0..n {
        for l in (m + 1)..n {
            if (re_z[(m, l)] - re_z[(l, m)]).abs() > 1e-9 * scale {
                return Err(Error::NonPhysical(format!(
                    "resistance matrix not symmetric at ({m},{l})"
                )));
            }
        }
    }
    let mut acc = Complex64::default();
    for m in 0..n {
        for l in 0..n {
            acc += currents[m].conj() * re_z[(m, l)] * currents[l];
        }
    }
    // the Hermitian form over a symmetric real matrix is real; the residue
    // is rounding noise only
    debug_assert!(acc.im.abs() <= 1e-12 * acc.re.abs().max(1.0));
    Ok(0.5 * acc.re)
}

/// Array gain `4 pi U / P_in` in dBi, with `re_z_total` the loss-augmented
/// real impedance matrix. Returns `-inf` dBi in pattern nulls.
pub fn gain_dbi(
    design: &ArrayDesign,
    re_z_total: &DMatrix<f64>,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    let p_in = input_power(re_z_total, &design.currents())?;
    if p_in <= 0.0 {
        return Err(Error::NonPhysical(format!(
            "input power {p_in} W is not positive"
        )));
    }
    let u = radiation_intensity(design, theta, phi);
    Ok(to_dbi(4.0 * std::f64::consts::PI * u / p_in))
}

/// Directivity `4 pi U / P_rad` in dBi, with `re_z_lossless` the radiation
/// part of the impedance matrix (no conductor loss).
pub fn directivity_dbi(
    design: &ArrayDesign,
    re_z_lossless: &DMatrix<f64>,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    gain_dbi(design, re_z_lossless, theta, phi)
}

/// One sampled point of a far-field cut.
#[derive(Debug, Clone, Copy)]
pub struct CutPoint {
    pub theta: f64,
    pub phi: f64,
    /// W/sr
    pub intensity: f64,
    pub directivity_dbi: f64,
    pub gain_dbi: f64,
    pub realized_gain_dbi: f64,
}

/// A far-field pattern cut sampled along one swept angle.
#[derive(Debug, Clone)]
pub struct FarFieldCut {
    points: Vec<CutPoint>,
}

impl FarFieldCut {
    /// The sweep must be strictly monotone in the swept coordinate
    /// (phi for an azimuth cut, theta otherwise).
    pub fn new(points: Vec<CutPoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("a cut needs at least two samples".into()));
        }
        let phi_swept = (points[1].phi - points[0].phi).abs() > 0.0;
        let swept = |p: &CutPoint| if phi_swept { p.phi } else { p.theta };
        for pair in points.windows(2) {
            if swept(&pair[1]) <= swept(&pair[0]) {
                return Err(Error::Domain("cut angles must be strictly monotone".into()));
            }
            if !pair[1].intensity.is_finite() {
                return Err(Error::Domain("non-finite intensity in cut".into()));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[CutPoint] {
        &self.points
    }
}
