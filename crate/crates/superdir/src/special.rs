//! Sine and cosine integrals.
//!
//! `Si(x) = ∫₀ˣ sin t / t dt` and `Ci(x) = −∫ₓ^∞ cos t / t dt`, the pair the
//! induced-EMF impedance expressions are built from. Power series below the
//! crossover, modified Lentz continued fraction above it; absolute accuracy
//! is on the order of 1e-14 across the domain used here.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_CROSSOVER: f64 = 2.0;
const EPS: f64 = 1e-16;
const MAX_ITER: usize = 200;
const FPMIN: f64 = 1e-300;

/// Sine integral. Odd in `x`, defined on all of the real line.
pub fn sine_integral(x: f64) -> f64 {
    si_ci(x.abs()).0 * x.signum()
}

/// Cosine integral. Requires `x > 0`.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!(
            "cosine integral requires x > 0, got {x}"
        )));
    }
    Ok(si_ci(x).1)
}

/// `Ci(x) - j Si(x)` for `x > 0`, the combination produced by integrating
/// `e^{-j k u} / u`. Shared by the impedance closed forms.
pub(crate) fn e_aux(x: f64) -> Complex64 {
    debug_assert!(x > 0.0, "e_aux domain: x = {x}");
    let (si, ci) = si_ci(x);
    Complex64::new(ci, -si)
}

/// Both integrals for `x >= 0`. `Ci(0)` is returned as `-inf`.
fn si_ci(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    if x < SERIES_CROSSOVER {
        series(x)
    } else {
        continued_fraction(x)
    }
}

/// Power series: Si from its Maclaurin expansion, Ci via the entire
/// auxiliary integral Cin(x) = ∫₀ˣ (1 - cos t)/t dt, Ci = γ + ln x - Cin.
fn series(x: f64) -> (f64, f64) {
    let x2 = x * x;

    // Si(x) = sum_{n>=0} (-1)^n x^{2n+1} / ((2n+1) (2n+1)!)
    // t_n = (-1)^n x^{2n+1} / (2n+1)!  gives the recurrence below.
    let mut si = 0.0;
    let mut t = x;
    let mut n = 0usize;
    while t.abs() > EPS && n < 60 {
        si += t / (2 * n + 1) as f64;
        t *= -x2 / ((2 * n + 2) as f64 * (2 * n + 3) as f64);
        n += 1;
    }

    // Cin(x) = sum_{m>=1} (-1)^{m+1} x^{2m} / (2m (2m)!)
    let mut cin = 0.0;
    let mut u = x2 / 2.0;
    let mut m = 1usize;
    while u.abs() > EPS && m < 60 {
        cin += u / (2 * m) as f64;
        u *= -x2 / ((2 * m + 1) as f64 * (2 * m + 2) as f64);
        m += 1;
    }

    (si, EULER_GAMMA + x.ln() - cin)
}

/// Modified Lentz evaluation of the continued fraction for
/// `E1(jx) = -Ci(x) + j(Si(x) - pi/2)` rearranged to yield both integrals.
fn continued_fraction(x: f64) -> (f64, f64) {
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / FPMIN, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_ITER {
        let a = -((i * i) as f64);
        b += Complex64::new(2.0, 0.0);
        d = (a * d + b).inv();
        c = b + a / c;
        let delta = c * d;
        h *= delta;
        if (delta - Complex64::new(1.0, 0.0)).norm() < EPS {
            break;
        }
    }
    h *= Complex64::new(x.cos(), -x.sin());
    (std::f64::consts::FRAC_PI_2 + h.im, -h.re)
}
