//! Complex error-function family used by the Gaussian closed forms.
//!
//! Everything is built on the Faddeeva function `w(z) = exp(-z²) erfc(-iz)`.
//! Products such as `exp(-ξ²) · erfi(ξ + i/2)` are never formed literally:
//! they are rewritten in terms of `w` evaluated in the upper half-plane,
//! where it is bounded, so the composite functions stay finite for any real
//! argument.

use num_complex::Complex64;
use std::f64::consts::FRAC_2_SQRT_PI;

use crate::error::{Error, Result};

/// Largest |Re z| and |Im z| accepted by [`erfi`].
pub const ERFI_DOMAIN: f64 = 30.0;

/// `Re(z²)` above this would overflow `exp(z²)`; [`erfi`] rejects it.
const ERFI_MAX_EXPONENT: f64 = 700.0;

/// Below this modulus [`erfi`] sums its Maclaurin series directly.
const ERFI_SERIES_RADIUS: f64 = 2.0;

/// Which member of the `𝔽∓` pair to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `𝔽₋(ξ) = e^{-iξ} {F(ξ) + 2i e^{-ξ²} [Erfi(ξ) − Erfi(ξ + i/2)]}`
    Minus,
    /// `𝔽₊(ξ) = e^{+iξ} {F(ξ) + 2i e^{-ξ²} [Erfi(ξ) − Erfi(ξ − i/2)]}`
    Plus,
}

/// Faddeeva function `w(z) = exp(-z²) erfc(-iz)`.
///
/// Total over finite arguments. In the lower half-plane the value grows like
/// `2 exp(-z²)` and saturates to infinity once that overflows
/// (`Im(z)² − Re(z)² ≳ 709`).
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        w_upper(z)
    } else {
        // w(z) = 2 exp(-z²) − w(-z)
        let mz = -z;
        let exp_term = (-(z * z)).exp();
        2.0 * exp_term - w_upper(mz)
    }
}

/// Upper half-plane (Im z ≥ 0) via reflection `w(-x + iy) = conj(w(x + iy))`.
fn w_upper(z: Complex64) -> Complex64 {
    let w = w_first_quadrant(z.re.abs(), z.im);
    if z.re < 0.0 {
        w.conj()
    } else {
        w
    }
}

/// `w(x + iy)` for `x ≥ 0`, `y ≥ 0`.
///
/// Three regimes, in the spirit of Poppe & Wijers: the Maclaurin series of
/// `erfi` close to the origin, Gautschi's accelerated continued fraction in
/// the intermediate ellipse, and the plain Laplace continued fraction far out.
fn w_first_quadrant(x: f64, y: f64) -> Complex64 {
    let xs = x / 6.3;
    let ys = y / 4.4;
    let qrho = xs * xs + ys * ys;

    if qrho < 0.085_264 {
        let z = Complex64::new(x, y);
        let n_terms = (6.0 + 72.0 * (1.0 - 0.85 * ys) * qrho.sqrt()).round() as usize;
        let series = FRAC_2_SQRT_PI * erfi_series(z, n_terms.max(8) + 4);
        let mut w = (-(z * z)).exp() * (Complex64::new(1.0, 0.0) + Complex64::i() * series);
        if y == 0.0 {
            w.re = (-x * x).exp();
        }
        return w;
    }

    let (h, kapn, nu) = if qrho > 1.0 {
        let nu = (3.0 + 1442.0 / (26.0 * qrho.sqrt() + 77.0)).floor() as usize;
        (0.0, 0usize, nu)
    } else {
        let q = (1.0 - ys) * (1.0 - qrho).sqrt();
        let kapn = (7.0 + 34.0 * q).round() as usize;
        let nu = (16.0 + 26.0 * q).round() as usize;
        (1.88 * q, kapn, nu)
    };

    let h2 = 2.0 * h;
    let mut lambda = if h > 0.0 { h2.powi(kapn as i32) } else { 0.0 };
    let (mut rx, mut ry) = (0.0_f64, 0.0_f64);
    let (mut sx, mut sy) = (0.0_f64, 0.0_f64);
    for n in (0..=nu).rev() {
        let np1 = (n + 1) as f64;
        let tx = y + h + np1 * rx;
        let ty = x - np1 * ry;
        let c = 0.5 / (tx * tx + ty * ty);
        rx = c * tx;
        ry = c * ty;
        if h > 0.0 && n <= kapn {
            let t = lambda + sx;
            let new_sx = rx * t - ry * sy;
            sy = ry * t + rx * sy;
            sx = new_sx;
            lambda /= h2;
        }
    }

    let mut w = if h == 0.0 {
        Complex64::new(FRAC_2_SQRT_PI * rx, FRAC_2_SQRT_PI * ry)
    } else {
        Complex64::new(FRAC_2_SQRT_PI * sx, FRAC_2_SQRT_PI * sy)
    };
    if y == 0.0 {
        w.re = (-x * x).exp();
    }
    w
}

/// `Σ z^{2n+1} / (n! (2n+1))`, i.e. `erfi(z) · √π / 2`.
fn erfi_series(z: Complex64, max_terms: usize) -> Complex64 {
    let z2 = z * z;
    let mut power = z; // z^{2n+1} / n!
    let mut sum = z;
    for n in 1..max_terms.max(1) * 4 {
        let nf = n as f64;
        power = power * z2 / nf;
        let term = power / (2.0 * nf + 1.0);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// Imaginary error function `erfi(z) = (2/√π) ∫₀^z exp(y²) dy`.
///
/// Accepted for `|Re z| ≤ 30`, `|Im z| ≤ 30` with `Re(z²) ≤ 700`; outside
/// that region the result either overflows or loses the relative accuracy
/// target, and the caller has to work with a scaled form instead.
pub fn erfi(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("erfi", z, "argument is not finite"));
    }
    if z.re.abs() > ERFI_DOMAIN || z.im.abs() > ERFI_DOMAIN {
        return Err(domain("erfi", z, "|Re z| and |Im z| must not exceed 30"));
    }
    let (x, y) = (z.re.abs(), z.im.abs());
    if (x - y) * (x + y) > ERFI_MAX_EXPONENT {
        return Err(domain("erfi", z, "exp(z²) overflows; use the Faddeeva form"));
    }

    // erfi is odd and commutes with conjugation: reduce to the first quadrant.
    let q = erfi_first_quadrant(x, y);
    let q = if z.im < 0.0 { q.conj() } else { q };
    // Reflecting Re z also flips Im z; combine both symmetries.
    Ok(if z.re < 0.0 { -q.conj() } else { q })
}

fn erfi_first_quadrant(x: f64, y: f64) -> Complex64 {
    let z = Complex64::new(x, y);
    if z.norm() < ERFI_SERIES_RADIUS {
        return FRAC_2_SQRT_PI * erfi_series(z, 64);
    }
    // erfi(z) = i − i exp(z²) w(z); w is bounded here since Im z ≥ 0.
    let i = Complex64::i();
    let exp_z2 = Complex64::from_polar(((x - y) * (x + y)).exp(), 2.0 * x * y);
    let mut out = i - i * exp_z2 * w_first_quadrant(x, y);
    if y == 0.0 {
        // exp(x²) Re w(x) = 1 exactly, so the result is real.
        out.im = 0.0;
    }
    out
}

/// Plasma dispersion function `F(ξ) = exp(-ξ²) (1 + i erfi(ξ))`.
///
/// For real ξ this is the Faddeeva function on the real axis.
pub fn plasma_dispersion(xi: f64) -> Complex64 {
    faddeeva(Complex64::new(xi, 0.0))
}

/// `exp(-ξ²) · erfi(ξ + iη)` for real ξ, in a form bounded for every ξ.
fn scaled_erfi(xi: f64, eta: f64) -> Complex64 {
    let i = Complex64::i();
    let gauss = (-xi * xi).exp();
    // exp(z² − ξ²) with z = ξ + iη
    let phase = Complex64::from_polar((-eta * eta).exp(), 2.0 * xi * eta);
    if eta >= 0.0 {
        // erfi(z) = i − i exp(z²) w(z), Im z ≥ 0
        i * gauss - i * phase * w_upper(Complex64::new(xi, eta))
    } else {
        // erfi(z) = −erfi(−z) and −z lies in the upper half-plane
        -(i * gauss) + i * phase * w_upper(Complex64::new(-xi, -eta))
    }
}

/// The composite `𝔽∓(ξ)` entering the distinguishable-Gaussian closed form.
///
/// Evaluated through Faddeeva values at ξ and ξ ± i/2, so it is finite for
/// every finite real ξ (no raw `exp(-ξ²) · Erfi` products are formed).
pub fn f_pm(xi: f64, branch: Branch) -> Result<Complex64> {
    if !xi.is_finite() {
        return Err(Error::Domain {
            function: "f_pm",
            arg: format!("{xi}"),
            reason: "argument is not finite",
        });
    }
    let (shift, phase_sign) = match branch {
        Branch::Minus => (0.5, -1.0),
        Branch::Plus => (-0.5, 1.0),
    };
    let i = Complex64::i();
    let f = plasma_dispersion(xi);
    let bracket = scaled_erfi(xi, 0.0) - scaled_erfi(xi, shift);
    let inner = f + 2.0 * i * bracket;
    Ok(Complex64::from_polar(1.0, phase_sign * xi) * inner)
}

/// `erf(x)` for real x, from the Faddeeva function on the imaginary axis.
pub fn erf(x: f64) -> f64 {
    // erf(x) = −i erfi(ix) and erfi(iy) is purely imaginary.
    if x.abs() < ERFI_SERIES_RADIUS {
        return (FRAC_2_SQRT_PI * erfi_series(Complex64::new(0.0, x), 64)).im;
    }
    let ax = x.abs();
    // erfc(x) = exp(-x²) w(ix)
    let erfc = (-ax * ax).exp() * w_first_quadrant(0.0, ax).re;
    (1.0 - erfc).copysign(x)
}

fn domain(function: &'static str, z: Complex64, reason: &'static str) -> Error {
    Error::Domain {
        function,
        arg: format!("{} {:+}i", z.re, z.im),
        reason,
    }
}
