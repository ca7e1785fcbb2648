//! Independent reference values: adaptive Gauss–Kronrod quadrature of the
//! defining integrals, shared by the integration test targets.

#![allow(dead_code)]

use biphoton_ret::Complex64;
use std::f64::consts::PI;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod value, error estimate and `∫|f|` on `[a, b]`.
fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = h * XGK[j];
        let (lo, hi) = (f(c - x), f(c + x));
        kron += (lo + hi) * WGK[j];
        abs += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
    }
    let raw = ((kron - gauss) * h).norm();
    let scale = abs * h.abs();
    // the Gauss difference overstates the Kronrod error once converged
    let err = if scale > 0.0 { scale * (200.0 * raw / scale).powf(1.5).min(1.0) } else { raw };
    (kron * h, err, scale)
}

/// `∫_a^b f` to absolute tolerance `tol`, by globally adaptive bisection
/// of the worst interval. Stops at a fixed interval budget or once the
/// requested tolerance is below the rounding floor of `∫|f|`.
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    const MAX_INTERVALS: usize = 2000;
    let (v, e, m) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e, m)];
    loop {
        let total: Complex64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        let floor: f64 = 50.0 * f64::EPSILON * parts.iter().map(|p| p.4).sum::<f64>();
        if err <= tol.max(floor) || parts.len() >= MAX_INTERVALS {
            return total;
        }
        let (k, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, ..) = parts.swap_remove(k);
        let mid = 0.5 * (lo + hi);
        for (l, h) in [(lo, mid), (mid, hi)] {
            let (v, e, m) = gk15(&f, l, h);
            parts.push((l, h, v, e, m));
        }
    }
}

/// Two passes: one to size the result, one at `rel` of that size.
pub fn integrate_rel(f: impl Fn(f64) -> Complex64 + Copy, a: f64, b: f64, rel: f64) -> Complex64 {
    let rough = integrate(f, a, b, 1e-6);
    let scale = rough.norm().max(1e-300);
    integrate(f, a, b, rel * scale)
}

/// `erfi(z) = (2/√π) ∫₀¹ z e^{(tz)²} dt` along the straight path.
pub fn erfi_ref(z: Complex64) -> Complex64 {
    let f = move |t: f64| z * (z * z * t * t).exp();
    integrate_rel(f, 0.0, 1.0, 1e-13) * (2.0 / PI.sqrt())
}

/// `w(z) = (1/√π) ∫₀^∞ exp(−t²/4 + izt) dt`, truncated where the Gaussian
/// has decayed below the working precision.
pub fn faddeeva_ref(z: Complex64) -> Complex64 {
    let upper = 2.0 * (-z.im).max(0.0) + 16.0;
    let f = move |t: f64| (Complex64::new(-0.25 * t * t, 0.0) + Complex64::i() * z * t).exp();
    integrate_rel(f, 0.0, upper, 1e-13) / PI.sqrt()
}

/// `F(ξ) = e^{−ξ²} + i (2/√π) ∫₀^ξ e^{t² − ξ²} dt` for real ξ.
pub fn plasma_ref(xi: f64) -> Complex64 {
    let f = move |t: f64| Complex64::new((t * t - xi * xi).exp(), 0.0);
    let dawson_like = if xi == 0.0 { Complex64::new(0.0, 0.0) } else { integrate_rel(f, 0.0, xi, 1e-13) };
    Complex64::new((-xi * xi).exp(), 0.0) + Complex64::i() * dawson_like * (2.0 / PI.sqrt())
}

/// `𝔽∓(ξ) = e^{∓iξ}{F(ξ) + 2i e^{−ξ²}[erfi(ξ) − erfi(ξ ± i/2)]}`, with the
/// bracket written as the path integral from ξ to ξ ± i/2:
/// `e^{−ξ²}[erfi(ξ) − erfi(ξ ± i/2)] = ∓ i (2/√π) ∫₀^{1/2} e^{±2iξy − y²} dy`.
/// `sign = -1` selects 𝔽₋ (which pairs with ξ + i/2).
pub fn f_pm_ref(xi: f64, sign: f64) -> Complex64 {
    let s = -sign; // +1 for the ξ + i/2 endpoint
    let f = move |y: f64| Complex64::from_polar((-y * y).exp(), 2.0 * s * xi * y);
    let path = integrate_rel(f, 0.0, 0.5, 1e-13);
    let bracket = -Complex64::i() * s * path * (2.0 / PI.sqrt());
    Complex64::from_polar(1.0, sign * xi) * (plasma_ref(xi) + 2.0 * Complex64::i() * bracket)
}

pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}
