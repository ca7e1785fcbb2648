//! Closed-form probabilities: totality, scaling laws and sign conventions.

use biphoton_ret::units::{debye_to_si, fs, SQUARE_MICRON};
use biphoton_ret::{diagonalize, p_tpe, p_tpe_with_policy, AcceptorPair, ResonancePolicy, SpdcSource, StateKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn omega0() -> f64 {
    biphoton_ret::units::angular_frequency_from_nm(SpdcSource::DEFAULT_LAMBDA_NM)
}

#[test]
fn probabilities_are_finite_and_non_negative_over_the_fuzz_box() {
    let mut r = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10_000 {
        let te = fs(r.gen_range(0.8..800.0));
        let j = r.gen_range(0.0..0.1) * omega0();
        let policy = if r.gen_bool(0.5) { ResonancePolicy::Nominal } else { ResonancePolicy::Enforced };
        let acc = diagonalize(&AcceptorPair::from_wavelengths(770.0, 854.0, j, 1.0, 1.0).unwrap());
        let src = SpdcSource::degenerate(fs(350.0), te, SQUARE_MICRON).unwrap();
        for kind in StateKind::ALL {
            let p = p_tpe_with_policy(kind, &acc, &src, policy).unwrap().probability;
            assert!(p.is_finite() && p >= 0.0, "{kind} T_e={te:e} J={j:e}: {p}");
        }
    }
}

#[test]
fn probability_is_quartic_in_a_common_dipole_scale() {
    let src = SpdcSource::degenerate(fs(350.0), fs(120.0), SQUARE_MICRON).unwrap();
    for j in [0.0, 0.01 * omega0()] {
        let base = AcceptorPair::from_wavelengths(770.0, 854.0, j, 1.0, 1.7).unwrap();
        for kind in StateKind::ALL {
            let p1 = p_tpe(kind, &diagonalize(&base), &src).unwrap().probability;
            for k in [0.5, 2.0, 3.0] {
                let scaled = AcceptorPair { mu_ag: k * base.mu_ag, mu_bg: k * base.mu_bg, ..base };
                let pk = p_tpe(kind, &diagonalize(&scaled), &src).unwrap().probability;
                assert!((pk - k.powi(4) * p1).abs() <= 1e-12 * pk, "{kind} k={k}");
            }
        }
    }
}

#[test]
fn probability_scales_as_inverse_area_squared() {
    let acc = diagonalize(&AcceptorPair::from_wavelengths(800.0, 820.0, 0.0, 1.0, 1.0).unwrap());
    for kind in StateKind::ALL {
        let p1 = p_tpe(kind, &acc, &SpdcSource::degenerate(fs(350.0), fs(90.0), SQUARE_MICRON).unwrap())
            .unwrap()
            .probability;
        for k in [0.25, 4.0, 10.0] {
            let src = SpdcSource::degenerate(fs(350.0), fs(90.0), k * SQUARE_MICRON).unwrap();
            let pk = p_tpe(kind, &acc, &src).unwrap().probability;
            assert!((pk * k * k - p1).abs() <= 1e-12 * p1, "{kind} k={k}");
        }
    }
}

#[test]
fn global_eigenvector_sign_flip_is_invisible() {
    let src = SpdcSource::degenerate(fs(350.0), fs(60.0), SQUARE_MICRON).unwrap();
    let acc = diagonalize(&AcceptorPair::from_wavelengths(770.0, 854.0, 0.02 * omega0(), 1.0, 1.0).unwrap());
    let flips = [
        // |α⟩ → −|α⟩ flips μ_αg and μ_fα together
        (-1.0, 1.0, -1.0, 1.0),
        (1.0, -1.0, 1.0, -1.0),
        (-1.0, -1.0, -1.0, -1.0),
    ];
    for kind in StateKind::ALL {
        let p = p_tpe(kind, &acc, &src).unwrap().probability;
        for (a, b, c, d) in flips {
            let mut f = acc;
            f.mu_alpha_g *= a;
            f.mu_beta_g *= b;
            f.mu_f_alpha *= c;
            f.mu_f_beta *= d;
            let q = p_tpe(kind, &f, &src).unwrap().probability;
            assert!((p - q).abs() <= 1e-14 * p, "{kind}: {p:e} vs {q:e}");
        }
    }
}

#[test]
fn debye_conversion_is_fixed() {
    assert_eq!(debye_to_si(1.0), 3.33564e-30);
}
