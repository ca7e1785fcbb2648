//! Physical constants and unit conversions. Everything internal is SI.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Fixed CODATA values used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// J·s
    pub hbar: f64,
    /// F/m
    pub eps0: f64,
    /// m/s
    pub c_light: f64,
    /// C·m per debye
    pub debye: f64,
}

pub const CODATA: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    eps0: 8.854_187_812_8e-12,
    c_light: 2.997_924_58e8,
    debye: 3.335_64e-30,
};

pub const FEMTOSECOND: f64 = 1e-15;
pub const SQUARE_MICRON: f64 = 1e-12;

/// `2πc/λ` for a vacuum wavelength in nm.
pub fn angular_frequency_from_nm(lambda_nm: f64) -> f64 {
    2.0 * PI * CODATA.c_light / (lambda_nm * 1e-9)
}

pub fn debye_to_si(mu_debye: f64) -> f64 {
    mu_debye * CODATA.debye
}

pub fn fs(t_fs: f64) -> f64 {
    t_fs * FEMTOSECOND
}

pub fn to_fs(t: f64) -> f64 {
    t / FEMTOSECOND
}
