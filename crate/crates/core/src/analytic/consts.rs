//! Numerical constants.

use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// zeta'(-1).
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_93;
/// zeta(-1).
pub const ZETA_MINUS_ONE: f64 = -1.0 / 12.0;
/// C = (log 4 pi + gamma)/2.
pub const PETERSSON_C: f64 = 1.554_119_955_935_411_8;

/// log 4 pi.
pub fn log_4pi() -> f64 {
    (4.0 * PI).ln()
}

/// f(0) = gamma - log 4 pi.
pub fn f0() -> f64 {
    EULER_GAMMA - log_4pi()
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SpecialValueTable {
    pub gamma_euler: f64,
    pub c: f64,
    pub f0: f64,
    pub gamma1_0: f64,
    pub zeta_prime_minus1: f64,
}

pub fn special_values() -> SpecialValueTable {
    SpecialValueTable {
        gamma_euler: EULER_GAMMA,
        c: PETERSSON_C,
        f0: f0(),
        gamma1_0: -EULER_GAMMA,
        zeta_prime_minus1: ZETA_PRIME_MINUS_ONE,
    }
}
