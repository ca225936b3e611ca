//! Mathematical constants, kept both as long decimal strings and as
//! double-double pairs so main terms can be evaluated past `f64` precision.

use crate::dd::DoubleDouble;

/// Euler's constant to 40 significant digits.
pub const EULER_GAMMA_DIGITS: &str = "0.5772156649015328606065120900824024310422";
/// π to 40 significant digits.
pub const PI_DIGITS: &str = "3.141592653589793238462643383279502884197";

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub(crate) const EULER_GAMMA_DD: DoubleDouble =
    DoubleDouble::from_parts(0.577_215_664_901_532_9, -4.942_915_152_430_645e-18);
pub(crate) const PI_DD: DoubleDouble =
    DoubleDouble::from_parts(std::f64::consts::PI, 1.224_646_799_147_353_2e-16);
pub(crate) const LN_2_DD: DoubleDouble =
    DoubleDouble::from_parts(std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17);

/// `2γ − 1`, the constant in the divisor and mean-square main terms.
pub(crate) fn two_gamma_minus_one() -> DoubleDouble {
    EULER_GAMMA_DD.mul_f64(2.0).sub_f64(1.0)
}

/// High-precision constants exposed to callers.
#[derive(Debug, Clone, Copy)]
pub struct Constants;

impl Constants {
    pub fn euler_gamma(&self) -> f64 {
        EULER_GAMMA
    }

    pub fn pi(&self) -> f64 {
        std::f64::consts::PI
    }

    pub fn euler_gamma_digits(&self) -> &'static str {
        EULER_GAMMA_DIGITS
    }

    pub fn pi_digits(&self) -> &'static str {
        PI_DIGITS
    }

    /// Value as (hi, lo) with hi + lo carrying about 32 significant digits.
    pub fn euler_gamma_pair(&self) -> (f64, f64) {
        (EULER_GAMMA_DD.hi(), EULER_GAMMA_DD.lo())
    }

    pub fn pi_pair(&self) -> (f64, f64) {
        (PI_DD.hi(), PI_DD.lo())
    }
}
