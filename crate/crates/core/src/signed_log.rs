//! Sign-and-log representation for products with huge dynamic range.

use std::ops::{Mul, MulAssign};

/// A real number stored as `sign · exp(log_magnitude)`.
///
/// The residue sum multiplies factors whose magnitudes overflow or underflow
/// f64 long before the final result does, and whose signs alternate; carrying
/// sign and log magnitude separately keeps every intermediate representable.
/// `sign == 0` encodes exactly zero and the log magnitude is then ignored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLogValue {
    sign: i8,
    log_magnitude: f64,
}

impl SignedLogValue {
    pub const ZERO: Self = Self {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };

    pub const ONE: Self = Self {
        sign: 1,
        log_magnitude: 0.0,
    };

    /// Exact conversion from a finite f64.
    pub fn from_value(x: f64) -> Self {
        debug_assert!(!x.is_nan(), "cannot represent NaN");
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if x > 0.0 { 1 } else { -1 },
                log_magnitude: x.abs().ln(),
            }
        }
    }

    /// Assembles from a sign in {-1, 0, +1} and a natural-log magnitude.
    pub fn from_parts(sign: i8, log_magnitude: f64) -> Self {
        debug_assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 {
            Self::ZERO
        } else {
            Self {
                sign,
                log_magnitude,
            }
        }
    }

    /// `base^exponent` for a strictly positive base and any real exponent.
    pub fn positive_pow(base: f64, exponent: f64) -> Self {
        debug_assert!(base > 0.0 && base.is_finite());
        Self {
            sign: 1,
            log_magnitude: exponent * base.ln(),
        }
    }

    /// Integer power; the sign follows the parity of `n`.
    pub fn powu(self, n: u32) -> Self {
        if self.sign == 0 {
            return if n == 0 { Self::ONE } else { Self::ZERO };
        }
        let sign = if self.sign < 0 && n % 2 == 1 { -1 } else { 1 };
        Self::from_parts(sign, self.log_magnitude * f64::from(n))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Back to linear space. Overflows to ±inf / underflows to ±0 as f64 does.
    pub fn value(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_magnitude.exp()
        }
    }
}

impl Mul for SignedLogValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            Self::ZERO
        } else {
            Self {
                sign: self.sign * rhs.sign,
                log_magnitude: self.log_magnitude + rhs.log_magnitude,
            }
        }
    }
}

impl MulAssign for SignedLogValue {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}
