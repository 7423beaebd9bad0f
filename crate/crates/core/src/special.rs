//! Log-domain special functions: ln Γ, ln q! and the Pochhammer symbol.

use crate::signed_log::SignedLogValue;

/// Largest `q` for which the Pochhammer symbol is accumulated by direct
/// iteration in log space; larger arguments switch to a ln Γ difference.
const ITERATIVE_MAX: u32 = 64;

/// Natural logarithm of the gamma function for `x > 0`, using the Lanczos
/// approximation with `g = 5` (relative error ~1e-10).
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires a positive argument");
    const COEFFICIENTS: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    const SQRT_TWO_PI: f64 = 2.5066282746310005;

    let tmp = x + 5.5;
    let log = (x + 0.5) * tmp.ln() - tmp;

    let mut series = 1.000000000190015;
    let mut denom = x;
    for coeff in &COEFFICIENTS {
        denom += 1.0;
        series += coeff / denom;
    }

    log + (SQRT_TWO_PI * series / x).ln()
}

/// ln q!, exact iterative product for small `q`, ln Γ(q+1) beyond.
pub fn ln_factorial(q: u32) -> f64 {
    if q <= ITERATIVE_MAX {
        (2..=q).map(|k| f64::from(k).ln()).sum()
    } else {
        ln_gamma(f64::from(q) + 1.0)
    }
}

/// The Pochhammer symbol (c)_q = c (c+1) ⋯ (c+q−1) in signed-log form.
///
/// For `c > 0` the sign is always `+1`; `q = 0` gives the empty product 1.
pub fn pochhammer_log(c: f64, q: u32) -> SignedLogValue {
    assert!(c > 0.0 && c.is_finite(), "pochhammer_log requires c > 0");
    let log = if q <= ITERATIVE_MAX {
        (0..q).map(|k| (c + f64::from(k)).ln()).sum()
    } else {
        ln_gamma(c + f64::from(q)) - ln_gamma(c)
    };
    SignedLogValue::from_parts(1, log)
}
