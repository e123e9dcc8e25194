//! Thin wrappers over `libm` so the rest of the crate reads like `std` float code.

pub(crate) use libm::{cos, cosh, exp, floor, log, log10, sin, sinh, sqrt};

pub(crate) fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, f64::from(n))
}

pub(crate) fn is_odd(n: u32) -> bool {
    n % 2 == 1
}

/// `(-1)^n` as a float.
pub(crate) fn neg_one_pow(n: u32) -> f64 {
    if is_odd(n) {
        -1.0
    } else {
        1.0
    }
}
