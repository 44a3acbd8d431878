//! `f64` functions that `core` does not provide.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// `x^n` by repeated squaring.
pub(crate) fn powu(mut x: f64, mut n: u32) -> f64 {
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= x;
        }
        x *= x;
        n >>= 1;
    }
    acc
}

/// `sqrt(2 / π)` = E|ε| for ε ~ N(0, 1).
#[inline]
pub(crate) fn sqrt_2_over_pi() -> f64 {
    sqrt(2.0 / core::f64::consts::PI)
}
