//! Exact rationals used throughout the crate.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational with 128-bit numerator and denominator.
pub type Q = Ratio<i128>;

#[inline]
pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

#[inline]
pub fn qi(n: i64) -> Q {
    Q::from_integer(n as i128)
}

/// Returns the value as an `i64` if it is an integer.
pub fn as_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Largest integer `k >= 0` with `k * k <= x`, for `x >= 0`.
pub fn floor_sqrt(x: &Q) -> i64 {
    if x.is_negative() || x.is_zero() {
        return 0;
    }
    let f = x.floor().to_integer();
    (f as u128).isqrt() as i64
}

/// `x mod m` for an integral rational, normalized to `0..m`.
pub fn integer_mod(x: &Q, m: i64) -> Option<i64> {
    as_integer(x).map(|v| v.mod_floor(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_floor() {
        assert_eq!(floor_sqrt(&qi(0)), 0);
        assert_eq!(floor_sqrt(&qi(24)), 4);
        assert_eq!(floor_sqrt(&qi(25)), 5);
        assert_eq!(floor_sqrt(&q(99, 4)), 4);
        assert_eq!(floor_sqrt(&q(-3, 1)), 0);
    }

    #[test]
    fn modular() {
        assert_eq!(integer_mod(&qi(-3), 2), Some(1));
        assert_eq!(integer_mod(&q(1, 2), 2), None);
    }
}
