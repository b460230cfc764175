//! Exact rationals, primes, and decimal rendering.

use num_integer::Integer;
use num_rational::Ratio;

pub type Rational = Ratio<u64>;

pub fn is_prime(n: u64) -> bool {
    n >= 2 && crate::lattice::smallest_prime_factor(n) == n
}

/// `(p, a)` pairs with `n = Π p^a`, primes ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut a = 0;
            while n % d == 0 {
                n /= d;
                a += 1;
            }
            out.push((d, a));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `(p, a)` when `n = p^a` with `a ≥ 1`.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    match prime_factors(n).as_slice() {
        [single] => Some(*single),
        _ => None,
    }
}

/// Renders `r` with `digits` fractional digits, rounding half to even.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let (num, den) = (*r.numer() as u128, *r.denom() as u128);
    let scale = 10u128.pow(digits);
    let (q, rem) = (num * scale).div_rem(&den);
    let twice = rem * 2;
    let rounded = if twice > den || (twice == den && q % 2 == 1) {
        q + 1
    } else {
        q
    };
    let (int, frac) = rounded.div_rem(&scale);
    if digits == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac:0width$}", width = digits as usize)
    }
}

pub fn rational_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes a rational as `"n/d"` (or `"n"`), for `#[serde(serialize_with)]`.
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_factors(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_factors(1), vec![]);
        assert_eq!(as_prime_power(27), Some((3, 3)));
        assert_eq!(as_prime_power(12), None);
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&Rational::new(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&Rational::new(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&Rational::new(22, 9), 12), "2.444444444444");
        assert_eq!(to_decimal(&Rational::new(1, 1), 12), "1.000000000000");
        // exact halves round to even
        assert_eq!(to_decimal(&Rational::new(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&Rational::new(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&Rational::new(5, 2), 0), "2");
        assert_eq!(rational_string(&Rational::new(10, 4)), "5/2");
    }
}
