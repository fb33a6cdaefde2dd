//! Rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign as -1, 0 or +1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge values before conversion
            let bits = r.numer().bits().max(r.denom().bits()) as i64;
            let shift = (bits - 900).max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                f64::INFINITY * n.signum()
            } else {
                n / d
            }
        }
    }
}

/// Closest "simple" rational to a float, with denominator a power of two.
pub fn from_f64_dyadic(v: f64, bits: u32) -> Rational {
    let scale = (1u64 << bits) as f64;
    let n = (v * scale).round() as i64;
    Rational::new(BigInt::from(n), BigInt::from(1u64 << bits))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// A rational of small height strictly between `a` and `b` (requires `a < b`).
///
/// Walks the Stern-Brocot tree, so the result is the simplest fraction in the
/// open interval. Keeps sample points short, which matters for coefficient
/// growth downstream.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return Rational::zero();
    }
    if !a.is_negative() {
        return simplest_pos(a, b);
    }
    -simplest_pos(&-b, &-a)
}

fn simplest_pos(a: &Rational, b: &Rational) -> Rational {
    // strictly inside (a, b) with 0 <= a < b
    let fl = a.floor();
    let next = &fl + Rational::one();
    if next < *b {
        return next;
    }
    let fb = b - &fl;
    if &fl == a {
        // (fl, fl + fb) with 0 < fb <= 1
        let q = fb.recip().floor() + Rational::one();
        return fl + q.recip();
    }
    let fa = a - &fl;
    fl + simplest_pos(&fb.recip(), &fa.recip()).recip()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(vals: I) -> BigInt {
    vals.into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_between_picks_short_fractions() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(2, 3)), rat(1, 2));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(3, 1)), int(0));
        assert_eq!(simplest_between(&rat(3, 2), &rat(7, 2)), int(2));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 2)), int(-2));
        let s = simplest_between(&rat(1414, 1000), &rat(1415, 1000));
        assert!(s > rat(1414, 1000) && s < rat(1415, 1000));
        let s = simplest_between(&int(0), &rat(1, 1000));
        assert!(s > int(0) && s < rat(1, 1000));
        let s = simplest_between(&int(2), &rat(21, 10));
        assert!(s > int(2) && s < rat(21, 10));
    }

    #[test]
    fn parse_and_sign() {
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("5"), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(sign(&rat(-1, 7)), -1);
        assert_eq!(sign(&int(0)), 0);
    }

    #[test]
    fn f64_conversion_of_huge_values() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
