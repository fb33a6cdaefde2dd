//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, int, Rational};

/// Polynomial with coefficients in ascending degree order.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    /// Positive rational multiple with coprime integer coefficients.
    ///
    /// The sign is preserved, which is what Sturm chains need.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(self.coeffs.iter());
        let nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        Self::new(
            nums.into_iter()
                .map(|n| Rational::from_integer(n / &g))
                .collect(),
        )
    }

    /// Integer coefficients of the primitive part.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive()
            .coeffs
            .iter()
            .map(|c| c.numer().clone())
            .collect()
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.deg();
        if self.degree().is_none_or(|d| d < dd) {
            return (Self::zero(), self.clone());
        }
        let lc_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// A positive multiple of `self rem divisor` with coprime integer
    /// coefficients, computed by pseudo-division over the integers.
    pub fn primitive_rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.degree().is_none_or(|d| d < divisor.deg()) {
            return self.primitive();
        }
        let b = divisor.integer_coeffs();
        let mut r = self.integer_coeffs();
        let lb = b.last().expect("nonzero divisor").clone();
        let mut flips = false;
        while r.len() >= b.len() {
            let lr = r.pop().expect("nonempty");
            let shift = r.len() + 1 - b.len();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bc) in b.iter().enumerate().take(b.len() - 1) {
                r[shift + j] -= &lr * bc;
            }
            if lb.is_negative() {
                flips = !flips;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let g = r.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if g.is_zero() {
            return Self::zero();
        }
        let g = if flips { -g } else { g };
        Self::new(r.into_iter().map(|n| Rational::from_integer(n / &g)).collect())
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        let ints = |p: &Self| if p.is_zero() { Vec::new() } else { p.integer_coeffs() };
        let g = super::modular::gcd_integer(&ints(self), &ints(other));
        Self::new(g.into_iter().map(Rational::from_integer).collect()).monic()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(a*x + b)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// `x^deg * p(1/x)`, with `deg` the formal degree.
    pub fn reverse(&self, deg: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(deg + 1, Rational::zero());
        c.reverse();
        Self::new(c)
    }

    /// Bound `B` such that every complex root has modulus `< B` (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.deg())
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let b = Rational::one() + m / lc;
        // a power of two keeps bisection points dyadic and short
        let mut p = Rational::one();
        while p < b {
            p *= int(2);
        }
        p
    }

    /// Sign of the value at `x`. Integer coefficients are evaluated as
    /// `q^n p(a/q)` without rational normalisation.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        if !self.coeffs.iter().all(|c| c.is_integer()) {
            return super::rational::sign(&self.eval(x));
        }
        let Some(top) = self.coeffs.last() else {
            return 0;
        };
        let (a, q) = (x.numer(), x.denom());
        let mut acc = top.numer().clone();
        let mut qp = BigInt::one();
        for c in self.coeffs.iter().rev().skip(1) {
            qp *= q;
            acc = acc * a + c.numer() * &qp;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Polynomial through `(xs[i], ys[i])` by Newton divided differences.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Rational> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Self::linear_root(&xs[i])) + &Self::constant(dd[i].clone());
        }
        acc
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -Rational::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        let (q, r) = p.div_rem(&UniPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(&[-2, 1, 1]));
        let g = p.gcd(&p.derivative());
        assert_eq!(g, UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn primitive_keeps_sign() {
        let p = UniPoly::new(vec![rat(-1, 2), rat(-3, 4)]);
        assert_eq!(p.primitive(), UniPoly::from_ints(&[-2, -3]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::new(vec![rat(1, 3), int(-2), int(0), rat(5, 7)]);
        let xs: Vec<_> = (0..4).map(int).collect();
        let ys: Vec<_> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(UniPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn compose_and_reverse() {
        let p = UniPoly::from_ints(&[1, 2, 3]);
        // p(2x+1) = 3(2x+1)^2 + 2(2x+1) + 1 = 12x^2 + 16x + 6
        assert_eq!(
            p.compose_linear(&int(2), &int(1)),
            UniPoly::from_ints(&[6, 16, 12])
        );
        assert_eq!(p.reverse(2), UniPoly::from_ints(&[3, 2, 1]));
        assert_eq!(p.reverse(3), UniPoly::from_ints(&[0, 3, 2, 1]));
    }
}
