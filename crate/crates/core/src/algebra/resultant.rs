//! Sylvester resultants and discriminants.
//!
//! Sign convention: `Res(p, q)` is the determinant of the Sylvester matrix whose
//! first `deg q` rows hold the shifted coefficients of `p` (leading coefficient
//! first) and whose last `deg p` rows hold those of `q`. With this convention
//! `Res(y - a, y - b) = a - b` and `Res(y^2 - x, y) = -x`.

use num_traits::One;

use super::matrix::RationalMatrix;
use super::poly::UniPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Sylvester matrix of `p`, `q` read with formal degrees `m`, `n` (leading
/// coefficients may vanish).
pub fn sylvester_matrix(p: &UniPoly, m: usize, q: &UniPoly, n: usize) -> RationalMatrix {
    let size = m + n;
    let mut s = RationalMatrix::zeros(size, size);
    for r in 0..n {
        for i in 0..=m {
            s.set(r, r + i, p.coeff(m - i));
        }
    }
    for r in 0..m {
        for i in 0..=n {
            s.set(n + r, r + i, q.coeff(n - i));
        }
    }
    s
}

/// Resultant with formal degrees; specialises correctly under evaluation.
pub fn resultant_formal(p: &UniPoly, m: usize, q: &UniPoly, n: usize) -> Rational {
    debug_assert!(p.degree().is_none_or(|d| d <= m));
    debug_assert!(q.degree().is_none_or(|d| d <= n));
    if m + n == 0 {
        return Rational::one();
    }
    sylvester_matrix(p, m, q, n).determinant()
}

pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroResultant);
    }
    Ok(resultant_formal(p, p.deg(), q, q.deg()))
}

/// `(-1)^(n(n-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Result<Rational> {
    let n = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantDiscriminant),
        Some(n) => n,
    };
    let r = resultant_formal(p, n, &p.derivative(), n - 1);
    let s = if (n * (n - 1) / 2) % 2 == 0 { int(1) } else { int(-1) };
    Ok(s * r / p.leading())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::algebra::rational::rat;

    #[test]
    fn linear_resultant_sign() {
        let a = rat(2, 3);
        let b = int(-5);
        let p = UniPoly::linear_root(&a);
        let q = UniPoly::linear_root(&b);
        assert_eq!(resultant(&p, &q).unwrap(), &a - &b);
    }

    #[test]
    fn shared_root_vanishes() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        assert!(resultant(&p, &p).unwrap().is_zero());
        assert_eq!(
            resultant(&UniPoly::zero(), &p),
            Err(Error::ZeroResultant)
        );
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&UniPoly::from_ints(&[-2, 0, 1])).unwrap(), int(8));
        assert_eq!(discriminant(&UniPoly::from_ints(&[1, 0, 1])).unwrap(), int(-4));
        assert_eq!(discriminant(&UniPoly::from_ints(&[1, -2, 1])).unwrap(), int(0));
        assert!(discriminant(&UniPoly::from_ints(&[3])).is_err());
        // cubic x^3 + p x + q: -4p^3 - 27q^2
        let c = UniPoly::from_ints(&[5, -3, 0, 1]);
        assert_eq!(discriminant(&c).unwrap(), int(-4 * -27 - 27 * 25));
    }
}
