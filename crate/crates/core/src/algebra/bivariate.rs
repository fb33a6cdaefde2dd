//! Bivariate polynomials stored as polynomials in an outer variable (`y`) with
//! univariate coefficients in an inner variable (`x`).

use num_traits::Zero;

use super::poly::UniPoly;
use super::rational::{int, Rational};
use super::resultant::resultant_formal;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    /// `coeffs[j]` multiplies `y^j`.
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> UniPoly {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    /// Specialise the inner variable: a polynomial in `y`.
    pub fn eval_x(&self, x: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(x)).collect())
    }

    /// Specialise the outer variable: a polynomial in `x`.
    pub fn eval_y(&self, y: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(y) + c;
        }
        acc
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.eval_x(x).eval(y)
    }

    pub fn diff_y(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&int(j as i64)))
                .collect(),
        )
    }

    pub fn diff_x(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    /// Exchange the roles of the two variables.
    pub fn swap(&self) -> Self {
        let dx = self.deg_x();
        let cols = (0..=dx)
            .map(|i| UniPoly::new(self.coeffs.iter().map(|c| c.coeff(i)).collect()))
            .collect();
        Self::new(cols)
    }

    /// Resultant with respect to the outer variable, computed by evaluation at
    /// integer nodes of the inner variable and interpolation.
    pub fn resultant_y(&self, other: &Self) -> Result<UniPoly> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroResultant);
        }
        self.resultant_y_formal(other, self.deg_y(), other.deg_y())
    }

    /// Resultant with respect to `y` taking `m` and `n` as formal degrees.
    pub fn resultant_y_formal(&self, other: &Self, m: usize, n: usize) -> Result<UniPoly> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroResultant);
        }
        let bound = n * self.deg_x() + m * other.deg_x();
        let xs: Vec<Rational> = (0..=bound as i64).map(int).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| resultant_formal(&self.eval_x(x), m, &other.eval_x(x), n))
            .collect();
        Ok(UniPoly::interpolate(&xs, &ys))
    }

    /// Formal resultant of `self` and its `y`-derivative; its roots contain
    /// every `x` over which two roots in `y` collide or a root escapes.
    pub fn discriminant_y(&self) -> Result<UniPoly> {
        if self.deg_y() == 0 {
            return Err(Error::ConstantDiscriminant);
        }
        self.resultant_y(&self.diff_y())
    }

    /// Content in `x`: gcd of all coefficients.
    pub fn content_x(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn div_content(&self, c: &UniPoly) -> Self {
        Self::new(self.coeffs.iter().map(|k| k.exact_div(c)).collect())
    }

    /// Interpolate a bivariate polynomial from its specialisations in the outer
    /// variable: `slices[i] = self.eval_y(nodes[i])`.
    pub fn interpolate_y(nodes: &[Rational], slices: &[UniPoly]) -> Self {
        let dx = slices.iter().map(|s| s.deg()).max().unwrap_or(0);
        let mut cols = Vec::with_capacity(dx + 1);
        for i in 0..=dx {
            let vals: Vec<Rational> = slices.iter().map(|s| s.coeff(i)).collect();
            cols.push(UniPoly::interpolate(nodes, &vals));
        }
        // cols[i] is the coefficient of x^i as a polynomial in y
        Self::new(cols).swap()
    }

    pub fn is_const_in_y_leading(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.deg() == 0 && !c.is_zero())
    }

    pub fn leading_y(&self) -> UniPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn total_terms(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| c.coeffs().iter().filter(|v| !v.is_zero()).count())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y_minus_x_pow(k: usize) -> BiPoly {
        // y - x^k
        let mut c = vec![0i64; k + 1];
        c[k] = -1;
        BiPoly::new(vec![UniPoly::from_ints(&c), UniPoly::one()])
    }

    #[test]
    fn resultant_of_parabola_and_axis() {
        // Res_y(y^2 - x, y) = -x
        let p = BiPoly::new(vec![UniPoly::from_ints(&[0, -1]), UniPoly::zero(), UniPoly::one()]);
        let q = BiPoly::new(vec![UniPoly::zero(), UniPoly::one()]);
        assert_eq!(p.resultant_y(&q).unwrap(), UniPoly::from_ints(&[0, -1]));
    }

    #[test]
    fn resultant_eliminates_common_points() {
        // y = x^2 and y = x meet at x = 0, 1
        let r = y_minus_x_pow(2).resultant_y(&y_minus_x_pow(1)).unwrap();
        assert!(r.eval(&int(0)).is_zero());
        assert!(r.eval(&int(1)).is_zero());
        assert_eq!(r.deg(), 2);
    }

    #[test]
    fn swap_is_involutive() {
        let p = BiPoly::new(vec![UniPoly::from_ints(&[1, 2]), UniPoly::from_ints(&[0, 0, 3])]);
        assert_eq!(p.swap().swap(), p);
        assert_eq!(p.eval(&int(2), &int(3)), p.swap().eval(&int(3), &int(2)));
    }
}
