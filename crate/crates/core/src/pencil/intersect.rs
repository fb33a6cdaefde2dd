//! Real intersection counts of the curve with a single member, with
//! multiplicities.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, ProjTransform, TernaryForm, UniPoly};
use crate::error::{Error, Result};
use crate::realroots::{real_roots, square_free_part};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCount {
    /// Real intersection points counted with multiplicity.
    pub real: usize,
    pub distinct_real: usize,
    /// Pairs of complex conjugate points counted with multiplicity.
    pub complex_pairs: usize,
    /// Bezout number `d k`.
    pub total: usize,
}

impl IntersectionCount {
    pub fn is_totally_real(&self) -> bool {
        self.real == self.total
    }
}

/// `Res_y(C, H)` in the chart of `t` as a binary form in `(x : z)`, returned
/// dehomogenized; the missing degree is the multiplicity of the root `(1 : 0)`.
pub(crate) fn binary_resultant(t: &ProjTransform, c: &TernaryForm, h: &TernaryForm) -> Result<Option<UniPoly>> {
    let c2 = t.apply_form(c);
    let (d, k) = (c.degree() as usize, h.degree() as usize);
    if c2.coeff((0, d as u32, 0)).is_zero() {
        return Ok(None);
    }
    let h2 = t.apply_form(h);
    let r = c2.dehomogenize().resultant_y_formal(&h2.dehomogenize(), d, k)?;
    if r.is_zero() {
        return Err(Error::Precondition("member shares a component with the curve".into()));
    }
    Ok(Some(r))
}

/// Projection from `(t : -1 : t^2)`: the centers run along a conic, so at
/// most finitely many of them are special for a given intersection.
fn center_chart(t: i64) -> ProjTransform {
    let t = int(t);
    let t2 = &t * &t;
    ProjTransform::new([
        [int(1), t, int(0)],
        [int(0), int(1), int(0)],
        [int(0), t2, int(1)],
    ])
    .expect("unimodular")
}

fn count_from(r: &UniPoly, total: usize) -> Result<IntersectionCount> {
    let at_infinity = total - r.deg();
    let mut real = at_infinity;
    let mut distinct_real = usize::from(at_infinity > 0);
    if r.deg() > 0 {
        for (_, m) in real_roots(r)? {
            real += m;
            distinct_real += 1;
        }
    }
    let complex = total - real;
    if complex % 2 == 1 {
        return Err(Error::Refinement("odd number of non-real intersections".into()));
    }
    Ok(IntersectionCount { real, distinct_real, complex_pairs: complex / 2, total })
}

fn distinct_roots(r: &UniPoly, total: usize) -> usize {
    let finite = if r.deg() == 0 { 0 } else { square_free_part(r).deg() };
    finite + usize::from(r.deg() < total)
}

/// Count the real points of `C ∩ H` with intersection multiplicity.
///
/// When the resultant is square-free as a binary form every root is a single
/// transversal intersection. Otherwise projection centers are tried until
/// the number of distinct roots is provably maximal, at which point each
/// root carries exactly one intersection point.
pub fn intersect_member(c: &TernaryForm, h: &TernaryForm) -> Result<IntersectionCount> {
    let (d, k) = (c.degree() as usize, h.degree() as usize);
    let total = d * k;
    if k == 0 {
        return Ok(IntersectionCount { real: 0, distinct_real: 0, complex_pairs: 0, total: 0 });
    }
    // lines through two intersection points meet the conic of centers twice,
    // the curve meets it 2d times
    let budget = total * (total - 1) + 2 * d + 1;
    let mut best: Option<(usize, UniPoly)> = None;
    let mut tried = 0;
    let mut t = 0i64;
    while tried < budget {
        let chart = center_chart(t);
        t = if t > 0 { -t } else { 1 - t };
        tried += 1;
        let Some(r) = binary_resultant(&chart, c, h)? else {
            continue;
        };
        let n = distinct_roots(&r, total);
        if n == total {
            return count_from(&r, total);
        }
        if best.as_ref().is_none_or(|(m, _)| n > *m) {
            best = Some((n, r));
        }
    }
    let (_, r) = best.ok_or_else(|| Error::GenericPosition("every projection center lies on the curve".into()))?;
    count_from(&r, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(c: &str, h: &str) -> IntersectionCount {
        intersect_member(&TernaryForm::parse(c).unwrap(), &TernaryForm::parse(h).unwrap()).unwrap()
    }

    #[test]
    fn circle_and_lines() {
        let c = "x^2 + y^2 - z^2";
        assert_eq!(count(c, "y"), IntersectionCount { real: 2, distinct_real: 2, complex_pairs: 0, total: 2 });
        assert_eq!(count(c, "z"), IntersectionCount { real: 0, distinct_real: 0, complex_pairs: 1, total: 2 });
        assert_eq!(count(c, "x - z"), IntersectionCount { real: 2, distinct_real: 1, complex_pairs: 0, total: 2 });
    }

    #[test]
    fn parabola_meets_its_tangent_at_infinity_twice() {
        // (0:1:0) lies on the parabola, so the default center is skipped
        let c = "y*z - x^2";
        assert_eq!(count(c, "z").real, 2);
        assert_eq!(count(c, "z").distinct_real, 1);
        assert_eq!(count(c, "x").distinct_real, 2);
        assert_eq!(count(c, "y + z").real, 0);
    }

    #[test]
    fn inflection_tangent_of_a_cubic() {
        // z = 0 meets y^2 z = x^3 - x z^2 only at (0:1:0), with multiplicity 3
        let c = TernaryForm::parse("y^2*z - x^3 + x*z^2").unwrap();
        let n = intersect_member(&c, &TernaryForm::parse("z").unwrap()).unwrap();
        assert_eq!((n.real, n.distinct_real, n.total), (3, 1, 3));
    }

    #[test]
    fn common_component_is_rejected() {
        let c = TernaryForm::parse("x*y - z^2").unwrap();
        let h = TernaryForm::parse("x*y - z^2").unwrap();
        assert!(intersect_member(&c, &h).is_err());
    }
}
