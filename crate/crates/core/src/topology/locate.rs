//! Exact assignment of real points to arcs of the sweep.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::sweep::{certify_bands, fiber, ArcRef, Band, Sweep};
use crate::algebra::rational::int;
use crate::algebra::{BiPoly, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::realroots::{count_real_roots_closed, root_free_on, RealAlgebraic};

const LOCATE_ATTEMPTS: usize = 200;

/// Where a real point of the curve sits in the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub component: usize,
    /// The arc through the point; `None` when the point lies on a critical fiber.
    pub arc: Option<ArcRef>,
}

fn isolating_window(rs: &UniPoly, disc: &UniPoly, x0: &RealAlgebraic) -> Result<(Rational, Rational)> {
    let ok = |a: &Rational, b: &Rational| {
        !rs.eval(a).is_zero()
            && !rs.eval(b).is_zero()
            && root_free_on(disc, a, b)
            && count_real_roots_closed(rs, a, b).is_ok_and(|n| n == 1)
    };
    let mut x = x0.clone();
    for _ in 0..LOCATE_ATTEMPTS {
        if x.is_rational() {
            let c = x.low().clone();
            let mut delta = Rational::one();
            for _ in 0..LOCATE_ATTEMPTS {
                let (a, b) = (&c - &delta, &c + &delta);
                if ok(&a, &b) {
                    return Ok((a, b));
                }
                delta /= int(2);
            }
            break;
        }
        if ok(x.low(), x.high()) {
            return Ok((x.low().clone(), x.high().clone()));
        }
        x.bisect();
    }
    Err(Error::Refinement("no regular window around an intersection abscissa".into()))
}

fn band_component(sweep: &Sweep, j: usize, band: &Band) -> usize {
    match (band.left.first(), band.right.first()) {
        (Some(&l), _) => sweep.slices[j].component[l],
        (None, Some(&r)) => sweep.slices[j + 1].component[r],
        (None, None) => unreachable!("bands are nonempty"),
    }
}

impl Sweep {
    /// Locate the real intersection point of the curve with `h = 0` (chart
    /// coordinates) whose abscissa is `x0`. `rs` must be square-free and
    /// vanish at `x0`, and the point must be the only intersection point,
    /// real or complex, above `x0`, with multiplicity one.
    pub fn locate(&self, h: &BiPoly, rs: &UniPoly, x0: &RealAlgebraic) -> Result<Location> {
        for (j, cf) in self.critical.iter().enumerate() {
            let mut x = x0.clone();
            let mut c = cf.value.clone();
            if x.cmp_algebraic(&mut c) == Ordering::Equal {
                return self.locate_critical(j, h, rs);
            }
        }
        let (a, b) = isolating_window(rs, &self.disc, x0)?;
        let k = self
            .slice_of(&a)
            .ok_or_else(|| Error::Refinement("window endpoint on a critical fiber".into()))?;
        let mut left = fiber(&self.f, &a);
        let mut right = fiber(&self.f, &b);
        let (ha, hb) = (h.eval_x(&a), h.eval_x(&b));
        let mut hits = Vec::new();
        for i in 0..left.len() {
            let sa = left[i].sign_of(&ha);
            let sb = right[i].sign_of(&hb);
            if sa * sb < 0 {
                hits.push(i);
            }
        }
        match hits.as_slice() {
            [i] => Ok(Location {
                component: self.slices[k].component[*i],
                arc: Some(ArcRef { slice: k, branch: *i, rightward: self.slices[k].rightward[*i] }),
            }),
            _ => Err(Error::Refinement(format!("{} arcs change sign around one abscissa", hits.len()))),
        }
    }

    fn locate_critical(&self, j: usize, h: &BiPoly, rs: &UniPoly) -> Result<Location> {
        let mut cf = self.critical[j].clone();
        for _ in 0..LOCATE_ATTEMPTS {
            let window_ok = !rs.eval(&cf.lo).is_zero()
                && !rs.eval(&cf.hi).is_zero()
                && count_real_roots_closed(rs, &cf.lo, &cf.hi).is_ok_and(|n| n == 1);
            if window_ok {
                if let Some(bands) = certify_bands(&self.f, &cf.lo, &cf.hi) {
                    let mut left = fiber(&self.f, &cf.lo);
                    let mut right = fiber(&self.f, &cf.hi);
                    let (hl, hr) = (h.eval_x(&cf.lo), h.eval_x(&cf.hi));
                    let mut hits = Vec::new();
                    for band in &bands {
                        let mut signs: Vec<i8> = band.left.iter().map(|&i| left[i].sign_of(&hl)).collect();
                        signs.extend(band.right.iter().map(|&i| right[i].sign_of(&hr)));
                        if signs.len() == 2 && signs[0] * signs[1] < 0 {
                            hits.push(band_component(self, j, band));
                        }
                    }
                    return match hits.as_slice() {
                        [c] => Ok(Location { component: *c, arc: None }),
                        _ => Err(Error::Refinement(format!(
                            "{} bands change sign on a critical fiber",
                            hits.len()
                        ))),
                    };
                }
            }
            cf.shrink();
        }
        Err(Error::Refinement("critical fiber could not be resolved".into()))
    }

    /// Component through a rational point of the curve given in chart
    /// coordinates.
    pub fn locate_rational(&self, x: &Rational, y: &Rational) -> Result<usize> {
        if !self.f.eval(x, y).is_zero() {
            return Err(Error::Precondition("point is not on the curve".into()));
        }
        if let Some(k) = self.slice_of(x) {
            let mut roots = fiber(&self.f, x);
            for (i, r) in roots.iter_mut().enumerate() {
                if r.cmp_rational(y) == Ordering::Equal {
                    return Ok(self.slices[k].component[i]);
                }
            }
            return Err(Error::Refinement("point not found on its fiber".into()));
        }
        // a critical fiber: the band containing y decides
        for (j, cf) in self.critical.iter().enumerate() {
            let mut v = cf.value.clone();
            if v.cmp_rational(x) != Ordering::Equal {
                continue;
            }
            for band in &cf.bands {
                let above_low = band.below.as_ref().is_none_or(|t| t < y);
                let below_high = band.above.as_ref().is_none_or(|t| y < t);
                if above_low && below_high {
                    return Ok(band_component(self, j, band));
                }
            }
        }
        Err(Error::Refinement("point could not be placed".into()))
    }

    /// Component crossing the line at infinity at slope `m`, if any.
    pub fn component_at_infinity(&self, m: &mut RealAlgebraic) -> Option<usize> {
        let last = self.slices.len() - 1;
        for (i, s) in self.slopes.iter().enumerate() {
            let mut s = s.clone();
            if s.cmp_algebraic(m) == Ordering::Equal {
                return Some(self.slices[last].component[i]);
            }
        }
        None
    }
}

/// Sign of `p` at the `i`-th root of `f(x0, .)`.
pub fn sign_on_fiber(f: &BiPoly, x0: &Rational, i: usize, p: &UniPoly) -> Option<i8> {
    let mut roots = fiber(f, x0);
    roots.get_mut(i).map(|r| r.sign_of(p))
}

#[cfg(test)]
mod tests {
    use crate::algebra::TernaryForm;
    use crate::topology::compute_topology;

    #[test]
    fn locate_points_on_two_circles() {
        // two disjoint circles; the line y = 0 meets each twice
        let c = TernaryForm::parse("(x^2 + y^2 - z^2)*((x - 4*z)^2 + y^2 - z^2) + 1/1000*(x^4 + y^4 + z^4)").unwrap();
        let t = compute_topology(&c).unwrap();
        assert_eq!(t.components.len(), 2);
        let sw = &t.sweep;
        let line = TernaryForm::parse("y").unwrap();
        let h = sw.chart.apply_form(&line).dehomogenize();
        let r = sw.f.resultant_y(&h).unwrap();
        let rs = crate::realroots::square_free_part(&r);
        let roots = crate::realroots::isolate_square_free(&rs);
        assert_eq!(roots.len(), 4);
        let comps: Vec<usize> = roots.iter().map(|x| sw.locate(&h, &rs, x).unwrap().component).collect();
        assert_eq!(comps[0], comps[1]);
        assert_eq!(comps[2], comps[3]);
        assert_ne!(comps[0], comps[2]);
    }
}
