//! Smoothness test by elimination in several affine charts.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ProjPoint, ProjTransform, Rational, TernaryForm, UniPoly};
use crate::realroots::{isolate_square_free, square_free_part};

const CHART_ATTEMPTS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// A rational singular point when one could be located.
    Singular(Option<ProjPoint>),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

/// Random unimodular-ish integer change of coordinates.
pub(crate) fn random_transform(rng: &mut ChaCha8Rng) -> ProjTransform {
    loop {
        let m: [[Rational; 3]; 3] = std::array::from_fn(|_| {
            std::array::from_fn(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into()))
        });
        if let Ok(t) = ProjTransform::new(m) {
            return t;
        }
    }
}

/// Affine singular points of the chart form lie over common roots of
/// `Res_y(g, g_y)` and `Res_y(g, g_x)`; a constant gcd rules them out.
fn chart_gcd(g: &TernaryForm) -> Option<UniPoly> {
    if g.coeff((0, g.degree(), 0)).is_zero() {
        return None;
    }
    let f = g.dehomogenize();
    let r1 = f.resultant_y(&f.diff_y()).ok()?;
    let fx = f.diff_x();
    let r2 = if fx.is_zero() { UniPoly::zero() } else { f.resultant_y(&fx).ok()? };
    Some(r1.gcd(&r2))
}

/// Rational singular points of the chart form above rational roots of `h`.
fn rational_singular_points(g: &TernaryForm, h: &UniPoly) -> Vec<ProjPoint> {
    let f = g.dehomogenize();
    let (fx, fy) = (f.diff_x(), f.diff_y());
    let mut out = Vec::new();
    if h.deg() == 0 {
        return out;
    }
    for x in isolate_square_free(&square_free_part(h)) {
        if !x.is_rational() {
            continue;
        }
        let x0 = x.low();
        let common = f.eval_x(x0).gcd(&fx.eval_x(x0)).gcd(&fy.eval_x(x0));
        if common.deg() == 0 {
            continue;
        }
        for y in isolate_square_free(&square_free_part(&common)) {
            if y.is_rational() {
                out.push(ProjPoint::affine(x0.clone(), y.low().clone()));
            }
        }
    }
    out
}

/// Decide whether `F = 0` is smooth over the complex numbers.
///
/// Two charts whose affine parts are certified free of singular points cover
/// everything except the meeting point of their lines at infinity, which is
/// checked directly. A singular verdict is returned when no such pair turns
/// up within the attempt budget.
pub fn check_smooth(form: &TernaryForm) -> Smoothness {
    check_smooth_seeded(form, 0x5eed)
}

pub fn check_smooth_seeded(form: &TernaryForm, seed: u64) -> Smoothness {
    if form.degree() == 1 {
        return Smoothness::Smooth;
    }
    let partials: Vec<TernaryForm> = (0..3).map(|i| form.partial(i)).collect();
    let singular_at = |p: &ProjPoint| partials.iter().all(|d| d.is_zero() || d.eval_coords(&p.0).is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut certified: Vec<[Rational; 3]> = Vec::new();
    let mut suspects: Vec<(ProjTransform, TernaryForm, UniPoly)> = Vec::new();
    for attempt in 0..CHART_ATTEMPTS {
        let t = if attempt == 0 { ProjTransform::identity() } else { random_transform(&mut rng) };
        let g = t.apply_form(form);
        let Some(h) = chart_gcd(&g) else {
            continue;
        };
        if h.deg() > 0 {
            suspects.push((t, g, h));
            continue;
        }
        let line = t.matrix()[2].clone();
        for other in &certified {
            let q = ProjPoint(line.clone()).cross(&ProjPoint(other.clone()));
            if q.iter().all(|c| c.is_zero()) {
                continue;
            }
            let q = ProjPoint(q);
            if !singular_at(&q) {
                return Smoothness::Smooth;
            }
            return Smoothness::Singular(Some(q.normalized()));
        }
        certified.push(line);
    }
    for (t, g, h) in &suspects {
        let inv = t.inverse();
        for p in rational_singular_points(g, h) {
            let q = inv.apply_point(&p);
            if singular_at(&q) {
                return Smoothness::Singular(Some(q.normalized()));
            }
        }
    }
    Smoothness::Singular(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_is_smooth() {
        let f = TernaryForm::parse("x^2 + y^2 - z^2").unwrap();
        assert!(check_smooth(&f).is_smooth());
    }

    #[test]
    fn three_lines_are_singular() {
        let f = TernaryForm::parse("x*y*z").unwrap();
        let v = check_smooth(&f);
        let Smoothness::Singular(Some(p)) = v else {
            panic!("expected a located singular point, got {v:?}");
        };
        assert!((0..3).all(|i| f.partial(i).evaluate(&p).unwrap().is_zero()));
    }

    #[test]
    fn nodal_cubic_is_singular() {
        // y^2 = x^2 (x + 1) has a node at the origin
        let f = TernaryForm::parse("y^2*z - x^3 - x^2*z").unwrap();
        assert_eq!(check_smooth(&f), Smoothness::Singular(Some(ProjPoint::ints(0, 0, 1))));
    }

    #[test]
    fn fermat_quartic_is_smooth() {
        let f = TernaryForm::parse("x^4 + y^4 + z^4").unwrap();
        assert!(check_smooth(&f).is_smooth());
    }
}
