//! Real pencils of curves and their total reality with respect to a curve.

mod certify;
mod intersect;
mod partition;
mod search;

use num_traits::{One, Zero};

use crate::algebra::{interpolation_space, ProjPoint, ProjTransform, Rational, TernaryForm, UniPoly};
use crate::error::{Error, Result};
use crate::realroots::{isolate_square_free, square_free_part};

pub use certify::{certify_totally_real, certify_totally_real_seeded, CriticalParameter, ParameterCount, TotalRealityCertificate, Verdict};
pub use intersect::{intersect_member, IntersectionCount};
pub use partition::{degree_partition, moving_points, DegreePartition, MovingPoint};
pub(crate) use certify::parametric_resultant;
pub(crate) use partition::{base_abscissae, candidate_parameters};
pub use search::{search_totally_real_pencil, AttemptOutcome, AttemptRecord, BaseStrategy, SearchOutcome, SearchStrategy};

/// A point of the parameter line: the member `g + λ f`, or `f` at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PencilParameter {
    Finite(Rational),
    Infinity,
}

impl std::fmt::Display for PencilParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PencilParameter::Finite(l) => write!(f, "{l}"),
            PencilParameter::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub k: u32,
    pub f: TernaryForm,
    pub g: TernaryForm,
    pub base_points: Vec<ProjPoint>,
}

impl Pencil {
    pub fn new(f: TernaryForm, g: TernaryForm, base_points: Vec<ProjPoint>) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::Precondition("generators of different degrees".into()));
        }
        if f.proportional_to(&g) {
            return Err(Error::Precondition("generators are proportional".into()));
        }
        for p in &base_points {
            if !f.evaluate(p)?.is_zero() || !g.evaluate(p)?.is_zero() {
                return Err(Error::Precondition(format!("{p} is not a base point")));
            }
        }
        Ok(Pencil { k: f.degree(), f, g, base_points })
    }

    pub fn member(&self, t: &PencilParameter) -> TernaryForm {
        match t {
            PencilParameter::Finite(l) => self.g.add(&self.f.scale(l)),
            PencilParameter::Infinity => self.f.clone(),
        }
    }

    /// The same pencil with generators exchanged; the parameter becomes `1/λ`.
    pub fn swapped(&self) -> Self {
        Pencil { k: self.k, f: self.g.clone(), g: self.f.clone(), base_points: self.base_points.clone() }
    }

    pub fn transformed(&self, t: &ProjTransform) -> Self {
        Pencil {
            k: self.k,
            f: t.apply_form(&self.f),
            g: t.apply_form(&self.g),
            base_points: self.base_points.iter().map(|p| t.apply_point(p).normalized()).collect(),
        }
    }
}

/// The pencil of degree-`k` forms through `points`.
pub fn build_pencil(points: &[ProjPoint], k: u32) -> Result<Pencil> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].iter().any(|q| q.same_point(p)) {
            return Err(Error::Precondition("base points must be distinct".into()));
        }
    }
    let basis = interpolation_space(points, k)?;
    if basis.len() < 2 {
        return Err(Error::NoPencil(basis.len()));
    }
    Pencil::new(basis[0].clone(), basis[1].clone(), points.to_vec())
}

/// A real point of `V(f) ∩ V(g) ∩ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasePoint {
    Rational(ProjPoint),
    /// An irrational point, known through an isolating interval of its
    /// abscissa in the chart `chart`.
    Irrational { chart: ProjTransform, x_low: Rational, x_high: Rational },
}

/// Real points of the base locus lying on `C`.
pub fn base_locus_on_curve(c: &TernaryForm, p: &Pencil) -> Result<Vec<BasePoint>> {
    let d = c.degree() as usize;
    let k = p.k as usize;
    let chart = (0..64i64)
        .map(|t| {
            ProjTransform::new([
                [Rational::one(), Rational::from_integer(t.into()), Rational::zero()],
                [Rational::zero(), Rational::one(), Rational::zero()],
                [Rational::zero(), Rational::from_integer((t * t).into()), Rational::one()],
            ])
            .expect("unimodular")
        })
        .find(|t| !t.apply_form(c).coeff((0, d as u32, 0)).is_zero())
        .ok_or_else(|| Error::GenericPosition("no chart avoids the curve".into()))?;
    let c2 = chart.apply_form(c);
    let (f2, g2) = (chart.apply_form(&p.f), chart.apply_form(&p.g));
    let (cb, fb, gb) = (c2.dehomogenize(), f2.dehomogenize(), g2.dehomogenize());
    let rf = cb.resultant_y_formal(&fb, d, k)?;
    let rg = cb.resultant_y_formal(&gb, d, k)?;
    let common = rf.gcd(&rg);
    let inv = chart.inverse();
    let mut out = Vec::new();
    if common.deg() > 0 {
        for mut x in isolate_square_free(&square_free_part(&common)) {
            let Some(x0) = x.try_rational() else {
                out.push(BasePoint::Irrational { chart: chart.clone(), x_low: x.low().clone(), x_high: x.high().clone() });
                continue;
            };
            let x0 = &x0;
            let fiber = cb.eval_x(x0).gcd(&fb.eval_x(x0)).gcd(&gb.eval_x(x0));
            for y in real_rational_roots(&fiber)? {
                out.push(BasePoint::Rational(inv.apply_point(&ProjPoint::affine(x0.clone(), y)).normalized()));
            }
        }
    }
    // the line at infinity of the chart, where both resultants drop degree
    if rf.deg() < d * k && rg.deg() < d * k {
        let at_inf = |h: &TernaryForm| {
            let n = h.degree();
            UniPoly::new((0..=n).map(|b| h.coeff((n - b, b, 0))).collect())
        };
        let common = at_inf(&c2).gcd(&at_inf(&f2)).gcd(&at_inf(&g2));
        for m in real_rational_roots(&common)? {
            let q = ProjPoint([Rational::one(), m, Rational::zero()]);
            out.push(BasePoint::Rational(inv.apply_point(&q).normalized()));
        }
    }
    Ok(out)
}

/// Rational roots of `p` found among its real roots; irrational roots of a
/// fiber gcd would need a finer chart and are reported as an error.
fn real_rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::Precondition("base locus contains a curve".into()));
    }
    if p.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for mut r in isolate_square_free(&square_free_part(p)) {
        let y = r
            .try_rational()
            .ok_or_else(|| Error::Refinement("irrational base point above a rational abscissa".into()))?;
        out.push(y);
    }
    Ok(out)
}
