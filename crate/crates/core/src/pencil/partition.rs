//! Covering degrees of the induced morphism on each real component.

use serde::{Deserialize, Serialize};

use super::certify::TotalRealityCertificate;
use super::{base_locus_on_curve, BasePoint, Pencil, PencilParameter};
use crate::algebra::{rat, Rational, TernaryForm, UniPoly};
use crate::error::{Error, Result};
use crate::realroots::{isolate_square_free, square_free_part, RealAlgebraic};
use crate::topology::{CurveTopology, Location};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreePartition {
    /// Moving intersection points on each component, in topology order.
    pub entries: Vec<usize>,
}

impl DegreePartition {
    pub fn degree(&self) -> usize {
        self.entries.iter().sum()
    }
}

/// A real moving intersection point of `C` with one member, in the
/// topology chart.
#[derive(Clone, Debug)]
pub struct MovingPoint {
    pub x: RealAlgebraic,
    pub location: Location,
}

/// Abscissae, in the topology chart, of the real base points on the curve.
pub(crate) fn base_abscissae(c: &TernaryForm, topo: &CurveTopology, p: &Pencil) -> Result<Vec<Rational>> {
    let mut xs = Vec::new();
    for b in base_locus_on_curve(c, p)? {
        let BasePoint::Rational(q) = b else {
            return Err(Error::Refinement("irrational base point on the curve".into()));
        };
        let (x, _) = topo
            .sweep
            .chart
            .apply_point(&q)
            .to_affine()
            .ok_or_else(|| Error::GenericPosition("base point on the line at infinity of the chart".into()))?;
        xs.push(x);
    }
    Ok(xs)
}

/// The real intersection points of `C` with the member at `λ` other than
/// the base points, located on the topology, or `None` when `λ` is not
/// regular for the sweep: some moving intersection is non-transversal, at
/// infinity, on a critical fiber, or shares its vertical line with another
/// intersection point.
pub fn moving_points(
    topo: &CurveTopology,
    p: &Pencil,
    base_xs: &[Rational],
    lambda: &Rational,
) -> Result<Option<Vec<MovingPoint>>> {
    let sweep = &topo.sweep;
    let (d, k) = (topo.degree as usize, p.k as usize);
    let h = sweep.chart.apply_form(&p.member(&PencilParameter::Finite(lambda.clone()))).dehomogenize();
    let r = sweep.f.resultant_y_formal(&h, d, k)?;
    if r.deg() != d * k {
        return Ok(None);
    }
    let mut base = UniPoly::one();
    for b in base_xs {
        base = &base * &UniPoly::linear_root(b);
    }
    let (moving, rem) = r.div_rem(&base);
    if !rem.is_zero() {
        return Err(Error::Refinement("base point is not an intersection point".into()));
    }
    let sf = square_free_part(&moving);
    if sf.deg() != moving.deg() || sf.gcd(&sweep.disc).deg() > 0 || sf.gcd(&base).deg() > 0 {
        return Ok(None);
    }
    let all = &sf * &square_free_part(&base);
    let mut out = Vec::new();
    for x in isolate_square_free(&sf) {
        let location = sweep.locate(&h, &all, &x)?;
        out.push(MovingPoint { x, location });
    }
    Ok(Some(out))
}

/// Parameters tried, in order, when looking for a regular member.
pub(crate) fn candidate_parameters(cert: &TotalRealityCertificate) -> Vec<Rational> {
    let mut out = cert.regular_parameters();
    for j in 1..=40i64 {
        out.push(rat(j, 7));
        out.push(rat(-j, 11));
    }
    out
}

/// Number of moving intersection points on each component at a regular
/// parameter. The base points on the curve are fixed and not counted, so the
/// entries sum to `d k` minus the number of base points on `C`.
pub fn degree_partition(
    c: &TernaryForm,
    topo: &CurveTopology,
    p: &Pencil,
    cert: &TotalRealityCertificate,
) -> Result<DegreePartition> {
    if !cert.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let base_xs = base_abscissae(c, topo, p)?;
    for lambda in candidate_parameters(cert) {
        if let Some(points) = moving_points(topo, p, &base_xs, &lambda)? {
            return Ok(partition_of(topo, &points));
        }
    }
    Err(Error::Refinement("no regular member found".into()))
}

pub(crate) fn partition_of(topo: &CurveTopology, points: &[MovingPoint]) -> DegreePartition {
    let mut entries = vec![0; topo.components.len()];
    for q in points {
        entries[q.location.component] += 1;
    }
    DegreePartition { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ProjPoint;
    use crate::pencil::{build_pencil, certify_totally_real};
    use crate::topology::compute_topology;

    #[test]
    fn circle_interior_pencil_has_degree_two() {
        let c = TernaryForm::parse("x^2 + y^2 - z^2").unwrap();
        let t = compute_topology(&c).unwrap();
        let p = build_pencil(&[ProjPoint::ints(0, 0, 1)], 1).unwrap();
        let cert = certify_totally_real(&c, &p).unwrap();
        assert_eq!(degree_partition(&c, &t, &p, &cert).unwrap().entries, vec![2]);
    }

    #[test]
    fn base_point_on_the_curve_is_not_counted() {
        let c = TernaryForm::parse("x^2 + y^2 - z^2").unwrap();
        let t = compute_topology(&c).unwrap();
        let p = build_pencil(&[ProjPoint::ints(0, 1, 1)], 1).unwrap();
        let cert = certify_totally_real(&c, &p).unwrap();
        assert_eq!(degree_partition(&c, &t, &p, &cert).unwrap().entries, vec![1]);
    }
}
