//! Convex and non-convex position of the four ovals of a quintic.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{ProjPoint, Rational, RationalMatrix, TernaryForm};
use crate::error::{Error, Result};
use crate::realroots::{count_real_roots, square_free_part};
use crate::topology::{compute_topology, interior_witnesses, ComponentKind, CurveTopology};

/// Interior points tried per oval before giving up on degenerate choices.
const WITNESSES_PER_OVAL: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Position {
    Convex,
    NonConvex,
    Inapplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Separating,
    NonSeparating,
    Unknown,
}

/// Three ovals whose connecting segments avoid the pseudo-line and enclose
/// the fourth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleWitness {
    /// The enclosed oval.
    pub inner: usize,
    pub inner_point: ProjPoint,
    pub vertices: [usize; 3],
    pub points: [ProjPoint; 3],
    /// Lines through `points[0], points[1]`, then `points[1], points[2]`,
    /// then `points[2], points[0]`.
    pub lines: [TernaryForm; 3],
    /// The segment on line `i` from `P` to `Q` is `{P + t Q}` for `t` of
    /// this sign, with the representatives stored in `points`.
    pub segment_signs: [i8; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuinticVerdict {
    pub position: Position,
    pub conclusion: Conclusion,
    pub triangle: Option<TriangleWitness>,
}

/// Side of the segment from `p` to `q` that avoids the pseudo-line.
///
/// The line through interior points of two ovals meets each of them at
/// least twice, and the pseudo-line an odd number of times, so for a quintic
/// it meets both ovals exactly twice, the pseudo-line once and nothing else.
/// Each segment then crosses either oval once, and the segment free of the
/// pseudo-line is the one with exactly two real intersections.
fn free_segment(c: &TernaryForm, p: &ProjPoint, q: &ProjPoint) -> Result<Option<i8>> {
    // F(u p + q): u > 0 is the segment {p + t q, t > 0}
    let r = c.restrict_to_line(p, q);
    if r.deg() != 5 || square_free_part(&r).deg() != 5 {
        return Ok(None);
    }
    let zero = Rational::zero();
    let pos = count_real_roots(&r, Some(&zero), None)?;
    let neg = count_real_roots(&r, None, Some(&zero))?;
    match (pos, neg) {
        (2, 3) => Ok(Some(1)),
        (3, 2) => Ok(Some(-1)),
        _ => Ok(None),
    }
}

fn det3(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Rational {
    RationalMatrix::from_rows(vec![a.0.to_vec(), b.0.to_vec(), c.0.to_vec()]).determinant()
}

fn negate(p: &ProjPoint) -> ProjPoint {
    ProjPoint([-p.0[0].clone(), -p.0[1].clone(), -p.0[2].clone()])
}

/// Whether `x` lies in the open triangle `{αa + βb + γc}` with coefficients
/// of one sign.
fn in_triangle(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, x: &ProjPoint) -> Option<bool> {
    let d = det3(a, b, c);
    let coords = [det3(x, b, c), det3(a, x, c), det3(a, b, x)];
    if coords.iter().any(Zero::is_zero) {
        return None;
    }
    let s: Vec<bool> = coords.iter().map(|v| v.is_positive() == d.is_positive()).collect();
    Some(s.iter().all(|&v| v) || s.iter().all(|&v| !v))
}

fn lexicographic(bounds: [usize; 4]) -> impl Iterator<Item = [usize; 4]> {
    let total: usize = bounds.iter().product();
    (0..total).map(move |mut n| {
        let mut out = [0; 4];
        for i in (0..4).rev() {
            out[i] = n % bounds[i];
            n /= bounds[i];
        }
        out
    })
}

/// Test of one distinguished oval against the other three. `None` when every
/// choice of interior points was degenerate.
fn enclosed_by_others(c: &TernaryForm, witnesses: &[Vec<ProjPoint>], ovals: &[usize], inner: usize) -> Result<Option<Option<TriangleWitness>>> {
    let others: Vec<usize> = ovals.iter().copied().filter(|&o| o != inner).collect();
    let bounds = [witnesses[others[0]].len(), witnesses[others[1]].len(), witnesses[others[2]].len(), witnesses[inner].len()];
    'choice: for [i, j, k, m] in lexicographic(bounds) {
        let pts = [witnesses[others[0]][i].clone(), witnesses[others[1]][j].clone(), witnesses[others[2]][k].clone()];
        let x = &witnesses[inner][m];
        if det3(&pts[0], &pts[1], &pts[2]).is_zero() {
            continue;
        }
        let mut signs = [0i8; 3];
        for e in 0..3 {
            match free_segment(c, &pts[e], &pts[(e + 1) % 3])? {
                Some(s) => signs[e] = s,
                None => continue 'choice,
            }
        }
        if signs.iter().map(|&s| s as i32).product::<i32>() != 1 {
            // the three free segments close up into a loop missing the
            // pseudo-line, hence a contractible one
            return Err(Error::Refinement("free segments do not bound a triangle".into()));
        }
        let b = if signs[0] > 0 { pts[1].clone() } else { negate(&pts[1]) };
        let cc = if signs[0] * signs[1] > 0 { pts[2].clone() } else { negate(&pts[2]) };
        let Some(inside) = in_triangle(&pts[0], &b, &cc, x) else {
            continue;
        };
        if !inside {
            return Ok(Some(None));
        }
        let lines = [0, 1, 2].map(|e| TernaryForm::linear(&pts[e].cross(&pts[(e + 1) % 3])));
        return Ok(Some(Some(TriangleWitness {
            inner,
            inner_point: x.clone(),
            vertices: [others[0], others[1], others[2]],
            points: pts,
            lines,
            segment_signs: signs,
        })));
    }
    Ok(None)
}

/// Position of the four ovals of a quintic with five components.
pub fn non_convex_position(c: &TernaryForm, topo: &CurveTopology) -> Result<(Position, Option<TriangleWitness>)> {
    if topo.degree != 5 || topo.components.len() != 5 {
        return Ok((Position::Inapplicable, None));
    }
    if topo.has_nesting() {
        return Err(Error::Precondition("ovals of the quintic are nested".into()));
    }
    let ovals: Vec<usize> = (0..5).filter(|&i| topo.components[i].kind == ComponentKind::Oval).collect();
    let mut witnesses = vec![Vec::new(); 5];
    for &o in &ovals {
        witnesses[o] = interior_witnesses(topo, o, WITNESSES_PER_OVAL)?;
    }
    for &inner in &ovals {
        match enclosed_by_others(c, &witnesses, &ovals, inner)? {
            Some(Some(t)) => return Ok((Position::NonConvex, Some(t))),
            Some(None) => {}
            None => return Err(Error::GenericPosition(format!("every choice of interior points is degenerate for oval {inner}"))),
        }
    }
    Ok((Position::Convex, None))
}

/// Topology and position of a smooth quintic, with the conclusion it forces.
pub fn classify_quintic(c: &TernaryForm) -> Result<QuinticVerdict> {
    if c.degree() != 5 {
        return Ok(QuinticVerdict { position: Position::Inapplicable, conclusion: Conclusion::Unknown, triangle: None });
    }
    let topo = compute_topology(c)?;
    classify_with_topology(c, &topo)
}

pub fn classify_with_topology(c: &TernaryForm, topo: &CurveTopology) -> Result<QuinticVerdict> {
    let (position, triangle) = non_convex_position(c, topo)?;
    let conclusion = match position {
        Position::NonConvex => Conclusion::Separating,
        Position::Convex => Conclusion::NonSeparating,
        Position::Inapplicable => Conclusion::Unknown,
    };
    Ok(QuinticVerdict { position, conclusion, triangle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn quartic_is_inapplicable() {
        let c = fixtures::load("harnack-quartic").unwrap().form().unwrap();
        let v = classify_quintic(&c).unwrap();
        assert_eq!((v.position, v.conclusion), (Position::Inapplicable, Conclusion::Unknown));
    }

    #[test]
    fn triangle_membership() {
        let (a, b, c) = (ProjPoint::ints(0, 0, 1), ProjPoint::ints(4, 0, 1), ProjPoint::ints(0, 4, 1));
        assert_eq!(in_triangle(&a, &b, &c, &ProjPoint::ints(1, 1, 1)), Some(true));
        assert_eq!(in_triangle(&a, &b, &c, &ProjPoint::ints(5, 5, 1)), Some(false));
        assert_eq!(in_triangle(&a, &b, &negate(&c), &ProjPoint::ints(1, 1, 1)), Some(false));
        assert_eq!(in_triangle(&a, &b, &c, &ProjPoint::ints(2, 0, 1)), None);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let v: Vec<[usize; 4]> = lexicographic([1, 1, 2, 2]).collect();
        assert_eq!(v, vec![[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 0, 1, 1]]);
    }
}
