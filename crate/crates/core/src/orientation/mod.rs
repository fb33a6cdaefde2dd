//! Complex orientations induced by totally real pencils, signs of ovals and
//! the position of the ovals of a quintic.

mod position;

use serde::{Deserialize, Serialize};

use crate::algebra::TernaryForm;
use crate::error::{Error, Result};
use crate::pencil::{base_abscissae, candidate_parameters, moving_points, parametric_resultant, Pencil, TotalRealityCertificate};
use crate::topology::{ComponentKind, CurveTopology};

pub use position::{classify_quintic, classify_with_topology, non_convex_position, Conclusion, Position, QuinticVerdict, TriangleWitness};

/// Parameters at which the directions must agree before they are accepted.
const CONSISTENCY_PARAMETERS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn from_sign(s: i8) -> Self {
        if s > 0 {
            Direction::Forward
        } else {
            Direction::Backward
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One of the two complex orientations, as a direction on each component
/// relative to its stored traversal. Only defined up to reversing every flag
/// at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentOrientation {
    pub flags: Vec<Direction>,
}

impl ComponentOrientation {
    pub fn reversed(&self) -> Self {
        ComponentOrientation { flags: self.flags.iter().map(|d| d.reversed()).collect() }
    }

    /// Equal up to one global reversal.
    pub fn equivalent(&self, other: &Self) -> bool {
        self == other || *self == other.reversed()
    }
}

/// Orientation of the real locus pulled back from the parameter line.
///
/// A moving intersection point with abscissa `x(λ)` in the topology chart
/// satisfies `R(x(λ), λ) = 0`, so the sign of `dx/dλ = -R_λ / R_x` together
/// with the direction of its arc gives the motion against the traversal.
/// All points of a component must agree, at two regular parameters.
pub fn induced_orientation(
    c: &TernaryForm,
    topo: &CurveTopology,
    p: &Pencil,
    cert: &TotalRealityCertificate,
) -> Result<ComponentOrientation> {
    if !cert.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let r = parametric_resultant(&topo.sweep.chart, c, p)?
        .ok_or_else(|| Error::GenericPosition("topology chart is not monic in y".into()))?;
    let r_lambda = r.diff_y();
    let base_xs = base_abscissae(c, topo, p)?;
    let n = topo.components.len();
    let mut agreed: Option<Vec<i8>> = None;
    let mut used = 0;
    for lambda in candidate_parameters(cert) {
        let Some(points) = moving_points(topo, p, &base_xs, &lambda)? else {
            continue;
        };
        let rx = r.eval_y(&lambda).derivative();
        let rl = r_lambda.eval_y(&lambda);
        let mut signs = vec![0i8; n];
        let mut usable = true;
        for mut q in points {
            let (Some(arc), sx, sl) = (q.location.arc, q.x.sign_of(&rx), q.x.sign_of(&rl)) else {
                usable = false;
                break;
            };
            if sx == 0 || sl == 0 {
                usable = false;
                break;
            }
            let s = -sx * sl * if arc.rightward { 1 } else { -1 };
            let slot = &mut signs[q.location.component];
            if *slot == -s {
                return Err(Error::Refinement(format!(
                    "points of component {} move in opposite directions",
                    q.location.component
                )));
            }
            *slot = s;
        }
        if !usable {
            continue;
        }
        if let Some(i) = signs.iter().position(|&s| s == 0) {
            return Err(Error::Refinement(format!("no moving point on component {i}")));
        }
        match &agreed {
            None => agreed = Some(signs),
            Some(prev) if *prev == signs => {}
            Some(_) => return Err(Error::Refinement("directions differ between two parameters".into())),
        }
        used += 1;
        if used == CONSISTENCY_PARAMETERS {
            break;
        }
    }
    match agreed {
        Some(signs) if used == CONSISTENCY_PARAMETERS => {
            Ok(ComponentOrientation { flags: signs.into_iter().map(Direction::from_sign).collect() })
        }
        _ => Err(Error::Refinement("not enough regular parameters to fix the directions".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OvalSign {
    Positive,
    Negative,
}

/// Sign of every oval, `None` at the pseudo-line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvalSigns {
    pub signs: Vec<Option<OvalSign>>,
}

impl OvalSigns {
    pub fn count(&self, s: OvalSign) -> usize {
        self.signs.iter().filter(|x| **x == Some(s)).count()
    }

    pub fn ovals_with(&self, s: OvalSign) -> Vec<usize> {
        (0..self.signs.len()).filter(|&i| self.signs[i] == Some(s)).collect()
    }
}

/// Classes of an oval `O` and of the pseudo-line `J` in the Möbius band
/// outside `O`, read off on a vertical line through `O`.
///
/// The part of the vertical line above the top crossing with `O` and below
/// the bottom one, joined through infinity, is an arc cutting the band into
/// a disc. Co-oriented by `+x` above and `-x` below (the two agree through
/// infinity), its signed crossings give `[O] = dir_top - dir_bottom` and
/// `[J]` as the sum over the crossings of `J` on the arc.
fn classes_on_slice(topo: &CurveTopology, o: usize, j: usize, k: usize, flags: &[Direction]) -> Option<(i64, i64)> {
    let slice = &topo.sweep.slices[k];
    let dir = |i: usize| {
        let s = flags[slice.component[i]].sign() as i64;
        if slice.rightward[i] {
            s
        } else {
            -s
        }
    };
    let on_o: Vec<usize> = (0..slice.branches).filter(|&i| slice.component[i] == o).collect();
    let (&bottom, &top) = (on_o.first()?, on_o.last()?);
    let class_o = dir(top) - dir(bottom);
    let mut class_j = 0;
    for i in (0..slice.branches).filter(|&i| slice.component[i] == j) {
        if i > top {
            class_j += dir(i);
        } else if i < bottom {
            class_j -= dir(i);
        }
    }
    Some((class_o, class_j))
}

/// `O` is positive when `[O] = -2[J]` in the Möbius band outside `O`, with
/// both classes oriented by the same complex orientation. Every slice that
/// meets the oval is evaluated and must agree.
pub fn oval_signs(topo: &CurveTopology, o: &ComponentOrientation) -> Result<OvalSigns> {
    if topo.degree.is_multiple_of(2) {
        return Err(Error::Precondition("oval signs need a curve of odd degree".into()));
    }
    let j = topo.pseudo_line().ok_or_else(|| Error::Precondition("no pseudo-line".into()))?;
    if o.flags.len() != topo.components.len() {
        return Err(Error::Precondition("orientation does not match the topology".into()));
    }
    if topo.has_nesting() {
        return Err(Error::NestedOvals);
    }
    let mut signs = vec![None; topo.components.len()];
    for (c, comp) in topo.components.iter().enumerate() {
        if comp.kind != ComponentKind::Oval {
            continue;
        }
        let mut sign = None;
        for k in 0..topo.sweep.slices.len() {
            let Some((class_o, class_j)) = classes_on_slice(topo, c, j, k, &o.flags) else {
                continue;
            };
            if class_o.abs() != 2 || class_j.abs() != 1 {
                return Err(Error::Refinement(format!("oval {c}: classes {class_o} and {class_j} on slice {k}")));
            }
            let s = if class_o == -2 * class_j { OvalSign::Positive } else { OvalSign::Negative };
            if sign.is_some_and(|t| t != s) {
                return Err(Error::Refinement(format!("oval {c}: slices disagree on the sign")));
            }
            sign = Some(s);
        }
        signs[c] = Some(sign.ok_or_else(|| Error::Refinement(format!("oval {c} meets no slice")))?);
    }
    Ok(OvalSigns { signs })
}
