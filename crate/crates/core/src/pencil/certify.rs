//! Exact certification of total reality over the whole parameter line.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::intersect::{intersect_member, IntersectionCount};
use super::{Pencil, PencilParameter};
use crate::algebra::{int, BiPoly, ProjTransform, Rational, TernaryForm, UniPoly};
use crate::error::{Error, Result};
use crate::realroots::{isolate_square_free, simplest_between_roots, square_free_part, RealAlgebraic};
use crate::topology::{random_transform, DEFAULT_SEED};

const CHART_ATTEMPTS: usize = 16;
const RATIONAL_PROBE_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    TotallyReal,
    NotTotallyReal,
}

/// A parameter where two intersection points may collide or escape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalParameter {
    pub low: Rational,
    pub high: Rational,
    /// The parameter itself when it is detected to be rational.
    pub exact: Option<Rational>,
    /// Exact count at a rational critical parameter. At an irrational one the
    /// count is not evaluated: total reality is a closed condition, so it
    /// follows from the neighbouring open intervals.
    pub count: Option<IntersectionCount>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterCount {
    pub parameter: PencilParameter,
    pub count: IntersectionCount,
}

#[derive(Clone, Debug)]
pub struct TotalRealityCertificate {
    pub verdict: Verdict,
    pub curve_degree: u32,
    pub pencil_degree: u32,
    /// Coordinates in which the parameter discriminant was computed.
    pub projection: ProjTransform,
    /// `Res_x(R, dR/dx)` after removing the fixed base-point factor.
    pub discriminant: UniPoly,
    pub critical: Vec<CriticalParameter>,
    /// One sample per open interval between critical parameters in ascending
    /// order, then the member at infinity.
    pub samples: Vec<ParameterCount>,
    /// A parameter whose member meets the curve in non-real points.
    pub witness: Option<PencilParameter>,
}

impl TotalRealityCertificate {
    pub fn is_totally_real(&self) -> bool {
        self.verdict == Verdict::TotallyReal
    }

    /// Every evaluated parameter with its count.
    pub fn evaluated(&self) -> Vec<(PencilParameter, IntersectionCount)> {
        let mut out: Vec<_> = self.samples.iter().map(|s| (s.parameter.clone(), s.count)).collect();
        for c in &self.critical {
            if let (Some(l), Some(n)) = (&c.exact, c.count) {
                out.push((PencilParameter::Finite(l.clone()), n));
            }
        }
        out
    }

    /// Finite samples of the open intervals.
    pub fn regular_parameters(&self) -> Vec<Rational> {
        self.samples
            .iter()
            .filter_map(|s| match &s.parameter {
                PencilParameter::Finite(l) => Some(l.clone()),
                PencilParameter::Infinity => None,
            })
            .collect()
    }
}

/// `R(x, λ) = Res_y(C, g + λ f)` in the chart of `t`, with `λ` as the outer
/// variable.
pub(crate) fn parametric_resultant(t: &ProjTransform, c: &TernaryForm, p: &Pencil) -> Result<Option<BiPoly>> {
    let (d, k) = (c.degree() as usize, p.k as usize);
    let c2 = t.apply_form(c);
    if c2.coeff((0, d as u32, 0)).is_zero() {
        return Ok(None);
    }
    let cb = c2.dehomogenize();
    let nodes: Vec<Rational> = (0..=d as i64).map(int).collect();
    let mut slices = Vec::with_capacity(nodes.len());
    for l in &nodes {
        let h = t.apply_form(&p.member(&PencilParameter::Finite(l.clone()))).dehomogenize();
        slices.push(cb.resultant_y_formal(&h, d, k)?);
    }
    let r = BiPoly::interpolate_y(&nodes, &slices);
    if r.is_zero() {
        return Err(Error::Precondition("the pencil contains the curve".into()));
    }
    Ok(Some(r))
}

fn parameter_discriminant(r: &BiPoly) -> Result<UniPoly> {
    let moving = r.div_content(&r.content_x());
    let n = moving.deg_x();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let s = moving.swap();
    s.resultant_y_formal(&s.diff_y(), n, n - 1)
}

pub fn certify_totally_real(c: &TernaryForm, p: &Pencil) -> Result<TotalRealityCertificate> {
    certify_totally_real_seeded(c, p, DEFAULT_SEED)
}

/// Certify whether every member of the pencil meets `C` in real points only.
///
/// The real roots of the parameter discriminant cut the parameter line into
/// open intervals on which the number of real intersection points is
/// constant, so one exact count per interval decides the question; members
/// at the critical parameters are limits of totally real ones.
pub fn certify_totally_real_seeded(c: &TernaryForm, p: &Pencil, seed: u64) -> Result<TotalRealityCertificate> {
    if p.k >= c.degree() {
        return Err(Error::Precondition("pencil degree must be below the curve degree".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = None;
    for attempt in 0..CHART_ATTEMPTS {
        let chart = if attempt == 0 { ProjTransform::identity() } else { random_transform(&mut rng) };
        let Some(r) = parametric_resultant(&chart, c, p)? else {
            continue;
        };
        let disc = parameter_discriminant(&r)?;
        if !disc.is_zero() {
            found = Some((chart, disc));
            break;
        }
    }
    let (projection, discriminant) =
        found.ok_or_else(|| Error::GenericPosition("no projection separates the moving intersection points".into()))?;
    let sqf = square_free_part(&discriminant);
    let roots: Vec<RealAlgebraic> =
        if discriminant.deg() == 0 { Vec::new() } else { isolate_square_free(&sqf) };

    let m = roots.len();
    let mut sample_params = Vec::with_capacity(m + 2);
    for i in 0..=m {
        let s = if m == 0 {
            Rational::zero()
        } else if i == 0 {
            (roots[0].low() - int(1)).floor()
        } else if i == m {
            (roots[m - 1].high() + int(1)).ceil()
        } else {
            simplest_between_roots(&mut roots[i - 1].clone(), &mut roots[i].clone())
        };
        sample_params.push(PencilParameter::Finite(s));
    }
    sample_params.push(PencilParameter::Infinity);

    let mut samples = Vec::with_capacity(sample_params.len());
    for t in sample_params {
        let count = intersect_member(c, &p.member(&t))?;
        samples.push(ParameterCount { parameter: t, count });
    }
    let mut critical = Vec::with_capacity(m);
    for mut r in roots {
        let exact = r.rational_probe(RATIONAL_PROBE_BITS);
        let count = match &exact {
            Some(l) => Some(intersect_member(c, &p.member(&PencilParameter::Finite(l.clone())))?),
            None => None,
        };
        critical.push(CriticalParameter { low: r.low().clone(), high: r.high().clone(), exact, count });
    }
    let witness = samples.iter().find(|s| !s.count.is_totally_real()).map(|s| s.parameter.clone());
    let verdict = if witness.is_none() { Verdict::TotallyReal } else { Verdict::NotTotallyReal };
    Ok(TotalRealityCertificate {
        verdict,
        curve_degree: c.degree(),
        pencil_degree: p.k,
        projection,
        discriminant,
        critical,
        samples,
        witness,
    })
}
