//! Search for totally real pencils through one point per chosen component.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::certify::{certify_totally_real_seeded, TotalRealityCertificate, Verdict};
use super::{build_pencil, Pencil};
use crate::algebra::rational::to_f64;
use crate::algebra::{rat, ProjPoint, TernaryForm};
use crate::error::{Error, Result};
use crate::topology::{ComponentKind, CurveTopology, DEFAULT_SEED};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseStrategy {
    /// The interior witness of each oval and a rounded traced point of the
    /// pseudo-line.
    Witness,
    /// Rational points of the curve; each is assigned to its component.
    OnCurve(Vec<ProjPoint>),
}

#[derive(Clone, Debug)]
pub struct SearchStrategy {
    pub base: BaseStrategy,
    /// Pencil degree; `None` means `d - 3`.
    pub degree: Option<u32>,
    /// Number of base points, one per component; `None` means `g - 2`.
    pub base_count: Option<usize>,
    /// Maximal number of base configurations tried.
    pub budget: usize,
    /// Stop after this many certified pencils.
    pub max_results: usize,
    pub seed: u64,
}

impl Default for SearchStrategy {
    fn default() -> Self {
        SearchStrategy {
            base: BaseStrategy::Witness,
            degree: None,
            base_count: None,
            budget: 50,
            max_results: 1,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttemptOutcome {
    TotallyReal,
    NotTotallyReal,
    NoPencil,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct AttemptRecord {
    pub components: Vec<usize>,
    pub base_points: Vec<ProjPoint>,
    pub outcome: AttemptOutcome,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub degree: u32,
    pub found: Vec<(Pencil, TotalRealityCertificate)>,
    pub attempts: Vec<AttemptRecord>,
}

impl SearchOutcome {
    pub fn exhausted(&self) -> bool {
        self.found.is_empty()
    }
}

fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    if r > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Trace point of the pseudo-line closest to the affine origin, rounded to
/// quarters. Points landing on another component fall back to the witness.
fn pseudo_line_point(c: &TernaryForm, topo: &CurveTopology, i: usize) -> Result<ProjPoint> {
    let comp = &topo.components[i];
    let near = comp
        .trace
        .iter()
        .filter_map(|p| p.to_affine())
        .map(|(x, y)| (to_f64(&x), to_f64(&y)))
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .min_by(|a, b| a.0.hypot(a.1).total_cmp(&b.0.hypot(b.1)));
    let Some((x, y)) = near else {
        return Ok(comp.witness.clone());
    };
    let q = |t: f64| rat((t * 4.0).round() as i64, 4);
    let p = ProjPoint::affine(q(x), q(y)).normalized();
    if c.evaluate(&p)?.is_zero() && topo.component_of_point(&p)? != i {
        return Ok(comp.witness.clone());
    }
    Ok(p)
}

/// Candidate base points on each component.
fn pools(c: &TernaryForm, topo: &CurveTopology, base: &BaseStrategy) -> Result<Vec<Vec<ProjPoint>>> {
    let mut pools = vec![Vec::new(); topo.components.len()];
    match base {
        BaseStrategy::Witness => {
            for (i, comp) in topo.components.iter().enumerate() {
                let p = match comp.kind {
                    ComponentKind::Oval => comp.witness.clone(),
                    ComponentKind::PseudoLine => pseudo_line_point(c, topo, i)?,
                };
                pools[i].push(p);
            }
        }
        BaseStrategy::OnCurve(points) => {
            for q in points {
                if !c.evaluate(q)?.is_zero() {
                    return Err(Error::Precondition(format!("{q} is not on the curve")));
                }
                let i = topo.component_of_point(q)?;
                if !pools[i].iter().any(|p: &ProjPoint| p.same_point(q)) {
                    pools[i].push(q.clone());
                }
            }
        }
    }
    Ok(pools)
}

/// Try base configurations, one point on each of `g - 2` components (ovals
/// before the pseudo-line), until enough totally real pencils are certified
/// or the budget runs out. Exhaustion is reported, not raised.
pub fn search_totally_real_pencil(c: &TernaryForm, topo: &CurveTopology, strategy: &SearchStrategy) -> Result<SearchOutcome> {
    if topo.components.is_empty() {
        return Err(Error::NoRealComponents);
    }
    let d = c.degree();
    let k = match strategy.degree {
        Some(k) => k,
        None if d >= 4 => d - 3,
        None => return Err(Error::Precondition("pencils of degree d - 3 need d >= 4".into())),
    };
    let n = strategy.base_count.unwrap_or(topo.genus.saturating_sub(2));
    let pools = pools(c, topo, &strategy.base)?;
    let mut order: Vec<usize> = topo.ovals();
    order.extend(topo.components.iter().enumerate().filter(|(_, c)| c.kind == ComponentKind::PseudoLine).map(|(i, _)| i));
    order.retain(|&i| !pools[i].is_empty());

    let mut outcome = SearchOutcome { degree: k, found: Vec::new(), attempts: Vec::new() };
    'outer: for subset in combinations(&order, n) {
        let sizes: Vec<usize> = subset.iter().map(|&i| pools[i].len()).collect();
        let mut digits = vec![0; n];
        loop {
            if outcome.attempts.len() >= strategy.budget || outcome.found.len() >= strategy.max_results {
                break 'outer;
            }
            let points: Vec<ProjPoint> = subset.iter().zip(&digits).map(|(&i, &j)| pools[i][j].clone()).collect();
            let result = match build_pencil(&points, k) {
                Err(Error::NoPencil(_)) => AttemptOutcome::NoPencil,
                Err(e) => AttemptOutcome::Failed(e.to_string()),
                Ok(pencil) => match certify_totally_real_seeded(c, &pencil, strategy.seed) {
                    Ok(cert) if cert.verdict == Verdict::TotallyReal => {
                        outcome.found.push((pencil, cert));
                        AttemptOutcome::TotallyReal
                    }
                    Ok(_) => AttemptOutcome::NotTotallyReal,
                    Err(e) => AttemptOutcome::Failed(e.to_string()),
                },
            };
            outcome.attempts.push(AttemptRecord { components: subset.clone(), base_points: points, outcome: result });
            // next configuration in mixed radix
            let Some(pos) = (0..n).rev().find(|&i| digits[i] + 1 < sizes[i]) else {
                break;
            };
            digits[pos] += 1;
            for dg in digits.iter_mut().skip(pos + 1) {
                *dg = 0;
            }
        }
    }
    Ok(outcome)
}
