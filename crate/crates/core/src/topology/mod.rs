//! Topology of the real locus of a smooth plane projective curve.
//!
//! The curve is swept in a randomly chosen affine chart whose line at
//! infinity is transversal to the curve and misses every oval. Components are
//! recovered as cycles of arcs, classified by the parity of their crossings
//! with the line at infinity, and each oval receives an exact interior point.

mod locate;
mod smooth;
mod sweep;

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{int, rat, simplest_between};
use crate::algebra::{ProjPoint, ProjTransform, Rational, TernaryForm};
use crate::error::{Error, Result};
use crate::realroots::{count_real_roots, simplest_between_roots, RealAlgebraic};

pub use locate::{sign_on_fiber, Location};
pub use smooth::{check_smooth, check_smooth_seeded, Smoothness};
pub(crate) use smooth::random_transform;
pub use sweep::{certify_bands, chart_is_admissible, fiber, infinity_poly, ArcRef, Band, CriticalFiber, Cycle, Slice, Sweep};

/// Default seed for chart selection.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Oval,
    PseudoLine,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub kind: ComponentKind,
    /// Interior point for an oval; a point next to the curve for the pseudo-line.
    pub witness: ProjPoint,
    /// The witness in chart coordinates.
    pub chart_witness: (Rational, Rational),
    /// Approximate points along the component in traversal order.
    pub trace: Vec<ProjPoint>,
    /// Arcs of the sweep in traversal order.
    pub arcs: Vec<ArcRef>,
}

#[derive(Clone, Debug)]
pub struct CurveTopology {
    pub degree: u32,
    pub genus: usize,
    /// The pseudo-line, when present, comes first.
    pub components: Vec<Component>,
    /// Immediately surrounding oval of each component.
    pub nesting: Vec<Option<usize>>,
    pub sweep: Sweep,
}

#[derive(Clone, Copy, Debug)]
pub struct TopologyOptions {
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for TopologyOptions {
    fn default() -> Self {
        TopologyOptions { seed: DEFAULT_SEED, max_retries: 16 }
    }
}

pub fn genus(d: u32) -> usize {
    let d = d as usize;
    if d < 3 {
        0
    } else {
        (d - 1) * (d - 2) / 2
    }
}

pub fn compute_topology(form: &TernaryForm) -> Result<CurveTopology> {
    compute_topology_with(form, TopologyOptions::default())
}

pub fn compute_topology_with(form: &TernaryForm, opts: TopologyOptions) -> Result<CurveTopology> {
    if let Smoothness::Singular(p) = check_smooth_seeded(form, opts.seed) {
        return Err(Error::Singular(p.map(|p| p.to_string())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last = String::from("no admissible chart");
    for attempt in 0..opts.max_retries.max(1) {
        let chart = if attempt == 0 { ProjTransform::identity() } else { pick_chart(form, &mut rng) };
        let g = chart.apply_form(form);
        if !chart_is_admissible(&g) {
            continue;
        }
        let sweep = match Sweep::build(chart, g) {
            Ok(s) => s,
            Err(Error::GenericPosition(msg)) => {
                last = msg;
                continue;
            }
            Err(e) => return Err(e),
        };
        if sweep.cycles.iter().any(|c| c.infinity_crossings > 0 && c.infinity_crossings % 2 == 0) {
            last = "an oval meets the line at infinity".into();
            continue;
        }
        return assemble(form.degree(), sweep);
    }
    Err(Error::GenericPosition(format!("{last} after {} charts", opts.max_retries)))
}

/// Random chart whose line at infinity `t x + u y + z = 0` lies at a random
/// distance from the origin, between about 1/4 and 16.
fn chart_transform(rng: &mut ChaCha8Rng) -> ProjTransform {
    loop {
        let scale = 1i64 << rng.gen_range(0..=4);
        let (t, u) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
        if t == 0 && u == 0 {
            continue;
        }
        let m = [
            [int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3))],
            [int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3))],
            [rat(t, scale), rat(u, scale), int(1)],
        ];
        if let Ok(chart) = ProjTransform::new(m) {
            return chart;
        }
    }
}

/// Candidate charts drawn per attempt while looking for one whose line at
/// infinity provably misses every oval.
const CHART_CANDIDATES: usize = 64;

/// A chart whose line at infinity meets the curve in `d mod 2` real points
/// when one turns up: such a line misses every oval, since an oval meets a
/// line an even number of times. Otherwise the first admissible candidate.
fn pick_chart(form: &TernaryForm, rng: &mut ChaCha8Rng) -> ProjTransform {
    let minimal = (form.degree() % 2) as usize;
    let mut fallback = None;
    for _ in 0..CHART_CANDIDATES {
        let chart = chart_transform(rng);
        let g = chart.apply_form(form);
        if !chart_is_admissible(&g) {
            continue;
        }
        if count_real_roots(&infinity_poly(&g), None, None).is_ok_and(|n| n == minimal) {
            return chart;
        }
        fallback.get_or_insert(chart);
    }
    fallback.unwrap_or_else(|| chart_transform(rng))
}

fn separate(p: &mut RealAlgebraic, q: &mut RealAlgebraic) -> Rational {
    while p.high() >= q.low() {
        if p.is_rational() || (!q.is_rational() && (q.high() - q.low()) > (p.high() - p.low())) {
            q.bisect();
        } else {
            p.bisect();
        }
    }
    simplest_between(p.high(), q.low())
}

fn median_slice(arcs: &[ArcRef]) -> usize {
    let mut s: Vec<usize> = arcs.iter().map(|a| a.slice).collect();
    s.sort_unstable();
    s[s.len() / 2]
}

/// Point just below the topmost branch of component `c` in slice `k`.
fn witness_below_top(sweep: &Sweep, c: usize, k: usize) -> (Rational, Rational) {
    let x = sweep.slices[k].sample.clone();
    let mut roots = fiber(&sweep.f, &x);
    let top = (0..roots.len()).rev().find(|&i| sweep.slices[k].component[i] == c).expect("component has a branch");
    let y = if top == 0 {
        roots[0].low() - int(1)
    } else {
        let (lo, hi) = roots.split_at_mut(top);
        simplest_between_roots(&mut lo[top - 1], &mut hi[0])
    };
    (x, y)
}

/// Point just above the topmost branch of component `c` in slice `k`.
fn witness_above_top(sweep: &Sweep, c: usize, k: usize) -> (Rational, Rational) {
    let x = sweep.slices[k].sample.clone();
    let mut roots = fiber(&sweep.f, &x);
    let top = (0..roots.len()).rev().find(|&i| sweep.slices[k].component[i] == c).expect("component has a branch");
    let y = if top + 1 == roots.len() {
        roots[top].high() + int(1)
    } else {
        let (lo, hi) = roots.split_at_mut(top + 1);
        separate(&mut lo[top], &mut hi[0])
    };
    (x, y)
}

/// Whether the chart point `(x, y)`, off the curve, lies inside oval cycle `c`.
fn chart_contains(sweep: &Sweep, c: usize, x: &Rational, y: &Rational) -> Result<bool> {
    let k = sweep
        .slice_of(x)
        .ok_or_else(|| Error::Refinement("containment query on a critical fiber".into()))?;
    let mut roots = fiber(&sweep.f, x);
    let mut above = 0;
    for (i, r) in roots.iter_mut().enumerate() {
        if sweep.slices[k].component[i] != c {
            continue;
        }
        match r.cmp_rational(y) {
            Ordering::Greater => above += 1,
            Ordering::Equal => return Err(Error::Precondition("point lies on the curve".into())),
            Ordering::Less => {}
        }
    }
    Ok(above % 2 == 1)
}

fn assemble(degree: u32, mut sweep: Sweep) -> Result<CurveTopology> {
    // pseudo-line first, then ovals in cycle order
    let mut order: Vec<usize> = (0..sweep.cycles.len()).collect();
    order.sort_by_key(|&c| sweep.cycles[c].infinity_crossings.is_multiple_of(2));
    let mut rank = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    for s in sweep.slices.iter_mut() {
        for c in s.component.iter_mut() {
            *c = rank[*c];
        }
    }
    sweep.cycles = order.iter().map(|&c| sweep.cycles[c].clone()).collect();
    let pseudo = sweep.cycles.iter().filter(|c| c.infinity_crossings % 2 == 1).count();
    if pseudo != (degree % 2) as usize {
        return Err(Error::GenericPosition(format!("{pseudo} pseudo-lines on a curve of degree {degree}")));
    }

    let inv = sweep.chart.inverse();
    let width = rat(1, 1 << 20);
    let samples: Vec<_> = (0..sweep.slices.len()).map(|k| sweep.slice_samples(k, &width)).collect();
    let mut components = Vec::with_capacity(sweep.cycles.len());
    for (c, cycle) in sweep.cycles.iter().enumerate() {
        let kind = if cycle.infinity_crossings % 2 == 1 { ComponentKind::PseudoLine } else { ComponentKind::Oval };
        let k = median_slice(&cycle.arcs);
        let (x, y) = match kind {
            ComponentKind::Oval => witness_below_top(&sweep, c, k),
            ComponentKind::PseudoLine => witness_above_top(&sweep, c, k),
        };
        let witness = inv.apply_point(&ProjPoint::affine(x.clone(), y.clone())).normalized();
        let mut trace = Vec::new();
        for a in &cycle.arcs {
            let pts = &samples[a.slice][a.branch];
            let mut seg: Vec<ProjPoint> = pts
                .iter()
                .map(|(px, py)| inv.apply_point(&ProjPoint::affine(px.clone(), py.clone())).normalized())
                .collect();
            if !a.rightward {
                seg.reverse();
            }
            trace.extend(seg);
        }
        components.push(Component { kind, witness, chart_witness: (x, y), trace, arcs: cycle.arcs.clone() });
    }

    let n = components.len();
    let mut containers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        let (x, y) = components[a].chart_witness.clone();
        for b in 0..n {
            if a != b && components[b].kind == ComponentKind::Oval && chart_contains(&sweep, b, &x, &y)? {
                containers[a].push(b);
            }
        }
    }
    let nesting = (0..n)
        .map(|a| {
            let depth = containers[a].len();
            containers[a].iter().copied().find(|&b| containers[b].len() + 1 == depth)
        })
        .collect();
    Ok(CurveTopology { degree, genus: genus(degree), components, nesting, sweep })
}

/// Exact interior point of an oval, checked by crossing parity.
pub fn interior_witness(topo: &CurveTopology, oval: usize) -> Result<ProjPoint> {
    let comp = topo
        .components
        .get(oval)
        .ok_or_else(|| Error::OutOfRange(format!("component {oval}")))?;
    if comp.kind != ComponentKind::Oval {
        return Err(Error::Precondition("component is not an oval".into()));
    }
    let (x, y) = &comp.chart_witness;
    if !chart_contains(&topo.sweep, oval, x, y)? {
        return Err(Error::Refinement("witness failed the parity check".into()));
    }
    Ok(comp.witness.clone())
}

/// Interior points of an oval, one per slice it visits, starting with the
/// stored witness and moving away from its slice.
pub fn interior_witnesses(topo: &CurveTopology, oval: usize, limit: usize) -> Result<Vec<ProjPoint>> {
    let first = interior_witness(topo, oval)?;
    let arcs = &topo.components[oval].arcs;
    let mid = median_slice(arcs);
    let mut slices: Vec<usize> = arcs.iter().map(|a| a.slice).collect();
    slices.sort_unstable();
    slices.dedup();
    slices.sort_by_key(|&k| k.abs_diff(mid));
    let inv = topo.sweep.chart.inverse();
    let mut out = vec![first];
    for k in slices.into_iter().skip(1) {
        if out.len() >= limit {
            break;
        }
        let (x, y) = witness_below_top(&topo.sweep, oval, k);
        out.push(inv.apply_point(&ProjPoint::affine(x, y)).normalized());
    }
    Ok(out)
}

/// `C` is an `(M - i)`-curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MclassLabel {
    pub i: usize,
}

pub fn classify_m_label(topo: &CurveTopology) -> Result<MclassLabel> {
    let l = topo.components.len();
    let bound = topo.genus + 1;
    if l > bound {
        return Err(Error::HarnackViolation { components: l, bound });
    }
    Ok(MclassLabel { i: bound - l })
}

/// Coordinate-free summary: component kinds and the nesting shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub ovals: usize,
    pub pseudo_lines: usize,
    /// Nesting depth of every oval, sorted.
    pub depths: Vec<usize>,
}

impl CurveTopology {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn pseudo_line(&self) -> Option<usize> {
        self.components.iter().position(|c| c.kind == ComponentKind::PseudoLine)
    }

    pub fn ovals(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&i| self.components[i].kind == ComponentKind::Oval).collect()
    }

    pub fn depth(&self, i: usize) -> usize {
        let mut d = 0;
        let mut cur = self.nesting[i];
        while let Some(p) = cur {
            d += 1;
            cur = self.nesting[p];
        }
        d
    }

    pub fn has_nesting(&self) -> bool {
        self.nesting.iter().any(Option::is_some)
    }

    pub fn census(&self) -> Census {
        let mut depths: Vec<usize> = self.ovals().into_iter().map(|i| self.depth(i)).collect();
        depths.sort_unstable();
        Census { ovals: depths.len(), pseudo_lines: self.components.len() - depths.len(), depths }
    }

    /// Whether a point off the curve lies inside oval `oval`.
    pub fn oval_contains(&self, oval: usize, p: &ProjPoint) -> Result<bool> {
        if self.components[oval].kind != ComponentKind::Oval {
            return Err(Error::Precondition("component is not an oval".into()));
        }
        let q = self.sweep.chart.apply_point(p);
        let Some((x, y)) = q.to_affine() else {
            return Ok(false);
        };
        chart_contains(&self.sweep, oval, &x, &y)
    }

    /// Component through a rational point of the curve.
    pub fn component_of_point(&self, p: &ProjPoint) -> Result<usize> {
        let q = self.sweep.chart.apply_point(p);
        match q.to_affine() {
            Some((x, y)) => self.sweep.locate_rational(&x, &y),
            None => {
                let [a, b, _] = q.0;
                let mut m = RealAlgebraic::rational(b / a);
                self.sweep
                    .component_at_infinity(&mut m)
                    .ok_or_else(|| Error::Precondition("point is not on the curve".into()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn topo(s: &str) -> CurveTopology {
        compute_topology(&TernaryForm::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn circle_has_one_oval() {
        let t = topo("x^2 + y^2 - z^2");
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.components[0].kind, ComponentKind::Oval);
        assert_eq!(t.nesting, vec![None]);
        assert_eq!(t.components[0].witness, ProjPoint::ints(0, 0, 1));
        assert_eq!(classify_m_label(&t).unwrap(), MclassLabel { i: 0 });
    }

    #[test]
    fn positive_quartic_is_empty() {
        let t = topo("x^4 + y^4 + z^4");
        assert!(t.components.is_empty());
        assert_eq!(classify_m_label(&t).unwrap(), MclassLabel { i: 4 });
    }

    #[test]
    fn translated_circle_witness() {
        let t = topo("(x - 3*z)^2 + y^2 - 1/4*z^2");
        assert_eq!(t.components.len(), 1);
        assert_eq!(interior_witness(&t, 0).unwrap(), ProjPoint::ints(3, 0, 1));
    }

    #[test]
    fn line_is_a_pseudo_line() {
        let t = topo("x + 2*y - z");
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.components[0].kind, ComponentKind::PseudoLine);
    }

    #[test]
    fn cubic_with_and_without_oval() {
        let t = topo("y^2*z - x^3 + x*z^2");
        assert_eq!(t.census(), Census { ovals: 1, pseudo_lines: 1, depths: vec![0] });
        assert_eq!(t.pseudo_line(), Some(0));
        assert!(t.oval_contains(1, &interior_witness(&t, 1).unwrap()).unwrap());
        let t = topo("y^2*z - x^3 - x*z^2");
        assert_eq!(t.census(), Census { ovals: 0, pseudo_lines: 1, depths: vec![] });
    }

    #[test]
    fn nested_ovals() {
        let t = topo("(x^2 + y^2 - z^2)*(x^2 + y^2 - 4*z^2) + 1/100*(x^4 + y^4 + z^4)");
        assert_eq!(t.census(), Census { ovals: 2, pseudo_lines: 0, depths: vec![0, 1] });
        let inner = (0..2).find(|&i| t.nesting[i].is_some()).unwrap();
        assert!(t.oval_contains(1 - inner, &t.components[inner].witness).unwrap());
    }

    #[test]
    fn singular_input_is_refused() {
        let f = TernaryForm::parse("y^2*z - x^3 - x^2*z").unwrap();
        assert!(matches!(compute_topology(&f), Err(Error::Singular(_))));
    }

    #[test]
    fn points_are_placed_on_components() {
        let t = topo("y^2*z - x^3 + x*z^2");
        // (0:0:1) and (1:0:1) lie on the oval, (-1:0:1) too; (0:1:0) is the flex at infinity
        let oval = t.ovals()[0];
        assert_eq!(t.component_of_point(&ProjPoint::ints(0, 0, 1)).unwrap(), oval);
        assert_eq!(t.component_of_point(&ProjPoint::ints(-1, 0, 1)).unwrap(), oval);
        assert_eq!(t.component_of_point(&ProjPoint::ints(1, 0, 1)).unwrap(), 0);
    }
}
