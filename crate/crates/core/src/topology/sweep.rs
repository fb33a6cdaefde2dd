//! Certified vertical sweep of an affine chart.
//!
//! The chart form `G` has `G(0,1,0) != 0`, so every vertical line meets the
//! curve in `d` affine points counted with multiplicity, and `G(1,m,0)` is
//! square-free, so the curve crosses the line at infinity transversally.
//! Between consecutive roots of the discriminant the real branches are
//! disjoint graphs over `x`; over each critical abscissa the branches are
//! matched by horizontal separators that are certified curve-free.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::rational::{int, simplest_between};
use crate::algebra::{BiPoly, ProjTransform, Rational, TernaryForm, UniPoly};
use crate::error::{Error, Result};
use crate::realroots::{
    count_real_roots_closed, isolate_square_free, root_free_on, simplest_between_roots, square_free_part, RealAlgebraic,
};

const BAND_ATTEMPTS: usize = 60;
const TRACE_SAMPLES: usize = 4;

/// Roots of `f(x0, y)` at an abscissa where the fiber is square-free.
pub fn fiber(f: &BiPoly, x0: &Rational) -> Vec<RealAlgebraic> {
    let p = f.eval_x(x0);
    if p.deg() == 0 {
        return Vec::new();
    }
    isolate_square_free(&square_free_part(&p))
}

/// `G(1, m, 0)` as a polynomial in the slope `m`.
pub fn infinity_poly(g: &TernaryForm) -> UniPoly {
    let d = g.degree();
    UniPoly::new((0..=d).map(|b| g.coeff((d - b, b, 0))).collect())
}

/// Whether the chart `z = 1` is usable: `(0:1:0)` is off the curve and the
/// line at infinity is transversal.
pub fn chart_is_admissible(g: &TernaryForm) -> bool {
    if g.coeff((0, g.degree(), 0)).is_zero() {
        return false;
    }
    let p = infinity_poly(g);
    p.gcd(&p.derivative()).deg() == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band {
    /// Curve-free horizontal separators; `None` means unbounded.
    pub below: Option<Rational>,
    pub above: Option<Rational>,
    /// Branch indices on the left fiber (slice to the left).
    pub left: Vec<usize>,
    /// Branch indices on the right fiber (slice to the right).
    pub right: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CriticalFiber {
    pub value: RealAlgebraic,
    /// Regular abscissae with `lo < value < hi` and no other critical value
    /// in `[lo, hi]`.
    pub lo: Rational,
    pub hi: Rational,
    pub bands: Vec<Band>,
}

impl CriticalFiber {
    fn new(disc: &UniPoly, value: RealAlgebraic) -> Self {
        let (lo, hi) = if value.is_rational() {
            let c = value.low().clone();
            let mut delta = Rational::one();
            loop {
                let lo = &c - &delta;
                let hi = &c + &delta;
                if !disc.eval(&lo).is_zero()
                    && !disc.eval(&hi).is_zero()
                    && count_real_roots_closed(disc, &lo, &hi).is_ok_and(|n| n == 1)
                {
                    break (lo, hi);
                }
                delta /= int(2);
            }
        } else {
            (value.low().clone(), value.high().clone())
        };
        CriticalFiber { value, lo, hi, bands: Vec::new() }
    }

    /// Narrow `[lo, hi]` around the critical value.
    pub fn shrink(&mut self) {
        if !self.value.is_rational() {
            self.value.bisect();
        }
        if self.value.is_rational() {
            let c = self.value.low().clone();
            self.lo = (&self.lo + &c) / int(2);
            self.hi = (&c + &self.hi) / int(2);
        } else {
            self.lo = self.value.low().clone();
            self.hi = self.value.high().clone();
        }
    }
}

/// Match the branches across `[a, b]` by curve-free horizontal separators.
///
/// Returns `None` when some band cannot be classified; the caller narrows the
/// interval and tries again.
pub fn certify_bands(f: &BiPoly, a: &Rational, b: &Rational) -> Option<Vec<Band>> {
    let left = fiber(f, a);
    let right = fiber(f, b);
    // merge both fibers in ascending order; ties never get a separator
    let mut items: Vec<(bool, usize, RealAlgebraic)> = Vec::with_capacity(left.len() + right.len());
    let mut tied: Vec<bool> = Vec::new();
    let (mut i, mut j) = (0, 0);
    let mut l: Vec<RealAlgebraic> = left;
    let mut r: Vec<RealAlgebraic> = right;
    while i < l.len() || j < r.len() {
        if j == r.len() {
            items.push((true, i, l[i].clone()));
            tied.push(false);
            i += 1;
        } else if i == l.len() {
            items.push((false, j, r[j].clone()));
            tied.push(false);
            j += 1;
        } else {
            let (li, rj) = (&mut l[i], &mut r[j]);
            match li.cmp_algebraic(rj) {
                std::cmp::Ordering::Less => {
                    items.push((true, i, l[i].clone()));
                    tied.push(false);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    items.push((false, j, r[j].clone()));
                    tied.push(false);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    items.push((true, i, l[i].clone()));
                    tied.push(true);
                    items.push((false, j, r[j].clone()));
                    tied.push(false);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    let mut bands = Vec::new();
    let mut current = Band { below: None, above: None, left: Vec::new(), right: Vec::new() };
    for k in 0..items.len() {
        let (is_left, idx, _) = &items[k];
        if *is_left {
            current.left.push(*idx);
        } else {
            current.right.push(*idx);
        }
        if k + 1 == items.len() || tied[k] {
            continue;
        }
        let (head, tail) = items.split_at_mut(k + 1);
        let p = &mut head[k].2;
        let q = &mut tail[0].2;
        while p.high() >= q.low() {
            if p.is_rational() || (!q.is_rational() && (q.high() - q.low()) > (p.high() - p.low())) {
                q.bisect();
            } else {
                p.bisect();
            }
        }
        let t = simplest_between(p.high(), q.low());
        if root_free_on(&f.eval_y(&t), a, b) {
            current.above = Some(t.clone());
            let next = Band { below: Some(t), above: None, left: Vec::new(), right: Vec::new() };
            bands.push(std::mem::replace(&mut current, next));
        }
    }
    if !items.is_empty() {
        bands.push(current);
    }
    let valid = bands.iter().all(|b| {
        matches!((b.left.len(), b.right.len()), (1, 1) | (2, 0) | (0, 2))
    });
    valid.then_some(bands)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArcRef {
    pub slice: usize,
    pub branch: usize,
    /// Traversed left to right within its component's cycle.
    pub rightward: bool,
}

#[derive(Clone, Debug)]
pub struct Slice {
    pub sample: Rational,
    pub branches: usize,
    /// Component index of each branch.
    pub component: Vec<usize>,
    pub rightward: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct Cycle {
    pub arcs: Vec<ArcRef>,
    pub infinity_crossings: usize,
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub chart: ProjTransform,
    /// The curve in chart coordinates.
    pub form: TernaryForm,
    pub f: BiPoly,
    /// Square-free part of the discriminant in `y`.
    pub disc: UniPoly,
    pub critical: Vec<CriticalFiber>,
    pub slices: Vec<Slice>,
    /// Real roots of `G(1, m, 0)`, ascending.
    pub slopes: Vec<RealAlgebraic>,
    pub cycles: Vec<Cycle>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Left,
    Right,
}

impl Sweep {
    pub fn build(chart: ProjTransform, form: TernaryForm) -> Result<Self> {
        let f = form.dehomogenize();
        let disc = if form.degree() >= 2 {
            square_free_part(&f.discriminant_y()?)
        } else {
            UniPoly::one()
        };
        let roots = if disc.deg() == 0 { Vec::new() } else { isolate_square_free(&disc) };
        let mut critical: Vec<CriticalFiber> = roots.into_iter().map(|v| CriticalFiber::new(&disc, v)).collect();
        for k in 1..critical.len() {
            while critical[k - 1].hi > critical[k].lo {
                let (a, b) = critical.split_at_mut(k);
                a[k - 1].shrink();
                b[0].shrink();
            }
        }
        let m = critical.len();
        let mut samples = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let sample = if m == 0 {
                Rational::zero()
            } else if k == 0 {
                (&critical[0].lo - int(1)).floor()
            } else if k == m {
                (&critical[m - 1].hi + int(1)).ceil()
            } else {
                let (a, b) = critical.split_at_mut(k);
                let s = simplest_between_roots(&mut a[k - 1].value.clone(), &mut b[0].value.clone());
                while a[k - 1].hi > s {
                    a[k - 1].shrink();
                }
                while b[0].lo < s {
                    b[0].shrink();
                }
                s
            };
            samples.push(sample);
        }
        for cf in critical.iter_mut() {
            let mut attempt = 0;
            loop {
                if let Some(bands) = certify_bands(&f, &cf.lo, &cf.hi) {
                    cf.bands = bands;
                    break;
                }
                attempt += 1;
                if attempt == BAND_ATTEMPTS {
                    return Err(Error::GenericPosition(format!(
                        "branches over the critical abscissa near {:.6} could not be separated",
                        cf.value.approx()
                    )));
                }
                cf.shrink();
            }
        }
        let mut slices = Vec::with_capacity(m + 1);
        for sample in samples {
            let n = fiber(&f, &sample).len();
            slices.push(Slice { sample, branches: n, component: vec![0; n], rightward: vec![true; n] });
        }
        for (j, cf) in critical.iter().enumerate() {
            let nl: usize = cf.bands.iter().map(|b| b.left.len()).sum();
            let nr: usize = cf.bands.iter().map(|b| b.right.len()).sum();
            if nl != slices[j].branches || nr != slices[j + 1].branches {
                return Err(Error::GenericPosition("branch count mismatch across a critical fiber".into()));
            }
        }
        let slopes = isolate_square_free(&infinity_poly(&form));
        if slices[0].branches != slopes.len() || slices[m].branches != slopes.len() {
            return Err(Error::GenericPosition("branch count mismatch at infinity".into()));
        }
        let mut sweep = Sweep { chart, form, f, disc, critical, slices, slopes, cycles: Vec::new() };
        sweep.assemble()?;
        Ok(sweep)
    }

    fn node(&self, offsets: &[usize], slice: usize, branch: usize) -> usize {
        offsets[slice] + branch
    }

    /// Glue arcs across critical fibers and across the line at infinity.
    fn assemble(&mut self) -> Result<()> {
        let m = self.critical.len();
        let mut offsets = Vec::with_capacity(m + 1);
        let mut total = 0;
        for s in &self.slices {
            offsets.push(total);
            total += s.branches;
        }
        let mut partner: HashMap<(usize, Side), (usize, Side)> = HashMap::new();
        let mut link = |a: (usize, Side), b: (usize, Side)| {
            partner.insert(a, b);
            partner.insert(b, a);
        };
        for (j, cf) in self.critical.iter().enumerate() {
            for band in &cf.bands {
                match (band.left.as_slice(), band.right.as_slice()) {
                    ([l], [r]) => link(
                        (self.node(&offsets, j, *l), Side::Right),
                        (self.node(&offsets, j + 1, *r), Side::Left),
                    ),
                    ([l1, l2], []) => link(
                        (self.node(&offsets, j, *l1), Side::Right),
                        (self.node(&offsets, j, *l2), Side::Right),
                    ),
                    ([], [r1, r2]) => link(
                        (self.node(&offsets, j + 1, *r1), Side::Left),
                        (self.node(&offsets, j + 1, *r2), Side::Left),
                    ),
                    _ => unreachable!("bands are validated"),
                }
            }
        }
        let n = self.slopes.len();
        for i in 0..n {
            link(
                (self.node(&offsets, m, i), Side::Right),
                (self.node(&offsets, 0, n - 1 - i), Side::Left),
            );
        }
        let locate = |node: usize| -> (usize, usize) {
            let s = offsets.partition_point(|&o| o <= node) - 1;
            (s, node - offsets[s])
        };
        let mut visited = vec![false; total];
        let mut cycles = Vec::new();
        for start in 0..total {
            if visited[start] {
                continue;
            }
            let mut arcs = Vec::new();
            let mut crossings = 0;
            let (mut node, mut side_in) = (start, Side::Left);
            loop {
                if visited[node] {
                    return Err(Error::GenericPosition("inconsistent branch gluing".into()));
                }
                visited[node] = true;
                let (slice, branch) = locate(node);
                let rightward = side_in == Side::Left;
                arcs.push(ArcRef { slice, branch, rightward });
                let exit = if rightward { Side::Right } else { Side::Left };
                if (slice == m && exit == Side::Right) || (slice == 0 && exit == Side::Left) {
                    crossings += 1;
                }
                let &(next, next_side) = partner
                    .get(&(node, exit))
                    .ok_or_else(|| Error::GenericPosition("dangling branch end".into()))?;
                if next == start {
                    if next_side != Side::Left {
                        return Err(Error::GenericPosition("inconsistent branch gluing".into()));
                    }
                    break;
                }
                node = next;
                side_in = next_side;
            }
            let idx = cycles.len();
            for a in &arcs {
                self.slices[a.slice].component[a.branch] = idx;
                self.slices[a.slice].rightward[a.branch] = a.rightward;
            }
            cycles.push(Cycle { arcs, infinity_crossings: crossings });
        }
        self.cycles = cycles;
        Ok(())
    }

    /// Slice containing a regular abscissa; `None` on a critical one.
    pub fn slice_of(&self, x: &Rational) -> Option<usize> {
        let mut k = 0;
        for cf in &self.critical {
            let mut v = cf.value.clone();
            match v.cmp_rational(x) {
                std::cmp::Ordering::Less => k += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => break,
            }
        }
        Some(k)
    }

    /// Abscissa range used for drawing slice `k`.
    pub fn slice_window(&self, k: usize) -> (Rational, Rational) {
        let m = self.critical.len();
        if m == 0 {
            return (int(-2), int(2));
        }
        let span = &self.critical[m - 1].hi - &self.critical[0].lo;
        let pad = if span < int(1) { int(1) } else { span / int(2) };
        let lo = if k == 0 { &self.critical[0].lo - &pad } else { self.critical[k - 1].hi.clone() };
        let hi = if k == m { &self.critical[m - 1].hi + &pad } else { self.critical[k].lo.clone() };
        (lo, hi)
    }

    /// Sample points on every branch of slice `k`, ascending in `x`, as chart
    /// coordinates. Approximations only.
    pub fn slice_samples(&self, k: usize, width: &Rational) -> Vec<Vec<(Rational, Rational)>> {
        let (lo, hi) = self.slice_window(k);
        let n = self.slices[k].branches;
        let mut out = vec![Vec::with_capacity(TRACE_SAMPLES); n];
        for s in 1..=TRACE_SAMPLES {
            let x = &lo + (&hi - &lo) * Rational::new((s as i64).into(), ((TRACE_SAMPLES + 1) as i64).into());
            let mut roots = fiber(&self.f, &x);
            if roots.len() != n {
                continue;
            }
            for (b, r) in roots.iter_mut().enumerate() {
                r.refine_to(width);
                let y = (r.low() + r.high()) / int(2);
                out[b].push((x.clone(), y));
            }
        }
        out
    }
}
