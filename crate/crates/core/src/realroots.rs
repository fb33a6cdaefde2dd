//! Exact real-root counting and isolation for rational univariate polynomials.
//!
//! Counting always happens on the square-free part; multiplicities come from
//! a separate square-free decomposition.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::rational::{int, midpoint, sign, simplest_between, Rational};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};

/// Signed remainder sequence `p, p', -rem(p, p'), ...`, each member reduced to
/// its primitive part (positive scaling keeps the sign pattern intact).
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<UniPoly>,
}

impl SturmChain {
    /// Chain of `p` itself (not its square-free part).
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut polys = vec![p.primitive()];
        let d = p.derivative();
        if !d.is_zero() {
            polys.push(d.primitive());
            loop {
                let n = polys.len();
                let r = polys[n - 2].primitive_rem(&polys[n - 1]);
                if r.is_zero() {
                    break;
                }
                polys.push(-&r);
            }
        }
        Ok(SturmChain { polys })
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| sign(&p.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| {
            let s = sign(&p.leading());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots in the half-open interval `(lo, hi]` (unbounded when `None`).
    pub fn count(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        let vl = lo.map_or_else(|| self.variations_at_neg_inf(), |a| self.variations_at(a));
        let vh = hi.map_or_else(|| self.variations_at_pos_inf(), |b| self.variations_at(b));
        vl.saturating_sub(vh)
    }
}

/// `p / gcd(p, p')`, made monic.
pub fn square_free_part(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return UniPoly::zero();
    }
    let g = p.gcd(&p.derivative());
    p.exact_div(&g).monic()
}

/// Yun's decomposition: `p = c * prod_i factors[i]^(i+1)`, factors monic and
/// pairwise coprime (possibly constant).
pub fn square_free_decomposition(p: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0);
    let mut c = dp.exact_div(&a0);
    let mut d = &c - &b.derivative();
    while b.deg() > 0 {
        let a = b.gcd(&d);
        out.push(a.monic());
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = &c - &b.derivative();
    }
    while out.last().is_some_and(|f| f.deg() == 0) {
        out.pop();
    }
    out
}

pub fn sign_at(p: &UniPoly, x: &Rational) -> i8 {
    p.sign_at(x)
}

/// Distinct real roots of `p` in `(lo, hi]`; `None` bounds are infinite.
pub fn count_real_roots(p: &UniPoly, lo: Option<&Rational>, hi: Option<&Rational>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = square_free_part(p).primitive();
    if sf.deg() == 0 {
        return Ok(0);
    }
    let b = sf.root_bound() * int(2);
    let a = lo.cloned().unwrap_or_else(|| -b.clone());
    let c = hi.cloned().unwrap_or(b);
    if a >= c {
        return Ok(0);
    }
    let at_c = usize::from(hi.is_some() && sf.sign_at(&c) == 0);
    Ok(count_open(&sf, &sf.integer_coeffs(), &a, &c) + at_c)
}

/// Exact number of roots of the square-free primitive `sf` in `(a, b)`.
fn count_open(sf: &UniPoly, ints: &[BigInt], a: &Rational, b: &Rational) -> usize {
    let mut count = 0;
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((l, h)) = stack.pop() {
        match descartes_bound(ints, &l, &h) {
            0 => {}
            1 => count += 1,
            _ => {
                let m = midpoint(&l, &h);
                count += usize::from(sf.sign_at(&m) == 0);
                stack.push((l, m.clone()));
                stack.push((m, h));
            }
        }
    }
    count
}

/// Distinct real roots in the closed interval `[lo, hi]`.
pub fn count_real_roots_closed(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    let open = count_real_roots(p, Some(lo), Some(hi))?;
    Ok(open + usize::from(p.eval(lo).is_zero()))
}

/// Interval with rational endpoints holding exactly one distinct real root.
///
/// Either `low == high` (the root is that rational) or `low < high`, neither
/// endpoint is a root, and the square-free part changes sign across it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub low: Rational,
    pub high: Rational,
    pub multiplicity: usize,
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.low == self.high
    }

    pub fn width(&self) -> Rational {
        &self.high - &self.low
    }

    /// Rough floating value, for presentation only.
    pub fn approx(&self) -> f64 {
        crate::algebra::rational::to_f64(&midpoint(&self.low, &self.high))
    }
}

/// Real algebraic number: a root of a square-free polynomial inside an
/// isolating interval.
#[derive(Clone, Debug)]
pub struct RealAlgebraic {
    poly: UniPoly,
    lo: Rational,
    hi: Rational,
}

impl RealAlgebraic {
    pub fn rational(r: Rational) -> Self {
        RealAlgebraic { poly: UniPoly::linear_root(&r), lo: r.clone(), hi: r }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn low(&self) -> &Rational {
        &self.lo
    }

    pub fn high(&self) -> &Rational {
        &self.hi
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn interval(&self, multiplicity: usize) -> IsolatingInterval {
        IsolatingInterval {
            low: self.lo.clone(),
            high: self.hi.clone(),
            multiplicity,
        }
    }

    pub fn approx(&self) -> f64 {
        crate::algebra::rational::to_f64(&midpoint(&self.lo, &self.hi))
    }

    /// Halve the interval once.
    pub fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let m = midpoint(&self.lo, &self.hi);
        let sm = sign_at(&self.poly, &m);
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        if sign_at(&self.poly, &self.lo) == sm {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while &(&self.hi - &self.lo) > width {
            self.bisect();
        }
    }

    /// Decide whether the number is rational, collapsing the interval if so.
    ///
    /// A rational root `a/b` of a primitive integer polynomial has `b` dividing
    /// the leading coefficient `c`; rationals with denominator at most `|c|`
    /// are more than `1/c^2` apart, so once the interval is that narrow its
    /// simplest rational is the only candidate.
    pub fn try_rational(&mut self) -> Option<Rational> {
        if self.is_rational() {
            return Some(self.lo.clone());
        }
        let lead = self.poly.integer_coeffs().last().cloned()?;
        let c = Rational::from_integer(lead);
        let width = (&c * &c).recip();
        self.refine_to(&width);
        if self.is_rational() {
            return Some(self.lo.clone());
        }
        let s = simplest_between(&self.lo, &self.hi);
        if self.poly.eval(&s).is_zero() {
            self.lo = s.clone();
            self.hi = s.clone();
            return Some(s);
        }
        None
    }

    /// Cheap rationality probe: refine to width `2^-bits` and test the
    /// simplest rational of the interval. `None` is inconclusive.
    pub fn rational_probe(&mut self, bits: u32) -> Option<Rational> {
        if self.is_rational() {
            return Some(self.lo.clone());
        }
        let width = Rational::new(1.into(), num_bigint::BigInt::from(1) << bits);
        self.refine_to(&width);
        if self.is_rational() {
            return Some(self.lo.clone());
        }
        let s = simplest_between(&self.lo, &self.hi);
        if self.poly.sign_at(&s) == 0 {
            self.lo = s.clone();
            self.hi = s.clone();
            return Some(s);
        }
        None
    }

    /// Shrink until the open interval avoids `x` (unless the number equals `x`).
    pub fn separate_from(&mut self, x: &Rational) {
        while !self.is_rational() && &self.lo <= x && x <= &self.hi {
            if self.poly.eval(x).is_zero() {
                self.lo = x.clone();
                self.hi = x.clone();
                return;
            }
            self.bisect();
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&mut self, x: &Rational) -> Ordering {
        self.separate_from(x);
        if self.is_rational() {
            return self.lo.cmp(x);
        }
        if &self.hi < x {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Exact sign of `q` at this number.
    pub fn sign_of(&mut self, q: &UniPoly) -> i8 {
        if q.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return sign_at(q, &self.lo);
        }
        let g = self.poly.gcd(q);
        if g.deg() > 0 {
            let gp = g.primitive();
            if count_open(&gp, &gp.integer_coeffs(), &self.lo, &self.hi) > 0 {
                return 0;
            }
        }
        let qs = square_free_part(q).primitive();
        let qi = qs.integer_coeffs();
        loop {
            let at_ends = usize::from(qs.sign_at(&self.lo) == 0) + usize::from(qs.sign_at(&self.hi) == 0);
            let inside = count_open(&qs, &qi, &self.lo, &self.hi) + at_ends;
            if inside == 0 {
                return sign_at(q, &self.lo);
            }
            self.bisect();
            if self.is_rational() {
                return sign_at(q, &self.lo);
            }
        }
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp_algebraic(&mut self, other: &mut RealAlgebraic) -> Ordering {
        if self.is_rational() {
            return other.cmp_rational(&self.lo.clone()).reverse();
        }
        if other.is_rational() {
            return self.cmp_rational(&other.lo.clone());
        }
        // equal iff the intervals overlap on a common root
        let g = self.poly.gcd(&other.poly);
        loop {
            if self.hi < other.lo {
                return Ordering::Less;
            }
            if other.hi < self.lo {
                return Ordering::Greater;
            }
            if g.deg() > 0 {
                // the overlap can only hold each number's own root
                let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
                let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
                if count_real_roots_closed(&g, lo, hi).is_ok_and(|n| n > 0) {
                    return Ordering::Equal;
                }
            }
            if self.width() >= other.width() {
                self.bisect();
            } else {
                other.bisect();
            }
        }
    }

    fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Real roots of a nonzero polynomial, sorted, with multiplicities.
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<IsolatingInterval>> {
    Ok(real_roots(p)?
        .into_iter()
        .map(|(r, m)| r.interval(m))
        .collect())
}

/// Sorted real roots as algebraic numbers together with multiplicities.
pub fn real_roots(p: &UniPoly) -> Result<Vec<(RealAlgebraic, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let factors = square_free_decomposition(p);
    let sf = square_free_part(p);
    let roots = isolate_square_free(&sf);
    let mut out = Vec::with_capacity(roots.len());
    for mut r in roots {
        let mult = multiplicity_at(&factors, &mut r);
        out.push((r, mult));
    }
    Ok(out)
}

fn multiplicity_at(factors: &[UniPoly], r: &mut RealAlgebraic) -> usize {
    for (i, f) in factors.iter().enumerate() {
        if f.deg() == 0 {
            continue;
        }
        if r.sign_of(f) == 0 {
            return i + 1;
        }
    }
    1
}

/// Upper bound on the number of roots of the integer polynomial `p` in the
/// open interval `(a, b)`: the sign variations of
/// `(1 + x)^n p((a + b x) / (1 + x))`. Zero and one are exact.
pub fn descartes_bound(p: &[BigInt], a: &Rational, b: &Rational) -> usize {
    let n = p.len() - 1;
    let w = b - a;
    let d = a.denom() * w.denom();
    let alpha = a.numer() * w.denom();
    let beta = w.numer() * a.denom();
    // q(t) = d^n p(a + w t) by Horner in the homogenised form
    let mut q: Vec<BigInt> = vec![p[n].clone()];
    let mut dp = BigInt::one();
    for k in (0..n).rev() {
        dp *= &d;
        let mut next = vec![BigInt::zero(); q.len() + 1];
        for (i, c) in q.iter().enumerate() {
            next[i] += c * &alpha;
            next[i + 1] += c * &beta;
        }
        next[0] += &p[k] * &dp;
        q = next;
    }
    // reverse, then shift x -> x + 1
    q.reverse();
    for i in 0..n {
        for j in (i..n).rev() {
            let t = q[j + 1].clone();
            q[j] += t;
        }
    }
    let mut last = 0i8;
    let mut count = 0;
    for c in &q {
        let s = match c.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Isolate the roots of a square-free polynomial by bisection, deciding each
/// interval with Descartes' rule of signs.
pub fn isolate_square_free(sf: &UniPoly) -> Vec<RealAlgebraic> {
    if sf.deg() == 0 {
        return Vec::new();
    }
    let sf = &sf.primitive();
    let ints = sf.integer_coeffs();
    let b = sf.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, c)) = stack.pop() {
        match descartes_bound(&ints, &a, &c) {
            0 => continue,
            1 => {
                out.push(RealAlgebraic { poly: sf.clone(), lo: a, hi: c });
                continue;
            }
            _ => {}
        }
        let m = midpoint(&a, &c);
        if sf.sign_at(&m) == 0 {
            // exact rational root: cut out a small root-free neighbourhood
            let mut delta = (&c - &a) / int(4);
            loop {
                let l = &m - &delta;
                let h = &m + &delta;
                if sf.sign_at(&l) != 0
                    && sf.sign_at(&h) != 0
                    && descartes_bound(&ints, &l, &m) == 0
                    && descartes_bound(&ints, &m, &h) == 0
                {
                    out.push(RealAlgebraic { poly: sf.clone(), lo: m.clone(), hi: m.clone() });
                    stack.push((a.clone(), l));
                    stack.push((h, c.clone()));
                    break;
                }
                delta /= int(2);
            }
        } else {
            stack.push((a, m.clone()));
            stack.push((m, c));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    for r in out.iter_mut() {
        // collapse exactly rational roots caught inside intervals
        if !r.is_rational() {
            let lin = r.poly.clone();
            if lin.deg() == 1 {
                let root = -lin.coeff(0) / lin.coeff(1);
                r.lo = root.clone();
                r.hi = root;
            }
        }
    }
    out
}

/// Refine an isolating interval of a root of `p` until its width is at most `width`.
pub fn refine(p: &UniPoly, iv: &IsolatingInterval, width: &Rational) -> IsolatingInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let sf = square_free_part(p);
    let mut r = RealAlgebraic { poly: sf, lo: iv.low.clone(), hi: iv.high.clone() };
    r.refine_to(width);
    r.interval(iv.multiplicity)
}

/// Sign of the leading coefficient times `(-1)^deg`: sign of `p` near `-inf`.
pub fn sign_at_neg_inf(p: &UniPoly) -> i8 {
    let s = sign(&p.leading());
    if p.deg() % 2 == 1 {
        -s
    } else {
        s
    }
}

pub fn sign_at_pos_inf(p: &UniPoly) -> i8 {
    sign(&p.leading())
}

/// Simplest rational strictly between two real algebraic numbers `p < q`.
pub fn simplest_between_roots(p: &mut RealAlgebraic, q: &mut RealAlgebraic) -> Rational {
    loop {
        if p.low() < q.high() {
            let s = simplest_between(p.low(), q.high());
            if p.cmp_rational(&s) == Ordering::Less && q.cmp_rational(&s) == Ordering::Greater {
                return s;
            }
        }
        p.bisect();
        q.bisect();
    }
}

/// Whether `p` keeps a constant nonzero sign on the closed interval.
pub fn root_free_on(p: &UniPoly, lo: &Rational, hi: &Rational) -> bool {
    if p.is_zero() {
        return false;
    }
    if p.deg() == 0 {
        return true;
    }
    count_real_roots_closed(p, lo, hi).is_ok_and(|n| n == 0)
}
