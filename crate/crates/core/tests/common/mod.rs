//! Shared helpers for the integration tests, including an independent
//! root-counting oracle that only uses `num` arithmetic.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use realpencil::algebra::{int, ProjTransform, Rational, TernaryForm};
use realpencil::fixtures;

pub fn fixture(name: &str) -> TernaryForm {
    fixtures::load(name).unwrap().form().unwrap()
}

pub fn fixture_points(name: &str) -> Vec<realpencil::algebra::ProjPoint> {
    fixtures::load(name).unwrap().points().unwrap()
}

/// Small integer projective change of coordinates with nonzero determinant.
pub fn random_transform(rng: &mut ChaCha8Rng) -> ProjTransform {
    loop {
        let m: [[Rational; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let off = rng.gen_range(-1..=1);
                int(if i == j { 2 + off.abs() } else { off })
            })
        });
        if let Ok(t) = ProjTransform::new(m) {
            return t;
        }
    }
}

/// Dense polynomial with ascending coefficients, trimmed.
#[derive(Clone, Debug)]
pub struct OraclePoly(pub Vec<BigRational>);

impl OraclePoly {
    pub fn from_ints(c: &[i64]) -> Self {
        let mut p = OraclePoly(c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn deg(&self) -> isize {
        self.0.len() as isize - 1
    }

    fn derivative(&self) -> Self {
        let mut p = OraclePoly(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect(),
        );
        p.trim();
        p
    }

    fn rem(&self, d: &Self) -> Self {
        let mut r = self.0.clone();
        let lead = d.0.last().unwrap().clone();
        while r.len() >= d.0.len() && !r.is_empty() {
            let q = r.last().unwrap() / &lead;
            let shift = r.len() - d.0.len();
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        OraclePoly(r)
    }

    fn div(&self, d: &Self) -> Self {
        let mut r = self.0.clone();
        let lead = d.0.last().unwrap().clone();
        let mut q = vec![BigRational::zero(); (self.deg() - d.deg() + 1).max(0) as usize];
        while r.len() >= d.0.len() && !r.is_empty() {
            let c = r.last().unwrap() / &lead;
            let shift = r.len() - d.0.len();
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &c * dc;
            }
            q[shift] = c;
            r.pop();
        }
        let mut out = OraclePoly(q);
        out.trim();
        out
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.0.is_empty() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.deg() <= 0 {
            self.clone()
        } else {
            self.div(&g)
        }
    }

    /// Sturm chain of a square-free polynomial.
    pub fn sturm(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        while chain.last().unwrap().deg() > 0 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.0.is_empty() {
                break;
            }
            chain.push(OraclePoly(r.0.iter().map(|c| -c).collect()));
        }
        chain
    }

    pub fn bound(&self) -> BigRational {
        let lead = self.0.last().unwrap().abs();
        let m = self.0.iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::one()
    }
}

fn variations(chain: &[OraclePoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolating intervals `(lo, hi]` for the distinct real roots inside
/// `(lo, hi]`, bisected until each holds one root or is narrower than
/// `2^-40`.
pub fn oracle_isolate(p: &OraclePoly, lo: &BigRational, hi: &BigRational) -> Vec<(BigRational, BigRational)> {
    let sf = p.square_free();
    if sf.deg() <= 0 {
        return Vec::new();
    }
    let chain = sf.sturm();
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 40);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = variations(&chain, &a) - variations(&chain, &b);
        if n == 0 {
            continue;
        }
        if n == 1 || &b - &a < eps {
            out.push((a, b));
            continue;
        }
        let m = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort();
    out
}

/// Distinct real roots in `(lo, hi]`; `None` is infinite.
pub fn oracle_count(p: &OraclePoly, lo: Option<&BigRational>, hi: Option<&BigRational>) -> usize {
    let sf = p.square_free();
    if sf.deg() <= 0 {
        return 0;
    }
    let b = sf.bound();
    let lo = lo.cloned().unwrap_or_else(|| -b.clone());
    let hi = hi.cloned().unwrap_or(b);
    if lo >= hi {
        return 0;
    }
    oracle_isolate(&sf, &lo, &hi).len()
}

pub fn to_oracle(r: &Rational) -> BigRational {
    BigRational::new(r.numer().clone(), r.denom().clone())
}

/// Random integer polynomial of degree at most `max_deg`, sometimes with a
/// repeated or rational factor so multiplicities show up.
pub fn random_int_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Vec<i64> {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    if deg + 2 <= max_deg && rng.gen_bool(0.3) {
        let r = rng.gen_range(-3..=3);
        for _ in 0..2 {
            let mut next = vec![0; c.len() + 1];
            for (i, &v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= r * v;
            }
            c = next;
        }
    }
    c
}
