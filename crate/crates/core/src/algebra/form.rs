//! Homogeneous forms in three variables, projective points and projective
//! coordinate changes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::bivariate::BiPoly;
use super::matrix::RationalMatrix;
use super::poly::UniPoly;
use num_bigint::BigInt;

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Exponent triple `(a, b, c)` of `x^a y^b z^c`.
pub type Exponent = (u32, u32, u32);

/// Homogeneous polynomial of fixed degree with sparse rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl TernaryForm {
    pub fn new(degree: u32, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((a, b, c), v) in terms {
            if a + b + c != degree {
                return Err(Error::InvalidForm(format!(
                    "exponent ({a},{b},{c}) does not sum to degree {degree}"
                )));
            }
            if !v.is_zero() {
                *map.entry((a, b, c)).or_insert_with(Rational::zero) += v;
            }
        }
        map.retain(|_, v: &mut Rational| !v.is_zero());
        if map.is_empty() {
            return Err(Error::InvalidForm("all coefficients vanish".into()));
        }
        Ok(TernaryForm { degree, terms: map })
    }

    /// Like `new` but allows the zero form; used for intermediate results.
    fn raw(degree: u32, terms: BTreeMap<Exponent, Rational>) -> Self {
        let mut terms = terms;
        terms.retain(|_, v| !v.is_zero());
        TernaryForm { degree, terms }
    }

    pub fn variable(i: usize) -> Self {
        let e = match i {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            _ => (0, 0, 1),
        };
        Self::raw(1, BTreeMap::from([(e, Rational::one())]))
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(coef: &[Rational; 3]) -> Self {
        let terms = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
            .into_iter()
            .zip(coef.iter().cloned());
        Self::raw(1, terms.collect())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: Exponent) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parse a homogeneous polynomial expression in `x`, `y`, `z` with
    /// rational constants, `+ - * ^` and parentheses, e.g.
    /// `(x^2 + y^2 - z^2)*(x - 3/2*z) + 1/100*z^3`.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::InvalidForm("empty expression".into()));
        }
        let mut parser = ExprParser { chars, pos: 0 };
        let poly = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.error("unexpected character"));
        }
        let mut degree = None;
        for &(a, b, c) in poly.keys() {
            let d = a + b + c;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::InvalidForm(format!(
                        "inhomogeneous expression: degrees {d0} and {d}"
                    )))
                }
                _ => {}
            }
        }
        let Some(degree) = degree else {
            return Err(Error::InvalidForm("all coefficients vanish".into()));
        };
        Self::new(degree, poly)
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Result<Rational> {
        if p.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(self.eval_coords(&p.0))
    }

    pub fn eval_coords(&self, c: &[Rational; 3]) -> Rational {
        let d = self.degree as usize;
        let pows: Vec<Vec<Rational>> = c
            .iter()
            .map(|v| {
                let mut out = Vec::with_capacity(d + 1);
                out.push(Rational::one());
                for i in 0..d {
                    let next = &out[i] * v;
                    out.push(next);
                }
                out
            })
            .collect();
        self.terms.iter().fold(Rational::zero(), |acc, (&(a, b, cc), v)| {
            acc + v * &pows[0][a as usize] * &pows[1][b as usize] * &pows[2][cc as usize]
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::raw(
            self.degree,
            self.terms.iter().map(|(e, v)| (*e, v * s)).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut terms = self.terms.clone();
        for (e, v) in &other.terms {
            *terms.entry(*e).or_insert_with(Rational::zero) += v;
        }
        Self::raw(self.degree, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for ((a, b, c), v) in &self.terms {
            for ((a2, b2, c2), w) in &other.terms {
                *terms
                    .entry((a + a2, b + b2, c + c2))
                    .or_insert_with(Rational::zero) += v * w;
            }
        }
        Self::raw(self.degree + other.degree, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::raw(0, BTreeMap::from([((0, 0, 0), Rational::one())]));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (&(a, b, c), v) in &self.terms {
            let e = [a, b, c];
            if e[i] == 0 {
                continue;
            }
            let mut ne = e;
            ne[i] -= 1;
            terms.insert((ne[0], ne[1], ne[2]), v * int(e[i] as i64));
        }
        Self::raw(self.degree.saturating_sub(1), terms)
    }

    /// `F(l0, l1, l2)` for linear forms `l_i`.
    pub fn substitute(&self, lin: &[TernaryForm; 3]) -> Self {
        let d = self.degree;
        let pows: Vec<Vec<TernaryForm>> = lin
            .iter()
            .map(|l| (0..=d).map(|k| l.pow(k)).collect())
            .collect();
        let mut acc = Self::raw(d, BTreeMap::new());
        for (&(a, b, c), v) in &self.terms {
            let t = pows[0][a as usize]
                .mul(&pows[1][b as usize])
                .mul(&pows[2][c as usize])
                .scale(v);
            acc = acc.add(&t);
        }
        acc
    }

    /// Affine chart `z = 1` as a polynomial in `y` over `Q[x]`.
    pub fn dehomogenize(&self) -> BiPoly {
        let d = self.degree as usize;
        let mut cols = vec![vec![Rational::zero(); d + 1]; d + 1];
        for (&(a, b, _), v) in &self.terms {
            cols[b as usize][a as usize] += v;
        }
        BiPoly::new(cols.into_iter().map(UniPoly::new).collect())
    }

    /// Binary form `F(s P + t Q)` in the chart `t = 1`, i.e. a polynomial in
    /// `u = s / t`. Returned with its formal degree; roots "at infinity" of the
    /// chart correspond to `P` itself.
    pub fn restrict_to_line(&self, p: &ProjPoint, q: &ProjPoint) -> UniPoly {
        // l_i(u) = u p_i + q_i
        let d = self.degree as usize;
        let lines: Vec<UniPoly> = (0..3)
            .map(|i| UniPoly::new(vec![q.0[i].clone(), p.0[i].clone()]))
            .collect();
        let pows: Vec<Vec<UniPoly>> = lines
            .iter()
            .map(|l| (0..=d).map(|k| l.pow(k)).collect())
            .collect();
        let mut acc = UniPoly::zero();
        for (&(a, b, c), v) in &self.terms {
            let t = &(&pows[0][a as usize] * &pows[1][b as usize]) * &pows[2][c as usize];
            acc = &acc + &t.scale(v);
        }
        acc
    }

    /// Coefficient vector on the monomial basis of `monomials(degree)`.
    pub fn coefficient_vector(&self) -> Vec<Rational> {
        monomials(self.degree).into_iter().map(|e| self.coeff(e)).collect()
    }

    pub fn from_coefficient_vector(degree: u32, v: &[Rational]) -> Result<Self> {
        Self::new(degree, monomials(degree).into_iter().zip(v.iter().cloned()))
    }

    /// Divide by the gcd of coefficients and clear denominators, making the
    /// first nonzero coefficient positive.
    pub fn normalized(&self) -> Self {
        let coeffs: Vec<Rational> = self.terms.values().cloned().collect();
        let p = UniPoly::new(coeffs.clone()).primitive();
        if p.is_zero() {
            return self.clone();
        }
        let factor = &p.coeffs()[0] / &coeffs[0];
        let mut f = self.scale(&factor);
        if f.terms.values().next().is_some_and(|v| v.is_negative()) {
            f = f.scale(&-Rational::one());
        }
        f
    }

    /// Independence test for two forms of the same degree.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.degree != other.degree {
            return false;
        }
        let m = RationalMatrix::from_rows(vec![self.coefficient_vector(), other.coefficient_vector()]);
        m.rank() < 2
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b, c), v) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (name, e) in [("x", a), ("y", b), ("z", c)] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            let neg = v.is_negative();
            let mag = v.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All exponent triples of the given degree, in a fixed order
/// (lexicographically decreasing in `x`, then `y`).
pub fn monomials(degree: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push((a, b, degree - a - b));
        }
    }
    out
}

type Sparse = BTreeMap<Exponent, Rational>;

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, va) in a {
        for (eb, vb) in b {
            let e = (ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2);
            *out.entry(e).or_insert_with(Rational::zero) += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sparse_add(a: &mut Sparse, b: &Sparse, sign: &Rational) {
    for (e, v) in b {
        *a.entry(*e).or_insert_with(Rational::zero) += v * sign;
    }
    a.retain(|_, v| !v.is_zero());
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn error(&self, what: &str) -> Error {
        Error::InvalidForm(format!("{what} at position {}", self.pos + 1))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            let sign = if c == '+' { Rational::one() } else { -Rational::one() };
            sparse_add(&mut acc, &t, &sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.unary()?;
            acc = sparse_mul(&acc, &f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                let mut v = self.unary()?;
                v.values_mut().for_each(|c| *c = -c.clone());
                Ok(v)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let e: u32 = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.error("bad exponent"))?;
        let mut acc = Sparse::from([((0, 0, 0), Rational::one())]);
        for _ in 0..e {
            acc = sparse_mul(&acc, &base);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect::<String>().parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c @ ('x' | 'y' | 'z')) => {
                self.pos += 1;
                let e = match c {
                    'x' => (1, 0, 0),
                    'y' => (0, 1, 0),
                    _ => (0, 0, 1),
                };
                Ok(Sparse::from([(e, Rational::one())]))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut v = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    v /= Rational::from_integer(d);
                }
                let mut out = Sparse::new();
                if !v.is_zero() {
                    out.insert((0, 0, 0), v);
                }
                Ok(out)
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

/// Point of the real projective plane with rational homogeneous coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint(pub [Rational; 3]);

impl ProjPoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Result<Self> {
        let p = ProjPoint([x, y, z]);
        if p.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(p)
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        ProjPoint([int(x), int(y), int(z)])
    }

    /// Affine point `(x : y : 1)`.
    pub fn affine(x: Rational, y: Rational) -> Self {
        ProjPoint([x, y, Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Representative with coprime integer coordinates and a positive last
    /// nonzero coordinate.
    pub fn normalized(&self) -> Self {
        let prim = UniPoly::new(self.0.to_vec()).primitive();
        let mut c: Vec<Rational> = prim.coeffs().to_vec();
        c.resize(3, Rational::zero());
        // primitive() scales by a positive factor, so the sign is unchanged
        let last = c.iter().rev().find(|v| !v.is_zero()).cloned().unwrap_or_else(Rational::one);
        if last.is_negative() {
            for v in c.iter_mut() {
                *v = -v.clone();
            }
        }
        ProjPoint([c[0].clone(), c[1].clone(), c[2].clone()])
    }

    pub fn same_point(&self, other: &Self) -> bool {
        // all 2x2 minors vanish
        let (a, b) = (&self.0, &other.0);
        (0..3).all(|i| {
            let j = (i + 1) % 3;
            (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()
        })
    }

    /// Affine coordinates in the chart `z = 1`, if defined.
    pub fn to_affine(&self) -> Option<(Rational, Rational)> {
        if self.0[2].is_zero() {
            None
        } else {
            Some((&self.0[0] / &self.0[2], &self.0[1] / &self.0[2]))
        }
    }

    pub fn cross(&self, other: &Self) -> [Rational; 3] {
        let (a, b) = (&self.0, &other.0);
        [
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ]
    }

    pub fn combine(&self, s: &Rational, other: &Self, t: &Rational) -> Self {
        ProjPoint([
            s * &self.0[0] + t * &other.0[0],
            s * &self.0[1] + t * &other.0[1],
            s * &self.0[2] + t * &other.0[2],
        ])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Projective change of coordinates `p -> M p`. Forms are pulled back so that
/// `apply_form(F)(apply_point(p)) = 0` iff `F(p) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjTransform {
    m: [[Rational; 3]; 3],
    inv: [[Rational; 3]; 3],
}

impl ProjTransform {
    pub fn identity() -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { int(1) } else { int(0) })
        }))
        .expect("identity is invertible")
    }

    pub fn new(m: [[Rational; 3]; 3]) -> Result<Self> {
        let rows = m.iter().map(|r| r.to_vec()).collect();
        let mat = RationalMatrix::from_rows(rows);
        if mat.determinant().is_zero() {
            return Err(Error::Precondition("singular coordinate change".into()));
        }
        let mut inv: [[Rational; 3]; 3] = Default::default();
        for j in 0..3 {
            let e: Vec<Rational> = (0..3).map(|i| if i == j { int(1) } else { int(0) }).collect();
            let col = mat.solve(&e).expect("invertible");
            for i in 0..3 {
                inv[i][j] = col[i].clone();
            }
        }
        Ok(ProjTransform { m, inv })
    }

    /// Shear `x -> x + s y` combined with `z -> z + t x + u y`.
    pub fn shear(s: Rational, t: Rational, u: Rational) -> Self {
        let z = int(0);
        let o = int(1);
        Self::new([
            [o.clone(), s, z.clone()],
            [z.clone(), o.clone(), z],
            [t, u, o],
        ])
        .expect("shear is unimodular")
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 3] {
        &self.m
    }

    pub fn inverse(&self) -> Self {
        ProjTransform {
            m: self.inv.clone(),
            inv: self.m.clone(),
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Self) -> Self {
        let mul = |a: &[[Rational; 3]; 3], b: &[[Rational; 3]; 3]| -> [[Rational; 3]; 3] {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..3).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
                })
            })
        };
        ProjTransform {
            m: mul(&self.m, &first.m),
            inv: mul(&first.inv, &self.inv),
        }
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint(std::array::from_fn(|i| {
            (0..3).fold(Rational::zero(), |acc, k| acc + &self.m[i][k] * &p.0[k])
        }))
    }

    /// `F' = F o M^{-1}`.
    pub fn apply_form(&self, f: &TernaryForm) -> TernaryForm {
        let lin: [TernaryForm; 3] = std::array::from_fn(|i| TernaryForm::linear(&self.inv[i]));
        f.substitute(&lin)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

/// Basis of the space of degree-`k` forms vanishing at all `points`.
pub fn interpolation_space(points: &[ProjPoint], k: u32) -> Result<Vec<TernaryForm>> {
    if points.iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    let monos = monomials(k);
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|&e| TernaryForm::raw(k, BTreeMap::from([(e, Rational::one())])).eval_coords(&p.0))
                .collect()
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..monos.len())
            .map(|i| (0..monos.len()).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect()
    } else {
        RationalMatrix::from_rows(rows).kernel()
    };
    kernel
        .iter()
        .map(|v| TernaryForm::from_coefficient_vector(k, v).map(|f| f.normalized()))
        .collect()
}

/// Evaluation matrix of the monomials of degree `k` at `points`.
pub fn evaluation_matrix(points: &[ProjPoint], k: u32) -> RationalMatrix {
    let monos = monomials(k);
    RationalMatrix::from_rows(
        points
            .iter()
            .map(|p| {
                monos
                    .iter()
                    .map(|&e| TernaryForm::raw(k, BTreeMap::from([(e, Rational::one())])).eval_coords(&p.0))
                    .collect()
            })
            .collect(),
    )
}
