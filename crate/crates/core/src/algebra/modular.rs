//! Multi-modular gcd of integer polynomials.
//!
//! Images modulo 61-bit primes are combined by Chinese remaindering until the
//! symmetric lift stabilises; the candidate is accepted only after exact
//! division checks, so the result never depends on luck.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let inv = pow_mod(*b.last().expect("nonzero"), p - 2, p);
    while a.len() >= b.len() {
        let q = mul_mod(*a.last().expect("nonempty"), inv, p);
        let shift = a.len() - b.len();
        for (j, &bc) in b.iter().enumerate() {
            let t = mul_mod(q, bc, p);
            a[shift + j] = (a[shift + j] + p - t) % p;
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Monic gcd modulo `p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = pow_mod(l, p - 2, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&a);
    if g.is_zero() {
        return a;
    }
    let g = if a.last().is_some_and(|c| c.is_negative()) { -g } else { g };
    for c in a.iter_mut() {
        *c = &*c / &g;
    }
    a
}

/// Whether `b` divides `a` over the integers (`b` primitive).
fn divides(b: &[BigInt], a: &[BigInt]) -> bool {
    let lb = b.last().expect("nonzero");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let lr = r.pop().expect("nonempty");
        let (q, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() + 1 - b.len();
        for (j, bc) in b.iter().enumerate().take(b.len() - 1) {
            r[shift + j] -= &q * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r.is_empty()
}

/// Primitive gcd with positive leading coefficient of two integer
/// polynomials given by ascending coefficients without trailing zeros.
pub fn gcd_integer(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive(b.to_vec());
    }
    if b.is_empty() {
        return primitive(a.to_vec());
    }
    let a = primitive(a.to_vec());
    let b = primitive(b.to_vec());
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let lc = a.last().expect("nonzero").gcd(b.last().expect("nonzero"));
    let mut best: Option<usize> = None;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_lift: Option<Vec<BigInt>> = None;
    for p in Primes((1u64 << 61) - 1) {
        let (ap, bp) = (reduce(&a, p), reduce(&b, p));
        if ap.len() != a.len() || bp.len() != b.len() {
            continue;
        }
        let g = gcd_mod(ap, bp, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        match best {
            Some(d) if deg > d => continue,
            Some(d) if deg == d => {}
            _ => {
                best = Some(deg);
                acc = vec![BigInt::zero(); g.len()];
                modulus = BigInt::one();
                last_lift = None;
            }
        }
        let l = reduce(std::slice::from_ref(&lc), p).first().copied().unwrap_or(0);
        let pb = BigInt::from(p);
        // combine acc (mod modulus) with the image (mod p)
        let inv = BigInt::from(pow_mod(modulus.mod_floor(&pb).to_u64().expect("reduced"), p - 2, p));
        for (c, &gi) in acc.iter_mut().zip(&g) {
            let target = BigInt::from(mul_mod(gi, l, p));
            let diff = (&target - c.mod_floor(&pb)).mod_floor(&pb);
            let t = (diff * &inv).mod_floor(&pb);
            *c += &modulus * t;
        }
        modulus *= &pb;
        let half = &modulus / 2;
        let lift: Vec<BigInt> =
            acc.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect();
        if last_lift.as_ref() == Some(&lift) {
            let h = primitive(lift.clone());
            if divides(&h, &a) && divides(&h, &b) {
                return h;
            }
        }
        last_lift = Some(lift);
    }
    unreachable!("the prime supply is unbounded")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_primes() {
        let ps: Vec<u64> = (1..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn common_factor_is_recovered() {
        // (2x + 3)(x - 5) and (2x + 3)(7x^2 + 1)
        let a = v(&[-15, -7, 2]);
        let b = v(&[3, 2, 21, 14]);
        assert_eq!(gcd_integer(&a, &b), v(&[3, 2]));
        assert_eq!(gcd_integer(&v(&[1, 1]), &v(&[-1, 1])), v(&[1]));
    }

    #[test]
    fn large_coefficients() {
        let big = num_traits::pow(BigInt::from(10), 40) + BigInt::from(7);
        let f = vec![big.clone(), BigInt::from(-3), BigInt::from(1)];
        let mul = |p: &[BigInt], q: &[BigInt]| {
            let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
            for (i, x) in p.iter().enumerate() {
                for (j, y) in q.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let a = mul(&f, &v(&[5, 0, 3]));
        let b = mul(&f, &mul(&f, &v(&[-1, 4])));
        assert_eq!(gcd_integer(&a, &b), f);
    }
}
