//! Property tests for the exact algebra, root counting and semigroup cones.

mod common;

use num_traits::Zero;
use proptest::prelude::*;

use common::{oracle_count, to_oracle, OraclePoly};
use realpencil::algebra::{int, interpolation_space, rat, resultant, ProjPoint, Rational, TernaryForm, UniPoly};
use realpencil::invariants::{gabard_bound, semigroup_cones, SemigroupCone, SepgonCase};
use realpencil::realroots::{count_real_roots, isolate_roots, sign_at, square_free_part, SturmChain};

fn poly(max_deg: usize, range: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-range..=range, 1..=max_deg + 1).prop_filter("nonzero", |c| c.iter().any(|&v| v != 0))
}

fn nonconstant(max_deg: usize, range: i64) -> impl Strategy<Value = Vec<i64>> {
    poly(max_deg, range).prop_filter("degree >= 1", |c| c.iter().skip(1).any(|&v| v != 0))
}

fn up(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn resultant_is_multiplicative(p in nonconstant(3, 5), q in nonconstant(3, 5), r in nonconstant(2, 5)) {
        let (p, q, r) = (up(&p), up(&q), up(&r));
        let qr = &q * &r;
        prop_assert_eq!(resultant(&p, &qr).unwrap(), resultant(&p, &q).unwrap() * resultant(&p, &r).unwrap());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(p in nonconstant(4, 4), q in nonconstant(4, 4), shared in any::<bool>(), root in -3i64..=3) {
        let (mut p, mut q) = (up(&p), up(&q));
        if shared {
            let f = up(&[-root, 1]);
            p = &p * &f;
            q = &q * &f;
        }
        let res = resultant(&p, &q).unwrap();
        prop_assert_eq!(res.is_zero(), p.gcd(&q).deg() > 0);
    }

    #[test]
    fn evaluation_scales_with_the_degree(c in prop::collection::vec(-5i64..=5, 10), x in -5i64..=5, y in -5i64..=5, z in 1i64..=5, t in 2i64..=3) {
        prop_assume!(c.iter().any(|&v| v != 0));
        let monos = realpencil::algebra::monomials(3);
        let f = TernaryForm::new(3, monos.iter().zip(&c).map(|(&e, &v)| (e, int(v)))).unwrap();
        let p = ProjPoint::ints(x, y, z);
        let q = ProjPoint::ints(t * x, t * y, t * z);
        prop_assert_eq!(f.evaluate(&q).unwrap(), f.evaluate(&p).unwrap() * int(t.pow(3)));
    }

    #[test]
    fn interpolation_dimension_lower_bound(k in 1u32..=3, pts in prop::collection::vec((-6i64..=6, -6i64..=6, 1i64..=3), 0..8)) {
        let mut points: Vec<ProjPoint> = Vec::new();
        for (x, y, z) in pts {
            let p = ProjPoint::ints(x, y, z);
            if !points.iter().any(|q| q.same_point(&p)) {
                points.push(p);
            }
        }
        let space = interpolation_space(&points, k).unwrap();
        let monos = ((k + 1) * (k + 2) / 2) as usize;
        prop_assert!(space.len() >= monos.saturating_sub(points.len()));
        for f in &space {
            for p in &points {
                prop_assert!(f.evaluate(p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn counts_match_the_oracle(c in poly(10, 12), a in small_rational(), b in small_rational()) {
        let p = up(&c);
        let o = OraclePoly::from_ints(&c);
        prop_assert_eq!(count_real_roots(&p, None, None).unwrap(), oracle_count(&o, None, None));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert_eq!(
            count_real_roots(&p, Some(&lo), Some(&hi)).unwrap(),
            oracle_count(&o, Some(&to_oracle(&lo)), Some(&to_oracle(&hi)))
        );
    }

    #[test]
    fn counts_match_sturm_chains(c in poly(8, 20), a in small_rational(), b in small_rational()) {
        let p = up(&c);
        let chain = SturmChain::new(&square_free_part(&p)).unwrap();
        prop_assert_eq!(count_real_roots(&p, None, None).unwrap(), chain.count(None, None));
        prop_assert_eq!(count_real_roots(&p, Some(&a), Some(&b)).unwrap(), if a < b { chain.count(Some(&a), Some(&b)) } else { 0 });
    }

    #[test]
    fn counts_are_additive(c in poly(8, 9), a in small_rational(), b in small_rational(), d in small_rational()) {
        let mut v = [a, b, d];
        v.sort();
        prop_assume!(v[0] < v[1] && v[1] < v[2]);
        let p = up(&c);
        // open intervals, as (lo, hi] minus the right end
        let open = |lo: &Rational, hi: &Rational| {
            count_real_roots(&p, Some(lo), Some(hi)).unwrap() - usize::from(p.eval(hi).is_zero())
        };
        let mid = usize::from(p.eval(&v[1]).is_zero());
        prop_assert_eq!(open(&v[0], &v[1]) + open(&v[1], &v[2]) + mid, open(&v[0], &v[2]));
    }

    #[test]
    fn isolating_intervals_are_sound(c in poly(8, 9)) {
        let p = up(&c);
        let sf = square_free_part(&p);
        let ivs = isolate_roots(&p).unwrap();
        let total: usize = ivs.iter().map(|iv| iv.multiplicity).sum();
        prop_assert!(total <= p.deg());
        prop_assert_eq!((p.deg() - total) % 2, 0);
        prop_assert_eq!(ivs.len(), count_real_roots(&p, None, None).unwrap());
        for w in ivs.windows(2) {
            prop_assert!(w[0].high <= w[1].low);
        }
        for iv in &ivs {
            if iv.is_exact() {
                prop_assert_eq!(sign_at(&p, &iv.low), 0);
            } else {
                prop_assert!(iv.low < iv.high);
                prop_assert!(sign_at(&sf, &iv.low) * sign_at(&sf, &iv.high) < 0);
            }
        }
    }

    #[test]
    fn square_free_part_of_a_square(c in nonconstant(5, 9)) {
        let p = up(&c);
        prop_assert_eq!(square_free_part(&(&p * &p)), square_free_part(&p));
    }

    #[test]
    fn cone_membership_is_monotone(g in 3usize..=8, extra in prop::collection::vec(0usize..=3, 7), bump in prop::collection::vec(0usize..=2, 7)) {
        for case in [SepgonCase::Unknown, SepgonCase::GMinusOne, SepgonCase::G] {
            for cone in semigroup_cones(g, case).unwrap() {
                let l = cone.len();
                let v: Vec<usize> = cone.anchor.entries.iter().zip(&extra).map(|(a, e)| (a + e).saturating_sub(1)).collect();
                let w: Vec<usize> = v.iter().zip(&bump).map(|(a, b)| a + b).collect();
                prop_assert_eq!(v.len(), l);
                if cone.contains(&v).unwrap() {
                    prop_assert!(cone.contains(&w).unwrap());
                }
                prop_assert!(cone.contains(&cone.anchor.entries).unwrap());
            }
        }
    }

    #[test]
    fn cone_sums_are_closed(g in 3usize..=8, x in prop::collection::vec(0usize..=3, 7), y in prop::collection::vec(0usize..=3, 7)) {
        let cones = semigroup_cones(g, SepgonCase::G).unwrap();
        for a in &cones {
            for b in &cones {
                let u: Vec<usize> = a.anchor.entries.iter().zip(&x).map(|(p, q)| p + q).collect();
                let v: Vec<usize> = b.anchor.entries.iter().zip(&y).map(|(p, q)| p + q).collect();
                let s: Vec<usize> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
                let doubled: SemigroupCone = a.sum(b);
                prop_assert!(doubled.contains(&s).unwrap());
            }
        }
    }

    #[test]
    fn gabard_on_m_minus_two_curves(g in 2usize..=200) {
        prop_assert_eq!(gabard_bound(g, g - 1).unwrap(), g);
    }
}
