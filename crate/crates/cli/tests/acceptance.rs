//! Acceptance criteria A1 to A11. One line per criterion; exits non-zero
//! when any of them fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{fixture, fixture_points, oracle_count, random_int_poly, random_transform, to_oracle, OraclePoly};
use realpencil::algebra::{interpolation_space, rat, ProjPoint, ProjTransform, Rational, TernaryForm, UniPoly};
use realpencil::fixtures;
use realpencil::invariants::{gabard_bound, harnack_bound, m2_sepgon_range, semigroup_cones, SepgonCase};
use realpencil::orientation::{classify_quintic, induced_orientation, oval_signs, Conclusion, OvalSign, Position};
use realpencil::pencil::{
    base_locus_on_curve, build_pencil, certify_totally_real, degree_partition, intersect_member,
    search_totally_real_pencil, BasePoint, BaseStrategy, Pencil, PencilParameter, SearchStrategy,
    TotalRealityCertificate,
};
use realpencil::realroots::count_real_roots;
use realpencil::topology::{compute_topology, genus, ComponentKind, CurveTopology};

const BIN: &str = env!("CARGO_BIN_EXE_realpencil");

const SEPARATING: &str = "quintic-nonconvex";
const CONVEX: &str = "quintic-convex";

// Runtime ceilings. Every other criterion is an exact comparison.
const A1_LIMIT: Duration = Duration::from_secs(300);
const A2_LIMIT: Duration = Duration::from_secs(300);
const A7_LIMIT: Duration = Duration::from_secs(60);
const A11_LIMIT: Duration = Duration::from_secs(1800);

const A5_MIN_PARAMETERS: usize = 100;
const A7_POLYNOMIALS: usize = 1000;
const A7_MAX_DEGREE: usize = 10;
const A8_RETRIES: usize = 20;
const A10_TRANSFORMS: usize = 5;
const A11_BUDGET: &str = "50";
const A11_MIN_PENCILS: usize = 5;

const SEED: u64 = 20_240_601;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Workdir(PathBuf);

impl Workdir {
    fn new() -> Self {
        let d = std::env::temp_dir().join(format!("realpencil-acceptance-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        fs::create_dir_all(&d).unwrap();
        for name in fixtures::names() {
            fs::write(d.join(format!("{name}.json")), fixtures::text(name).unwrap()).unwrap();
        }
        Workdir(d)
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).display().to_string()
    }

    fn curve(&self, name: &str) -> String {
        self.path(&format!("{name}.json"))
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

/// Exit code and parsed machine report of one run of the binary.
fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = ok(Command::new(BIN).args(args).args(["--format", "machine"]).output())?;
    let code = out.status.code().ok_or("killed by a signal")?;
    let report = ok(serde_json::from_slice(&out.stdout))?;
    Ok((code, report))
}

struct Shared {
    curve: TernaryForm,
    topo: CurveTopology,
    witness: Vec<(Pencil, TotalRealityCertificate)>,
    on_curve: Vec<(Pencil, TotalRealityCertificate)>,
}

fn shared() -> Result<Shared, String> {
    let curve = fixture(SEPARATING);
    let topo = ok(compute_topology(&curve))?;
    let witness = ok(search_totally_real_pencil(&curve, &topo, &SearchStrategy::default()))?.found;
    let strategy = SearchStrategy {
        base: BaseStrategy::OnCurve(fixture_points(SEPARATING)),
        max_results: 2,
        ..Default::default()
    };
    let on_curve = ok(search_totally_real_pencil(&curve, &topo, &strategy))?.found;
    Ok(Shared { curve, topo, witness, on_curve })
}

fn a1(dir: &Workdir, s: &Shared) -> Check {
    let start = Instant::now();
    let g = genus(5);
    for (label, found) in [("witness", &s.witness), ("on-curve", &s.on_curve)] {
        let (p, cert) = found.first().ok_or(format!("{label} search found nothing"))?;
        ensure!(p.k == 2 && p.base_points.len() == g - 2, "{label}: degree {} through {} points", p.k, p.base_points.len());
        ensure!(cert.is_totally_real(), "{label}: certificate not totally real");
        let again = ok(certify_totally_real(&s.curve, p))?;
        ensure!(again.is_totally_real(), "{label}: recertification failed");
    }
    let saved = dir.path("a1-pencil.json");
    let (code, _) = cli(&["pencil", "search", &dir.curve(SEPARATING), "--strategy", "witness", "--output", &saved])?;
    ensure!(code == 0, "search exited with {code}");
    let (code, report) = cli(&["pencil", "certify", &dir.curve(SEPARATING), &saved])?;
    ensure!(code == 0 && report["result"]["verdict"] == "totally-real", "certify exited with {code}");
    ensure!(report["result"]["pencil_degree"] == 2, "pencil degree {}", report["result"]["pencil_degree"]);
    let t = start.elapsed();
    ensure!(t < A1_LIMIT, "took {t:?}");
    Ok(format!("conic pencils certified totally real in {:.1}s", t.as_secs_f64()))
}

fn a2(dir: &Workdir) -> Check {
    let start = Instant::now();
    let v = ok(classify_quintic(&fixture(CONVEX)))?;
    ensure!(
        (v.position, v.conclusion) == (Position::Convex, Conclusion::NonSeparating),
        "classified as {:?}, {:?}",
        v.position,
        v.conclusion
    );
    let (code, report) = cli(&["pencil", "search", &dir.curve(CONVEX), "--strategy", "witness"])?;
    ensure!(code == 11, "witness search exited with {code}");
    ensure!(report["result"]["exhausted"] == true, "report does not say exhausted");
    let t = start.elapsed();
    ensure!(t < A2_LIMIT, "took {t:?}");
    Ok(format!("convex, non-separating, search exhausted in {:.1}s", t.as_secs_f64()))
}

fn a3(s: &Shared) -> Check {
    let (p, _) = s.on_curve.first().ok_or("no on-curve pencil")?;
    let locus = ok(base_locus_on_curve(&s.curve, p))?;
    ensure!(locus.len() == genus(5) - 2, "{} base points on the curve", locus.len());
    for b in &locus {
        let BasePoint::Rational(q) = b else { return Err(format!("irrational base point {b:?}")) };
        ensure!(p.base_points.iter().any(|r| r.same_point(q)), "unexpected base point {q:?}");
    }
    Ok("4 base points on the curve".into())
}

fn a4(s: &Shared) -> Check {
    let (p, cert) = s.on_curve.first().ok_or("no on-curve pencil")?;
    let dp = ok(degree_partition(&s.curve, &s.topo, p, cert))?;
    ensure!(dp.entries.len() == 5, "length {}", dp.entries.len());
    ensure!(dp.degree() == 6, "sum {}", dp.degree());
    let o = ok(induced_orientation(&s.curve, &s.topo, p, cert))?;
    let signs = ok(oval_signs(&s.topo, &o))?;
    let pseudo = s.topo.pseudo_line().ok_or("no pseudo-line")?;
    let positive = signs.ovals_with(OvalSign::Positive);
    let even: Vec<usize> = (0..5).filter(|&c| dp.entries[c] % 2 == 0).collect();
    ensure!(even.len() == 1, "even entries at {even:?} in {:?}", dp.entries);
    let c = even[0];
    ensure!(dp.entries[c] == 2, "even entry {} in {:?}", dp.entries[c], dp.entries);
    ensure!(c == pseudo || positive.contains(&c), "entry 2 on component {c}, neither pseudo-line nor positive oval");
    Ok(format!("partition {:?}", dp.entries))
}

fn a5(s: &Shared) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut n = 0;
    let mut check = |c: &TernaryForm, p: &Pencil, t: &PencilParameter, count: realpencil::pencil::IntersectionCount| {
        let dk = (c.degree() * p.k) as usize;
        if count.real + 2 * count.complex_pairs != dk || count.total != dk {
            return Err(format!("{count:?} at {t} against d k = {dk}"));
        }
        n += 1;
        Ok(())
    };
    for (p, cert) in s.witness.iter().chain(&s.on_curve) {
        for (t, count) in cert.evaluated() {
            check(&s.curve, p, &t, count)?;
        }
    }
    let names: Vec<&str> = fixtures::names().collect();
    let mut pencils = 0;
    while pencils < 40 {
        let name = names[rng.gen_range(0..names.len())];
        let curve = fixture(name);
        let k: u32 = rng.gen_range(1..=2);
        let count = if k == 1 { 1 } else { 4 };
        let points: Vec<ProjPoint> =
            (0..count).map(|_| ProjPoint::ints(rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
        let Ok(p) = build_pencil(&points, k) else { continue };
        pencils += 1;
        for j in 0..4 {
            let t = if j == 0 {
                PencilParameter::Infinity
            } else {
                PencilParameter::Finite(rat(rng.gen_range(-50..=50), rng.gen_range(1..=7)))
            };
            let member = p.member(&t);
            let count = ok(intersect_member(&curve, &member))?;
            check(&curve, &p, &t, count)?;
        }
    }
    ensure!(n >= A5_MIN_PARAMETERS, "only {n} parameters");
    Ok(format!("{n} parameters balance exactly"))
}

/// Cones given by their anchors, read off directly.
fn anchors(case: SepgonCase) -> Vec<[usize; 3]> {
    let mut v = vec![[4, 3, 3]];
    match case {
        SepgonCase::GMinusOne => v.push([3, 3, 3]),
        SepgonCase::G => v.push([4, 2, 2]),
        SepgonCase::Unknown => {}
    }
    v
}

fn a6() -> Check {
    ensure!(harnack_bound(5) == 7, "harnack_bound(5) = {}", harnack_bound(5));
    let gab = ok(gabard_bound(6, 5))?;
    ensure!(gab == 6, "gabard_bound(6, 5) = {gab}");
    let range = ok(m2_sepgon_range(6))?;
    ensure!(range == [5, 6], "m2_sepgon_range(6) = {range:?}");
    let mut checked = 0;
    for case in [SepgonCase::Unknown, SepgonCase::GMinusOne, SepgonCase::G] {
        let cones = ok(semigroup_cones(4, case))?;
        let expected = anchors(case);
        for a in 0..=6usize {
            for b in 0..=6usize {
                for c in 0..=6usize {
                    let v = [a, b, c];
                    let ours = cones.iter().map(|k| k.contains(&v)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
                    let theirs = expected.iter().map(|w| v.iter().zip(w).all(|(x, y)| x >= y));
                    ensure!(ours.len() == expected.len(), "{case:?}: {} cones", ours.len());
                    ensure!(ours.iter().copied().eq(theirs), "{case:?}: membership of {v:?}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("bounds exact, {checked} cone memberships agree"))
}

fn a7() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for i in 0..A7_POLYNOMIALS {
        let c = random_int_poly(&mut rng, A7_MAX_DEGREE);
        let p = UniPoly::from_ints(&c);
        let o = OraclePoly::from_ints(&c);
        let ours = ok(count_real_roots(&p, None, None))?;
        let theirs = oracle_count(&o, None, None);
        ensure!(ours == theirs, "polynomial {i} {c:?}: {ours} against {theirs}");
        let (a, b): (Rational, Rational) = (rat(rng.gen_range(-40..=0), rng.gen_range(1..=8)), rat(rng.gen_range(0..=40), rng.gen_range(1..=8)));
        let ours = ok(count_real_roots(&p, Some(&a), Some(&b)))?;
        let theirs = oracle_count(&o, Some(&to_oracle(&a)), Some(&to_oracle(&b)));
        ensure!(ours == theirs, "polynomial {i} {c:?} on ({a}, {b}]: {ours} against {theirs}");
    }
    let t = start.elapsed();
    ensure!(t < A7_LIMIT, "took {t:?}");
    Ok(format!("{A7_POLYNOMIALS} polynomials agree in {:.1}s", t.as_secs_f64()))
}

fn a8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut out = Vec::new();
    for d in [5u32, 6] {
        let (g, k) = (genus(d), d - 3);
        for (n, want) in [(g - 2, 2), (g - 1, 1)] {
            let mut got = None;
            for _ in 0..A8_RETRIES {
                let points: Vec<ProjPoint> = (0..n)
                    .map(|_| {
                        ProjPoint::new(rat(rng.gen_range(-20..=20), rng.gen_range(1..=5)), rat(rng.gen_range(-20..=20), rng.gen_range(1..=5)), rat(1, 1))
                            .unwrap()
                    })
                    .collect();
                let distinct = points.iter().enumerate().all(|(i, p)| points[..i].iter().all(|q| !q.same_point(p)));
                if !distinct {
                    continue;
                }
                let dim = ok(interpolation_space(&points, k))?.len();
                if dim == want {
                    got = Some(dim);
                    break;
                }
                // more than expected means the points were special; draw again
                ensure!(dim > want, "d = {d}: {n} points give dimension {dim}");
            }
            ensure!(got == Some(want), "d = {d}: no generic set of {n} points in {A8_RETRIES} draws");
            out.push(format!("d={d} n={n} dim={want}"));
        }
    }
    Ok(out.join(", "))
}

fn a9(s: &Shared) -> Check {
    ensure!(s.on_curve.len() >= 2, "{} on-curve pencils", s.on_curve.len());
    let (p, q) = (&s.on_curve[0], &s.on_curve[1]);
    let same = p.0.base_points.iter().all(|a| q.0.base_points.iter().any(|b| a.same_point(b)));
    ensure!(!same, "base configurations coincide");
    let op = ok(induced_orientation(&s.curve, &s.topo, &p.0, &p.1))?;
    let oq = ok(induced_orientation(&s.curve, &s.topo, &q.0, &q.1))?;
    ensure!(op.equivalent(&oq), "orientations differ beyond a global flip");
    let (sp, sq) = (ok(oval_signs(&s.topo, &op))?, ok(oval_signs(&s.topo, &oq))?);
    ensure!(sp == sq, "oval signs differ: {sp:?} against {sq:?}");
    let (neg, pos) = (sp.count(OvalSign::Negative), sp.count(OvalSign::Positive));
    ensure!((neg, pos) == (3, 1), "{neg} negative and {pos} positive ovals");
    Ok("orientations agree up to a flip, 3 negative and 1 positive oval".into())
}

fn a10(s: &Shared) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let transforms: Vec<ProjTransform> = (0..A10_TRANSFORMS).map(|_| random_transform(&mut rng)).collect();
    let (pencil, _) = s.witness.first().ok_or("no witness pencil")?;
    let convex = fixture(CONVEX);
    for (i, t) in transforms.iter().enumerate() {
        let curve = t.apply_form(&s.curve);
        let cert = ok(certify_totally_real(&curve, &pencil.transformed(t)))?;
        ensure!(cert.is_totally_real(), "transform {i}: A1 pencil no longer totally real");
        let v = ok(classify_quintic(&curve))?;
        ensure!(v.conclusion == Conclusion::Separating, "transform {i}: separating quintic classified {:?}", v.conclusion);

        let moved = t.apply_form(&convex);
        let v = ok(classify_quintic(&moved))?;
        ensure!(
            (v.position, v.conclusion) == (Position::Convex, Conclusion::NonSeparating),
            "transform {i}: convex quintic classified {:?}",
            v.conclusion
        );
        let topo = ok(compute_topology(&moved))?;
        let search = ok(search_totally_real_pencil(&moved, &topo, &SearchStrategy::default()))?;
        ensure!(search.exhausted(), "transform {i}: witness search found a pencil on the convex quintic");
    }
    for name in fixtures::names() {
        let f = fixture(name);
        let before = ok(compute_topology(&f))?.census();
        for (i, t) in transforms.iter().enumerate() {
            let after = ok(compute_topology(&t.apply_form(&f)))?.census();
            ensure!(after == before, "{name}, transform {i}: {after:?} against {before:?}");
        }
    }
    Ok(format!("verdicts and census unchanged under {A10_TRANSFORMS} transforms"))
}

fn a11(dir: &Workdir) -> Check {
    let start = Instant::now();
    let (code, report) =
        cli(&["pencil", "search", &dir.curve(SEPARATING), "--budget", A11_BUDGET, "--max-results", &A11_MIN_PENCILS.to_string()])?;
    ensure!(code == 0, "search exited with {code}");
    let found = report["result"]["found"].as_array().ok_or("no found list")?;
    let curve = fixture(SEPARATING);
    let topo = ok(compute_topology(&curve))?;
    let mut configs = BTreeSet::new();
    for f in found {
        let pts: Vec<ProjPoint> = f["base_points"]
            .as_array()
            .ok_or("base points missing")?
            .iter()
            .map(|p| {
                let c: Vec<Rational> = p.as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect();
                ProjPoint::new(c[0].clone(), c[1].clone(), c[2].clone()).unwrap()
            })
            .collect();
        for p in &pts {
            ensure!(ok(curve.evaluate(p))? == rat(0, 1), "base point {p:?} off the curve");
            ensure!(topo.components[ok(topo.component_of_point(p))?].kind == ComponentKind::Oval, "base point not on an oval");
        }
        let mut key: Vec<String> = pts.iter().map(|p| format!("{:?}", p.normalized())).collect();
        key.sort();
        configs.insert(key);
    }
    let t = start.elapsed();
    ensure!(configs.len() >= A11_MIN_PENCILS, "{} distinct configurations", configs.len());
    ensure!(t < A11_LIMIT, "took {t:?}");
    Ok(format!("{} distinct certified pencils in {:.1}s", configs.len(), t.as_secs_f64()))
}

fn main() {
    let dir = Workdir::new();
    let started = Instant::now();
    let s = shared();
    let mut failed = 0;
    let mut report = |id: &str, r: std::thread::Result<Check>| {
        let line = match r {
            Ok(Ok(msg)) => format!("{id} PASS  {msg}"),
            Ok(Err(msg)) => format!("{id} FAIL  {msg}"),
            Err(_) => format!("{id} FAIL  panicked"),
        };
        if !line.contains(" PASS ") {
            failed += 1;
        }
        println!("{line}");
    };
    let with_shared = |f: &dyn Fn(&Shared) -> Check| -> Check {
        match &s {
            Ok(s) => f(s),
            Err(e) => Err(format!("setup failed: {e}")),
        }
    };
    report("A1 ", catch_unwind(AssertUnwindSafe(|| with_shared(&|s| a1(&dir, s)))));
    report("A2 ", catch_unwind(AssertUnwindSafe(|| a2(&dir))));
    report("A3 ", catch_unwind(AssertUnwindSafe(|| with_shared(&a3))));
    report("A4 ", catch_unwind(AssertUnwindSafe(|| with_shared(&a4))));
    report("A5 ", catch_unwind(AssertUnwindSafe(|| with_shared(&a5))));
    report("A6 ", catch_unwind(a6));
    report("A7 ", catch_unwind(a7));
    report("A8 ", catch_unwind(a8));
    report("A9 ", catch_unwind(AssertUnwindSafe(|| with_shared(&a9))));
    report("A10", catch_unwind(AssertUnwindSafe(|| with_shared(&a10))));
    report("A11", catch_unwind(AssertUnwindSafe(|| a11(&dir))));
    println!("acceptance: {} of 11 criteria failed, {:.1}s", failed, started.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
