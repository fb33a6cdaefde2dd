//! The shipped curves against values frozen from the dense-sampling script
//! (`scripts/oracle.py`) and the topological invariants of the catalog.

mod common;

use common::fixture;
use realpencil::algebra::ProjPoint;
use realpencil::fixtures;
use realpencil::topology::{check_smooth, classify_m_label, compute_topology, ComponentKind, CurveTopology};

/// (name, ovals, pseudo-lines, M-label i). Oval counts and the absence of
/// nesting come from the sampling script.
const EXPECTED: &[(&str, usize, usize, usize)] = &[
    ("conic", 1, 0, 0),
    ("empty-conic", 0, 0, 1),
    ("cubic-oval", 1, 1, 0),
    ("cubic-no-oval", 0, 1, 1),
    ("harnack-quartic", 4, 0, 0),
    ("three-oval-quartic", 3, 0, 1),
    ("empty-quartic", 0, 0, 4),
    ("quintic-nonconvex", 4, 1, 2),
    ("quintic-convex", 4, 1, 2),
    ("quintic-three-components", 2, 1, 4),
];

fn topo(name: &str) -> CurveTopology {
    compute_topology(&fixture(name)).unwrap()
}

#[test]
fn catalog_matches_sampling_oracle() {
    assert_eq!(fixtures::names().count(), EXPECTED.len());
    for &(name, ovals, pseudo, i) in EXPECTED {
        let f = fixture(name);
        assert!(check_smooth(&f).is_smooth(), "{name}");
        let t = compute_topology(&f).unwrap();
        let census = t.census();
        assert_eq!((census.ovals, census.pseudo_lines), (ovals, pseudo), "{name}");
        assert!(census.depths.iter().all(|&d| d == 0), "{name}");
        assert_eq!(classify_m_label(&t).unwrap().i, i, "{name}");
    }
}

#[test]
fn harnack_klein_and_pseudo_line_parity() {
    for name in fixtures::names() {
        let t = topo(name);
        assert!(t.components.len() <= t.genus + 1, "{name}");
        let pseudo = t.components.iter().filter(|c| c.kind == ComponentKind::PseudoLine).count();
        assert_eq!(pseudo, (t.degree % 2) as usize, "{name}");
        for (i, parent) in t.nesting.iter().enumerate() {
            let mut seen = 0;
            let mut cur = *parent;
            while let Some(p) = cur {
                seen += 1;
                assert!(seen <= t.components.len(), "{name}: nesting cycle at {i}");
                cur = t.nesting[p];
            }
        }
    }
    let harnack = topo("harnack-quartic");
    assert_eq!(harnack.components.len(), harnack.genus + 1);
}

#[test]
fn metadata_points_lie_on_the_components_found_by_sampling() {
    // component labels differ between the script and the sweep; compare the
    // induced partitions of the point list instead
    let script: &[(&str, &[usize])] = &[
        ("harnack-quartic", &[2, 2, 1, 1, 3, 3, 0, 0, 2, 2, 1, 1, 3, 3, 0, 0]),
        ("quintic-nonconvex", &[1, 1, 2, 2, 3, 3, 0, 0, 1, 1, 2, 2, 3, 3, 0, 0]),
        ("quintic-convex", &[2, 2, 1, 1, 3, 3, 0, 0, 2, 2, 1, 1, 3, 3, 0, 0]),
    ];
    for &(name, labels) in script {
        let t = topo(name);
        let points = common::fixture_points(name);
        assert_eq!(points.len(), labels.len());
        let ours: Vec<usize> = points.iter().map(|p| t.component_of_point(p).unwrap()).collect();
        for a in 0..labels.len() {
            for b in 0..labels.len() {
                assert_eq!(labels[a] == labels[b], ours[a] == ours[b], "{name}: points {a}, {b}");
            }
            assert_eq!(t.components[ours[a]].kind, ComponentKind::Oval);
        }
    }
}

#[test]
fn witnesses_lie_inside_their_own_oval_only() {
    for name in ["harnack-quartic", "quintic-nonconvex", "quintic-convex", "three-oval-quartic"] {
        let t = topo(name);
        for a in t.ovals() {
            for b in t.ovals() {
                let inside = t.oval_contains(b, &t.components[a].witness).unwrap();
                assert_eq!(inside, a == b, "{name}: witness of {a} against oval {b}");
            }
        }
    }
}

#[test]
fn quintic_witnesses_are_separated_by_the_curve() {
    // a line through the witnesses of two ovals crosses both of them
    let f = fixture("quintic-nonconvex");
    let t = compute_topology(&f).unwrap();
    let ws: Vec<ProjPoint> = t.ovals().iter().map(|&o| t.components[o].witness.clone()).collect();
    assert_eq!(ws.len(), 4);
    for i in 0..4 {
        for j in i + 1..4 {
            assert!(!ws[i].same_point(&ws[j]));
            let on_line = f.restrict_to_line(&ws[i], &ws[j]);
            let n = realpencil::realroots::count_real_roots(&on_line, None, None).unwrap();
            assert!(n >= 4, "witnesses {i}, {j}");
        }
    }
}

#[test]
fn conics_have_no_nesting() {
    for name in ["conic", "empty-conic"] {
        assert!(!topo(name).has_nesting());
    }
}

#[test]
fn census_survives_changes_of_coordinates() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for name in ["conic", "cubic-oval", "cubic-no-oval", "harnack-quartic", "three-oval-quartic", "empty-quartic"] {
        let f = fixture(name);
        let before = compute_topology(&f).unwrap().census();
        for _ in 0..3 {
            let t = common::random_transform(&mut rng);
            let after = compute_topology(&t.apply_form(&f)).unwrap().census();
            assert_eq!(after, before, "{name}");
        }
    }
}
