//! Catalog of curves shipped with the crate.
//!
//! Each curve is built by an explicit perturbation (see the notes field of
//! every document) and cross-checked by dense sampling.

use crate::error::{Error, Result};
use crate::io::CurveDocument;

pub const CATALOG: &[(&str, &str)] = &[
    ("conic", include_str!("../fixtures/conic.json")),
    ("empty-conic", include_str!("../fixtures/empty-conic.json")),
    ("cubic-oval", include_str!("../fixtures/cubic-oval.json")),
    ("cubic-no-oval", include_str!("../fixtures/cubic-no-oval.json")),
    ("harnack-quartic", include_str!("../fixtures/harnack-quartic.json")),
    ("three-oval-quartic", include_str!("../fixtures/three-oval-quartic.json")),
    ("empty-quartic", include_str!("../fixtures/empty-quartic.json")),
    ("quintic-nonconvex", include_str!("../fixtures/quintic-nonconvex.json")),
    ("quintic-convex", include_str!("../fixtures/quintic-convex.json")),
    ("quintic-three-components", include_str!("../fixtures/quintic-three-components.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<CurveDocument> {
    let t = text(name).ok_or_else(|| Error::Precondition(format!("no fixture named '{name}'")))?;
    CurveDocument::parse(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses_and_round_trips() {
        for (name, text) in CATALOG {
            let doc = CurveDocument::parse(text).unwrap();
            assert_eq!(doc.name(), Some(*name));
            assert_eq!(&doc.to_json(), text, "{name}");
            let f = doc.form().unwrap();
            for p in doc.points().unwrap() {
                assert!(num_traits::Zero::is_zero(&f.evaluate(&p).unwrap()), "{name}: {p} is off the curve");
            }
        }
    }
}
