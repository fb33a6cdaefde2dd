//! Closed-form bounds for separating curves and translated cones inside the
//! separating semigroup of an (M-2)-curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::{OvalSign, OvalSigns};
use crate::pencil::DegreePartition;
use crate::topology::{genus, ComponentKind, CurveTopology};

/// Maximal number of real components of a smooth plane curve of degree `d`.
pub fn harnack_bound(d: u32) -> usize {
    genus(d) + 1
}

/// Degree up to which a separating curve of genus `g` with `l` components
/// always has a separating morphism: `ceil((g + l + 1) / 2)`.
pub fn gabard_bound(g: usize, l: usize) -> Result<usize> {
    if l == 0 || l > g + 1 {
        return Err(Error::OutOfRange(format!("{l} components for genus {g}")));
    }
    Ok((g + l + 1).div_ceil(2))
}

/// The two possible separating gonalities of a separating (M-2)-curve.
pub fn m2_sepgon_range(g: usize) -> Result<[usize; 2]> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g} has no (M-2)-curves with a sepgon range")));
    }
    Ok([g - 1, g])
}

/// What is known about the separating gonality of an (M-2)-curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SepgonCase {
    GMinusOne,
    G,
    Unknown,
}

/// `anchor + N^l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupCone {
    pub anchor: DegreePartition,
}

impl SemigroupCone {
    pub fn new(anchor: Vec<usize>) -> Self {
        SemigroupCone { anchor: DegreePartition { entries: anchor } }
    }

    pub fn len(&self) -> usize {
        self.anchor.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchor.entries.is_empty()
    }

    pub fn contains(&self, v: &[usize]) -> Result<bool> {
        if v.len() != self.len() {
            return Err(Error::Precondition(format!("vector of length {} against a cone over {}", v.len(), self.len())));
        }
        Ok(v.iter().zip(&self.anchor.entries).all(|(a, b)| a >= b))
    }

    /// Cone of sums of members of `self` and `other`.
    pub fn sum(&self, other: &Self) -> Self {
        SemigroupCone::new(self.anchor.entries.iter().zip(&other.anchor.entries).map(|(a, b)| a + b).collect())
    }
}

/// Cones contained in `Sep(C)` for a separating (M-2)-curve of genus `g`,
/// over its `g - 1` components. The first coordinate carries the larger
/// entry of the anchors `(4, 3, ..., 3)` and `(4, 2, ..., 2)`; which
/// component that is depends on the curve, and no symmetry under
/// relabelling may be assumed.
pub fn semigroup_cones(g: usize, case: SepgonCase) -> Result<Vec<SemigroupCone>> {
    if g < 3 {
        return Err(Error::OutOfRange(format!("genus {g}: cones need g >= 3")));
    }
    let l = g - 1;
    let lead = |first: usize, rest: usize| {
        let mut v = vec![rest; l];
        v[0] = first;
        SemigroupCone::new(v)
    };
    let mut out = vec![lead(4, 3)];
    match case {
        SepgonCase::GMinusOne => out.push(SemigroupCone::new(vec![3; l])),
        SepgonCase::G => out.push(lead(4, 2)),
        SepgonCase::Unknown => {}
    }
    Ok(out)
}

/// A finding about an observed degree partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Flag {
    /// Some component receives no point, so the morphism is not separating.
    UncoveredComponent { component: usize },
    WrongLength { entries: usize, components: usize },
    /// A quintic with five components has separating gonality six.
    BelowSepgon { degree: usize, sepgon: usize },
    /// Degree-six pattern on a five-component quintic: two on the
    /// pseudo-line or the positive oval, odd elsewhere.
    QuinticPattern { component: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeMembership {
    pub case: SepgonCase,
    pub anchor: Vec<usize>,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub entries: Vec<usize>,
    pub degree: usize,
    pub components: usize,
    pub genus: usize,
    pub flags: Vec<Flag>,
    /// Filled for (M-2)-curves only. Reported, never asserted: the cones are
    /// subsets of `Sep(C)`, not descriptions of it.
    pub cones: Vec<ConeMembership>,
}

impl PartitionReport {
    pub fn consistent(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Compare a degree partition with what the theory allows on this curve.
/// Oval signs, when known, sharpen the quintic check.
pub fn check_partition_against_theory(
    topo: &CurveTopology,
    dp: &DegreePartition,
    signs: Option<&OvalSigns>,
) -> PartitionReport {
    let l = topo.components.len();
    let g = topo.genus;
    let degree = dp.degree();
    let mut flags = Vec::new();
    if dp.entries.len() != l {
        flags.push(Flag::WrongLength { entries: dp.entries.len(), components: l });
    }
    for (component, &e) in dp.entries.iter().enumerate() {
        if e == 0 {
            flags.push(Flag::UncoveredComponent { component });
        }
    }
    let quintic = topo.degree == 5 && l == 5 && dp.entries.len() == 5;
    if quintic && degree < 6 {
        flags.push(Flag::BelowSepgon { degree, sepgon: 6 });
    }
    if quintic && degree == 6 {
        for (component, &e) in dp.entries.iter().enumerate() {
            let allowed_even = match topo.components[component].kind {
                ComponentKind::PseudoLine => true,
                ComponentKind::Oval => signs.is_none_or(|s| s.signs[component] == Some(OvalSign::Positive)),
            };
            let fine = if e % 2 == 0 { e == 2 && allowed_even } else { true };
            if !fine {
                flags.push(Flag::QuinticPattern { component });
            }
        }
    }
    let mut cones = Vec::new();
    if g >= 3 && l + 1 == g && dp.entries.len() == l {
        for case in [SepgonCase::Unknown, SepgonCase::GMinusOne, SepgonCase::G] {
            let list = semigroup_cones(g, case).expect("g >= 3");
            let cone = list.last().expect("nonempty");
            cones.push(ConeMembership {
                case,
                anchor: cone.anchor.entries.clone(),
                member: cone.contains(&dp.entries).expect("lengths match"),
            });
        }
    }
    PartitionReport { entries: dp.entries.clone(), degree, components: l, genus: g, flags, cones }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harnack_values() {
        assert_eq!(harnack_bound(5), 7);
        assert_eq!(harnack_bound(4), 4);
        assert_eq!(harnack_bound(2), 1);
        assert_eq!(harnack_bound(1), 1);
    }

    #[test]
    fn gabard_values() {
        assert_eq!(gabard_bound(6, 5).unwrap(), 6);
        assert_eq!(gabard_bound(0, 1).unwrap(), 1);
        assert_eq!(gabard_bound(3, 4).unwrap(), 4);
        assert!(gabard_bound(3, 5).is_err());
        assert!(gabard_bound(3, 0).is_err());
    }

    #[test]
    fn sepgon_ranges() {
        assert_eq!(m2_sepgon_range(6).unwrap(), [5, 6]);
        assert_eq!(m2_sepgon_range(3).unwrap(), [2, 3]);
        assert_eq!(m2_sepgon_range(10).unwrap(), [9, 10]);
    }

    #[test]
    fn cones_for_genus_six() {
        let cones = semigroup_cones(6, SepgonCase::G).unwrap();
        assert_eq!(cones.len(), 2);
        assert!(cones[1].contains(&[4, 2, 2, 2, 2]).unwrap());
        assert!(!cones[1].contains(&[3, 3, 3, 3, 3]).unwrap());
        assert_eq!(semigroup_cones(6, SepgonCase::Unknown).unwrap().len(), 1);
        assert_eq!(semigroup_cones(6, SepgonCase::GMinusOne).unwrap()[1].anchor.entries, vec![3; 5]);
        assert!(cones[0].contains(&[1, 2, 3]).is_err());
    }

    #[test]
    fn exhaustive_membership_genus_four() {
        for case in [SepgonCase::Unknown, SepgonCase::GMinusOne, SepgonCase::G] {
            for cone in semigroup_cones(4, case).unwrap() {
                for n in 0..7usize.pow(3) {
                    let v = [n % 7, (n / 7) % 7, n / 49];
                    let brute = (0..3).all(|i| v[i] >= cone.anchor.entries[i]);
                    assert_eq!(cone.contains(&v).unwrap(), brute);
                }
            }
        }
    }
}
