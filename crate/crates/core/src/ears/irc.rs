use std::collections::{BTreeMap, BTreeSet};

use super::{sumset, EarsDescriptor};
use crate::error::Result;
use crate::finite::{length_classes, LengthClass};
use crate::linalg::{AmbientSpace, RationalVector};
use crate::semilattice::{union, SemilatticeData};

/// `((A - A) ∩ V0) ∪ A` for a finite set `A` of anisotropic vectors.
pub fn irc_window(space: &AmbientSpace, aniso: &[RationalVector]) -> Vec<RationalVector> {
    // differences land in V0 exactly when the non-radical parts agree
    let mut groups: BTreeMap<RationalVector, Vec<&RationalVector>> = BTreeMap::new();
    for a in aniso {
        groups
            .entry(a.slice(space.nullity()..space.dim()))
            .or_default()
            .push(a);
    }
    let mut out: BTreeSet<RationalVector> = aniso.iter().cloned().collect();
    for members in groups.values() {
        for a in members {
            for b in members {
                out.insert(*a - *b);
            }
        }
    }
    out.into_iter().collect()
}

/// Radical part of `IRC(R×)` computed from the translation sets: the union
/// of `X - X = X + X` over the classes present.
pub fn irc(r: &EarsDescriptor) -> Result<SemilatticeData> {
    let classes = length_classes(r.finite())?;
    let mut acc: Option<SemilatticeData> = None;
    for class in LengthClass::ALL {
        if classes.get(class).is_empty() {
            continue;
        }
        let Some(x) = r.class_set(class) else { continue };
        let doubled = sumset(x, x);
        acc = Some(match acc {
            None => doubled,
            Some(prev) => union(&prev, &doubled)?,
        });
    }
    Ok(acc.expect("a finite root system has a nonempty class"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ears::construct;
    use crate::linalg::RationalMatrix;

    #[test]
    fn single_pair() {
        let space = AmbientSpace::new(0, &RationalMatrix::identity(1)).unwrap();
        let a = RationalVector::from_ints(&[1]);
        let got = irc_window(&space, &[a.clone(), -&a]);
        assert_eq!(got, vec![-&a, RationalVector::zeros(1), a]);
    }

    #[test]
    fn full_lattice_isotropic_part() {
        let r = construct("A1".parse().unwrap(), SemilatticeData::standard(3), None, None).unwrap();
        let iso = irc(&r).unwrap();
        assert!(iso.is_lattice());
        assert_eq!(&iso, r.isotropic());
    }
}
