//! Minimality: no orbit can be dropped without shrinking the Weyl group.

use serde::Serialize;

use super::{generation_check, removal_order, Certificate, GenerationVerdict, OrbitDescriptor};
use crate::ears::{characterize, construct, EarsDescriptor};
use crate::error::{Error, Result};
use crate::finite::{Family, LengthClass, RootType};
use crate::semilattice::SemilatticeData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalityVerdict {
    Minimal,
    NotMinimal {
        orbit: OrbitDescriptor,
        certificate: Certificate,
    },
    /// Every other orbit was shown necessary; these ones were not decided.
    Unknown { orbits: Vec<OrbitDescriptor> },
}

pub fn minimality(r: &EarsDescriptor, depth: usize, budget: usize) -> Result<MinimalityVerdict> {
    let mut open = Vec::new();
    for orbit in removal_order(r)? {
        match generation_check(r, &orbit, depth, budget)? {
            GenerationVerdict::Generates(certificate) => {
                return Ok(MinimalityVerdict::NotMinimal { orbit, certificate })
            }
            GenerationVerdict::NotGenerates(_) => {}
            GenerationVerdict::Inconclusive(_) => open.push(orbit),
        }
    }
    Ok(if open.is_empty() {
        MinimalityVerdict::Minimal
    } else {
        MinimalityVerdict::Unknown { orbits: open }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Extraction {
    #[serde(skip)]
    pub result: EarsDescriptor,
    /// Orbits in the order they were removed.
    pub removed: Vec<OrbitDescriptor>,
    /// Finite type before the first removal and after each one.
    pub types: Vec<RootType>,
}

fn allowed_change(from: RootType, to: RootType) -> bool {
    from == to
        || (from.is_bc()
            && to.rank == from.rank
            && matches!(to.family, Family::B | Family::C))
        || (from.is_bc() && from.rank == 1 && to == RootType { family: Family::A, rank: 1 })
}

/// The descriptor obtained by deleting one orbit of roots.
pub fn remove_orbit(r: &EarsDescriptor, orbit: &OrbitDescriptor) -> Result<EarsDescriptor> {
    let class = orbit
        .class
        .ok_or_else(|| Error::Stuck("orbit of an isotropic root".into()))?;
    let set = r
        .class_set(class)
        .ok_or_else(|| Error::Stuck("orbit outside the root system".into()))?;
    let kept: Vec<_> = set
        .cosets()
        .iter()
        .filter(|c| !orbit.translation.contains(&(*c - &orbit.offset)))
        .cloned()
        .collect();
    let t = r.root_type();
    let stuck = |e: Error| Error::Stuck(e.to_string());
    if kept.is_empty() {
        if class != LengthClass::ExtraLong {
            return Err(Error::Stuck(format!(
                "removing the whole {class:?} class of {t} leaves no root system of an allowed type"
            )));
        }
        let target = if t.rank == 1 {
            RootType::new(Family::A, 1)?
        } else {
            RootType::new(Family::B, t.rank)?
        };
        let l = if t.rank == 1 { None } else { r.l().cloned() };
        return construct(target, r.s().clone(), l, None).map_err(stuck);
    }
    let shrunk = SemilatticeData::new(set.lattice(), &kept, set.translated()).map_err(stuck)?;
    let pick = |c: LengthClass, current: Option<&SemilatticeData>| {
        if c == class {
            Some(shrunk.clone())
        } else {
            current.cloned()
        }
    };
    let s = pick(LengthClass::Short, Some(r.s())).expect("short class");
    construct(
        t,
        s,
        pick(LengthClass::Long, r.l()),
        pick(LengthClass::ExtraLong, r.e()),
    )
    .map_err(stuck)
}

/// Removes orbits one at a time until the result is minimal.
pub fn extract_minimal(r: &EarsDescriptor, depth: usize, budget: usize) -> Result<Extraction> {
    let mut current = r.clone();
    let mut removed = Vec::new();
    let mut types = vec![r.root_type()];
    loop {
        match minimality(&current, depth, budget)? {
            MinimalityVerdict::Minimal => {
                return Ok(Extraction {
                    result: current,
                    removed,
                    types,
                })
            }
            MinimalityVerdict::Unknown { orbits } => {
                return Err(Error::Stuck(format!(
                    "{} orbit(s) could not be decided; raise the search depth",
                    orbits.len()
                )))
            }
            MinimalityVerdict::NotMinimal { orbit, .. } => {
                if orbit.offset.is_zero() {
                    return Err(Error::Stuck("only an orbit through the finite part is removable".into()));
                }
                let next = remove_orbit(&current, &orbit)?;
                let from = current.root_type();
                let to = next.root_type();
                if !allowed_change(from, to) {
                    return Err(Error::Stuck(format!("type changed from {from} to {to}")));
                }
                let report = characterize(&next.anisotropic_window(2), next.space());
                if !report.passed() {
                    return Err(Error::Stuck(format!(
                        "result is not a root system: {}",
                        report.failures().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")
                    )));
                }
                types.push(to);
                removed.push(orbit);
                current = next;
            }
        }
    }
}
