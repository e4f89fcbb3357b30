//! Does the Weyl group stay the same after removing one orbit of roots?

use serde::Serialize;

use super::{anisotropic_orbits, find_word, image_order_mod, survives, translation_lattice, OrbitDescriptor, SearchOutcome};
use crate::config::vector_json;
use crate::ears::EarsDescriptor;
use crate::error::{Error, Result};
use crate::finite::{invariant_generating_subsets, length_classes, LengthClass};
use crate::lattice::Lattice;
use crate::linalg::{ratio, AmbientSpace, RationalMatrix, RationalVector};

/// A word in reflections of the remaining roots equal to the reflection of
/// `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: RationalVector,
    /// Roots whose reflections multiply, left to right, to `r_target`.
    pub letters: Vec<RationalVector>,
}

impl Certificate {
    pub fn product(&self, space: &AmbientSpace) -> Result<RationalMatrix> {
        self.letters.iter().try_fold(RationalMatrix::identity(space.dim()), |acc, a| {
            Ok(&acc * &space.reflection_matrix(a)?)
        })
    }

    pub fn verify(&self, space: &AmbientSpace) -> bool {
        match (self.product(space), space.reflection_matrix(&self.target)) {
            (Ok(p), Ok(t)) => p == t,
            _ => false,
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Certificate", 2)?;
        st.serialize_field("target", &vector_json(&self.target))?;
        st.serialize_field("letters", &self.letters.iter().map(vector_json).collect::<Vec<_>>())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerationVerdict {
    Generates(Certificate),
    NotGenerates(String),
    /// No word up to this length was found and no obstruction applies.
    Inconclusive(usize),
}

/// Classes that keep at least one root once `removed` is gone.
fn surviving_classes(r: &EarsDescriptor, removed: &OrbitDescriptor) -> Result<Vec<LengthClass>> {
    let classes = length_classes(r.finite())?;
    let space = r.space();
    let mut out = Vec::new();
    for class in LengthClass::ALL {
        let Some(top) = classes.get(class).last() else { continue };
        let Some(x) = r.class_set(class) else { continue };
        if x.cosets().iter().any(|c| survives(r, removed, &space.embed(c, top))) {
            out.push(class);
        }
    }
    Ok(out)
}

/// Rank one only: the remaining group is the affine group of the lattice
/// spanned by differences of the remaining (short-normalised) radical parts.
fn rank_one_obstruction(r: &EarsDescriptor, removed: &OrbitDescriptor) -> Result<Option<String>> {
    if r.finite().rank() != 1 {
        return Ok(None);
    }
    let classes = length_classes(r.finite())?;
    let space = r.space();
    let nu = r.nullity();
    let short = classes.get(LengthClass::Short).last().expect("short root").clone();
    let mut points = Vec::new();
    let mut gens = Vec::new();
    for (class, scale) in [(LengthClass::Short, ratio(1, 1)), (LengthClass::ExtraLong, ratio(1, 2))] {
        let Some(top) = classes.get(class).last() else { continue };
        let Some(x) = r.class_set(class) else { continue };
        let kept: Vec<_> = x
            .cosets()
            .iter()
            .filter(|c| survives(r, removed, &space.embed(c, top)))
            .collect();
        if kept.is_empty() {
            continue;
        }
        // coset c + 2M scaled by `scale`
        gens.extend(x.lattice().basis().iter().map(|b| b.scaled(&(scale.clone() * ratio(2, 1)))));
        points.extend(kept.into_iter().map(|c| c.scaled(&scale)));
    }
    let Some(first) = points.first().cloned() else {
        return Ok(None);
    };
    gens.extend(points.iter().map(|p| p - &first));
    let differences = Lattice::from_generators(nu, &gens);
    let reached = differences.scaled(&ratio(2, 1));
    let needed = translation_lattice(r, &short)?;
    Ok((!reached.contains_lattice(&needed))
        .then(|| "translations of the remaining reflections miss part of the full translation lattice".to_string()))
}

/// Generators for the word search: roots of the remaining system with small
/// radical part, one per reflection.
fn search_generators(r: &EarsDescriptor, removed: &OrbitDescriptor) -> Vec<RationalVector> {
    let mut out: Vec<RationalVector> = Vec::new();
    for g in r.anisotropic_window(1) {
        if !survives(r, removed, &g) || out.iter().any(|h| h.is_parallel(&g)) {
            continue;
        }
        out.push(g);
    }
    out
}

/// Decides whether the reflections of `R` minus `removed` still generate the
/// whole Weyl group.
pub fn generation_check(
    r: &EarsDescriptor,
    removed: &OrbitDescriptor,
    depth: usize,
    budget: usize,
) -> Result<GenerationVerdict> {
    if !anisotropic_orbits(r)?.iter().any(|o| o.key() == removed.key()) {
        return Err(Error::NotAnOrbit);
    }
    let present = surviving_classes(r, removed)?;
    let subsets = invariant_generating_subsets(r.finite())?;
    if !subsets.iter().any(|s| s.classes == present) {
        return Ok(GenerationVerdict::NotGenerates(
            "the remaining finite parts do not generate the finite Weyl group".into(),
        ));
    }
    if let Some(reason) = rank_one_obstruction(r, removed)? {
        return Ok(GenerationVerdict::NotGenerates(reason));
    }
    for modulus in [4u8, 8] {
        let full = image_order_mod(r, None, modulus, budget);
        let part = image_order_mod(r, Some(removed), modulus, budget);
        if let (Some(full), Some(part)) = (full, part) {
            if part < full {
                return Ok(GenerationVerdict::NotGenerates(format!(
                    "image modulo {modulus} has order {part} instead of {full}"
                )));
            }
        }
    }
    let gens = search_generators(r, removed);
    let space = r.space();
    let target = space.reflection_matrix(&removed.base)?;
    Ok(match find_word(space, &gens, &target, depth, budget) {
        SearchOutcome::Found(word) => {
            let cert = Certificate {
                target: removed.base.clone(),
                letters: word.into_iter().map(|i| gens[i].clone()).collect(),
            };
            debug_assert!(cert.verify(space));
            GenerationVerdict::Generates(cert)
        }
        SearchOutcome::Exhausted | SearchOutcome::BudgetExceeded => GenerationVerdict::Inconclusive(depth),
    })
}
