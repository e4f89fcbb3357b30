//! Words in root reflections: evaluation, Coxeter orders, the nullity
//! criterion for Coxeter presentations, parity of words along orbits and the
//! conjugation rewriting of relations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::vector_json;
use crate::ears::{EarsDescriptor, RootKind};
use crate::error::{Error, Result};
use crate::finite::{length_classes, LengthClass};
use crate::linalg::{rank, ratio, AmbientSpace, RationalMatrix, RationalVector};
use crate::weyl::{minimality, orbit_closed_form, MinimalityVerdict, OrbitDescriptor};

/// A product of root reflections, leftmost factor first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord {
    pub letters: Vec<RationalVector>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<RationalVector>) -> Self {
        Self { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse word; reflections are involutions.
    pub fn reversed(&self) -> Self {
        Self::new(self.letters.iter().rev().cloned().collect())
    }
}

impl Serialize for GeneratorWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.letters.iter().map(vector_json))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: RationalMatrix,
    pub word: Option<GeneratorWord>,
}

pub fn evaluate(word: &GeneratorWord, space: &AmbientSpace) -> Result<GroupElement> {
    let mut m = RationalMatrix::identity(space.dim());
    for a in &word.letters {
        if a.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: a.dim(),
            });
        }
        m = &m * &space.reflection_matrix(a)?;
    }
    Ok(GroupElement {
        matrix: m,
        word: Some(word.clone()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxeterOrder {
    Finite(u32),
    /// `(r_a r_b)^power` is unipotent and not the identity.
    Infinite { power: u32 },
    /// Neither the identity nor a certified infinite order up to the cap.
    CapReached(u32),
}

/// Order of `r_alpha r_beta`.
pub fn coxeter_order(space: &AmbientSpace, alpha: &RationalVector, beta: &RationalVector, cap: u32) -> Result<CoxeterOrder> {
    let m = &space.reflection_matrix(alpha)? * &space.reflection_matrix(beta)?;
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Ok(CoxeterOrder::Finite(k));
        }
        if p.is_nontrivial_unipotent() {
            return Ok(CoxeterOrder::Infinite { power: k });
        }
        p = &p * &m;
    }
    Ok(CoxeterOrder::CapReached(cap))
}

/// Positions of the 12-letter relation in three reflections.
pub const TWELVE_LETTER_RELATION: [usize; 12] = [0, 1, 2, 0, 1, 2, 1, 0, 2, 1, 0, 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterWitness {
    pub roots: GeneratorWord,
    /// Evaluates to the identity; a reduced word in a free product of
    /// involutions, so the Coxeter relations cannot imply it.
    pub word: GeneratorWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoxeterDecision {
    Yes,
    No(CoxeterWitness),
}

fn twelve_letter_word(roots: &[RationalVector; 3]) -> GeneratorWord {
    GeneratorWord::new(TWELVE_LETTER_RELATION.iter().map(|&i| roots[i].clone()).collect())
}

/// A Coxeter presentation with respect to the roots exists exactly when the
/// nullity is below two; otherwise a verified relation is returned.
pub fn coxeter_presentation_decision(r: &EarsDescriptor) -> Result<CoxeterDecision> {
    if r.nullity() < 2 {
        return Ok(CoxeterDecision::Yes);
    }
    let space = r.space();
    let classes = length_classes(r.finite())?;
    let dot = classes.get(LengthClass::Short).last().expect("short roots").clone();
    let base = space.embed(&RationalVector::zeros(r.nullity()), &dot);
    for bound in 1..=2 {
        let shifts: Vec<_> = r.s().window(bound).into_iter().filter(|s| !s.is_zero()).collect();
        for (i, s1) in shifts.iter().enumerate() {
            for s2 in &shifts[i + 1..] {
                if rank(&[s1.clone(), s2.clone()]) < 2 {
                    continue;
                }
                let roots = [base.clone(), space.embed(s1, &dot), space.embed(s2, &dot)];
                let word = twelve_letter_word(&roots);
                if evaluate(&word, space)?.matrix.is_identity() {
                    return Ok(CoxeterDecision::No(CoxeterWitness {
                        roots: GeneratorWord::new(roots.to_vec()),
                        word,
                    }));
                }
            }
        }
    }
    Err(Error::Stuck("no verified relation among three short roots".into()))
}

/// Letter counts modulo two, keyed by the base of each orbit of
/// proportionality classes. Only odd entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityVector {
    pub odd: BTreeMap<RationalVector, OrbitDescriptor>,
}

impl ParityVector {
    pub fn is_zero(&self) -> bool {
        self.odd.is_empty()
    }

    pub fn get(&self, orbit: &OrbitDescriptor) -> u8 {
        u8::from(self.odd.contains_key(&orbit.base))
    }
}

impl Serialize for ParityVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.odd.keys().map(vector_json))
    }
}

/// Orbit labelling the proportionality class of a root: roots and their
/// doubles share the orbit of the shorter one.
pub fn class_orbit(r: &EarsDescriptor, alpha: &RationalVector) -> Result<OrbitDescriptor> {
    if r.is_root(alpha)? != RootKind::Anisotropic {
        return Err(Error::UnknownRoot(alpha.to_string()));
    }
    let half = alpha.scaled(&ratio(1, 2));
    if r.kind(&half) == RootKind::Anisotropic {
        orbit_closed_form(r, &half)
    } else {
        orbit_closed_form(r, alpha)
    }
}

pub fn parity(word: &GeneratorWord, r: &EarsDescriptor) -> Result<ParityVector> {
    let mut out = ParityVector::default();
    for a in &word.letters {
        let orbit = class_orbit(r, a)?;
        if out.odd.remove(&orbit.base).is_none() {
            out.odd.insert(orbit.base.clone(), orbit);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionOutcome {
    /// A word evaluating to the identity with odd parity on `orbit`.
    Obstruction {
        orbit: OrbitDescriptor,
        word: GeneratorWord,
        parity: ParityVector,
    },
    /// The roots are minimal, so the presentation by conjugation holds.
    NoneFound,
    Inconclusive { orbits: Vec<OrbitDescriptor> },
}

pub fn conjugation_obstruction(r: &EarsDescriptor, depth: usize, budget: usize) -> Result<ObstructionOutcome> {
    match minimality(r, depth, budget)? {
        MinimalityVerdict::Minimal => Ok(ObstructionOutcome::NoneFound),
        MinimalityVerdict::Unknown { orbits } => Ok(ObstructionOutcome::Inconclusive { orbits }),
        MinimalityVerdict::NotMinimal { orbit, certificate } => {
            let mut letters = vec![certificate.target.clone()];
            letters.extend(certificate.letters.iter().rev().cloned());
            let word = GeneratorWord::new(letters);
            let parity = parity(&word, r)?;
            debug_assert!(evaluate(&word, r.space())?.matrix.is_identity());
            debug_assert_eq!(parity.get(&orbit), 1);
            Ok(ObstructionOutcome::Obstruction { orbit, word, parity })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub word: GeneratorWord,
    pub steps: Vec<String>,
}

/// Eliminates letters outside `preferred` from a relation: the leftmost such
/// letter is moved right with `r_b r_a = r_{r_b(a)} r_b` until it meets a
/// letter with the same reflection, and the pair cancels. A letter that
/// reaches the end unpaired is parked there.
pub fn conjugation_rewrite(
    word: &GeneratorWord,
    r: &EarsDescriptor,
    preferred: impl Fn(&RationalVector) -> bool,
) -> Result<Rewrite> {
    let space = r.space();
    if !evaluate(word, space)?.matrix.is_identity() {
        return Err(Error::NotARelation);
    }
    let mut letters = word.letters.clone();
    let mut parked = 0;
    let mut steps = Vec::new();
    loop {
        let active = letters.len() - parked;
        let Some(mut i) = (0..active).find(|&i| !preferred(&letters[i])) else {
            break;
        };
        loop {
            if i + 1 >= active {
                steps.push(format!("park {}", letters[i]));
                // conjugate past the letters parked earlier
                for j in i..letters.len() - 1 {
                    let moved = space.reflect(&letters[j], &letters[j + 1])?;
                    letters[j + 1] = letters[j].clone();
                    letters[j] = moved;
                }
                parked += 1;
                break;
            }
            if letters[i + 1].is_parallel(&letters[i]) {
                steps.push(format!("cancel {} {}", letters[i], letters[i + 1]));
                letters.drain(i..i + 2);
                break;
            }
            let moved = space.reflect(&letters[i], &letters[i + 1])?;
            steps.push(format!("swap {} past {}", letters[i], letters[i + 1]));
            letters[i + 1] = letters[i].clone();
            letters[i] = moved;
            i += 1;
        }
    }
    Ok(Rewrite {
        word: GeneratorWord::new(letters),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ears::construct;
    use crate::semilattice::SemilatticeData;

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn two_dim() -> EarsDescriptor {
        let s = SemilatticeData::from_int_cosets(2, &[&[0, 0], &[1, 0], &[0, 1]], false).unwrap();
        construct("A1".parse().unwrap(), s, None, None).unwrap()
    }

    #[test]
    fn empty_and_square_words() {
        let r = two_dim();
        let a = v(&[1, 0, 1, 0, 0]);
        assert!(evaluate(&GeneratorWord::default(), r.space()).unwrap().matrix.is_identity());
        let sq = GeneratorWord::new(vec![a.clone(), a]);
        assert!(evaluate(&sq, r.space()).unwrap().matrix.is_identity());
        assert!(parity(&sq, &r).unwrap().is_zero());
        assert!(parity(&GeneratorWord::default(), &r).unwrap().is_zero());
    }

    #[test]
    fn wrong_dimension_letter() {
        let r = two_dim();
        let w = GeneratorWord::new(vec![v(&[1, 0])]);
        assert!(matches!(evaluate(&w, r.space()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn orders_of_products() {
        let r = two_dim();
        let a = v(&[0, 0, 1, 0, 0]);
        let b = v(&[1, 0, 1, 0, 0]);
        assert_eq!(coxeter_order(r.space(), &a, &a, 10).unwrap(), CoxeterOrder::Finite(1));
        assert_eq!(coxeter_order(r.space(), &a, &b, 10).unwrap(), CoxeterOrder::Infinite { power: 1 });
        assert_eq!(coxeter_order(r.space(), &b, &a, 10).unwrap(), CoxeterOrder::Infinite { power: 1 });
        let plane = AmbientSpace::new(0, &RationalMatrix::from_int_rows(&[&[1, 0], &[0, 1]]).unwrap()).unwrap();
        assert_eq!(
            coxeter_order(&plane, &v(&[1, 0]), &v(&[0, 1]), 10).unwrap(),
            CoxeterOrder::Finite(2)
        );
    }

    #[test]
    fn nullity_decides_coxeter() {
        match coxeter_presentation_decision(&two_dim()).unwrap() {
            CoxeterDecision::No(w) => assert_eq!(w.word.len(), 12),
            CoxeterDecision::Yes => panic!("nullity two"),
        }
        let one = construct("B2".parse().unwrap(), SemilatticeData::standard(1), Some(SemilatticeData::standard(1)), None).unwrap();
        assert_eq!(coxeter_presentation_decision(&one).unwrap(), CoxeterDecision::Yes);
    }

    #[test]
    fn conjugation_relation_rewrites_to_nothing() {
        let r = two_dim();
        let a = v(&[0, 0, 1, 0, 0]);
        let b = v(&[1, 0, 1, 0, 0]);
        let rb = r.space().reflect(&a, &b).unwrap();
        let w = GeneratorWord::new(vec![a.clone(), b, a, rb]);
        assert!(parity(&w, &r).unwrap().is_zero());
        let out = conjugation_rewrite(&w, &r, |_| false).unwrap();
        assert!(out.word.is_empty());
        assert_eq!(out.steps.iter().filter(|s| s.starts_with("swap")).count(), 1);
        assert_eq!(out.steps.iter().filter(|s| s.starts_with("cancel")).count(), 2);
    }

    #[test]
    fn rewrite_rejects_non_relations() {
        let r = two_dim();
        let w = GeneratorWord::new(vec![v(&[0, 0, 1, 0, 0])]);
        assert!(matches!(conjugation_rewrite(&w, &r, |_| true), Err(Error::NotARelation)));
    }

    #[test]
    fn unknown_letters_are_rejected() {
        let r = two_dim();
        let w = GeneratorWord::new(vec![v(&[1, 1, 1, 0, 0])]);
        assert!(matches!(parity(&w, &r), Err(Error::UnknownRoot(_))));
    }
}
