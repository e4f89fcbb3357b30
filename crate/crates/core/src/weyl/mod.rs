//! The extended affine Weyl group: orbits of roots, generation checks after
//! removing an orbit, minimality and extraction of minimal sub-systems.

mod generation;
mod minimal;
mod modular;
mod search;

pub use generation::{generation_check, Certificate, GenerationVerdict};
pub use minimal::{extract_minimal, minimality, Extraction, MinimalityVerdict};
pub use modular::{image_order_mod, ModularImage};
pub use minimal::remove_orbit;
pub use search::{find_word, SearchOutcome};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::ears::{EarsDescriptor, RootKind};
use crate::error::{Error, Result};
use crate::finite::{length_classes, LengthClass};
use crate::lattice::Lattice;
use crate::linalg::{rat, Rational, RationalVector};

pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// `W.alpha = offset + W_fin.dot + T`, with the offset reduced modulo `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitDescriptor {
    /// Canonical representative: largest finite-orbit member plus reduced offset.
    pub base: RationalVector,
    pub class: Option<LengthClass>,
    pub finite_orbit: Vec<RationalVector>,
    pub translation: Lattice,
    pub offset: RationalVector,
}

impl OrbitDescriptor {
    pub fn dot(&self, r: &EarsDescriptor) -> RationalVector {
        r.space().finite_part(&self.base)
    }

    pub fn contains(&self, r: &EarsDescriptor, v: &RationalVector) -> bool {
        let space = r.space();
        if v.dim() != space.dim() || !space.in_span_space(v) {
            return false;
        }
        let dot = space.finite_part(v);
        self.finite_orbit.binary_search(&dot).is_ok()
            && self
                .translation
                .contains(&(&space.radical_part(v) - &self.offset))
    }

    /// Radical parts of the orbit, i.e. `offset + T`, reduced.
    pub fn key(&self) -> (Vec<RationalVector>, Lattice, RationalVector) {
        (
            self.finite_orbit.clone(),
            self.translation.clone(),
            self.offset.clone(),
        )
    }
}

impl Serialize for OrbitDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrbitDescriptor", 5)?;
        st.serialize_field("base", &crate::config::vector_json(&self.base))?;
        st.serialize_field("class", &self.class)?;
        st.serialize_field(
            "finite_orbit",
            &self.finite_orbit.iter().map(crate::config::vector_json).collect::<Vec<_>>(),
        )?;
        st.serialize_field(
            "translation_basis",
            &self
                .translation
                .basis()
                .iter()
                .map(crate::config::vector_json)
                .collect::<Vec<_>>(),
        )?;
        st.serialize_field("offset", &crate::config::vector_json(&self.offset))?;
        st.end()
    }
}

fn gcd_pairings(r: &EarsDescriptor, dot: &RationalVector, class: &[RationalVector]) -> BigInt {
    let form = r.finite().form();
    let mut g = BigInt::zero();
    for b in class {
        let n = rat(2) * form.evaluate(dot, b) / form.evaluate(b, b);
        debug_assert!(n.is_integer());
        g = g.gcd(&n.to_integer());
    }
    g
}

/// The translation lattice `T` attached to a finite part `dot`.
pub fn translation_lattice(r: &EarsDescriptor, dot: &RationalVector) -> Result<Lattice> {
    let nu = r.nullity();
    let classes = length_classes(r.finite())?;
    let mut gens = Vec::new();
    for class in LengthClass::ALL {
        let roots = classes.get(class);
        if roots.is_empty() {
            continue;
        }
        let Some(set) = r.class_set(class) else { continue };
        let g = gcd_pairings(r, dot, roots);
        if g.is_zero() {
            continue;
        }
        let g = Rational::from_integer(g);
        gens.extend(set.lattice().basis().iter().map(|b| b.scaled(&g)));
    }
    Ok(Lattice::from_generators(nu, &gens))
}

/// Orbit of `alpha` under the Weyl group, in closed form.
pub fn orbit_closed_form(r: &EarsDescriptor, alpha: &RationalVector) -> Result<OrbitDescriptor> {
    let space = r.space();
    if alpha.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: alpha.dim(),
        });
    }
    if !space.in_span_space(alpha) {
        return Err(Error::NotOverFinitePart);
    }
    let dot = space.finite_part(alpha);
    let sigma = space.radical_part(alpha);
    let (finite_orbit, class) = if dot.is_zero() {
        (vec![dot.clone()], None)
    } else {
        let class = r.finite().class_of(&dot).ok_or(Error::NotOverFinitePart)?;
        (r.finite().orbit(&dot), Some(class))
    };
    let translation = translation_lattice(r, &dot)?;
    let offset = translation.reduce(&sigma);
    let top = finite_orbit.last().expect("nonempty orbit").clone();
    Ok(OrbitDescriptor {
        base: space.embed(&offset, &top),
        class,
        finite_orbit,
        translation,
        offset,
    })
}

/// All orbits of anisotropic roots, grouped by length class. Orbits of a
/// class correspond to cosets of the class set modulo `T`.
pub fn anisotropic_orbits(r: &EarsDescriptor) -> Result<Vec<OrbitDescriptor>> {
    let classes = length_classes(r.finite())?;
    let mut out = Vec::new();
    for class in LengthClass::ALL {
        let roots = classes.get(class);
        let Some(top) = roots.last() else { continue };
        let Some(set) = r.class_set(class) else { continue };
        let mut seen = BTreeSet::new();
        for c in set.cosets() {
            let alpha = r.space().embed(c, top);
            let orbit = orbit_closed_form(r, &alpha)?;
            if seen.insert(orbit.offset.clone()) {
                out.push(orbit);
            }
        }
    }
    Ok(out)
}

/// Removal order: extra-long, long, short; inside a class, larger offsets
/// first; orbits through a root of the finite part come last.
pub fn removal_order(r: &EarsDescriptor) -> Result<Vec<OrbitDescriptor>> {
    let mut orbits = anisotropic_orbits(r)?;
    let rank = |c: Option<LengthClass>| match c {
        Some(LengthClass::ExtraLong) => 0,
        Some(LengthClass::Long) => 1,
        _ => 2,
    };
    orbits.sort_by(|a, b| {
        let a_fin = a.offset.is_zero();
        let b_fin = b.offset.is_zero();
        (a_fin, rank(a.class))
            .cmp(&(b_fin, rank(b.class)))
            .then_with(|| b.offset.cmp(&a.offset))
    });
    Ok(orbits)
}

/// Breadth-first orbit computation, used as an oracle for the closed form.
///
/// Reflections come from roots with radical coordinates bounded by
/// `generator_bound`; iterates are followed inside a box padded by `pad`
/// around the window, and the result is cut back to the window.
pub struct OrbitOracle<'a> {
    r: &'a EarsDescriptor,
    bound: i64,
    explore: Rational,
    generators: Vec<RationalVector>,
    components: BTreeMap<RationalVector, usize>,
    orbits: Vec<BTreeSet<RationalVector>>,
}

fn max_coordinate(vs: &[RationalVector]) -> i64 {
    vs.iter()
        .map(|v| v.max_abs().ceil().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero)
        .try_into()
        .unwrap_or(i64::MAX)
}

impl<'a> OrbitOracle<'a> {
    pub fn new(r: &'a EarsDescriptor, bound: i64) -> Self {
        let mut spread: Vec<RationalVector> = Vec::new();
        for class in LengthClass::ALL {
            if let Some(x) = r.class_set(class) {
                spread.extend(x.lattice().basis().iter().cloned());
                spread.extend(x.cosets().iter().cloned());
            }
        }
        let generator_bound = max_coordinate(&spread).max(2);
        let pad = 2 * generator_bound;
        let mut generators = Vec::new();
        for g in r.anisotropic_window(generator_bound) {
            if !generators.contains(&-&g) {
                generators.push(g);
            }
        }
        Self {
            r,
            bound,
            explore: rat(bound + pad),
            generators,
            components: BTreeMap::new(),
            orbits: Vec::new(),
        }
    }

    fn inside(&self, v: &RationalVector, bound: &Rational) -> bool {
        self.r.space().radical_part(v).max_abs() <= *bound
    }

    /// Members of the orbit of `alpha` inside the window.
    pub fn orbit(&mut self, alpha: &RationalVector) -> BTreeSet<RationalVector> {
        if let Some(&i) = self.components.get(alpha) {
            return self.orbits[i].clone();
        }
        let space = self.r.space();
        let mut seen = BTreeSet::from([alpha.clone()]);
        let mut queue = VecDeque::from([alpha.clone()]);
        while let Some(v) = queue.pop_front() {
            for g in &self.generators {
                let w = space.reflect(g, &v).expect("anisotropic generator");
                if self.inside(&w, &self.explore) && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let window = rat(self.bound);
        let cut: BTreeSet<_> = seen
            .into_iter()
            .filter(|v| self.inside(v, &window))
            .collect();
        let i = self.orbits.len();
        for v in &cut {
            self.components.insert(v.clone(), i);
        }
        self.orbits.push(cut.clone());
        cut
    }
}

/// Orbit of `alpha` cut to the window of the given bound.
pub fn orbit_bfs(r: &EarsDescriptor, alpha: &RationalVector, bound: i64) -> BTreeSet<RationalVector> {
    OrbitOracle::new(r, bound).orbit(alpha)
}

/// Closed-form orbit intersected with the window of roots.
pub fn orbit_in_window(r: &EarsDescriptor, orbit: &OrbitDescriptor, bound: i64) -> BTreeSet<RationalVector> {
    let space = r.space();
    let b = rat(bound);
    let mut out = BTreeSet::new();
    for dot in &orbit.finite_orbit {
        for sigma in orbit.translation.points_in_box(&orbit.offset, &b) {
            out.insert(space.embed(&sigma, dot));
        }
    }
    out
}

/// Whether `v` is an anisotropic root not in `removed` nor proportional to
/// one of its members.
pub(crate) fn survives(r: &EarsDescriptor, removed: &OrbitDescriptor, v: &RationalVector) -> bool {
    r.kind(v) == RootKind::Anisotropic
        && !removed.contains(r, v)
        && !removed.contains(r, &v.scaled(&rat(2)))
        && !removed.contains(r, &v.scaled(&crate::linalg::ratio(1, 2)))
}
