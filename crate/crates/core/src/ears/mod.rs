//! Extended affine root systems described by a finite root system and
//! semilattice data, plus the windowed checks that go with them.

mod axioms;
mod characterize;
mod irc;
mod trim;

pub use axioms::verify_axioms;
pub use characterize::characterize;
pub use irc::{irc, irc_window};
pub use trim::trim;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{build_finite, Family, FiniteRootSystem, LengthClass, RootType};
use crate::linalg::{rat, AmbientSpace, RationalVector};
use crate::semilattice::{disjoint, sum_condition, verify_semilattice, SemilatticeData};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Anisotropic,
    Isotropic,
    NotRoot,
}

/// A root system `R` in `V0 (+) Vdot`, with coordinates
/// `(radical, finite, dual)` in the ambient space `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarsDescriptor {
    finite: FiniteRootSystem,
    nullity: usize,
    s: SemilatticeData,
    l: Option<SemilatticeData>,
    e: Option<SemilatticeData>,
    isotropic: SemilatticeData,
    space: AmbientSpace,
    extra: Vec<RationalVector>,
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ConstraintViolation(what.to_string()))
    }
}

fn check_semilattice(name: &str, x: &SemilatticeData, zero_required: bool) -> Result<()> {
    let report = verify_semilattice(x);
    for c in report.failures() {
        if c.name == "contains zero" && !zero_required {
            continue;
        }
        return Err(Error::ConstraintViolation(format!(
            "{name} fails {}: {}",
            c.name,
            c.witness.clone().unwrap_or_default()
        )));
    }
    if zero_required {
        let zero = RationalVector::zeros(x.ambient_rank());
        require(x.contains(&zero), &format!("0 not in {name}"))?;
    }
    Ok(())
}

/// `A + A` for a symmetric union of cosets.
pub(crate) fn sumset(a: &SemilatticeData, b: &SemilatticeData) -> SemilatticeData {
    let modulus = a.lattice().sum(b.lattice());
    let reps: Vec<_> = a
        .cosets()
        .iter()
        .flat_map(|x| b.cosets().iter().map(move |y| x + y))
        .collect();
    SemilatticeData::new(&modulus, &reps, true).expect("sum of spanning sets spans")
}

/// Builds `R` from the construction matching the type of `finite`.
pub fn construct_ears(
    finite: FiniteRootSystem,
    s: SemilatticeData,
    l: Option<SemilatticeData>,
    e: Option<SemilatticeData>,
) -> Result<EarsDescriptor> {
    let t = finite.root_type();
    let nu = s.ambient_rank();
    for x in l.iter().chain(e.iter()) {
        if x.ambient_rank() != nu {
            return Err(Error::RankMismatch(nu, x.ambient_rank()));
        }
    }
    check_semilattice("S", &s, true)?;
    if let Some(l) = &l {
        check_semilattice("L", l, true)?;
    }
    if let Some(e) = &e {
        check_semilattice("E", e, false)?;
    }
    let arity = |want_l: bool, want_e: bool| -> Result<()> {
        if l.is_some() != want_l || e.is_some() != want_e {
            return Err(Error::WrongArity(format!(
                "type {t} takes S{}{}",
                if want_l { ", L" } else { "" },
                if want_e { ", E" } else { "" }
            )));
        }
        Ok(())
    };
    let k = t.k();
    match t.family {
        Family::A | Family::D | Family::E => {
            arity(false, false)?;
            if !(t.family == Family::A && t.rank == 1) {
                require(s.is_lattice(), "S is not a lattice")?;
            }
        }
        Family::B | Family::C | Family::F | Family::G => {
            arity(true, false)?;
            let lg = l.as_ref().unwrap();
            require(sum_condition(lg, &s, k)?, &format!("L+{k}S not in L"))?;
            require(sum_condition(&s, lg, 1)?, "S+L not in S")?;
            match t.family {
                Family::B if t.rank >= 3 => require(lg.is_lattice(), "L is not a lattice")?,
                Family::C => require(s.is_lattice(), "S is not a lattice")?,
                Family::F | Family::G => {
                    require(s.is_lattice(), "S is not a lattice")?;
                    require(lg.is_lattice(), "L is not a lattice")?;
                }
                _ => {}
            }
        }
        Family::BC if t.rank >= 2 => {
            arity(true, true)?;
            let lg = l.as_ref().unwrap();
            let ex = e.as_ref().unwrap();
            require(disjoint(ex, &s.scaled(2))?, "E and 2S intersect")?;
            require(sum_condition(lg, &s, 2)?, "L+2S not in L")?;
            require(sum_condition(&s, lg, 1)?, "S+L not in S")?;
            require(sum_condition(ex, lg, 2)?, "E+2L not in E")?;
            require(sum_condition(lg, ex, 1)?, "L+E not in L")?;
            if t.rank >= 3 {
                require(lg.is_lattice(), "L is not a lattice")?;
            }
        }
        Family::BC => {
            arity(false, true)?;
            let ex = e.as_ref().unwrap();
            require(disjoint(ex, &s.scaled(2))?, "E and 2S intersect")?;
            require(sum_condition(ex, &s, 4)?, "E+4S not in E")?;
            require(sum_condition(&s, ex, 1)?, "S+E not in S")?;
        }
    }
    let space = AmbientSpace::new(nu, finite.form().gram())?;
    let isotropic = sumset(&s, &s);
    Ok(EarsDescriptor {
        finite,
        nullity: nu,
        s,
        l,
        e,
        isotropic,
        space,
        extra: Vec::new(),
    })
}

/// Convenience wrapper taking a type symbol.
pub fn construct(
    root_type: RootType,
    s: SemilatticeData,
    l: Option<SemilatticeData>,
    e: Option<SemilatticeData>,
) -> Result<EarsDescriptor> {
    construct_ears(build_finite(root_type), s, l, e)
}

impl EarsDescriptor {
    pub fn finite(&self) -> &FiniteRootSystem {
        &self.finite
    }

    pub fn root_type(&self) -> RootType {
        self.finite.root_type()
    }

    pub fn nullity(&self) -> usize {
        self.nullity
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn s(&self) -> &SemilatticeData {
        &self.s
    }

    pub fn l(&self) -> Option<&SemilatticeData> {
        self.l.as_ref()
    }

    pub fn e(&self) -> Option<&SemilatticeData> {
        self.e.as_ref()
    }

    /// `R0 = S + S`
    pub fn isotropic(&self) -> &SemilatticeData {
        &self.isotropic
    }

    pub fn extra_roots(&self) -> &[RationalVector] {
        &self.extra
    }

    /// Adds vectors to the root set by hand. The result need not be a root
    /// system; this exists to feed the verifiers deliberately broken input.
    pub fn with_extra_roots(mut self, extra: Vec<RationalVector>) -> Result<Self> {
        for v in &extra {
            if v.dim() != self.space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.space.dim(),
                    found: v.dim(),
                });
            }
        }
        self.extra.extend(extra);
        self.extra.sort();
        self.extra.dedup();
        Ok(self)
    }

    /// The translation set attached to a finite length class.
    pub fn class_set(&self, class: LengthClass) -> Option<&SemilatticeData> {
        match class {
            LengthClass::Short => Some(&self.s),
            LengthClass::Long => self.l.as_ref(),
            LengthClass::ExtraLong => self.e.as_ref(),
        }
    }

    fn base_kind(&self, v: &RationalVector) -> RootKind {
        if !self.space.in_span_space(v) {
            return RootKind::NotRoot;
        }
        let sigma = self.space.radical_part(v);
        let dot = self.space.finite_part(v);
        if dot.is_zero() {
            return if self.isotropic.contains(&sigma) {
                RootKind::Isotropic
            } else {
                RootKind::NotRoot
            };
        }
        match self.finite.class_of(&dot).and_then(|c| self.class_set(c)) {
            Some(set) if set.contains(&sigma) => RootKind::Anisotropic,
            _ => RootKind::NotRoot,
        }
    }

    pub fn is_root(&self, v: &RationalVector) -> Result<RootKind> {
        if v.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: v.dim(),
            });
        }
        Ok(self.kind(v))
    }

    /// Membership without the dimension check.
    pub fn kind(&self, v: &RationalVector) -> RootKind {
        match self.base_kind(v) {
            RootKind::NotRoot if self.extra.binary_search(v).is_ok() => {
                if self.space.pair(v, v) == rat(0) {
                    RootKind::Isotropic
                } else {
                    RootKind::Anisotropic
                }
            }
            k => k,
        }
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.kind(v) != RootKind::NotRoot
    }

    fn in_box(&self, v: &RationalVector, bound: i64) -> bool {
        self.space.radical_part(v).max_abs() <= rat(bound)
    }

    /// Roots whose radical coordinates all lie in `[-bound, bound]`, sorted.
    pub fn window(&self, bound: i64) -> Vec<RationalVector> {
        let mut out = self.anisotropic_window(bound);
        let zero_dot = RationalVector::zeros(self.finite.rank());
        out.extend(
            self.isotropic
                .window(bound)
                .iter()
                .map(|s| self.space.embed(s, &zero_dot)),
        );
        out.extend(
            self.extra
                .iter()
                .filter(|v| self.in_box(v, bound) && self.space.pair(v, v) == rat(0))
                .cloned(),
        );
        out.sort();
        out.dedup();
        out
    }

    pub fn anisotropic_window(&self, bound: i64) -> Vec<RationalVector> {
        let mut out = Vec::new();
        for dot in self.finite.roots() {
            let class = self.finite.class_of(dot).expect("root");
            if let Some(set) = self.class_set(class) {
                out.extend(set.window(bound).iter().map(|s| self.space.embed(s, dot)));
            }
        }
        out.extend(
            self.extra
                .iter()
                .filter(|v| self.in_box(v, bound) && self.space.pair(v, v) != rat(0))
                .cloned(),
        );
        out.sort();
        out.dedup();
        out
    }
}
