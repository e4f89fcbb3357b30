//! Finite crystallographic root systems in simple-root coordinates.
//!
//! Coordinates are taken with respect to the simple roots, so every root has
//! integer coordinates and the space has dimension equal to the rank. The form
//! normalises short roots (and all roots of simply laced types) to length 1.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, rat, ratio, BilinearForm, Rational, RationalMatrix, RationalVector};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

/// A type symbol such as `B3` or `BC1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootType {
    pub family: Family,
    pub rank: usize,
}

impl RootType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::BC => rank >= 1,
        };
        if !ok || rank > 8 {
            return Err(Error::InvalidRank {
                kind: format!("{family:?}"),
                rank,
            });
        }
        Ok(Self { family, rank })
    }

    pub fn is_bc(&self) -> bool {
        self.family == Family::BC
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// The integer `k` used for the long-root semilattice condition.
    pub fn k(&self) -> i64 {
        if self.family == Family::G {
            3
        } else {
            2
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('_', "");
        let split = t
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let (name, digits) = t.split_at(split);
        let family = match name.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "BC" => Family::BC,
            _ => return Err(Error::UnknownType(s.to_string())),
        };
        let rank = digits
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        Self::new(family, rank)
    }
}

impl Serialize for RootType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum LengthClass {
    Short,
    Long,
    ExtraLong,
}

impl LengthClass {
    pub const ALL: [LengthClass; 3] = [LengthClass::Short, LengthClass::Long, LengthClass::ExtraLong];
}

/// Squared lengths of the simple roots and the Dynkin edges.
fn dynkin(t: RootType) -> (Vec<i64>, Vec<(usize, usize)>) {
    let l = t.rank;
    let path: Vec<_> = (1..l).map(|i| (i - 1, i)).collect();
    match t.family {
        Family::A => (vec![1; l], path),
        Family::B | Family::BC => {
            let mut d = vec![2; l];
            d[l - 1] = 1;
            (d, path)
        }
        Family::C => {
            let mut d = vec![1; l];
            d[l - 1] = 2;
            (d, path)
        }
        Family::D => {
            let mut e: Vec<_> = (1..l - 1).map(|i| (i - 1, i)).collect();
            e.push((l - 3, l - 1));
            (vec![1; l], e)
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((3..l).map(|i| (i - 1, i)));
            (vec![1; l], e)
        }
        Family::F => (vec![2, 2, 1, 1], path),
        Family::G => (vec![1, 3], path),
    }
}

fn simple_gram(t: RootType) -> RationalMatrix {
    let (d, edges) = dynkin(t);
    let mut g = RationalMatrix::zeros(t.rank);
    for (i, &len) in d.iter().enumerate() {
        g.set(i, i, rat(len));
    }
    for (i, j) in edges {
        let v = ratio(-d[i].max(d[j]), 2);
        g.set(i, j, v.clone());
        g.set(j, i, v);
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRootSystem {
    root_type: RootType,
    form: BilinearForm,
    roots: Vec<RationalVector>,
    fundamental: Vec<RationalVector>,
}

pub fn reflect_with(form: &BilinearForm, alpha: &RationalVector, v: &RationalVector) -> RationalVector {
    let k = rat(2) * form.evaluate(v, alpha) / form.evaluate(alpha, alpha);
    v.add_scaled(&-k, alpha)
}

pub fn reflection_matrix_with(form: &BilinearForm, alpha: &RationalVector) -> RationalMatrix {
    let n = form.dim();
    let cols: Vec<_> = (0..n)
        .map(|j| reflect_with(form, alpha, &RationalVector::unit(n, j)))
        .collect();
    RationalMatrix::from_columns(&cols).expect("square")
}

/// Closure of `seeds` under the reflections in `mirrors`.
fn reflection_closure(
    form: &BilinearForm,
    mirrors: &[RationalVector],
    seeds: &[RationalVector],
) -> BTreeSet<RationalVector> {
    let mut seen: BTreeSet<_> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<_> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for m in mirrors {
            let w = reflect_with(form, m, &v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Builds the standard system of the given type.
pub fn build_finite(root_type: RootType) -> FiniteRootSystem {
    let l = root_type.rank;
    let form = BilinearForm::new(simple_gram(root_type)).expect("symmetric");
    let fundamental: Vec<_> = (0..l).map(|i| RationalVector::unit(l, i)).collect();
    let mut roots = reflection_closure(&form, &fundamental, &fundamental);
    if root_type.is_bc() {
        let doubled: Vec<_> = roots
            .iter()
            .filter(|r| form.evaluate(r, r) == rat(1))
            .map(|r| r.scaled(&rat(2)))
            .collect();
        roots.extend(doubled);
    }
    FiniteRootSystem {
        root_type,
        form,
        roots: roots.into_iter().collect(),
        fundamental,
    }
}

pub fn build_finite_str(symbol: &str) -> Result<FiniteRootSystem> {
    Ok(build_finite(symbol.parse()?))
}

impl FiniteRootSystem {
    /// Wraps an explicit root set, identifying its type.
    pub fn from_roots(form: BilinearForm, roots: &[RationalVector]) -> Result<Self> {
        let root_type = identify_type(&form, roots)?;
        let mut roots: Vec<_> = roots.to_vec();
        roots.sort();
        roots.dedup();
        Ok(Self {
            root_type,
            form,
            fundamental: Vec::new(),
            roots,
        })
    }

    pub fn root_type(&self) -> RootType {
        self.root_type
    }

    pub fn rank(&self) -> usize {
        self.form.dim()
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// Nonzero roots, sorted.
    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    pub fn fundamental(&self) -> &[RationalVector] {
        &self.fundamental
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    pub fn length(&self, v: &RationalVector) -> Rational {
        self.form.evaluate(v, v)
    }

    pub fn class_of(&self, v: &RationalVector) -> Option<LengthClass> {
        if !self.contains(v) {
            return None;
        }
        let half = v.scaled(&ratio(1, 2));
        if self.contains(&half) {
            return Some(LengthClass::ExtraLong);
        }
        let min = self.roots.iter().map(|r| self.length(r)).min()?;
        Some(if self.length(v) == min {
            LengthClass::Short
        } else {
            LengthClass::Long
        })
    }

    /// Reflections in `subset` (or all roots) that are distinct as mirrors.
    fn mirrors(&self, subset: &[RationalVector]) -> Vec<RationalVector> {
        let mut out: Vec<RationalVector> = Vec::new();
        for r in subset {
            if !out.iter().any(|m| m.is_parallel(r)) {
                out.push(r.clone());
            }
        }
        out
    }

    pub fn orbit(&self, v: &RationalVector) -> Vec<RationalVector> {
        let mirrors = self.mirrors(&self.roots);
        reflection_closure(&self.form, &mirrors, std::slice::from_ref(v))
            .into_iter()
            .collect()
    }

    pub fn reflect(&self, alpha: &RationalVector, v: &RationalVector) -> RationalVector {
        reflect_with(&self.form, alpha, v)
    }
}

pub struct LengthClasses {
    pub short: Vec<RationalVector>,
    pub long: Vec<RationalVector>,
    pub extra_long: Vec<RationalVector>,
}

impl LengthClasses {
    pub fn get(&self, c: LengthClass) -> &[RationalVector] {
        match c {
            LengthClass::Short => &self.short,
            LengthClass::Long => &self.long,
            LengthClass::ExtraLong => &self.extra_long,
        }
    }
}

pub fn is_irreducible(form: &BilinearForm, roots: &[RationalVector]) -> bool {
    let Some(first) = roots.first() else {
        return false;
    };
    let mut seen = HashSet::from([first.clone()]);
    let mut queue = VecDeque::from([first.clone()]);
    while let Some(a) = queue.pop_front() {
        for b in roots {
            if !form.evaluate(&a, b).is_zero() && seen.insert(b.clone()) {
                queue.push_back(b.clone());
            }
        }
    }
    seen.len() == roots.iter().collect::<HashSet<_>>().len()
}

pub fn length_classes(r: &FiniteRootSystem) -> Result<LengthClasses> {
    if !is_irreducible(&r.form, &r.roots) {
        return Err(Error::NotIrreducible);
    }
    let mut out = LengthClasses {
        short: Vec::new(),
        long: Vec::new(),
        extra_long: Vec::new(),
    };
    for v in &r.roots {
        match r.class_of(v).expect("root") {
            LengthClass::Short => out.short.push(v.clone()),
            LengthClass::Long => out.long.push(v.clone()),
            LengthClass::ExtraLong => out.extra_long.push(v.clone()),
        }
    }
    Ok(out)
}

/// Type of an irreducible root set from rank, counts and length ratios.
pub fn identify_type(form: &BilinearForm, roots: &[RationalVector]) -> Result<RootType> {
    if roots.is_empty() || !is_irreducible(form, roots) {
        return Err(Error::NotIrreducible);
    }
    let set: BTreeSet<_> = roots.iter().cloned().collect();
    let l = rank(roots);
    let n = set.len();
    let non_reduced = set.iter().any(|r| set.contains(&r.scaled(&rat(2))));
    let lengths: BTreeSet<Rational> = set.iter().map(|r| form.evaluate(r, r)).collect();
    let unknown = || Error::UnknownType(format!("{n} roots of rank {l}"));
    let t = if non_reduced {
        RootType::new(Family::BC, l)?
    } else if lengths.len() == 1 {
        match (l, n) {
            (6, 72) => RootType::new(Family::E, 6)?,
            (7, 126) => RootType::new(Family::E, 7)?,
            (8, 240) => RootType::new(Family::E, 8)?,
            _ if n == l * (l + 1) => RootType::new(Family::A, l)?,
            _ if l >= 4 && n == 2 * l * (l - 1) => RootType::new(Family::D, l)?,
            _ => return Err(unknown()),
        }
    } else if lengths.len() == 2 {
        let mut it = lengths.iter();
        let (lo, hi) = (it.next().unwrap(), it.next().unwrap());
        let shorts = set.iter().filter(|r| form.evaluate(r, r) == *lo).count();
        if hi / lo == rat(3) && l == 2 && n == 12 {
            RootType::new(Family::G, 2)?
        } else if hi / lo != rat(2) || n != 2 * l * l {
            if l == 4 && n == 48 {
                RootType::new(Family::F, 4)?
            } else {
                return Err(unknown());
            }
        } else if shorts == 2 * l {
            RootType::new(Family::B, l)?
        } else if l >= 3 && shorts == 2 * l * (l - 1) {
            RootType::new(Family::C, l)?
        } else {
            return Err(unknown());
        }
    } else {
        return Err(unknown());
    };
    let expected = build_finite(t);
    if expected.roots.len() != n {
        return Err(unknown());
    }
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct FiniteWeylGroup {
    pub elements: Vec<RationalMatrix>,
    pub generators: Vec<RationalMatrix>,
}

impl FiniteWeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closure of the generated matrix group, failing past `budget` elements.
pub fn generate_group(generators: &[RationalMatrix], dim: usize, budget: usize) -> Result<Vec<RationalMatrix>> {
    let id = RationalMatrix::identity(dim);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = &g * s;
            if seen.contains(&h) {
                continue;
            }
            if seen.len() >= budget {
                return Err(Error::GroupTooLarge(budget));
            }
            seen.insert(h.clone());
            queue.push_back(h);
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(out)
}

pub const DEFAULT_GROUP_BUDGET: usize = 1 << 16;

pub fn finite_weyl(r: &FiniteRootSystem) -> Result<FiniteWeylGroup> {
    finite_weyl_of(r, &r.roots)
}

fn finite_weyl_of(r: &FiniteRootSystem, subset: &[RationalVector]) -> Result<FiniteWeylGroup> {
    let generators: Vec<_> = r
        .mirrors(subset)
        .iter()
        .map(|a| reflection_matrix_with(&r.form, a))
        .collect();
    let elements = generate_group(&generators, r.rank(), DEFAULT_GROUP_BUDGET)?;
    Ok(FiniteWeylGroup {
        elements,
        generators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSubset {
    pub classes: Vec<LengthClass>,
    pub root_type: RootType,
    pub roots: Vec<RationalVector>,
}

/// Every union of length classes whose reflections generate the whole Weyl
/// group. Unions of classes are exactly the invariant subsets.
pub fn invariant_generating_subsets(r: &FiniteRootSystem) -> Result<Vec<GeneratingSubset>> {
    let classes = length_classes(r)?;
    let present: Vec<_> = LengthClass::ALL
        .into_iter()
        .filter(|c| !classes.get(*c).is_empty())
        .collect();
    let full = finite_weyl(r)?;
    let mut out = Vec::new();
    for mask in 1u32..(1 << present.len()) {
        let chosen: Vec<_> = present
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| *c)
            .collect();
        let mut roots: Vec<_> = chosen
            .iter()
            .flat_map(|c| classes.get(*c).iter().cloned())
            .collect();
        roots.sort();
        if rank(&roots) < r.rank() {
            continue;
        }
        let group = finite_weyl_of(r, &roots)?;
        if group.order() == full.order() {
            let root_type = identify_type(&r.form, &roots)?;
            out.push(GeneratingSubset {
                classes: chosen,
                root_type,
                roots,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> RootType {
        s.parse().unwrap()
    }

    #[test]
    fn root_counts() {
        let cases = [
            ("A1", 2),
            ("A3", 12),
            ("B2", 8),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("BC1", 4),
            ("BC2", 12),
            ("BC3", 24),
        ];
        for (sym, n) in cases {
            let r = build_finite(t(sym));
            assert_eq!(r.roots().len(), n, "{sym}");
            assert_eq!(identify_type(r.form(), r.roots()).unwrap(), t(sym));
        }
    }

    #[test]
    fn invalid_ranks() {
        for bad in ["D3", "C2", "B1", "E5", "G3", "A9", "A0"] {
            assert!(matches!(bad.parse::<RootType>(), Err(Error::InvalidRank { .. })), "{bad}");
        }
        assert!(matches!("Q2".parse::<RootType>(), Err(Error::UnknownType(_))));
    }

    #[test]
    fn length_class_sizes() {
        let bc1 = build_finite(t("BC1"));
        let c = length_classes(&bc1).unwrap();
        assert_eq!((c.short.len(), c.long.len(), c.extra_long.len()), (2, 0, 2));
        let g2 = length_classes(&build_finite(t("G2"))).unwrap();
        assert_eq!((g2.short.len(), g2.long.len(), g2.extra_long.len()), (6, 6, 0));
        let a1 = length_classes(&build_finite(t("A1"))).unwrap();
        assert_eq!((a1.short.len(), a1.long.len()), (2, 0));
    }

    #[test]
    fn weyl_orders() {
        for (sym, order) in [("A1", 2), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("F4", 1152)] {
            assert_eq!(finite_weyl(&build_finite(t(sym))).unwrap().order(), order, "{sym}");
        }
    }

    #[test]
    fn reducible_is_rejected() {
        let form = BilinearForm::new(RationalMatrix::identity(2)).unwrap();
        let roots: Vec<_> = [[1, 0], [-1, 0], [0, 1], [0, -1]]
            .iter()
            .map(|r| RationalVector::from_ints(r))
            .collect();
        assert_eq!(identify_type(&form, &roots), Err(Error::NotIrreducible));
    }

    fn subset_types(sym: &str) -> Vec<String> {
        let mut v: Vec<_> = invariant_generating_subsets(&build_finite(t(sym)))
            .unwrap()
            .iter()
            .map(|s| s.root_type.to_string())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn generating_subsets_small() {
        assert_eq!(subset_types("A2"), ["A2"]);
        assert_eq!(subset_types("BC1"), ["A1", "A1", "BC1"]);
        assert_eq!(subset_types("BC2"), ["B2", "B2", "BC2"]);
        assert_eq!(subset_types("BC3"), ["B3", "BC3", "C3"]);
        assert_eq!(subset_types("G2"), ["G2"]);
    }

    fn all_types() -> Vec<RootType> {
        ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "BC1", "BC2", "BC3"]
            .iter()
            .map(|s| t(s))
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn closed_and_crystallographic(i in 0usize..15, a in 0usize..64, b in 0usize..64) {
            let r = build_finite(all_types()[i]);
            let roots = r.roots();
            let x = &roots[a % roots.len()];
            let y = &roots[b % roots.len()];
            prop_assert!(r.contains(&-x));
            prop_assert!(r.contains(&r.reflect(x, y)));
            let n = rat(2) * r.form().evaluate(x, y) / r.form().evaluate(y, y);
            prop_assert!(n.is_integer());
        }

        #[test]
        fn orbits_are_length_classes(i in 0usize..15, a in 0usize..64) {
            let r = build_finite(all_types()[i]);
            let x = &r.roots()[a % r.roots().len()];
            let class = r.class_of(x).unwrap();
            let classes = length_classes(&r).unwrap();
            prop_assert_eq!(r.orbit(x), classes.get(class).to_vec());
        }
    }
}
