//! Semilattices and translated semilattices, stored as a union of cosets of
//! `2 <S>` inside the generated lattice `<S>`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{rat, Rational, RationalVector};
use crate::report::Report;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemilatticeData {
    lattice: Lattice,
    doubled: Lattice,
    cosets: Vec<RationalVector>,
    translated: bool,
}

impl SemilatticeData {
    /// Stores `reps + 2 lattice` exactly as given (reps reduced and deduplicated).
    /// Use [`verify_semilattice`] to check that the data is consistent.
    pub fn from_raw(lattice: Lattice, reps: &[RationalVector], translated: bool) -> Result<Self> {
        let doubled = lattice.scaled(&rat(2));
        let mut set = BTreeSet::new();
        for r in reps {
            if r.dim() != lattice.dim() {
                return Err(Error::DimensionMismatch {
                    expected: lattice.dim(),
                    found: r.dim(),
                });
            }
            set.insert(doubled.reduce(r));
        }
        Ok(Self {
            lattice,
            doubled,
            cosets: set.into_iter().collect(),
            translated,
        })
    }

    /// The set `reps + 2 modulus`, renormalised so that the stored lattice is
    /// the one generated by the set.
    pub fn new(modulus: &Lattice, reps: &[RationalVector], translated: bool) -> Result<Self> {
        if reps.is_empty() {
            return Err(Error::InvalidSemilattice("empty coset list".into()));
        }
        let doubled = modulus.scaled(&rat(2));
        let mut gens: Vec<_> = reps.to_vec();
        gens.extend(doubled.basis().iter().cloned());
        let generated = Lattice::from_generators(modulus.dim(), &gens);
        if !generated.is_full_rank() {
            return Err(Error::InvalidSemilattice("set does not span".into()));
        }
        // each old coset splits into cosets of the finer modulus 2<S>
        let new_doubled = generated.scaled(&rat(2));
        let refinement = doubled.coset_reps(&new_doubled);
        let mut all = Vec::new();
        for r in reps {
            for t in &refinement {
                all.push(r + t);
            }
        }
        Self::from_raw(generated, &all, translated)
    }

    /// The whole lattice as a semilattice.
    pub fn full(lattice: Lattice) -> Self {
        let doubled = lattice.scaled(&rat(2));
        let cosets = lattice.coset_reps(&doubled);
        Self {
            lattice,
            doubled,
            cosets,
            translated: false,
        }
    }

    pub fn standard(dim: usize) -> Self {
        Self::full(Lattice::standard(dim))
    }

    /// Integer-coordinate convenience constructor over `Z^dim`.
    pub fn from_int_cosets(dim: usize, reps: &[&[i64]], translated: bool) -> Result<Self> {
        let reps: Vec<_> = reps.iter().map(|r| RationalVector::from_ints(r)).collect();
        Self::new(&Lattice::standard(dim), &reps, translated)
    }

    pub fn ambient_rank(&self) -> usize {
        self.lattice.dim()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn cosets(&self) -> &[RationalVector] {
        &self.cosets
    }

    pub fn translated(&self) -> bool {
        self.translated
    }

    pub fn is_lattice(&self) -> bool {
        self.cosets.len() == 1usize << self.lattice.rank()
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        v.dim() == self.ambient_rank()
            && self.lattice.contains(v)
            && self.cosets.binary_search(&self.doubled.reduce(v)).is_ok()
    }

    /// Elements with every coordinate in `[-bound, bound]`.
    pub fn window(&self, bound: i64) -> Vec<RationalVector> {
        let b = rat(bound);
        let mut out: Vec<_> = self
            .cosets
            .iter()
            .flat_map(|c| self.doubled.points_in_box(c, &b))
            .collect();
        out.sort();
        out
    }

    /// `k S`
    pub fn scaled(&self, k: i64) -> Self {
        let kq = rat(k);
        let lattice = self.lattice.scaled(&kq);
        let reps: Vec<_> = self.cosets.iter().map(|c| c.scaled(&kq)).collect();
        Self::from_raw(lattice, &reps, self.translated).expect("dimensions agree")
    }

    /// `q S` for a rational factor.
    pub fn scaled_by(&self, q: &Rational) -> Self {
        let lattice = self.lattice.scaled(q);
        let reps: Vec<_> = self.cosets.iter().map(|c| c.scaled(q)).collect();
        Self::from_raw(lattice, &reps, self.translated).expect("dimensions agree")
    }

    /// Whether translation by `t` maps the set into itself.
    pub fn stable_under(&self, t: &RationalVector) -> bool {
        self.lattice.contains(t)
            && self
                .cosets
                .iter()
                .all(|c| self.cosets.binary_search(&self.doubled.reduce(&(c + t))).is_ok())
    }
}

/// Structural checks on semilattice data. Discreteness holds by construction.
pub fn verify_semilattice(s: &SemilatticeData) -> Report {
    let mut report = Report::default();
    report.push(
        "nonempty",
        s.cosets.is_empty().then(|| "no cosets".to_string()),
    );
    report.push(
        "cosets in lattice",
        s.cosets
            .iter()
            .find(|c| !s.lattice.contains(c))
            .map(|c| c.to_string()),
    );
    let mut gens = s.cosets.clone();
    gens.extend(s.doubled.basis().iter().cloned());
    let generated = Lattice::from_generators(s.ambient_rank(), &gens);
    report.push(
        "generates lattice",
        (generated != s.lattice).then(|| "cosets generate a proper sublattice".to_string()),
    );
    report.push(
        "spans",
        (!s.lattice.is_full_rank())
            .then(|| format!("rank {} < {}", s.lattice.rank(), s.ambient_rank())),
    );
    // S + 2S at coset level: c + 2d for representatives c, d
    let mut closure = None;
    'outer: for c in &s.cosets {
        for d in &s.cosets {
            let w = c.add_scaled(&rat(2), d);
            if !s.contains(&w) {
                closure = Some(format!("{c} + 2{d}"));
                break 'outer;
            }
        }
    }
    report.push("closure", closure);
    let zero = RationalVector::zeros(s.ambient_rank());
    report.push(
        "contains zero",
        (!s.translated && !s.contains(&zero)).then(|| "0 not in S".to_string()),
    );
    report.push("discrete", None);
    report
}

fn check_rank(a: &SemilatticeData, b: &SemilatticeData) -> Result<()> {
    if a.ambient_rank() != b.ambient_rank() {
        return Err(Error::RankMismatch(a.ambient_rank(), b.ambient_rank()));
    }
    Ok(())
}

/// Decides `A + k B ⊆ A`. Both sets are symmetric, so this is the same as
/// `A + k <B> ⊆ A`, which is checked on generators of `<B>`.
pub fn sum_condition(a: &SemilatticeData, b: &SemilatticeData, k: i64) -> Result<bool> {
    check_rank(a, b)?;
    let kq = rat(k);
    Ok(b.lattice.basis().iter().all(|g| a.stable_under(&g.scaled(&kq))))
}

/// Whether `A ∩ B` is empty.
pub fn disjoint(a: &SemilatticeData, b: &SemilatticeData) -> Result<bool> {
    check_rank(a, b)?;
    let modulus = a.doubled.sum(&b.doubled);
    Ok(a.cosets
        .iter()
        .all(|x| b.cosets.iter().all(|y| !modulus.contains(&(x - y)))))
}

/// `A ∪ B` as semilattice data, if it is a union of cosets of `2<A ∪ B>`.
pub fn union(a: &SemilatticeData, b: &SemilatticeData) -> Result<SemilatticeData> {
    check_rank(a, b)?;
    let total = a.lattice.sum(&b.lattice);
    if !total.is_full_rank() || !a.lattice.is_full_rank() || !b.lattice.is_full_rank() {
        return Err(Error::InvalidSemilattice("union of non-spanning sets".into()));
    }
    // m <total> lies in both lattices, so both sets are unions of cosets of 2m<total>
    let m: BigInt = total.index_of(&a.lattice).lcm(&total.index_of(&b.lattice));
    let fine = total.scaled(&(Rational::from_integer(m) * rat(2)));
    let coarse = total.scaled(&rat(2));
    let mut kept = BTreeSet::new();
    for r in total.coset_reps(&fine) {
        if a.contains(&r) || b.contains(&r) {
            kept.insert(r);
        }
    }
    let refine = coarse.coset_reps(&fine);
    let mut reps = Vec::new();
    for r in total.coset_reps(&coarse) {
        let hits = refine
            .iter()
            .filter(|t| kept.contains(&fine.reduce(&(&r + t))))
            .count();
        if hits == refine.len() {
            reps.push(r);
        } else if hits != 0 {
            return Err(Error::InvalidSemilattice(
                "union is not a union of cosets of twice its lattice".into(),
            ));
        }
    }
    SemilatticeData::new(&total, &reps, a.translated && b.translated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn even_product_2d() -> SemilatticeData {
        SemilatticeData::from_int_cosets(2, &[&[0, 0], &[1, 0], &[0, 1]], false).unwrap()
    }

    #[test]
    fn lattice_is_semilattice() {
        let z2 = SemilatticeData::standard(2);
        assert!(verify_semilattice(&z2).passed());
        assert_eq!(z2.cosets().len(), 4);
        assert!(z2.is_lattice());
    }

    #[test]
    fn even_product_passes() {
        let s = even_product_2d();
        assert!(verify_semilattice(&s).passed());
        assert!(!s.is_lattice());
        assert!(s.contains(&v(&[2, 3])));
        assert!(!s.contains(&v(&[1, 3])));
    }

    #[test]
    fn odd_coset_without_zero_fails() {
        let raw = SemilatticeData::from_raw(Lattice::standard(2), &[v(&[1, 1])], false).unwrap();
        let r = verify_semilattice(&raw);
        assert!(!r.passed());
        assert!(!r.get("contains zero").unwrap().passed);
    }

    #[test]
    fn windows() {
        assert_eq!(
            SemilatticeData::standard(1).window(2),
            vec![v(&[-2]), v(&[-1]), v(&[0]), v(&[1]), v(&[2])]
        );
        assert_eq!(
            even_product_2d().window(1),
            vec![v(&[-1, 0]), v(&[0, -1]), v(&[0, 0]), v(&[0, 1]), v(&[1, 0])]
        );
        let odd = SemilatticeData::from_int_cosets(1, &[&[1]], true).unwrap();
        assert!(verify_semilattice(&odd).passed());
        assert_eq!(odd.window(3), vec![v(&[-3]), v(&[-1]), v(&[1]), v(&[3])]);
    }

    #[test]
    fn translated_extra_long_conditions() {
        let s = SemilatticeData::standard(3);
        let e = SemilatticeData::from_int_cosets(3, &[&[1, 1, 1]], true).unwrap();
        assert!(disjoint(&e, &s.scaled(2)).unwrap());
        assert!(sum_condition(&e, &s, 4).unwrap());
        assert!(!sum_condition(&e, &s, 1).unwrap());
    }

    #[test]
    fn rank_mismatch() {
        let a = SemilatticeData::standard(2);
        let b = SemilatticeData::standard(3);
        assert_eq!(sum_condition(&a, &b, 1), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn new_renormalises_lattice() {
        // (0,0) + 2Z^2 generates 2Z^2, which is then the lattice
        let s = SemilatticeData::from_int_cosets(2, &[&[0, 0]], false).unwrap();
        assert!(s.is_lattice());
        assert!(s.contains(&v(&[2, 4])));
        assert!(!s.contains(&v(&[1, 0])));
    }

    #[test]
    fn union_of_halves() {
        let s = even_product_2d();
        let half = SemilatticeData::from_int_cosets(2, &[&[1, 1]], true).unwrap();
        let u = union(&s, &half).unwrap();
        assert!(u.is_lattice());
        assert_eq!(u.lattice(), &Lattice::standard(2));
    }

    fn arb_semilattice() -> impl Strategy<Value = SemilatticeData> {
        // cosets of Z^2 mod 2, always containing zero
        proptest::collection::btree_set(0usize..4, 0..4).prop_filter_map("spanning", |idx| {
            let all = [[0, 0], [1, 0], [0, 1], [1, 1]];
            let mut reps: Vec<&[i64]> = vec![&[0, 0]];
            for i in idx {
                reps.push(&all[i]);
            }
            SemilatticeData::from_int_cosets(2, &reps, false).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn window_round_trip(s in arb_semilattice(), b in 1i64..4) {
            let w = s.window(b);
            for p in &w {
                prop_assert!(s.contains(p));
            }
            let mut brute = Vec::new();
            for x in -b..=b {
                for y in -b..=b {
                    let p = v(&[x, y]);
                    if s.contains(&p) {
                        brute.push(p);
                    }
                }
            }
            prop_assert_eq!(w, brute);
        }

        #[test]
        fn doubled_lattice_inside(s in arb_semilattice()) {
            prop_assert!(verify_semilattice(&s).passed());
            let n = s.cosets().len();
            prop_assert!((1..=1usize << s.ambient_rank()).contains(&n));
            for g in s.lattice().basis() {
                prop_assert!(s.contains(&g.scaled(&rat(2))));
            }
            for c in s.cosets() {
                prop_assert!(s.lattice().contains(c));
            }
        }

        #[test]
        fn sum_condition_matches_brute_force(a in arb_semilattice(), b in arb_semilattice(), k in 1i64..4) {
            let fast = sum_condition(&a, &b, k).unwrap();
            let mut brute = true;
            for x in a.window(3) {
                for y in b.window(3) {
                    if !a.contains(&x.add_scaled(&rat(k), &y)) {
                        brute = false;
                    }
                }
            }
            prop_assert_eq!(fast, brute);
        }
    }
}
