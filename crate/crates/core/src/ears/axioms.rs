use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{EarsDescriptor, RootKind};
use crate::finite::is_irreducible;
use crate::linalg::{rank, rat, RationalVector};
use crate::report::Report;

/// Strings are probed for `|n| <= STRING_REACH`; a member at the reach is
/// reported as a violation since the string cannot be certified.
const STRING_REACH: i64 = 5;

fn first<T: Ord + Clone>(mut xs: Vec<T>) -> Option<T> {
    xs.sort();
    xs.into_iter().next()
}

/// Checks the root string through `beta` in direction `alpha`.
fn string_violation(r: &EarsDescriptor, alpha: &RationalVector, beta: &RationalVector) -> Option<String> {
    let space = r.space();
    let n = rat(2) * space.pair(alpha, beta) / space.pair(alpha, alpha);
    if !n.is_integer() {
        return Some(format!("alpha={alpha} beta={beta}: 2(a,b)/(a,a) = {n} not integral"));
    }
    let member = |j: i64| r.contains(&beta.add_scaled(&rat(j), alpha));
    let members: Vec<i64> = (-STRING_REACH..=STRING_REACH).filter(|&j| member(j)).collect();
    if members.contains(&STRING_REACH) || members.contains(&-STRING_REACH) {
        return Some(format!("alpha={alpha} beta={beta}: string reaches {STRING_REACH}"));
    }
    let d = (0..).take_while(|&j| members.contains(&-j)).count() as i64 - 1;
    let u = (0..).take_while(|&j| members.contains(&j)).count() as i64 - 1;
    if d < 0 {
        return Some(format!("beta={beta} is not a root"));
    }
    if members.iter().any(|&j| j < -d || j > u) {
        return Some(format!("alpha={alpha} beta={beta}: string has a gap"));
    }
    if rat(d - u) != n {
        return Some(format!("alpha={alpha} beta={beta}: d-u = {} but 2(a,b)/(a,a) = {n}", d - u));
    }
    None
}

/// Checks (R1)-(R8) on the roots whose radical coordinates lie in
/// `[-bound, bound]`. Every verdict is relative to that window.
pub fn verify_axioms(r: &EarsDescriptor, bound: i64) -> Report {
    let space = r.space();
    let window = r.window(bound);
    let aniso: Vec<_> = window
        .iter()
        .filter(|v| r.kind(v) == RootKind::Anisotropic)
        .cloned()
        .collect();
    let iso: Vec<_> = window
        .iter()
        .filter(|v| r.kind(v) == RootKind::Isotropic)
        .cloned()
        .collect();
    let mut report = Report::windowed(bound);

    let zero = RationalVector::zeros(space.dim());
    report.push("R1", (!r.contains(&zero)).then(|| "0 is not a root".into()));

    report.push(
        "R2",
        window.iter().find(|v| !r.contains(&-*v)).map(|v| v.to_string()),
    );

    let span_dim = space.nullity() + space.finite_rank();
    let projected: Vec<_> = window.iter().map(|v| v.slice(0..span_dim)).collect();
    let got = rank(&projected);
    report.push(
        "R3",
        (got != span_dim).then(|| format!("window spans dimension {got} of {span_dim}")),
    );

    report.push(
        "R4",
        aniso
            .iter()
            .find(|a| r.contains(&a.scaled(&rat(2))))
            .map(|a| a.to_string()),
    );

    // every root lies in a finitely generated subgroup of a rational space
    report.push("R5", None);

    let r6: Vec<String> = aniso
        .par_iter()
        .flat_map_iter(|a| window.iter().filter_map(move |b| string_violation(r, a, b)))
        .collect();
    report.push("R6", first(r6));

    let dots: BTreeSet<_> = aniso.iter().map(|a| space.finite_part(a)).collect();
    let dots: Vec<_> = dots.into_iter().collect();
    let finite_form = crate::linalg::BilinearForm::new(space.finite_gram()).expect("symmetric");
    report.push(
        "R7",
        (!is_irreducible(&finite_form, &dots))
            .then(|| "anisotropic roots split into orthogonal parts".into()),
    );

    let r8: Vec<String> = iso
        .par_iter()
        .filter(|s| !aniso.iter().any(|a| r.contains(&(a + *s))))
        .map(|s| s.to_string())
        .collect();
    report.push("R8", first(r8));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ears::construct;
    use crate::semilattice::SemilatticeData;

    fn even_product() -> SemilatticeData {
        SemilatticeData::from_int_cosets(2, &[&[0, 0], &[1, 0], &[0, 1]], false).unwrap()
    }

    #[test]
    fn constructed_a1_passes() {
        let r = construct("A1".parse().unwrap(), even_product(), None, None).unwrap();
        let report = verify_axioms(&r, 3);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.window, Some(3));
    }

    #[test]
    fn self_string_has_length_two() {
        let r = construct("A1".parse().unwrap(), even_product(), None, None).unwrap();
        let a = RationalVector::from_ints(&[1, 0, 1, 0, 0]);
        assert_eq!(string_violation(&r, &a, &a), None);
        assert!(r.contains(&(&a - &a)) && r.contains(&-&a));
    }

    #[test]
    fn doubled_root_flags_r4() {
        let a = RationalVector::from_ints(&[0, 0, 1, 0, 0]);
        let r = construct("A1".parse().unwrap(), even_product(), None, None)
            .unwrap()
            .with_extra_roots(vec![a.scaled(&rat(2)), a.scaled(&rat(-2))])
            .unwrap();
        let report = verify_axioms(&r, 2);
        let r4 = report.get("R4").unwrap();
        assert!(!r4.passed);
        assert!(r4.witness.is_some());
    }
}
