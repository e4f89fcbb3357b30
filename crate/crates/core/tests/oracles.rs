//! Values frozen against small independent computations done here in plain
//! integer arithmetic, in coordinates the library does not use.

use std::collections::{BTreeSet, VecDeque};

use ears_core::ears::{construct, irc, trim};
use ears_core::finite::{build_finite_str, finite_weyl, invariant_generating_subsets, length_classes, LengthClass};
use ears_core::fixtures::{cube_system, plane_system};
use ears_core::lattice::Lattice;
use ears_core::linalg::{rat, ratio, RationalVector};
use ears_core::presentation::{coxeter_order, CoxeterOrder};
use ears_core::semilattice::{disjoint, sum_condition, SemilatticeData};
use ears_core::weyl::orbit_closed_form;

type V = Vec<i64>;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reflection in the standard Euclidean form; roots are chosen so the
/// coefficient is integral.
fn reflect(a: &[i64], v: &[i64]) -> V {
    let c = 2 * dot(v, a);
    assert_eq!(c % dot(a, a), 0);
    let c = c / dot(a, a);
    v.iter().zip(a).map(|(x, y)| x - c * y).collect()
}

fn closure(gens: &[V]) -> BTreeSet<V> {
    let mut seen: BTreeSet<V> = gens.iter().cloned().collect();
    let mut queue: VecDeque<V> = gens.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w = reflect(g, &v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

type M = Vec<V>;

fn mat_mul(a: &M, b: &M) -> M {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn reflection_matrix(a: &[i64]) -> M {
    let n = a.len();
    let cols: Vec<V> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            reflect(a, &e)
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

/// Order of the group generated by reflections, acting faithfully on the
/// roots by permutations.
fn group_order(roots: &BTreeSet<V>) -> usize {
    let list: Vec<V> = roots.iter().cloned().collect();
    let index = |v: &V| list.iter().position(|w| w == v).expect("root");
    let gens: Vec<Vec<usize>> = list.iter().map(|a| list.iter().map(|v| index(&reflect(a, v))).collect()).collect();
    let id: Vec<usize> = (0..list.len()).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

// B2 and BC2 in the orthonormal basis e1, e2; G2 in the plane x+y+z=0.
fn b2() -> BTreeSet<V> {
    closure(&[vec![1, -1], vec![0, 1]])
}

fn bc2() -> BTreeSet<V> {
    closure(&[vec![1, -1], vec![0, 1], vec![0, 2]])
}

fn g2() -> BTreeSet<V> {
    closure(&[vec![1, -1, 0], vec![-2, 1, 1]])
}

fn by_length(roots: &BTreeSet<V>) -> Vec<usize> {
    let lengths: BTreeSet<i64> = roots.iter().map(|a| dot(a, a)).collect();
    lengths.iter().map(|l| roots.iter().filter(|a| dot(a, a) == *l).count()).collect()
}

#[test]
fn finite_root_counts() {
    assert_eq!(b2().len(), 8);
    assert_eq!(bc2().len(), 12);
    assert_eq!(build_finite_str("B2").unwrap().roots().len(), b2().len());
    assert_eq!(build_finite_str("BC2").unwrap().roots().len(), bc2().len());
}

#[test]
fn g2_length_classes() {
    let expected = by_length(&g2());
    assert_eq!(expected, vec![6, 6]);
    let classes = length_classes(&build_finite_str("G2").unwrap()).unwrap();
    let got: Vec<usize> = LengthClass::ALL
        .into_iter()
        .map(|c| classes.get(c).len())
        .filter(|&n| n > 0)
        .collect();
    assert_eq!(got, expected);
    assert!(classes.get(LengthClass::ExtraLong).is_empty());
}

#[test]
fn weyl_group_orders() {
    assert_eq!(group_order(&b2()), 8);
    assert_eq!(group_order(&g2()), 12);
    assert_eq!(finite_weyl(&build_finite_str("B2").unwrap()).unwrap().order(), 8);
    assert_eq!(finite_weyl(&build_finite_str("G2").unwrap()).unwrap().order(), 12);
}

#[test]
fn bc2_generating_unions() {
    let roots = bc2();
    let full = group_order(&roots);
    let mut lengths: Vec<i64> = roots.iter().map(|a| dot(a, a)).collect::<BTreeSet<_>>().into_iter().collect();
    lengths.sort();
    let mut expected = Vec::new();
    for mask in 1..(1u32 << lengths.len()) {
        let subset: BTreeSet<V> = roots
            .iter()
            .filter(|a| (0..lengths.len()).any(|i| mask & (1 << i) != 0 && dot(a, a) == lengths[i]))
            .cloned()
            .collect();
        if group_order(&subset) == full {
            expected.push(subset.len());
        }
    }
    expected.sort();
    let mut got: Vec<usize> = invariant_generating_subsets(&build_finite_str("BC2").unwrap())
        .unwrap()
        .iter()
        .map(|s| s.roots.len())
        .collect();
    got.sort();
    assert_eq!(got, expected);
    assert_eq!(expected, vec![8, 8, 12]);
}

fn even_product(z: &[i64]) -> bool {
    z.iter().product::<i64>() % 2 == 0
}

fn even_plane() -> SemilatticeData {
    SemilatticeData::from_int_cosets(2, &[&[0, 0], &[1, 0], &[0, 1]], false).unwrap()
}

fn box_points(dim: usize, bound: i64) -> Vec<V> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn even_plane_window() {
    let expected: BTreeSet<RationalVector> = box_points(2, 1)
        .into_iter()
        .filter(|z| even_product(z))
        .map(|z| RationalVector::from_ints(&z))
        .collect();
    assert_eq!(expected.len(), 5);
    let got: BTreeSet<_> = even_plane().window(1).into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn sum_conditions_by_enumeration() {
    // L = 2Z^2 ∪ ((1,1) + 2Z^2) and S = {z1 z2 even}
    let in_l = |z: &[i64]| z[0].rem_euclid(2) == z[1].rem_euclid(2);
    let bound = 4;
    let holds = box_points(2, bound).iter().filter(|l| in_l(l)).all(|l| {
        box_points(2, bound)
            .iter()
            .filter(|s| even_product(s))
            .all(|s| in_l(&[l[0] + 2 * s[0], l[1] + 2 * s[1]]))
    });
    let l = SemilatticeData::from_int_cosets(2, &[&[0, 0], &[1, 1]], false).unwrap();
    assert_eq!(sum_condition(&l, &even_plane(), 2).unwrap(), holds);

    // E = (1,1,1) + 2Z^3 and S = Z^3
    let in_e = |z: &[i64]| z.iter().all(|x| x.rem_euclid(2) == 1);
    let pts = box_points(3, 2);
    let meets = pts.iter().any(|s| in_e(&s.iter().map(|x| 2 * x).collect::<V>()));
    let stable = pts.iter().filter(|e| in_e(e)).all(|e| {
        pts.iter()
            .all(|s| in_e(&e.iter().zip(s).map(|(x, y)| x + 4 * y).collect::<V>()))
    });
    let e = SemilatticeData::from_int_cosets(3, &[&[1, 1, 1]], true).unwrap();
    let s = SemilatticeData::standard(3);
    assert_eq!(disjoint(&e, &s.scaled(2)).unwrap(), !meets);
    assert_eq!(sum_condition(&e, &s, 4).unwrap(), stable);
    assert!(!meets && stable);
}

/// Plane system roots in the coordinates (z1, z2, x, d1, d2) with Gram matrix
/// pairing z with d and (x, x) = 1.
fn plane_pair(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[3] + a[1] * b[4] + a[2] * b[2] + a[3] * b[0] + a[4] * b[1]
}

fn plane_reflect(a: &[i64], v: &[i64]) -> V {
    let c = 2 * plane_pair(v, a) / plane_pair(a, a);
    v.iter().zip(a).map(|(x, y)| x - c * y).collect()
}

fn plane_roots(bound: i64) -> Vec<V> {
    box_points(2, bound)
        .into_iter()
        .filter(|z| even_product(z))
        .flat_map(|z| [1, -1].map(|x| vec![z[0], z[1], x, 0, 0]))
        .collect()
}

#[test]
fn plane_reflection_matrices() {
    let space = plane_system().space().clone();
    for a in plane_roots(2) {
        let got = space.reflection_matrix(&RationalVector::from_ints(&a)).unwrap();
        for j in 0..5 {
            let mut e = vec![0; 5];
            e[j] = 1;
            assert_eq!(got.column(j), RationalVector::from_ints(&plane_reflect(&a, &e)), "root {a:?}");
        }
    }
}

#[test]
fn plane_orbits_by_search() {
    let r = plane_system();
    let (inner, outer) = (2, 8);
    let gens = plane_roots(outer);
    let in_box = |v: &V, b: i64| v[0].abs() <= b && v[1].abs() <= b;
    for start in plane_roots(inner) {
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(v) = queue.pop_front() {
            for g in &gens {
                let w = plane_reflect(g, &v);
                if in_box(&w, outer) && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let orbit = orbit_closed_form(&r, &RationalVector::from_ints(&start)).unwrap();
        for v in plane_roots(inner) {
            assert_eq!(
                seen.contains(&v),
                orbit.contains(&r, &RationalVector::from_ints(&v)),
                "{start:?} -> {v:?}"
            );
        }
    }
}

#[test]
fn cube_isotropic_closure() {
    // differences of anisotropic roots with the same finite part
    let diffs: Vec<V> = box_points(3, 1).into_iter().collect();
    let lattice = Lattice::from_generators(3, &diffs.iter().map(|d| RationalVector::from_ints(d)).collect::<Vec<_>>());
    assert_eq!(lattice, Lattice::standard(3));
    let got = irc(&cube_system()).unwrap();
    assert_eq!(got.lattice(), &lattice);
    assert_eq!(got.window(2), SemilatticeData::full(lattice).window(2));
}

#[test]
fn bc1_trims_to_half_integers() {
    let e = SemilatticeData::from_int_cosets(1, &[&[1]], true).unwrap();
    let r = construct("BC1".parse().unwrap(), SemilatticeData::standard(1), None, Some(e)).unwrap();
    let t = trim(&r).unwrap();
    assert_eq!(t.root_type(), "A1".parse().unwrap());
    // Z ∪ (1/2 + Z)
    let expected: BTreeSet<RationalVector> = (-8..=8).map(|k| RationalVector::new(vec![ratio(k, 2)])).collect();
    let got: BTreeSet<_> = t.s().window(4).into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn orthogonal_roots_commute() {
    let r = construct("B2".parse().unwrap(), SemilatticeData::standard(0), Some(SemilatticeData::standard(0)), None).unwrap();
    let space = r.space();
    let short: Vec<RationalVector> = r
        .anisotropic_window(0)
        .into_iter()
        .filter(|a| space.pair(a, a) == rat(1))
        .collect();
    let (a, b) = short
        .iter()
        .flat_map(|a| short.iter().map(move |b| (a, b)))
        .find(|(a, b)| space.pair(a, b) == rat(0))
        .expect("orthogonal short roots");
    let (ea, eb) = (vec![1, 0], vec![0, 1]);
    let m = mat_mul(&reflection_matrix(&ea), &reflection_matrix(&eb));
    assert_ne!(m, reflection_matrix(&ea));
    assert_eq!(mat_mul(&m, &m), vec![vec![1, 0], vec![0, 1]]);
    assert_eq!(coxeter_order(space, a, b, 12).unwrap(), CoxeterOrder::Finite(2));
}
