//! Images of reflection groups in `GL(M / N M)` for an invariant lattice `M`.
//!
//! If the reflections of a subset generate the whole group then the two
//! images modulo `N` coincide, so a strictly smaller image proves that the
//! subset does not generate.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{survives, OrbitDescriptor};
use crate::ears::EarsDescriptor;
use crate::finite::{length_classes, LengthClass};
use crate::lattice::Lattice;
use crate::linalg::{rat, Rational, RationalMatrix, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModularImage {
    pub modulus: u8,
    pub order: usize,
}

/// Basis `(radical lattice, simple roots, dual of the radical lattice)` as
/// the columns of a matrix, together with its inverse.
fn adapted_basis(r: &EarsDescriptor) -> Option<(RationalMatrix, RationalMatrix)> {
    let space = r.space();
    let nu = space.nullity();
    let l = space.finite_rank();
    let n = space.dim();
    let mut gens = Vec::new();
    for class in LengthClass::ALL {
        if let Some(x) = r.class_set(class) {
            gens.extend(x.lattice().basis().iter().cloned());
        }
    }
    let radical = Lattice::from_generators(nu, &gens);
    if radical.rank() != nu {
        return None;
    }
    let b = if nu == 0 {
        RationalMatrix::identity(0)
    } else {
        RationalMatrix::from_columns(radical.basis()).ok()?
    };
    let b_dual = b.inverse()?.transpose();
    let mut p = RationalMatrix::zeros(n);
    for i in 0..nu {
        for j in 0..nu {
            p.set(i, j, b.get(i, j).clone());
            p.set(nu + l + i, nu + l + j, b_dual.get(i, j).clone());
        }
    }
    for k in 0..l {
        p.set(nu + k, nu + k, rat(1));
    }
    let inv = p.inverse()?;
    Some((p, inv))
}

fn reduce_mod(q: &Rational, modulus: u8) -> Option<u8> {
    if !q.is_integer() {
        return None;
    }
    q.to_integer()
        .mod_floor(&BigInt::from(modulus))
        .to_u8()
}

/// Reflection matrix of `beta` in the adapted basis, reduced mod `modulus`.
fn reduced_reflection(
    r: &EarsDescriptor,
    basis: &(RationalMatrix, RationalMatrix),
    beta: &RationalVector,
    modulus: u8,
) -> Option<Vec<u8>> {
    let space = r.space();
    let m = space.reflection_matrix(beta).ok()?;
    let conj = &(&basis.1 * &m) * &basis.0;
    conj.entries().iter().map(|q| reduce_mod(q, modulus)).collect()
}

fn mul_mod(a: &[u8], b: &[u8], n: usize, modulus: u8) -> Vec<u8> {
    let m = modulus as u32;
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u32;
            for k in 0..n {
                acc += a[i * n + k] as u32 * b[k * n + j] as u32;
            }
            out[i * n + j] = (acc % m) as u8;
        }
    }
    out
}

fn closure_order(generators: &HashSet<Vec<u8>>, n: usize, modulus: u8, budget: usize) -> Option<usize> {
    let mut id = vec![0u8; n * n];
    for i in 0..n {
        id[i * n + i] = 1 % modulus;
    }
    let mut gens: Vec<_> = generators.iter().cloned().collect();
    gens.sort();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mul_mod(&x, g, n, modulus);
            if !seen.contains(&y) {
                if seen.len() >= budget {
                    return None;
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}

/// Order of the image modulo `modulus` of the group generated by the
/// reflections of `R` (minus `removed`, if given). `None` when the
/// reflections are not integral in the adapted basis or the budget runs out.
pub fn image_order_mod(
    r: &EarsDescriptor,
    removed: Option<&OrbitDescriptor>,
    modulus: u8,
    budget: usize,
) -> Option<usize> {
    let basis = adapted_basis(r)?;
    let classes = length_classes(r.finite()).ok()?;
    let space = r.space();
    let mut generators = HashSet::new();
    for class in LengthClass::ALL {
        let dots = classes.get(class);
        if dots.is_empty() {
            continue;
        }
        let Some(x) = r.class_set(class) else { continue };
        // reflections mod N only depend on the radical part mod 2N<X>
        let fine = x.lattice().scaled(&rat(2 * modulus as i64));
        for rep in x.lattice().coset_reps(&fine) {
            if !x.contains(&rep) {
                continue;
            }
            for dot in dots {
                let beta = space.embed(&rep, dot);
                if removed.is_some_and(|o| !survives(r, o, &beta)) {
                    continue;
                }
                generators.insert(reduced_reflection(r, &basis, &beta, modulus)?);
            }
        }
    }
    closure_order(&generators, space.dim(), modulus, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ears::construct;
    use crate::semilattice::SemilatticeData;
    use crate::weyl::anisotropic_orbits;

    #[test]
    fn three_dim_images_mod_four() {
        let full = construct("A1".parse().unwrap(), SemilatticeData::standard(3), None, None).unwrap();
        assert_eq!(image_order_mod(&full, None, 4, 100_000), Some(128));
        let even = SemilatticeData::from_int_cosets(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]],
            false,
        )
        .unwrap();
        let r = construct("A1".parse().unwrap(), even, None, None).unwrap();
        assert_eq!(image_order_mod(&r, None, 4, 100_000), Some(128));
        for o in anisotropic_orbits(&r).unwrap() {
            assert_eq!(image_order_mod(&r, Some(&o), 4, 100_000), Some(64), "{:?}", o.offset);
        }
    }
}
