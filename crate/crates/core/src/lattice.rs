//! Finitely generated subgroups of `Q^n` in canonical (Hermite) form.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Rational, RationalVector};

/// A lattice given by a basis in row Hermite normal form: echelon rows,
/// positive pivots, entries above a pivot reduced into `[0, pivot)`.
/// Two lattices are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Lattice {
    dim: usize,
    basis: Vec<RationalVector>,
    pivots: Vec<usize>,
}

fn denominator_lcm<'a>(vectors: impl IntoIterator<Item = &'a RationalVector>) -> BigInt {
    let mut l = BigInt::one();
    for v in vectors {
        for c in v.iter() {
            l = l.lcm(c.denom());
        }
    }
    l
}

/// Integer row HNF; returns nonzero rows and pivot columns.
fn integer_hnf(mut rows: Vec<Vec<BigInt>>, dim: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..dim {
        loop {
            // smallest nonzero |entry| at or below r becomes the pivot candidate
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                for j in col..dim {
                    let d = &rows[r][j] * &q;
                    rows[i][j] -= d;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][col].is_zero() {
            if rows[r][col].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = rows[i][col].div_floor(&rows[r][col]);
                if !q.is_zero() {
                    for j in col..dim {
                        let d = &rows[r][j] * &q;
                        rows[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

impl Lattice {
    pub fn from_generators(dim: usize, generators: &[RationalVector]) -> Self {
        let scale = denominator_lcm(generators);
        let scale_q = Rational::from_integer(scale.clone());
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.dim(), dim, "generator dimension mismatch");
                g.iter().map(|c| (c * &scale_q).to_integer()).collect()
            })
            .collect();
        let (rows, pivots) = integer_hnf(rows, dim);
        let basis = rows
            .into_iter()
            .map(|r| {
                RationalVector::new(
                    r.into_iter()
                        .map(|x| Rational::new(x, scale.clone()))
                        .collect(),
                )
            })
            .collect();
        Self { dim, basis, pivots }
    }

    /// `Z^dim`
    pub fn standard(dim: usize) -> Self {
        let gens: Vec<_> = (0..dim).map(|i| RationalVector::unit(dim, i)).collect();
        Self::from_generators(dim, &gens)
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, &[])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    /// Canonical representative of `v + self`: pivot coordinates land in
    /// `[0, pivot)`.
    pub fn reduce(&self, v: &RationalVector) -> RationalVector {
        let mut v = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = (&v[p] / &row[p]).floor();
            if !q.is_zero() {
                v = v.add_scaled(&-q, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Integer coefficients of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &RationalVector) -> Option<Vec<BigInt>> {
        let mut v = v.clone();
        let mut out = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = &v[p] / &row[p];
            if !q.is_integer() {
                return None;
            }
            v = v.add_scaled(&-q.clone(), row);
            out.push(q.to_integer());
        }
        v.is_zero().then_some(out)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let gens: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::from_generators(self.dim, &gens)
    }

    pub fn scaled(&self, k: &Rational) -> Lattice {
        let gens: Vec<_> = self.basis.iter().map(|b| b.scaled(k)).collect();
        Self::from_generators(self.dim, &gens)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Representatives of `self / sub` (reduced mod `sub`), sorted.
    /// `sub` must be a full-rank sublattice of `self`.
    pub fn coset_reps(&self, sub: &Lattice) -> Vec<RationalVector> {
        assert!(self.contains_lattice(sub) && sub.rank() == self.rank());
        let zero = RationalVector::zeros(self.dim);
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(v) = queue.pop_front() {
            for b in &self.basis {
                let w = sub.reduce(&(&v + b));
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Every point of `offset + self` whose coordinates all have absolute
    /// value at most `bound`, in lexicographic order.
    pub fn points_in_box(&self, offset: &RationalVector, bound: &Rational) -> Vec<RationalVector> {
        let mut out = Vec::new();
        self.box_rec(0, offset.clone(), bound, &mut out);
        out.sort();
        out
    }

    fn box_rec(&self, k: usize, v: RationalVector, bound: &Rational, out: &mut Vec<RationalVector>) {
        let settled = self.pivots.get(k).copied().unwrap_or(self.dim);
        if v.coords()[..settled].iter().any(|c| c.abs() > *bound) {
            return;
        }
        if k == self.basis.len() {
            out.push(v);
            return;
        }
        let row = &self.basis[k];
        let p = self.pivots[k];
        let lo = ((-bound - &v[p]) / &row[p]).ceil().to_integer();
        let hi = ((bound - &v[p]) / &row[p]).floor().to_integer();
        let mut x = lo;
        while x <= hi {
            let w = v.add_scaled(&Rational::from_integer(x.clone()), row);
            self.box_rec(k + 1, w, bound, out);
            x += 1;
        }
    }

    /// Index of a full-rank sublattice, as the ratio of pivot products.
    pub fn index_of(&self, sub: &Lattice) -> BigInt {
        assert!(self.is_full_rank() && sub.is_full_rank());
        let det = |l: &Lattice| -> Rational {
            l.basis
                .iter()
                .zip(&l.pivots)
                .map(|(r, &p)| r[p].clone())
                .product()
        };
        (det(sub) / det(self)).to_integer()
    }
}
