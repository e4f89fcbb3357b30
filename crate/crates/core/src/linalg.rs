//! Exact rational vectors, matrices and the split ambient space
//! `V = V0 (+) Vdot (+) V0*` carrying the reflections.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Range, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: &Rational, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Plain coordinate dot product, not a bilinear form.
    pub fn dot(&self, other: &Self) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> Rational {
        self.0
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn slice(&self, range: Range<usize>) -> Self {
        Self(self.0[range].to_vec())
    }

    pub fn concat(parts: &[&RationalVector]) -> Self {
        Self(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }

    /// Whether both are nonzero and linearly dependent.
    pub fn is_parallel(&self, other: &Self) -> bool {
        if self.dim() != other.dim() || self.is_zero() || other.is_zero() {
            return false;
        }
        let i = self.0.iter().position(|c| !c.is_zero()).unwrap();
        if other.0[i].is_zero() {
            return false;
        }
        let k = &other.0[i] / &self.0[i];
        self.scaled(&k) == *other
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

/// Square matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_rows(rows: &[RationalVector]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.dim(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Self { n, entries })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<_> = rows.iter().map(|r| RationalVector::from_ints(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn from_columns(cols: &[RationalVector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector(self.entries[i * self.n..(i + 1) * self.n].to_vec())
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn apply(&self, v: &RationalVector) -> Result<RationalVector> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            });
        }
        Ok(RationalVector(
            (0..self.n)
                .map(|i| {
                    self.entries[i * self.n..(i + 1) * self.n]
                        .iter()
                        .zip(v.iter())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.entries[col * n + j] = &a.entries[col * n + j] / &p;
                inv.entries[col * n + j] = &inv.entries[col * n + j] / &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let av = &a.entries[col * n + j] * &f;
                    let iv = &inv.entries[col * n + j] * &f;
                    a.entries[r * n + j] -= av;
                    inv.entries[r * n + j] -= iv;
                }
            }
        }
        Some(inv)
    }

    /// `self - I` is nilpotent and nonzero.
    pub fn is_nontrivial_unipotent(&self) -> bool {
        let mut nil = self.clone();
        for i in 0..self.n {
            nil.entries[i * self.n + i] -= Rational::one();
        }
        if nil.entries.iter().all(Zero::is_zero) {
            return false;
        }
        nil.pow(self.n as u32).entries.iter().all(Zero::is_zero)
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: Self) -> RationalMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[RationalVector]) -> usize {
    let Some(dim) = vectors.first().map(RationalVector::dim) else {
        return 0;
    };
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            for j in col..dim {
                let d = &rows[r][j] * &f;
                rows[i][j] -= d;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    gram: RationalMatrix,
}

impl BilinearForm {
    pub fn new(gram: RationalMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn evaluate(&self, v: &RationalVector, w: &RationalVector) -> Rational {
        let n = self.dim();
        let mut acc = Rational::zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..n {
                let g = self.gram.get(i, j);
                if !g.is_zero() && !w[j].is_zero() {
                    row += g * &w[j];
                }
            }
            acc += &v[i] * row;
        }
        acc
    }

    /// Leading principal minors all positive.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.gram.row(i).into_coords()).collect();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let d = &a[k][j] * &f;
                    a[i][j] -= d;
                }
            }
        }
        true
    }
}

/// `V = V0 (+) Vdot (+) V0*` with block sizes `(nullity, finite_rank, nullity)`.
///
/// The radical block pairs with the dual block by the identity and with
/// nothing else; the finite block carries a positive definite form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmbientSpace {
    form: BilinearForm,
    nullity: usize,
    finite_rank: usize,
}

impl AmbientSpace {
    pub fn new(nullity: usize, finite_gram: &RationalMatrix) -> Result<Self> {
        let l = finite_gram.dim();
        let finite = BilinearForm::new(finite_gram.clone())?;
        if !finite.is_positive_definite() {
            return Err(Error::InvalidSplit("finite block is not positive definite".into()));
        }
        let n = 2 * nullity + l;
        let mut gram = RationalMatrix::zeros(n);
        for i in 0..nullity {
            gram.set(i, nullity + l + i, Rational::one());
            gram.set(nullity + l + i, i, Rational::one());
        }
        for i in 0..l {
            for j in 0..l {
                gram.set(nullity + i, nullity + j, finite_gram.get(i, j).clone());
            }
        }
        Ok(Self {
            form: BilinearForm::new(gram)?,
            nullity,
            finite_rank: l,
        })
    }

    /// Validates an explicit gram matrix against the block layout.
    pub fn from_gram(gram: RationalMatrix, nullity: usize, finite_rank: usize) -> Result<Self> {
        if gram.dim() != 2 * nullity + finite_rank {
            return Err(Error::DimensionMismatch {
                expected: 2 * nullity + finite_rank,
                found: gram.dim(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let l = finite_rank;
        let mut finite = RationalMatrix::zeros(l);
        for i in 0..l {
            for j in 0..l {
                finite.set(i, j, gram.get(nullity + i, nullity + j).clone());
            }
        }
        let space = Self::new(nullity, &finite)?;
        if space.form.gram != gram {
            return Err(Error::InvalidSplit(
                "gram does not have the radical / finite / dual block shape".into(),
            ));
        }
        Ok(space)
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn nullity(&self) -> usize {
        self.nullity
    }

    pub fn finite_rank(&self) -> usize {
        self.finite_rank
    }

    pub fn radical_range(&self) -> Range<usize> {
        0..self.nullity
    }

    pub fn finite_range(&self) -> Range<usize> {
        self.nullity..self.nullity + self.finite_rank
    }

    pub fn dual_range(&self) -> Range<usize> {
        self.nullity + self.finite_rank..self.dim()
    }

    pub fn finite_gram(&self) -> RationalMatrix {
        let l = self.finite_rank;
        let mut g = RationalMatrix::zeros(l);
        for i in 0..l {
            for j in 0..l {
                g.set(i, j, self.form.gram.get(self.nullity + i, self.nullity + j).clone());
            }
        }
        g
    }

    pub fn radical_part(&self, v: &RationalVector) -> RationalVector {
        v.slice(self.radical_range())
    }

    pub fn finite_part(&self, v: &RationalVector) -> RationalVector {
        v.slice(self.finite_range())
    }

    pub fn dual_part(&self, v: &RationalVector) -> RationalVector {
        v.slice(self.dual_range())
    }

    /// Vector of `V0 (+) Vdot` with zero dual component.
    pub fn embed(&self, radical: &RationalVector, finite: &RationalVector) -> RationalVector {
        let dual = RationalVector::zeros(self.nullity);
        RationalVector::concat(&[radical, finite, &dual])
    }

    pub fn in_span_space(&self, v: &RationalVector) -> bool {
        v.coords()[self.dual_range()].iter().all(Zero::is_zero)
    }

    pub fn in_radical(&self, v: &RationalVector) -> bool {
        v.coords()[self.nullity..].iter().all(Zero::is_zero)
    }

    pub fn pair(&self, v: &RationalVector, w: &RationalVector) -> Rational {
        self.form.evaluate(v, w)
    }

    fn check_dim(&self, v: &RationalVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn coroot(&self, alpha: &RationalVector) -> Result<RationalVector> {
        self.check_dim(alpha)?;
        let len = self.pair(alpha, alpha);
        if len.is_zero() {
            return Err(Error::IsotropicRoot);
        }
        Ok(alpha.scaled(&(rat(2) / len)))
    }

    /// `v - <v, alpha^vee> alpha`
    pub fn reflect(&self, alpha: &RationalVector, v: &RationalVector) -> Result<RationalVector> {
        self.check_dim(v)?;
        let coroot = self.coroot(alpha)?;
        let k = self.pair(v, &coroot);
        Ok(v.add_scaled(&-k, alpha))
    }

    pub fn reflection_matrix(&self, alpha: &RationalVector) -> Result<RationalMatrix> {
        let coroot = self.coroot(alpha)?;
        let n = self.dim();
        // column j is e_j - <e_j, coroot> alpha
        let g_coroot: Vec<Rational> = (0..n)
            .map(|j| (0..n).map(|k| self.form.gram.get(j, k) * &coroot[k]).sum())
            .collect();
        let mut m = RationalMatrix::identity(n);
        for i in 0..n {
            if alpha[i].is_zero() {
                continue;
            }
            for (j, gc) in g_coroot.iter().enumerate() {
                if !gc.is_zero() {
                    let cur = m.get(i, j) - &alpha[i] * gc;
                    m.set(i, j, cur);
                }
            }
        }
        Ok(m)
    }

    /// `M^T G M == G`
    pub fn preserves_form(&self, m: &RationalMatrix) -> bool {
        &(&m.transpose() * self.form.gram()) * m == *self.form.gram()
    }
}
