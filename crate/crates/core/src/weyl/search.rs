//! Meet-in-the-middle search for a word in reflections equal to a target
//! matrix. Products are hashed modulo a large prime and every hit is
//! confirmed in exact arithmetic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::linalg::{AmbientSpace, Rational, RationalMatrix, RationalVector};

const PRIME: u64 = 4_294_967_291;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Indices into the generator list, leftmost factor first.
    Found(Vec<usize>),
    Exhausted,
    BudgetExceeded,
}

type Residue = Vec<u32>;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

fn residue_of(q: &Rational) -> u32 {
    let p = BigInt::from(PRIME);
    let num = q.numer().mod_floor(&p).to_u64().expect("reduced");
    let den = q.denom().mod_floor(&p).to_u64().expect("reduced");
    (num * pow_mod(den, PRIME - 2) % PRIME) as u32
}

fn residues(m: &RationalMatrix) -> Residue {
    m.entries().iter().map(residue_of).collect()
}

fn mul(a: &[u32], b: &[u32], n: usize) -> Residue {
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc = (acc + a[i * n + k] as u64 * b[k * n + j] as u64) % PRIME;
            }
            out[i * n + j] = acc as u32;
        }
    }
    out
}

struct Table {
    n: usize,
    elements: Vec<Residue>,
    words: Vec<Vec<usize>>,
    index: HashMap<Residue, usize>,
    /// `levels[k]` holds the elements whose shortest word has length `k`.
    levels: Vec<Vec<usize>>,
}

impl Table {
    fn new(n: usize) -> Self {
        let mut id = vec![0u32; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        Self {
            n,
            elements: vec![id.clone()],
            words: vec![Vec::new()],
            index: HashMap::from([(id, 0)]),
            levels: vec![vec![0]],
        }
    }

    /// Extends by one level; words are built in lexicographic order so each
    /// element keeps its lex-least shortest word.
    fn grow(&mut self, gens: &[Residue], budget: usize) -> bool {
        let last = self.levels.last().expect("level zero").clone();
        let mut next = Vec::new();
        for x in last {
            for (g, m) in gens.iter().enumerate() {
                let y = mul(&self.elements[x], m, self.n);
                if self.index.contains_key(&y) {
                    continue;
                }
                if self.elements.len() >= budget {
                    return false;
                }
                let mut w = self.words[x].clone();
                w.push(g);
                self.index.insert(y.clone(), self.elements.len());
                next.push(self.elements.len());
                self.elements.push(y);
                self.words.push(w);
            }
        }
        self.levels.push(next);
        true
    }
}

fn exact_product(space: &AmbientSpace, gens: &[RationalVector], word: &[usize]) -> RationalMatrix {
    word.iter().fold(RationalMatrix::identity(space.dim()), |acc, &i| {
        &acc * &space.reflection_matrix(&gens[i]).expect("anisotropic generator")
    })
}

/// Shortest word (then lexicographically least among those found) of length
/// at most `depth` in the reflections of `gens` whose product is `target`.
pub fn find_word(
    space: &AmbientSpace,
    gens: &[RationalVector],
    target: &RationalMatrix,
    depth: usize,
    budget: usize,
) -> SearchOutcome {
    let n = space.dim();
    let exact: Vec<RationalMatrix> = gens
        .iter()
        .map(|g| space.reflection_matrix(g).expect("anisotropic generator"))
        .collect();
    let mods: Vec<Residue> = exact.iter().map(residues).collect();
    let t = residues(target);
    if target.is_identity() {
        return SearchOutcome::Found(Vec::new());
    }
    let mut table = Table::new(n);
    for d in 1..=depth {
        let a = d.div_ceil(2);
        let b = d / 2;
        while table.levels.len() <= a {
            if !table.grow(&mods, budget) {
                return SearchOutcome::BudgetExceeded;
            }
        }
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for level in &table.levels[..=b] {
            for &z in level {
                let x = mul(&t, &table.elements[z], n);
                if let Some(&i) = table.index.get(&x) {
                    // reflections are involutions, so z^-1 is the reversed word
                    let mut w = table.words[i].clone();
                    w.extend(table.words[z].iter().rev());
                    if w.len() <= d {
                        candidates.push(w);
                    }
                }
            }
        }
        candidates.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
        candidates.dedup();
        if let Some(w) = candidates
            .into_iter()
            .find(|w| &exact_product(space, gens, w) == target)
        {
            return SearchOutcome::Found(w);
        }
    }
    SearchOutcome::Exhausted
}
