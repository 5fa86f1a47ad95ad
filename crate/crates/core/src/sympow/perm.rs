use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gring::Parity;

/// A permutation of `0..n`, stored as the image list `i ↦ self.0[i]`.
/// It acts on words by moving the letter at position `i` to position
/// `σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// The transposition of `a` and `b` in `Σ_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    /// The cycle `c_0 → c_1 → … → c_0`.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for k in 0..c.len() {
            p.0[c[k]] = c[(k + 1) % c.len()];
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, j)| i == *j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn sign(&self) -> i64 {
        let n = self.0.len();
        let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.0[i] > self.0[j]).count();
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(σ·w)[σ(i)] = w[i]`.
    pub fn act<T: Clone>(&self, w: &[T]) -> Vec<T> {
        let mut out = w.to_vec();
        for (i, x) in w.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// All of `Σ_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Permutations of `0..n` that preserve each block setwise.
    pub fn preserving_blocks(n: usize, blocks: &[Vec<usize>]) -> Vec<Perm> {
        let mut out = vec![Perm::identity(n)];
        for b in blocks {
            let local = Perm::all(b.len());
            let mut next = Vec::with_capacity(out.len() * local.len());
            for p in &out {
                for l in &local {
                    let mut q = p.0.clone();
                    for (k, &pos) in b.iter().enumerate() {
                        q[pos] = b[l.0[k]];
                    }
                    next.push(Perm(q));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// `-1` to the number of inversions of `σ` whose two letters are odd.
pub fn koszul_sign(sigma: &Perm, parities: &[Parity]) -> Result<i64> {
    if sigma.degree() != parities.len() {
        return Err(Error::LengthMismatch { perm: sigma.degree(), word: parities.len() });
    }
    Ok(koszul_sign_unchecked(&sigma.0, parities))
}

pub(crate) fn koszul_sign_unchecked(sigma: &[usize], parities: &[Parity]) -> i64 {
    let mut odd = 0usize;
    for i in 0..sigma.len() {
        if !parities[i].is_odd() {
            continue;
        }
        for j in i + 1..sigma.len() {
            if parities[j].is_odd() && sigma[i] > sigma[j] {
                odd += 1;
            }
        }
    }
    if odd.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
