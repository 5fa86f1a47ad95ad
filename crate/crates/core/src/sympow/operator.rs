use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::perm::{koszul_sign_unchecked, Perm};
use super::space::SuperSpace;
use crate::coeff::{rat, Rational};
use crate::error::{Error, Result};

/// A finite linear combination of basis words with integer coefficients.
pub type Combination = BTreeMap<Vec<usize>, i64>;

/// An element of the integral group ring of `Σ_n`.
pub type Terms = BTreeMap<Perm, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymBounds {
    /// Largest tensor power for (anti)symmetrizers.
    pub max_power: usize,
    /// Largest number of boxes of a Young shape.
    pub max_boxes: usize,
    /// Largest number of basis words `dim^n`.
    pub max_words: u64,
}

impl Default for SymBounds {
    fn default() -> Self {
        SymBounds { max_power: 6, max_boxes: 8, max_words: 1_000_000 }
    }
}

impl SymBounds {
    fn check_words(&self, space: &SuperSpace, n: usize) -> Result<()> {
        let count = space.word_count(n);
        if count > self.max_words {
            return Err(Error::BoundExceeded(format!("{}^{n} = {count} basis words exceeds {}", space.dim(), self.max_words)));
        }
        Ok(())
    }
}

/// A rectangular Young diagram; box `(r, c)` carries the label `r·m + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoungShape {
    pub columns: usize,
    pub rows: usize,
}

impl YoungShape {
    pub fn new(columns: usize, rows: usize) -> Self {
        YoungShape { columns, rows }
    }

    /// Parses `m x n` (columns by rows).
    pub fn parse(s: &str) -> Result<Self> {
        let (m, n) = s.split_once(['x', 'X', '×']).ok_or_else(|| Error::Parse(format!("expected `m x n`, got `{s}`")))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad shape entry `{t}`")));
        Ok(Self::new(num(m)?, num(n)?))
    }

    pub fn boxes(&self) -> usize {
        self.columns * self.rows
    }

    pub fn label(&self, row: usize, col: usize) -> usize {
        row * self.columns + col
    }

    pub fn row_blocks(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| (0..self.columns).map(|c| self.label(r, c)).collect()).collect()
    }

    pub fn column_blocks(&self) -> Vec<Vec<usize>> {
        (0..self.columns).map(|c| (0..self.rows).map(|r| self.label(r, c)).collect()).collect()
    }

    pub fn row_group(&self) -> Vec<Perm> {
        Perm::preserving_blocks(self.boxes(), &self.row_blocks())
    }

    pub fn column_group(&self) -> Vec<Perm> {
        Perm::preserving_blocks(self.boxes(), &self.column_blocks())
    }

    /// Product of hook lengths.
    pub fn hook_product(&self) -> u64 {
        let (m, n) = (self.columns as u64, self.rows as u64);
        (0..n).flat_map(|r| (0..m).map(move |c| (m - c) + (n - r) - 1)).product()
    }

    /// The filling with `r + c` in box `(r, c)`. For `m = q+1`, `n = p+1`
    /// and a space ordered as `p` even lines, `q` odd lines, then `Y`, this
    /// puts `Y` in the last box.
    pub fn staircase_word(&self) -> Vec<usize> {
        (0..self.rows).flat_map(|r| (0..self.columns).map(move |c| r + c)).collect()
    }
}

/// `f_0 ∘ f_1 ∘ … ∘ f_k`, each factor an element of `Z[Σ_n]`; the last
/// factor acts first. Factored storage keeps application cheap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutationOperator {
    length: usize,
    factors: Vec<Terms>,
    /// Position blocks `B` with `op ∘ σ = ±op` for every `σ` preserving
    /// each block.
    absorbs: Vec<Vec<usize>>,
}

fn sum_over(group: Vec<Perm>, signed: bool) -> Terms {
    group.into_iter().map(|p| { let c = if signed { p.sign() } else { 1 }; (p, c) }).collect()
}

impl SignedPermutationOperator {
    pub fn from_terms(length: usize, terms: Terms) -> Self {
        SignedPermutationOperator { length, factors: vec![terms], absorbs: vec![] }
    }

    pub fn identity(length: usize) -> Self {
        Self::from_terms(length, [(Perm::identity(length), 1)].into())
    }

    pub fn zero(length: usize) -> Self {
        Self::from_terms(length, Terms::new())
    }

    pub fn permutation(sigma: Perm) -> Self {
        Self::from_terms(sigma.degree(), [(sigma, 1)].into())
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.length != other.length {
            return Err(Error::LengthMismatch { perm: self.length, word: other.length });
        }
        let factors = self.factors.iter().chain(&other.factors).cloned().collect();
        Ok(SignedPermutationOperator { length: self.length, factors, absorbs: other.absorbs.clone() })
    }

    /// The expanded element of `Z[Σ_n]`.
    pub fn terms(&self) -> Terms {
        let mut acc: Terms = [(Perm::identity(self.length), 1)].into();
        for f in &self.factors {
            let mut next = Terms::new();
            for (a, x) in &acc {
                for (b, y) in f {
                    *next.entry(a.compose(b)).or_insert(0) += x * y;
                }
            }
            next.retain(|_, c| *c != 0);
            acc = next;
        }
        acc
    }

    pub fn apply(&self, space: &SuperSpace, v: &Combination) -> Combination {
        let mut cur = v.clone();
        for f in self.factors.iter().rev() {
            cur = apply_terms(f, space, &cur);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    pub fn apply_word(&self, space: &SuperSpace, word: &[usize]) -> Result<Combination> {
        if word.len() != self.length {
            return Err(Error::LengthMismatch { perm: self.length, word: word.len() });
        }
        space.check_word(word)?;
        Ok(self.apply(space, &[(word.to_vec(), 1)].into()))
    }
}

fn apply_terms(terms: &Terms, space: &SuperSpace, v: &Combination) -> Combination {
    let mut out = Combination::new();
    for (w, a) in v {
        let par = space.word_parities(w);
        for (s, c) in terms {
            let sign = koszul_sign_unchecked(&s.0, &par);
            *out.entry(s.act(w)).or_insert(0) += sign * c * a;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `Σ_σ σ` on `X^{⊗n}`.
pub fn symmetrizer(space: &SuperSpace, n: usize, bounds: &SymBounds) -> Result<SignedPermutationOperator> {
    power_sum(space, n, bounds, false)
}

/// `Σ_σ sgn(σ) σ` on `X^{⊗n}`.
pub fn antisymmetrizer(space: &SuperSpace, n: usize, bounds: &SymBounds) -> Result<SignedPermutationOperator> {
    power_sum(space, n, bounds, true)
}

fn power_sum(space: &SuperSpace, n: usize, bounds: &SymBounds, signed: bool) -> Result<SignedPermutationOperator> {
    if n == 0 {
        return Err(Error::DimensionMismatch("tensor power must be at least 1".into()));
    }
    if n > bounds.max_power {
        return Err(Error::BoundExceeded(format!("tensor power {n} exceeds {}", bounds.max_power)));
    }
    bounds.check_words(space, n)?;
    let mut op = SignedPermutationOperator::from_terms(n, sum_over(Perm::all(n), signed));
    op.absorbs = vec![(0..n).collect()];
    Ok(op)
}

/// Column antisymmetrizer after row symmetrizer on `X^{⊗mn}`.
pub fn young_symmetrizer(space: &SuperSpace, shape: YoungShape, bounds: &SymBounds) -> Result<SignedPermutationOperator> {
    let n = shape.boxes();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty Young shape".into()));
    }
    if n > bounds.max_boxes {
        return Err(Error::BoundExceeded(format!("{} boxes exceeds {}", n, bounds.max_boxes)));
    }
    bounds.check_words(space, n)?;
    // each row (column) sum is its own factor; they commute
    let mut factors: Vec<Terms> = shape
        .column_blocks()
        .iter()
        .map(|b| sum_over(Perm::preserving_blocks(n, std::slice::from_ref(b)), true))
        .collect();
    factors.extend(shape.row_blocks().iter().map(|b| sum_over(Perm::preserving_blocks(n, std::slice::from_ref(b)), false)));
    Ok(SignedPermutationOperator { length: n, factors, absorbs: shape.row_blocks() })
}

/// Whether `op` kills every basis word. Words related by a permutation
/// inside an absorbed block have images equal up to sign, so one word per
/// orbit (sorted inside each block) is checked.
pub fn operator_is_zero(op: &SignedPermutationOperator, space: &SuperSpace) -> bool {
    let sorted = |w: &[usize]| op.absorbs.iter().all(|b| b.windows(2).all(|p| w[p[0]] <= w[p[1]]));
    space.words(op.length()).filter(|w| sorted(w)).all(|w| op.apply(space, &[(w, 1)].into()).is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymReport {
    pub zero: bool,
    #[serde(with = "crate::coeff::serde_opt_rational")]
    pub scalar_c: Option<Rational>,
    pub checked_words: u64,
}

/// Finds `c` with `S∘S = c·S` and verifies it on every basis word.
/// Returns `scalar_c = None` when `S = 0`, or when no such `c` exists.
pub fn quasi_idempotence(op: &SignedPermutationOperator, space: &SuperSpace) -> SymReport {
    let mut c: Option<Rational> = None;
    let mut consistent = true;
    let mut checked = 0u64;
    let mut zero = true;
    for w in space.words(op.length()) {
        checked += 1;
        let v = op.apply(space, &[(w, 1)].into());
        if v.is_empty() {
            continue;
        }
        zero = false;
        let u = op.apply(space, &v);
        let (k, a) = v.iter().next().expect("nonzero");
        let here = Rational::new((*u.get(k).unwrap_or(&0)).into(), (*a).into());
        let c = c.get_or_insert_with(|| here.clone());
        let ok = v.keys().chain(u.keys()).all(|key| {
            let lhs = rat(*u.get(key).unwrap_or(&0));
            let rhs = &*c * rat(*v.get(key).unwrap_or(&0));
            lhs == rhs
        });
        if !ok {
            consistent = false;
        }
    }
    SymReport { zero, scalar_c: if consistent { c } else { None }, checked_words: checked }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub word: Vec<String>,
    pub composite: i64,
    pub identity: bool,
}

/// `proj ∘ op ∘ incl` on the line spanned by `word`.
pub fn identity_factorization(
    space: &SuperSpace,
    op: &SignedPermutationOperator,
    word: &[usize],
) -> Result<FactorizationReport> {
    if word.len() != op.length() {
        return Err(Error::MalformedWord(format!("word of length {} for an operator on {} factors", word.len(), op.length())));
    }
    space.check_word(word)?;
    let image = op.apply(space, &[(word.to_vec(), 1)].into());
    let composite = *image.get(word).unwrap_or(&0);
    Ok(FactorizationReport {
        word: word.iter().map(|&i| space.basis()[i].label.clone()).collect(),
        composite,
        identity: composite == 1,
    })
}
