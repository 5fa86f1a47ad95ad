use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::gring::{Monomial, MonomialRing, Parity, RingElement, RingMap};
use crate::linalg::QMatrix;

/// Degree of a free generator: its G-degree and its weight offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shift {
    pub degree: i64,
    pub weight: i64,
}

impl Shift {
    pub const ZERO: Shift = Shift { degree: 0, weight: 0 };

    pub fn new(degree: i64, weight: i64) -> Self {
        Shift { degree, weight }
    }

    pub fn weight(weight: i64) -> Self {
        Shift { degree: 0, weight }
    }

    pub fn add(self, o: Shift) -> Shift {
        Shift { degree: self.degree + o.degree, weight: self.weight + o.weight }
    }

    pub fn neg(self) -> Shift {
        Shift { degree: -self.degree, weight: -self.weight }
    }

    pub fn sub(self, o: Shift) -> Shift {
        self.add(o.neg())
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.degree, self.weight)
    }
}

pub(crate) fn same_ring(a: &Arc<MonomialRing>, b: &Arc<MonomialRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finitely generated free module `⊕ R·e_i` with `e_i` in degree
/// `shifts[i]`.
#[derive(Clone, Debug)]
pub struct FreeGradedModule {
    ring: Arc<MonomialRing>,
    shifts: Vec<Shift>,
}

impl PartialEq for FreeGradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.shifts == other.shifts && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for FreeGradedModule {}

impl FreeGradedModule {
    pub fn new(ring: Arc<MonomialRing>, shifts: Vec<Shift>) -> Self {
        let g = *ring.grading();
        let shifts = shifts.into_iter().map(|s| Shift { degree: g.normalize(s.degree), ..s }).collect();
        FreeGradedModule { ring, shifts }
    }

    pub fn zero(ring: Arc<MonomialRing>) -> Self {
        FreeGradedModule { ring, shifts: vec![] }
    }

    /// Rank-one free module on a generator of the given weight.
    pub fn line(ring: Arc<MonomialRing>, shift: Shift) -> Self {
        Self::new(ring, vec![shift])
    }

    pub fn ring(&self) -> &Arc<MonomialRing> {
        &self.ring
    }

    pub fn shifts(&self) -> &[Shift] {
        &self.shifts
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.ring.grading().parity(self.shifts[i].degree)
    }

    pub fn dual(&self) -> Self {
        Self::new(self.ring.clone(), self.shifts.iter().map(|s| s.neg()).collect())
    }

    pub fn shifted(&self, by: Shift) -> Self {
        Self::new(self.ring.clone(), self.shifts.iter().map(|s| s.add(by)).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut s = self.shifts.clone();
        s.extend_from_slice(&other.shifts);
        Self::new(self.ring.clone(), s)
    }

    /// Basis `e_i ⊗ f_j` in row-major order `i * other.rank() + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let s = self.shifts.iter().flat_map(|a| other.shifts.iter().map(move |b| a.add(*b))).collect();
        Self::new(self.ring.clone(), s)
    }

    pub fn base_change(&self, map: &RingMap, target: Arc<MonomialRing>) -> Self {
        debug_assert!(*map.target() == *target);
        Self::new(target, self.shifts.clone())
    }

    /// Monomial basis of the weight-`w` slice: pairs (generator, monomial).
    pub fn slice_basis(&self, w: i64) -> Result<Vec<(usize, Monomial)>> {
        let mut out = Vec::new();
        for (i, s) in self.shifts.iter().enumerate() {
            for m in self.ring.slice_monomials(w - s.weight)? {
                out.push((i, m));
            }
        }
        Ok(out)
    }

    pub fn slice_dim(&self, w: i64) -> Result<usize> {
        Ok(self.slice_basis(w)?.len())
    }

    /// Coordinates of a homogeneous vector in the weight-`w` slice basis.
    pub fn to_slice_vector(&self, v: &[RingElement], basis: &[(usize, Monomial)]) -> Vec<Rational> {
        basis.iter().map(|(i, m)| v[*i].coefficient(m)).collect()
    }

    pub fn from_slice_vector(&self, x: &[Rational], basis: &[(usize, Monomial)]) -> Vec<RingElement> {
        let mut out = vec![RingElement::zero(); self.rank()];
        for ((i, m), c) in basis.iter().zip(x) {
            if !c.is_zero() {
                out[*i].add_assign_scaled(&RingElement::monomial(m.clone(), c.clone()), &Rational::one());
            }
        }
        out
    }

    /// Weight of a nonzero homogeneous vector.
    pub fn vector_weight(&self, v: &[RingElement]) -> Option<i64> {
        v.iter().enumerate().find_map(|(i, a)| a.terms().next().map(|(m, _)| self.ring.weight(m) + self.shifts[i].weight))
    }
}

/// A homogeneous map of free modules; column `j` is the image of the
/// `j`-th source generator. Entry `(i, j)` has weight
/// `source_j + degree - target_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    source: FreeGradedModule,
    target: FreeGradedModule,
    degree: Shift,
    entries: Vec<Vec<RingElement>>,
}

impl GradedMatrix {
    pub fn new(
        source: FreeGradedModule,
        target: FreeGradedModule,
        degree: Shift,
        entries: Vec<Vec<RingElement>>,
    ) -> Result<Self> {
        if !same_ring(&source.ring, &target.ring) {
            return Err(Error::RingMismatch("source and target live over different rings".into()));
        }
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {}x{} matrix",
                target.rank(),
                source.rank()
            )));
        }
        let ring = &source.ring;
        for (i, row) in entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                let need = source.shifts[j].add(degree).sub(target.shifts[i]);
                if !ring.is_homogeneous_of(a, need.degree, need.weight) {
                    return Err(Error::NonHomogeneous {
                        row: i,
                        col: j,
                        detail: format!("`{}` should have degree {} and weight {}", ring.format(a), need.degree, need.weight),
                    });
                }
            }
        }
        Ok(GradedMatrix { source, target, degree, entries })
    }

    /// Parses entries given as strings, row by row.
    pub fn parse(source: FreeGradedModule, target: FreeGradedModule, degree: Shift, rows: &[Vec<String>]) -> Result<Self> {
        let ring = source.ring.clone();
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, degree, entries)
    }

    /// A degree-zero map whose source shifts are read off from the entries:
    /// each column must contain a nonzero homogeneous entry.
    pub fn from_target(target: FreeGradedModule, entries: Vec<Vec<RingElement>>) -> Result<Self> {
        let ring = target.ring.clone();
        let cols = entries.first().map_or(0, |r| r.len());
        let mut shifts = Vec::with_capacity(cols);
        for j in 0..cols {
            let (i, a) = entries
                .iter()
                .enumerate()
                .find(|(_, r)| !r[j].is_zero())
                .map(|(i, r)| (i, &r[j]))
                .ok_or_else(|| Error::DimensionMismatch(format!("column {j} is zero; its shift is ambiguous")))?;
            let w = ring.element_weight(a).ok_or_else(|| Error::NonHomogeneous {
                row: i,
                col: j,
                detail: "entry is not weight-homogeneous".into(),
            })?;
            let d = ring.element_degree(a).unwrap_or(0);
            shifts.push(target.shifts[i].add(Shift::new(d, w)));
        }
        let source = FreeGradedModule::new(ring, shifts);
        Self::new(source, target, Shift::ZERO, entries)
    }

    pub fn zero(source: FreeGradedModule, target: FreeGradedModule, degree: Shift) -> Self {
        let entries = vec![vec![RingElement::zero(); source.rank()]; target.rank()];
        GradedMatrix { source, target, degree, entries }
    }

    pub fn identity(m: &FreeGradedModule) -> Self {
        Self::scalar(m, &m.ring.one())
    }

    /// `c` times the identity, for a homogeneous `c` of weight zero or a
    /// matching degree.
    pub fn scalar(m: &FreeGradedModule, c: &RingElement) -> Self {
        let n = m.rank();
        let mut entries = vec![vec![RingElement::zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = c.clone();
        }
        let degree = match (m.ring.element_degree(c), m.ring.element_weight(c)) {
            (Some(d), Some(w)) => Shift::new(d, w),
            _ => Shift::ZERO,
        };
        GradedMatrix { source: m.clone(), target: m.clone(), degree, entries }
    }

    pub fn source(&self) -> &FreeGradedModule {
        &self.source
    }

    pub fn target(&self) -> &FreeGradedModule {
        &self.target
    }

    pub fn degree(&self) -> Shift {
        self.degree
    }

    pub fn ring(&self) -> &Arc<MonomialRing> {
        &self.source.ring
    }

    pub fn entries(&self) -> &[Vec<RingElement>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn parity(&self) -> Parity {
        self.ring().grading().parity(self.degree.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(RingElement::is_zero))
    }

    /// Same source, target and degree.
    pub fn same_shape(&self, o: &Self) -> bool {
        self.source == o.source && self.target == o.target && self.degree == o.degree
    }

    /// Reinterprets the entries between modules of equal rank, checking
    /// homogeneity again.
    pub fn with_modules(&self, source: FreeGradedModule, target: FreeGradedModule, degree: Shift) -> Result<Self> {
        Self::new(source, target, degree, self.entries.clone())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: target of rank {} vs source of rank {}",
                other.target.rank(),
                self.source.rank()
            )));
        }
        let ring = self.ring();
        let mut entries = vec![vec![RingElement::zero(); other.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (k, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        *out = &*out + &ring.mul(a, b);
                    }
                }
            }
        }
        Ok(GradedMatrix {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree.add(other.degree),
            entries,
        })
    }

    fn zip_entries(&self, o: &Self, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Result<Self> {
        if !self.same_shape(o) {
            return Err(Error::DimensionMismatch("maps have different shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(GradedMatrix { entries, ..self.clone() })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip_entries(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip_entries(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GradedMatrix { entries: self.entries.iter().map(|r| r.iter().map(|a| a.scale(c)).collect()).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Applies the map to a column vector.
    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        let ring = self.ring();
        self.entries
            .iter()
            .map(|row| {
                let mut acc = RingElement::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &ring.mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `φ^T : target^∨ → source^∨`.
    pub fn dual(&self) -> Self {
        let mut entries = vec![vec![RingElement::zero(); self.rows()]; self.cols()];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                entries[j][i] = a.clone();
            }
        }
        GradedMatrix { source: self.target.dual(), target: self.source.dual(), degree: self.degree, entries }
    }

    /// Matrix of the weight-`w` slice: `source_w → target_{w + degree}`.
    pub fn slice(&self, w: i64) -> Result<QMatrix> {
        let sb = self.source.slice_basis(w)?;
        let tb = self.target.slice_basis(w + self.degree.weight)?;
        self.slice_with_bases(&sb, &tb)
    }

    pub fn slice_with_bases(&self, sb: &[(usize, Monomial)], tb: &[(usize, Monomial)]) -> Result<QMatrix> {
        let index: BTreeMap<&(usize, Monomial), usize> = tb.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let ring = self.ring();
        let mut m = QMatrix::zeros(tb.len(), sb.len());
        for (col, (j, mono)) in sb.iter().enumerate() {
            for i in 0..self.rows() {
                let a = &self.entries[i][*j];
                if a.is_zero() {
                    continue;
                }
                for (m2, c) in ring.mul_monomial(a, mono).terms() {
                    let k = index.get(&(i, m2.clone())).ok_or_else(|| {
                        Error::DimensionMismatch(format!("slice basis misses {}", ring.format_monomial(m2)))
                    })?;
                    let v = m.get(*k, col) + c;
                    m.set(*k, col, v);
                }
            }
        }
        Ok(m)
    }

    /// Entrywise base change along a ring map.
    pub fn base_change(&self, map: &RingMap, target_ring: &Arc<MonomialRing>) -> Result<Self> {
        let entries = self.entries.iter().map(|r| r.iter().map(|a| map.apply(a)).collect()).collect();
        Self::new(
            self.source.base_change(map, target_ring.clone()),
            self.target.base_change(map, target_ring.clone()),
            self.degree,
            entries,
        )
    }

    /// Columns side by side: `[self | other]` on a common target.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.target != other.target || self.degree != other.degree {
            return Err(Error::DimensionMismatch("hconcat needs a common target and degree".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Ok(GradedMatrix { source: self.source.direct_sum(&other.source), target: self.target.clone(), degree: self.degree, entries })
    }

    /// Rows stacked: `[self; other]` on a common source.
    pub fn vconcat(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.degree != other.degree {
            return Err(Error::DimensionMismatch("vconcat needs a common source and degree".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(GradedMatrix { source: self.source.clone(), target: self.target.direct_sum(&other.target), degree: self.degree, entries })
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch("direct sum needs equal degrees".into()));
        }
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), other.rows(), other.cols());
        let mut entries = vec![vec![RingElement::zero(); c1 + c2]; r1 + r2];
        for (dst, src) in entries.iter_mut().zip(&self.entries) {
            dst[..c1].clone_from_slice(src);
        }
        for (dst, src) in entries[r1..].iter_mut().zip(&other.entries) {
            dst[c1..].clone_from_slice(src);
        }
        Ok(GradedMatrix {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            degree: self.degree,
            entries,
        })
    }

    /// Columns selected by index.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let source = FreeGradedModule::new(self.ring().clone(), cols.iter().map(|j| self.source.shifts[*j]).collect());
        let entries = self.entries.iter().map(|r| cols.iter().map(|j| r[*j].clone()).collect()).collect();
        GradedMatrix { source, target: self.target.clone(), degree: self.degree, entries }
    }

    /// Formats entries for reports.
    pub fn format_entries(&self) -> Vec<Vec<String>> {
        let ring = self.ring();
        self.entries.iter().map(|r| r.iter().map(|a| ring.format(a)).collect()).collect()
    }
}

/// `f ⊗ g` with the Koszul rule `(f⊗g)(a⊗c) = (-1)^{|g||a|} f(a)⊗g(c)`.
pub fn tensor_map(f: &GradedMatrix, g: &GradedMatrix) -> Result<GradedMatrix> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::GradingMismatch("tensor factors live over different rings".into()));
    }
    let ring = f.ring();
    let source = f.source.tensor(&g.source);
    let target = f.target.tensor(&g.target);
    let gpar = g.parity();
    let (gr, gc) = (g.rows(), g.cols());
    let mut entries = vec![vec![RingElement::zero(); source.rank()]; target.rank()];
    for b in 0..f.rows() {
        for a in 0..f.cols() {
            let fa = &f.entries[b][a];
            if fa.is_zero() {
                continue;
            }
            let sign = if gpar.is_odd() && f.source.parity(a).is_odd() { -Rational::one() } else { Rational::one() };
            for d in 0..gr {
                for c in 0..gc {
                    let gc_entry = &g.entries[d][c];
                    if !gc_entry.is_zero() {
                        entries[b * gr + d][a * gc + c] = ring.mul(fa, gc_entry).scale(&sign);
                    }
                }
            }
        }
    }
    Ok(GradedMatrix { source, target, degree: f.degree.add(g.degree), entries })
}

/// The symmetry `A ⊗ B → B ⊗ A`, `a⊗b ↦ (-1)^{|a||b|} b⊗a`.
pub fn koszul_swap(a: &FreeGradedModule, b: &FreeGradedModule) -> GradedMatrix {
    let source = a.tensor(b);
    let target = b.tensor(a);
    let (na, nb) = (a.rank(), b.rank());
    let ring = a.ring.clone();
    let mut entries = vec![vec![RingElement::zero(); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            let sign = if a.parity(i).is_odd() && b.parity(j).is_odd() { -1 } else { 1 };
            entries[j * na + i][i * nb + j] = ring.constant(Rational::from_integer(sign.into()));
        }
    }
    GradedMatrix { source, target, degree: Shift::ZERO, entries }
}
