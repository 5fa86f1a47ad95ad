use std::collections::BTreeMap;
use std::sync::Arc;


use super::free::{FreeGradedModule, GradedMatrix, Shift};
use super::groebner::{groebner_basis, Term, Vector, Weights};
use crate::coeff::{CoefficientRing, Rational};
use crate::error::{Error, Result};
use crate::gring::{Monomial, MonomialRing, RingElement, SliceKind};
use crate::linalg::{extend_basis, span_basis};

pub type ModuleVector = Vec<RingElement>;

/// Slice computations are linear algebra over `Q`.
pub fn require_rational(ring: &MonomialRing) -> Result<()> {
    match ring.coeff() {
        CoefficientRing::Rationals => Ok(()),
        other => Err(Error::UnsupportedCoefficients(
            other.to_string(),
            "slice linear algebra is implemented over Q only".into(),
        )),
    }
}

/// Membership in the ideal of non-inverted generators.
pub fn in_max_ideal(ring: &MonomialRing, m: &Monomial) -> bool {
    m.0.iter().enumerate().any(|(i, e)| *e > 0 && !ring.is_inverted(i))
}

pub fn vector_degree(module: &FreeGradedModule, v: &[RingElement]) -> Option<Shift> {
    let ring = module.ring();
    v.iter().enumerate().find_map(|(i, a)| {
        a.terms().next().map(|(m, _)| {
            let s = module.shifts()[i];
            Shift::new(ring.grading().normalize(s.degree + ring.degree(m)), s.weight + ring.weight(m))
        })
    })
}

fn is_zero_vec(v: &[RingElement]) -> bool {
    v.iter().all(RingElement::is_zero)
}

/// Multiplies a vector by a monomial, reducing in the ring.
pub fn mul_vector(ring: &MonomialRing, v: &[RingElement], m: &Monomial) -> ModuleVector {
    v.iter().map(|a| ring.mul_monomial(a, m)).collect()
}

/// Span of `R·gens` in the weight-`w` slice, as slice vectors.
pub fn submodule_slice(
    module: &FreeGradedModule,
    gens: &[(Shift, ModuleVector)],
    w: i64,
    basis: &[(usize, Monomial)],
    only_max_ideal: bool,
) -> Result<Vec<Vec<Rational>>> {
    let ring = module.ring();
    let mut out = Vec::new();
    for (s, g) in gens {
        for m in ring.slice_monomials(w - s.weight)? {
            if only_max_ideal && !in_max_ideal(ring, &m) {
                continue;
            }
            let v = module.to_slice_vector(&mul_vector(ring, g, &m), basis);
            out.push(v);
        }
    }
    Ok(out)
}

/// Minimal generators among `gens`: per weight, those completing a basis
/// of `𝔪K` to a basis of `K`.
pub fn minimize(module: &FreeGradedModule, gens: Vec<ModuleVector>) -> Result<Vec<(Shift, ModuleVector)>> {
    let mut tagged: Vec<(Shift, ModuleVector)> = gens
        .into_iter()
        .filter(|g| !is_zero_vec(g))
        .map(|g| (vector_degree(module, &g).expect("nonzero"), g))
        .collect();
    tagged.sort_by_key(|(s, _)| s.weight);
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, (s, _)) in tagged.iter().enumerate() {
        by_weight.entry(s.weight).or_default().push(k);
    }
    let mut keep = Vec::new();
    for (w, idx) in by_weight {
        let basis = module.slice_basis(w)?;
        let dim = basis.len();
        let mk = span_basis(dim, &submodule_slice(module, &tagged, w, &basis, true)?);
        let cands: Vec<Vec<Rational>> = idx.iter().map(|k| module.to_slice_vector(&tagged[*k].1, &basis)).collect();
        for c in extend_basis(dim, &mk, &cands) {
            keep.push(idx[c]);
        }
    }
    keep.sort_unstable();
    Ok(keep.into_iter().map(|k| tagged[k].clone()).collect())
}

fn gb_kernel(phi: &GradedMatrix) -> Vec<ModuleVector> {
    let ring = phi.ring();
    let (r, m) = (phi.rows(), phi.cols());
    let weights: Vec<i64> = ring.generators().iter().map(|g| g.weight).collect();
    let w = Weights(&weights);
    let comp_shift = |c: usize| {
        if c < r {
            phi.target().shifts()[c].weight - phi.degree().weight
        } else {
            phi.source().shifts()[c - r].weight
        }
    };
    let term = |c: usize, mono: Monomial| Term { comp: c, wdeg: w.of(&mono) + comp_shift(c), mono };
    let mut gens: Vec<Vector> = Vec::new();
    for j in 0..m {
        let mut v = Vector::new();
        for i in 0..r {
            for (mono, c) in phi.entry(i, j).terms() {
                v.insert(term(i, mono.clone()), c.clone());
            }
        }
        v.insert(term(r + j, Monomial::one(ring.ngens())), Rational::from_integer(1.into()));
        gens.push(v);
    }
    for i in 0..r {
        for rel in ring.relations() {
            let mut v = Vector::new();
            v.insert(term(i, rel.clone()), Rational::from_integer(1.into()));
            gens.push(v);
        }
    }
    let gb = groebner_basis(gens, &weights);
    gb.into_iter()
        .filter(|v| v.last_key_value().is_some_and(|(t, _)| t.comp >= r))
        .map(|v| {
            let mut out = vec![RingElement::zero(); m];
            for (t, c) in v {
                if ring.is_standard(&t.mono) {
                    out[t.comp - r].add_assign_scaled(&RingElement::monomial(t.mono, c), &Rational::from_integer(1.into()));
                }
            }
            out
        })
        .filter(|v| !is_zero_vec(v))
        .collect()
}

fn window_start(module: &FreeGradedModule) -> i64 {
    module.shifts().iter().map(|s| s.weight).min().unwrap_or(0)
}

fn periodic_kernel(phi: &GradedMatrix, period: i64) -> Result<Vec<ModuleVector>> {
    let a = window_start(phi.source());
    let mut out = Vec::new();
    for w in a..a + period {
        let sb = phi.source().slice_basis(w)?;
        let tb = phi.target().slice_basis(w + phi.degree().weight)?;
        let s = phi.slice_with_bases(&sb, &tb)?;
        for k in s.kernel() {
            out.push(phi.source().from_slice_vector(&k, &sb));
        }
    }
    Ok(out)
}

/// Minimal generators of `ker φ` with their degrees.
pub fn kernel_generators(phi: &GradedMatrix) -> Result<Vec<(Shift, ModuleVector)>> {
    let ring = phi.ring();
    require_rational(ring)?;
    let raw = match ring.slice_kind()? {
        SliceKind::Zero => return Ok(vec![]),
        SliceKind::BoundedBelow => gb_kernel(phi),
        SliceKind::Periodic { period, .. } => periodic_kernel(phi, period)?,
    };
    minimize(phi.source(), raw)
}

/// The kernel as a map `K → source` from a free module on minimal
/// generators.
pub fn kernel(phi: &GradedMatrix) -> Result<GradedMatrix> {
    let gens = kernel_generators(phi)?;
    columns_to_matrix(phi.source(), gens)
}

pub fn columns_to_matrix(target: &FreeGradedModule, cols: Vec<(Shift, ModuleVector)>) -> Result<GradedMatrix> {
    let ring: Arc<MonomialRing> = target.ring().clone();
    let source = FreeGradedModule::new(ring, cols.iter().map(|(s, _)| *s).collect());
    let mut entries = vec![vec![RingElement::zero(); cols.len()]; target.rank()];
    for (j, (_, v)) in cols.into_iter().enumerate() {
        for (i, a) in v.into_iter().enumerate() {
            entries[i][j] = a;
        }
    }
    GradedMatrix::new(source, target.clone(), Shift::ZERO, entries)
}

/// Some `u` with `φ u = v`, decided in the slice of `v`.
pub fn lift(phi: &GradedMatrix, v: &[RingElement]) -> Result<Option<ModuleVector>> {
    require_rational(phi.ring())?;
    let Some(wv) = phi.target().vector_weight(v) else {
        return Ok(Some(vec![RingElement::zero(); phi.cols()]));
    };
    let w = wv - phi.degree().weight;
    let sb = phi.source().slice_basis(w)?;
    let tb = phi.target().slice_basis(wv)?;
    let s = phi.slice_with_bases(&sb, &tb)?;
    let b = phi.target().to_slice_vector(v, &tb);
    let back = phi.target().from_slice_vector(&b, &tb);
    if back != v {
        return Err(Error::NonHomogeneous { row: 0, col: 0, detail: "vector is not weight-homogeneous".into() });
    }
    Ok(s.solve(&b).map(|x| phi.source().from_slice_vector(&x, &sb)))
}

/// Rank of a slice of `φ`.
pub fn slice_rank(phi: &GradedMatrix, w: i64) -> Result<usize> {
    Ok(phi.slice(w)?.rank())
}
