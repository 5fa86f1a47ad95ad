use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::theory::{classify_dual, classify_epi, DualVerdict, EpiCertificate, HomologyTheory, HomologyType};
use crate::coeff::Rational;
use crate::complex::{
    cone, cone_inclusion, fiber, fiber_projection, homology_cokernel, induced_slice_map, summand_projection,
    ChainComplex, ChainMap,
};
use crate::error::{Error, Result};
use crate::gmod::{free_rank_type, FreenessVerdict, GradedMatrix, Shift};
use crate::linalg::{extend_basis, QMatrix};

/// Degrees where either end of `f` is nonzero, widened by one on each side.
fn degree_window(f: &ChainMap) -> Option<(i64, i64)> {
    let a = f.source().support();
    let b = f.target().support();
    let lo = a.iter().chain(b.iter()).map(|s| s.0).min()?;
    let hi = a.iter().chain(b.iter()).map(|s| s.1).max()?;
    Some((lo - 1, hi + 1))
}

fn lowest_weight(xs: &[&ChainComplex]) -> i64 {
    xs.iter().flat_map(|x| x.terms().values()).flat_map(|m| m.shifts().iter().map(|s| s.weight)).min().unwrap_or(0)
}

/// A left inverse of an injective matrix, or `None`.
fn left_inverse(m: &QMatrix) -> Option<QMatrix> {
    let t = m.transpose();
    let rows = (0..m.cols())
        .map(|i| {
            let mut e = vec![Rational::zero(); m.cols()];
            e[i] = Rational::one();
            t.solve(&e)
        })
        .collect::<Option<Vec<_>>>()?;
    let r = QMatrix::from_rows(m.rows(), rows);
    (r.mul(m) == QMatrix::identity(m.cols())).then_some(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CofiberReport {
    pub id: String,
    pub theory: String,
    /// Free types of `coker(H_n f)`.
    pub cokernel_types: Vec<HomologyType>,
    pub cone: DualVerdict,
    pub fiber: DualVerdict,
    /// Slices where `coker(H_n f)_w → H_n(C_f)_w` received an explicit
    /// left inverse.
    pub retraction_slices: usize,
    pub split: bool,
    pub ok: bool,
}

/// For `f` between `H`-duals with projective `coker(Hf)`: cone and fiber
/// are `H`-duals and `coker(Hf) → H(C_f)` has a retraction in every slice.
pub fn cofiber_closure_check(h: &HomologyTheory, f: &ChainMap, id: &str) -> Result<CofiberReport> {
    for (x, which) in [(f.source(), "source"), (f.target(), "target")] {
        let v = classify_dual(h, x, which)?.verdict;
        if !v.is_dual() {
            return Err(Error::HypothesisFailed(format!("the {which} of {id} is not an H-dual")));
        }
    }
    let window = degree_window(f);
    let comps = h.apply_map(f)?;
    let mut cokernel_types = Vec::new();
    if let Some((lo, hi)) = window {
        for (c, fc) in comps.iter().enumerate() {
            if fc.target().ring().is_zero_ring() {
                continue;
            }
            for n in lo..=hi {
                let cert = free_rank_type(&homology_cokernel(fc, n)?, h.truncation)?;
                match cert.verdict {
                    FreenessVerdict::Free { ty } => cokernel_types.push(HomologyType { degree: n, component: c, shifts: ty }),
                    other => {
                        return Err(Error::HypothesisFailed(format!(
                            "coker(H_{n} f) over component {c} is not certified projective: {other:?}"
                        )))
                    }
                }
            }
        }
    }
    let cone_v = classify_dual(h, &cone(f)?, &format!("cone({id})"))?.verdict;
    let fiber_v = classify_dual(h, &fiber(f)?, &format!("fiber({id})"))?.verdict;
    let mut slices = 0;
    let mut split = true;
    if let Some((lo, hi)) = window {
        for fc in &comps {
            if fc.target().ring().is_zero_ring() {
                continue;
            }
            let inc = cone_inclusion(fc)?;
            let start = lowest_weight(&[fc.source(), fc.target()]);
            for n in lo..=hi {
                for w in start..=h.truncation {
                    let (_, hy, hf) = induced_slice_map(fc, n, w)?;
                    let (_, _, hi_) = induced_slice_map(&inc, n, w)?;
                    // complement of im(H f) inside H_n(Y)_w
                    let image = hf.columns();
                    let units: Vec<Vec<Rational>> = (0..hy.dim())
                        .map(|i| {
                            let mut e = vec![Rational::zero(); hy.dim()];
                            e[i] = Rational::one();
                            e
                        })
                        .collect();
                    let complement: Vec<Vec<Rational>> =
                        extend_basis(hy.dim(), &image, &units).into_iter().map(|i| units[i].clone()).collect();
                    if complement.is_empty() {
                        continue;
                    }
                    let m = hi_.mul(&QMatrix::from_columns(hy.dim(), &complement));
                    match left_inverse(&m) {
                        Some(_) => slices += 1,
                        None => split = false,
                    }
                }
            }
        }
    }
    let ok = cone_v.is_dual() && fiber_v.is_dual() && split;
    Ok(CofiberReport {
        id: id.to_string(),
        theory: h.name.clone(),
        cokernel_types,
        cone: cone_v,
        fiber: fiber_v,
        retraction_slices: slices,
        split,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverPullbackReport {
    pub p: String,
    pub f: String,
    /// Ranks of `A′_n`.
    pub pullback_ranks: BTreeMap<i64, usize>,
    /// `p f′ − f p′ = −(d h + h d)` for the projection `h` onto `B[1]`.
    pub square_commutes_up_to_homotopy: bool,
    pub p_prime: EpiCertificate,
}

#[derive(Clone, Debug)]
pub struct CoverPullback {
    pub pullback: ChainComplex,
    pub p_prime: ChainMap,
    pub f_prime: ChainMap,
    pub report: CoverPullbackReport,
}

/// `A′ = fiber((p  −f) : A ⊕ B′ → B)` with its projections to `B′` and `A`.
pub fn cover_pullback(h: &HomologyTheory, p: &ChainMap, f: &ChainMap, ids: (&str, &str)) -> Result<CoverPullback> {
    let epi = classify_epi(h, p, ids.0)?;
    if !epi.is_epi() {
        return Err(Error::NotAnEpi(format!("{} is not an {}-epimorphism", ids.0, h.name)));
    }
    if p.target() != f.target() {
        return Err(Error::DimensionMismatch(format!("{} and {} need a common target", ids.0, ids.1)));
    }
    let g = p.hconcat(&f.neg())?;
    let pullback = fiber(&g)?;
    let pi = fiber_projection(&g)?;
    let f_prime = summand_projection(p.source(), f.source(), false)?.compose(&pi)?;
    let p_prime = summand_projection(p.source(), f.source(), true)?.compose(&pi)?;
    let commutes = homotopy_identity(&g, &pullback, &pi)?;
    let p_prime_cert = classify_epi(h, &p_prime, &format!("{}'", ids.0))?;
    let report = CoverPullbackReport {
        p: ids.0.to_string(),
        f: ids.1.to_string(),
        pullback_ranks: pullback.terms().iter().map(|(n, m)| (*n, m.rank())).collect(),
        square_commutes_up_to_homotopy: commutes,
        p_prime: p_prime_cert,
    };
    Ok(CoverPullback { pullback, p_prime, f_prime, report })
}

/// Checks `g π = −(d_B h + h d_{A′})` degreewise, where `A′_n = S_n ⊕ B_{n+1}`
/// and `h` projects onto `B_{n+1}`.
fn homotopy_identity(g: &ChainMap, fib: &ChainComplex, pi: &ChainMap) -> Result<bool> {
    let b = g.target();
    let s = g.source();
    let homotopy = |n: i64| -> Result<GradedMatrix> {
        let bn = b.term(n + 1);
        GradedMatrix::zero(s.term(n), bn.clone(), Shift::ZERO).hconcat(&GradedMatrix::identity(&bn))
    };
    let Some((lo, hi)) = fib.support() else { return Ok(true) };
    for n in lo..=hi {
        let lhs = g.component(n).compose(&pi.component(n))?;
        let dh = b.differential(n + 1).compose(&homotopy(n)?)?;
        let hd = homotopy(n - 1)?.compose(&fib.differential(n))?;
        if lhs != dh.add(&hd)?.neg() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverExactness {
    pub id: String,
    pub theory: String,
    pub epi: bool,
    pub slices_checked: usize,
    pub exact: bool,
    pub findings: Vec<String>,
}

/// Slice-exactness of `0 → H_n(F_p) → H_n(A) → H_n(B) → 0` for every
/// degree near the support and every slice up to the truncation.
pub fn exactness_of_cover(h: &HomologyTheory, p: &ChainMap, id: &str) -> Result<CoverExactness> {
    let epi = classify_epi(h, p, id)?.is_epi();
    let mut findings = Vec::new();
    if !epi {
        findings.push(format!("{id} is not an {}-epimorphism", h.name));
    }
    let mut checked = 0;
    if let Some((lo, hi)) = degree_window(p) {
        for (c, pc) in h.apply_map(p)?.iter().enumerate() {
            if pc.target().ring().is_zero_ring() {
                continue;
            }
            let q = fiber_projection(pc)?;
            let start = lowest_weight(&[pc.source(), pc.target()]) - 1;
            for n in lo..=hi {
                for w in start..=h.truncation {
                    let (hf, ha, mq) = induced_slice_map(&q, n, w)?;
                    let (_, hb, mp) = induced_slice_map(pc, n, w)?;
                    checked += 1;
                    if mq.rank() != hf.dim() {
                        findings.push(format!("component {c}, H_{n} weight {w}: fiber term does not inject"));
                    }
                    if !crate::complex::exact_at(&mq, &mp, ha.dim()) {
                        findings.push(format!("component {c}, H_{n} weight {w}: not exact in the middle"));
                    }
                    if mp.rank() != hb.dim() {
                        findings.push(format!("component {c}, H_{n} weight {w}: not onto"));
                    }
                }
            }
        }
    }
    Ok(CoverExactness {
        id: id.to_string(),
        theory: h.name.clone(),
        epi,
        slices_checked: checked,
        exact: findings.is_empty(),
        findings,
    })
}
