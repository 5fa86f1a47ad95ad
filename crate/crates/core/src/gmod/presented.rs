use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::free::{FreeGradedModule, GradedMatrix, Shift};
use super::kernel::{columns_to_matrix, in_max_ideal, kernel_generators, lift, require_rational, ModuleVector};
use crate::error::{Error, Result};
use crate::gring::{
    monomial_primes, parity_pushforward, GradedRing, Monomial, MonomialPrime, MonomialRing, Parity, RingElement,
    RingMap, SliceKind,
};
use crate::linalg::{extend_basis, span_basis, QMatrix};

/// The cokernel of a presentation `F1 → F0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    presentation: GradedMatrix,
}

type SliceBasis = Vec<(usize, Monomial)>;

impl PresentedModule {
    /// Degree-shifted presentations are normalized to degree zero.
    pub fn new(presentation: GradedMatrix) -> Result<Self> {
        let d = presentation.degree();
        let p = if d == Shift::ZERO {
            presentation
        } else {
            presentation.with_modules(presentation.source().shifted(d), presentation.target().clone(), Shift::ZERO)?
        };
        Ok(PresentedModule { presentation: p })
    }

    pub fn free(module: FreeGradedModule) -> Self {
        let p = GradedMatrix::zero(FreeGradedModule::zero(module.ring().clone()), module, Shift::ZERO);
        PresentedModule { presentation: p }
    }

    /// `R / (m_1, ..., m_k)` with the generator in weight zero.
    pub fn cyclic(ring: Arc<MonomialRing>, ideal: &[RingElement]) -> Result<Self> {
        let target = FreeGradedModule::line(ring.clone(), Shift::ZERO);
        let nonzero: Vec<RingElement> = ideal.iter().filter(|a| !a.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Ok(Self::free(target));
        }
        Self::new(GradedMatrix::from_target(target, vec![nonzero])?)
    }

    pub fn presentation(&self) -> &GradedMatrix {
        &self.presentation
    }

    pub fn ring(&self) -> &Arc<MonomialRing> {
        self.presentation.ring()
    }

    pub fn generators(&self) -> &FreeGradedModule {
        self.presentation.target()
    }

    /// Coefficient matrix whose cokernel is the weight-`w` slice.
    pub fn slice(&self, w: i64) -> Result<QMatrix> {
        require_rational(self.ring())?;
        self.presentation.slice(w)
    }

    pub fn slice_dim(&self, w: i64) -> Result<usize> {
        let p = self.slice(w)?;
        Ok(p.rows() - p.rank())
    }

    pub fn base_change(&self, map: &RingMap) -> Result<Self> {
        let target = Arc::new(map.target().clone());
        Self::new(self.presentation.base_change(map, &target)?)
    }

    /// Weights at which `M/𝔪M` can be nonzero: generator weights, folded
    /// into one period for periodic rings.
    fn quotient_weights(&self) -> Result<Vec<i64>> {
        let mut ws: Vec<i64> = self.generators().shifts().iter().map(|s| s.weight).collect();
        if let SliceKind::Periodic { period, .. } = self.ring().slice_kind()? {
            let a = ws.iter().copied().min().unwrap_or(0);
            ws = ws.into_iter().map(|w| a + (w - a).rem_euclid(period)).collect();
        }
        ws.sort_unstable();
        ws.dedup();
        Ok(ws)
    }

    /// Basis of `(𝔪F0 + im P)_w` and the slice basis of `F0_w`.
    fn reduction_space(&self, w: i64) -> Result<(SliceBasis, Vec<Vec<crate::coeff::Rational>>)> {
        let f0 = self.generators();
        let ring = self.ring();
        let basis = f0.slice_basis(w)?;
        let dim = basis.len();
        let mut vecs: Vec<Vec<crate::coeff::Rational>> = Vec::new();
        for (k, (_, m)) in basis.iter().enumerate() {
            if in_max_ideal(ring, m) {
                let mut e = vec![num_traits::Zero::zero(); dim];
                e[k] = num_traits::One::one();
                vecs.push(e);
            }
        }
        vecs.extend(self.presentation.slice_with_bases(&self.presentation.source().slice_basis(w)?, &basis)?.columns());
        Ok((basis, span_basis(dim, &vecs)))
    }

    /// Dimensions of `M/𝔪M` by weight.
    pub fn top_dims(&self) -> Result<BTreeMap<i64, usize>> {
        require_graded_local(self.ring())?;
        let mut out = BTreeMap::new();
        for w in self.quotient_weights()? {
            let (basis, red) = self.reduction_space(w)?;
            out.insert(w, basis.len() - red.len());
        }
        Ok(out)
    }
}

/// Graded-local here means `R/𝔪` is a graded field, where `𝔪` is generated
/// by the non-inverted generators.
pub fn require_graded_local(ring: &MonomialRing) -> Result<()> {
    if !ring.coeff().is_local() {
        return Err(Error::NotLocal(format!("coefficient ring {} is not local", ring.coeff())));
    }
    require_rational(ring)?;
    ring.slice_kind()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaReport {
    pub zero: bool,
    /// Dimension of `M/𝔪M` per weight.
    pub quotient_dims: BTreeMap<i64, usize>,
}

/// Decides `M = 0` through `M/𝔪M = 0`.
pub fn nakayama_is_zero(m: &PresentedModule) -> Result<NakayamaReport> {
    let quotient_dims = m.top_dims()?;
    Ok(NakayamaReport { zero: quotient_dims.values().all(|d| *d == 0), quotient_dims })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free {
        #[serde(rename = "type")]
        ty: Vec<Shift>,
    },
    NotProjective {
        witness_weight: i64,
        witness: Vec<String>,
    },
    UnknownUpTo {
        w: i64,
    },
}

/// Verdict with the lift `L : F → F0` and, for free modules, a section
/// `s : F0 → F` with `s L = 1` and `s P = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub verdict: FreenessVerdict,
    pub truncation: i64,
    pub lift: GradedMatrix,
    pub section: Option<GradedMatrix>,
    /// Weights up to the truncation at which the Hilbert functions of `M`
    /// and of the free module were compared.
    pub audited_weights: Vec<i64>,
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self.verdict, FreenessVerdict::Free { .. })
    }

    pub fn free_type(&self) -> Option<&[Shift]> {
        match &self.verdict {
            FreenessVerdict::Free { ty } => Some(ty),
            _ => None,
        }
    }

    /// Even and odd rank of a free verdict.
    pub fn parity_type(&self, ring: &MonomialRing) -> Option<(usize, usize)> {
        let ty = self.free_type()?;
        let degrees: Vec<i64> = ty.iter().map(|s| s.degree).collect();
        let par = parity_pushforward(ring.grading(), &degrees)
            .unwrap_or_else(|_| degrees.iter().map(|_| Parity::Even).collect());
        let odd = par.iter().filter(|p| p.is_odd()).count();
        Some((par.len() - odd, odd))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict,
            "truncation": self.truncation,
            "lift": self.lift.format_entries(),
            "section": self.section.as_ref().map(|s| s.format_entries()),
        })
    }
}

/// Lifts a basis of `M/𝔪M` to a map from a free module, then decides
/// whether it is an isomorphism from the exact kernel.
pub fn free_rank_type(m: &PresentedModule, w_max: i64) -> Result<FreenessCertificate> {
    require_graded_local(m.ring())?;
    let ring = m.ring().clone();
    let f0 = m.generators().clone();
    let period = match ring.slice_kind()? {
        SliceKind::Periodic { generator, period } => Some((generator, period)),
        _ => None,
    };
    // choose unit multiples of generators spanning M/𝔪M
    let mut chosen: Vec<(Shift, ModuleVector)> = Vec::new();
    for w in m.quotient_weights()? {
        let (basis, red) = m.reduction_space(w)?;
        let mut cands = Vec::new();
        let mut cand_vecs = Vec::new();
        for (i, s) in f0.shifts().iter().enumerate() {
            let mut u = Monomial::one(ring.ngens());
            match period {
                Some((g, p)) if (w - s.weight).rem_euclid(p) == 0 => u.0[g] = (w - s.weight) / p,
                None if s.weight == w => {}
                _ => continue,
            }
            let mut v = vec![RingElement::zero(); f0.rank()];
            v[i] = RingElement::monomial(u.clone(), num_traits::One::one());
            if !ring.is_standard(&u) {
                continue;
            }
            let deg = Shift::new(ring.grading().normalize(s.degree + ring.degree(&u)), w);
            cand_vecs.push(f0.to_slice_vector(&v, &basis));
            cands.push((deg, v));
        }
        for k in extend_basis(basis.len(), &red, &cand_vecs) {
            chosen.push(cands[k].clone());
        }
    }
    let lift_map = columns_to_matrix(&f0, chosen)?;
    let p = m.presentation();
    let both = lift_map.hconcat(p)?;
    // surjectivity, decided in each generator's own slice
    for i in 0..f0.rank() {
        let mut e = vec![RingElement::zero(); f0.rank()];
        e[i] = ring.one();
        if lift(&both, &e)?.is_none() {
            return Err(Error::HypothesisFailed(format!("generator {i} is not in the image of the lift")));
        }
    }
    let n = lift_map.cols();
    let k: Vec<ModuleVector> = kernel_generators(&both)?
        .into_iter()
        .map(|(_, v)| v[..n].to_vec())
        .filter(|v| v.iter().any(|a| !a.is_zero()))
        .collect();
    let free = lift_map.source().clone();
    let kgens = super::kernel::minimize(&free, k)?;
    let audit_from = free.shifts().iter().chain(f0.shifts()).map(|s| s.weight).min().unwrap_or(0);
    if let Some((s, v)) = kgens.first() {
        let verdict = if s.weight <= w_max {
            FreenessVerdict::NotProjective {
                witness_weight: s.weight,
                witness: v.iter().map(|a| ring.format(a)).collect(),
            }
        } else {
            FreenessVerdict::UnknownUpTo { w: w_max }
        };
        return Ok(FreenessCertificate { verdict, truncation: w_max, lift: lift_map, section: None, audited_weights: vec![] });
    }
    // section: s(e_i) = u with e_i = L u + P v
    let mut cols = Vec::new();
    for i in 0..f0.rank() {
        let mut e = vec![RingElement::zero(); f0.rank()];
        e[i] = ring.one();
        let uv = lift(&both, &e)?.expect("surjective");
        cols.push(uv[..n].to_vec());
    }
    let mut entries = vec![vec![RingElement::zero(); f0.rank()]; n];
    for (j, c) in cols.into_iter().enumerate() {
        for (i, a) in c.into_iter().enumerate() {
            entries[i][j] = a;
        }
    }
    let section = GradedMatrix::new(f0.clone(), free.clone(), Shift::ZERO, entries)?;
    if section.compose(&lift_map)? != GradedMatrix::identity(&free) || !section.compose(p)?.is_zero() {
        return Err(Error::HypothesisFailed("section does not split the lift".into()));
    }
    let mut audited = Vec::new();
    for w in audit_from..=w_max.max(audit_from) {
        if m.slice_dim(w)? != free.slice_dim(w)? {
            return Err(Error::HypothesisFailed(format!("Hilbert functions differ at weight {w}")));
        }
        audited.push(w);
    }
    let mut ty = free.shifts().to_vec();
    ty.sort();
    Ok(FreenessCertificate {
        verdict: FreenessVerdict::Free { ty },
        truncation: w_max,
        lift: lift_map,
        section: Some(section),
        audited_weights: audited,
    })
}

#[derive(Clone, Debug)]
pub struct SpreadOut {
    /// `1` or a generator outside the prime.
    pub f: String,
    pub ring: MonomialRing,
    pub certificate: FreenessCertificate,
}

/// Finds `f ∉ p` such that `M_f` is free: tries `f = 1`, then each live
/// generator outside `p`.
pub fn spread_out(m: &PresentedModule, p: &MonomialPrime, w_max: i64) -> Result<SpreadOut> {
    let ring = m.ring();
    let cert = free_rank_type(m, w_max)?;
    if cert.is_free() {
        return Ok(SpreadOut { f: "1".into(), ring: (**ring).clone(), certificate: cert });
    }
    for t in ring.live_polynomial_generators() {
        if p.generators.contains(&t) {
            continue;
        }
        let local = ring.localize_index(t)?;
        if local.slice_kind().is_err() {
            continue;
        }
        let map = RingMap::canonical(ring, &local)?;
        let ml = m.base_change(&map)?;
        let c = free_rank_type(&ml, w_max)?;
        if c.is_free() {
            return Ok(SpreadOut { f: ring.generators()[t].name.clone(), ring: local, certificate: c });
        }
    }
    Err(Error::NotLocallyFreeAtP(p.format(ring)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverPatch {
    pub prime: String,
    pub f: String,
    pub local_type: Vec<Shift>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocallyFreeWitness {
    pub cover: Vec<CoverPatch>,
    /// Coefficients `b_i` with `1 = Σ b_i f_i`, aligned with the distinct
    /// `f_i` in `cover_elements`.
    pub cover_elements: Vec<String>,
    pub combination: Vec<String>,
    /// Even and odd rank after collapsing the grading to `Z/2`.
    pub parity_type: (usize, usize),
    pub parity_collapse: String,
}

pub fn locally_free_witness(m: &PresentedModule, w_max: i64) -> Result<LocallyFreeWitness> {
    locally_free_witness_over(&GradedRing::Single((**m.ring()).clone()), std::slice::from_ref(m), w_max)
}

/// `components` holds the module over each factor of `ring`.
pub fn locally_free_witness_over(
    ring: &GradedRing,
    components: &[PresentedModule],
    w_max: i64,
) -> Result<LocallyFreeWitness> {
    if !ring.is_connected().connected {
        return Err(Error::NotConnected);
    }
    let m = components
        .iter()
        .find(|c| !c.ring().is_zero_ring())
        .or(components.first())
        .ok_or_else(|| Error::HypothesisFailed("no module given".into()))?;
    let r = m.ring().clone();
    let mut patches = Vec::new();
    for point in monomial_primes(&r) {
        let s = spread_out(m, &point.ideal, w_max).map_err(|e| match e {
            Error::NotLocallyFreeAtP(prime) => Error::NotProjectiveSomewhere {
                prime,
                reason: "no basic open around the prime makes the module free".into(),
            },
            other => other,
        })?;
        patches.push((point, s));
    }
    let mut cover = Vec::new();
    let mut elements: Vec<String> = Vec::new();
    let mut parity = None;
    for (point, s) in patches {
        let pt = s.certificate.parity_type(&s.ring).expect("free");
        match parity {
            None => parity = Some(pt),
            Some(q) if q != pt => {
                return Err(Error::HypothesisFailed(format!("local types {q:?} and {pt:?} differ")));
            }
            _ => {}
        }
        if !elements.contains(&s.f) {
            elements.push(s.f.clone());
        }
        cover.push(CoverPatch {
            prime: point.prime.clone(),
            f: s.f,
            local_type: s.certificate.free_type().expect("free").to_vec(),
        });
    }
    // a monomial ideal contains 1 only through a unit monomial
    let unit = elements
        .iter()
        .position(|f| f == "1" || r.parse_monomial(f).is_ok_and(|mm| r.is_unit_monomial(&mm)))
        .ok_or_else(|| Error::HypothesisFailed("cover elements do not generate the unit ideal".into()))?;
    let combination = (0..elements.len())
        .map(|i| {
            if i != unit {
                "0".to_string()
            } else if elements[i] == "1" {
                "1".to_string()
            } else {
                format!("{}^-1", elements[i])
            }
        })
        .collect();
    Ok(LocallyFreeWitness {
        cover,
        cover_elements: elements,
        combination,
        parity_type: parity.unwrap_or((0, 0)),
        parity_collapse: "(Z/2, alpha)".into(),
    })
}

/// `η : R → A_j` with dual `η^∨ : A_j^∨ → R`; decides whether `1` is in
/// the image.
pub fn adams_stage_check(stage: &FreeGradedModule, eta: &GradedMatrix) -> Result<bool> {
    if eta.target() != stage || eta.cols() != 1 {
        return Err(Error::DimensionMismatch("eta must map the unit into the stage".into()));
    }
    let dual = eta.dual();
    let one = vec![eta.ring().one()];
    Ok(lift(&dual, &one)?.is_some())
}
