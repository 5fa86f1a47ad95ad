use std::sync::Arc;

use serde::Serialize;

use crate::complex::{check_truncation, homology_module, surjective_on_homology, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::gmod::{free_rank_type, FreenessVerdict, Shift};
use crate::gring::{MonomialRing, RingMap};

/// `H = H_*(A ⊗ −)` for `A = A_1 × … × A_k`, each factor given by an
/// algebra map out of the base ring. Complexes are base changed
/// componentwise.
#[derive(Clone, Debug)]
pub struct HomologyTheory {
    pub name: String,
    base: Arc<MonomialRing>,
    components: Vec<RingMap>,
    pub truncation: i64,
    /// Declared by the user; never decided.
    pub flat: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheorySummary {
    pub name: String,
    pub components: Vec<String>,
    pub truncation: i64,
    pub flat: Option<bool>,
}

impl HomologyTheory {
    /// Checks that every map starts at the base ring and that `H(unit)` is
    /// `A` in degree zero.
    pub fn new(name: &str, base: Arc<MonomialRing>, components: Vec<RingMap>, truncation: i64) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::IllFormedAlgebraMap("a theory needs at least one component".into()));
        }
        for c in &components {
            if *c.source() != *base {
                return Err(Error::IllFormedAlgebraMap(format!("component {} does not start at the base ring", c.target())));
            }
        }
        let h = HomologyTheory { name: name.to_string(), base, components, truncation, flat: None };
        let unit = ChainComplex::unit(h.base.clone());
        for (c, hu) in h.components.iter().zip(h.apply(&unit)?) {
            if hu != ChainComplex::unit(Arc::new(c.target().clone())) {
                return Err(Error::IllFormedAlgebraMap("H of the unit is not A in degree 0".into()));
            }
        }
        Ok(h)
    }

    pub fn identity(name: &str, base: Arc<MonomialRing>, truncation: i64) -> Result<Self> {
        let id = RingMap::identity(&base);
        Self::new(name, base, vec![id], truncation)
    }

    /// `A = R / (gens)`.
    pub fn quotient(name: &str, base: Arc<MonomialRing>, gens: &[&str], truncation: i64) -> Result<Self> {
        let a = base.with_relations(gens)?;
        let map = RingMap::canonical(&base, &a)?;
        Self::new(name, base, vec![map], truncation)
    }

    /// `A = R_{g_1} × … × R_{g_k}`.
    pub fn localizations(name: &str, base: Arc<MonomialRing>, gens: &[&str], truncation: i64) -> Result<Self> {
        let maps = gens
            .iter()
            .map(|g| RingMap::canonical(&base, &base.localize(g)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, base, maps, truncation)
    }

    pub fn with_flatness(mut self, flat: bool) -> Self {
        self.flat = Some(flat);
        self
    }

    pub fn base(&self) -> &Arc<MonomialRing> {
        &self.base
    }

    pub fn components(&self) -> &[RingMap] {
        &self.components
    }

    pub fn summary(&self) -> TheorySummary {
        TheorySummary {
            name: self.name.clone(),
            components: self.components.iter().map(|c| c.target().to_string()).collect(),
            truncation: self.truncation,
            flat: self.flat,
        }
    }

    pub fn apply(&self, x: &ChainComplex) -> Result<Vec<ChainComplex>> {
        self.components.iter().map(|c| x.base_change(c)).collect()
    }

    pub fn apply_map(&self, f: &ChainMap) -> Result<Vec<ChainMap>> {
        self.components.iter().map(|c| f.base_change(c)).collect()
    }
}

/// Homology shifts of one free `H_n` over one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyType {
    pub degree: i64,
    pub component: usize,
    pub shifts: Vec<Shift>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum DualVerdict {
    HDual { types: Vec<HomologyType> },
    NotHDual { degree: i64, component: usize, reason: String },
    Unknown { w: i64 },
}

impl DualVerdict {
    pub fn is_dual(&self) -> bool {
        matches!(self, DualVerdict::HDual { .. })
    }

    pub fn is_not_dual(&self) -> bool {
        matches!(self, DualVerdict::NotHDual { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeCertificate {
    pub degree: i64,
    pub component: usize,
    pub certificate: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualCertificate {
    pub id: String,
    pub theory: String,
    pub degrees: Vec<DegreeCertificate>,
    pub verdict: DualVerdict,
}

/// Runs the freeness certificate on `H_n(A_c ⊗ X)` for every degree in the
/// support and every component. A `NotProjective` anywhere wins over an
/// `Unknown`.
pub fn classify_dual(h: &HomologyTheory, x: &ChainComplex, id: &str) -> Result<DualCertificate> {
    for m in x.terms().values() {
        check_truncation(m.shifts(), h.truncation)?;
    }
    let mut degrees = Vec::new();
    let mut types = Vec::new();
    let mut negative = None;
    let mut unknown = false;
    if let Some((lo, hi)) = x.support() {
        for (c, xa) in h.apply(x)?.iter().enumerate() {
            if xa.ring().is_zero_ring() {
                continue;
            }
            for n in lo..=hi {
                let m = homology_module(xa, n)?;
                let cert = free_rank_type(&m, h.truncation)?;
                degrees.push(DegreeCertificate { degree: n, component: c, certificate: cert.to_json() });
                match cert.verdict {
                    FreenessVerdict::Free { ty } => types.push(HomologyType { degree: n, component: c, shifts: ty }),
                    FreenessVerdict::NotProjective { witness_weight, witness } => {
                        negative.get_or_insert(DualVerdict::NotHDual {
                            degree: n,
                            component: c,
                            reason: format!(
                                "H_{n} is not projective: kernel element [{}] of weight {witness_weight}",
                                witness.join(", ")
                            ),
                        });
                    }
                    FreenessVerdict::UnknownUpTo { .. } => unknown = true,
                }
            }
        }
    }
    let verdict = match (negative, unknown) {
        (Some(v), _) => v,
        (None, true) => DualVerdict::Unknown { w: h.truncation },
        (None, false) => DualVerdict::HDual { types },
    };
    Ok(DualCertificate { id: id.to_string(), theory: h.name.clone(), degrees, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiDegree {
    pub degree: i64,
    pub component: usize,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum EpiVerdict {
    Epi,
    NotEpi { degree: i64, component: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiCertificate {
    pub id: String,
    pub theory: String,
    pub degrees: Vec<EpiDegree>,
    pub verdict: EpiVerdict,
}

impl EpiCertificate {
    pub fn is_epi(&self) -> bool {
        self.verdict == EpiVerdict::Epi
    }
}

/// `H_n(f)` onto for every `n` in the support of the target, decided
/// exactly on homology generators.
pub fn classify_epi(h: &HomologyTheory, f: &ChainMap, id: &str) -> Result<EpiCertificate> {
    let mut degrees = Vec::new();
    let mut verdict = EpiVerdict::Epi;
    if let Some((lo, hi)) = f.target().support() {
        for (c, fa) in h.apply_map(f)?.iter().enumerate() {
            if fa.target().ring().is_zero_ring() {
                continue;
            }
            for n in lo..=hi {
                let surjective = surjective_on_homology(fa, n)?;
                if !surjective && verdict == EpiVerdict::Epi {
                    verdict = EpiVerdict::NotEpi { degree: n, component: c };
                }
                degrees.push(EpiDegree { degree: n, component: c, surjective });
            }
        }
    }
    Ok(EpiCertificate { id: id.to_string(), theory: h.name.clone(), degrees, verdict })
}
