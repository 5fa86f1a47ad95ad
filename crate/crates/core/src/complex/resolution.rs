use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::chain::ChainComplex;
use super::homology::{homology, HomologyEntry};
use crate::error::{Error, Result};
use crate::gmod::{kernel, FreeGradedModule, GradedMatrix, PresentedModule, Shift};
use crate::gring::{Monomial, MonomialRing, RingElement, RingMap};

/// A free resolution of `R / I` for a monomial ideal `I`, truncated at
/// homological degree `length`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Arc<MonomialRing>,
    pub ideal: Vec<RingElement>,
    pub complex: ChainComplex,
    pub length: i64,
    /// The resolution stopped because a kernel vanished.
    pub finite: bool,
    pub audited_up_to: i64,
}

impl Resolution {
    pub fn module(&self) -> Result<PresentedModule> {
        PresentedModule::cyclic(self.ring.clone(), &self.ideal)
    }

    pub fn differential_entries(&self) -> Vec<Vec<Vec<String>>> {
        (1..=self.length).map(|n| self.complex.differential(n).format_entries()).collect()
    }
}

fn monomials_of(ideal: &[RingElement]) -> Result<Vec<Monomial>> {
    ideal
        .iter()
        .filter(|a| !a.is_zero())
        .map(|a| a.as_monomial().map(|(m, _)| m.clone()).ok_or_else(|| Error::NonMonomial(format!("{a:?}"))))
        .collect()
}

/// Iterated minimal kernels of the monomial row `(m_1 … m_k)`. Each
/// intermediate degree is audited for exactness on slices up to `w_max`.
pub fn cyclic_resolution(
    ring: Arc<MonomialRing>,
    ideal: &[RingElement],
    length: i64,
    w_max: i64,
) -> Result<Resolution> {
    monomials_of(ideal)?;
    let x0 = FreeGradedModule::line(ring.clone(), Shift::ZERO);
    let nonzero: Vec<RingElement> = ideal.iter().filter(|a| !a.is_zero()).cloned().collect();
    let mut terms: BTreeMap<i64, FreeGradedModule> = [(0, x0.clone())].into();
    let mut diffs = BTreeMap::new();
    let mut finite = true;
    if !nonzero.is_empty() && length >= 1 {
        let mut d = GradedMatrix::from_target(x0, vec![nonzero])?;
        let mut n = 1;
        loop {
            terms.insert(n, d.source().clone());
            diffs.insert(n, d.clone());
            if n == length {
                finite = false;
                break;
            }
            let k = kernel(&d)?;
            if k.cols() == 0 {
                break;
            }
            d = k;
            n += 1;
        }
    }
    let complex = ChainComplex::new(ring.clone(), terms, diffs)?;
    let top = complex.support().map_or(0, |s| s.1);
    let res = Resolution { ring, ideal: ideal.to_vec(), complex, length: top, finite, audited_up_to: w_max };
    audit(&res, w_max)?;
    Ok(res)
}

/// `H_n = 0` for `1 ≤ n < length`, and also at `length` for a finite
/// resolution, on every slice up to `w_max`.
fn audit(res: &Resolution, w_max: i64) -> Result<()> {
    let last = if res.finite { res.length } else { res.length - 1 };
    for n in 1..=last {
        let Some(start) = res.complex.start_weight(n) else { continue };
        for w in start..=w_max {
            let xn = res.complex.term(n);
            let dn = res.complex.differential(n).slice(w)?;
            let up = res.complex.differential(n + 1).slice(w)?;
            if xn.slice_dim(w)? != dn.rank() + up.rank() {
                return Err(Error::ExactnessAuditFailed { degree: n, weight: w });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorReport {
    pub n: i64,
    pub entry: HomologyEntry,
    pub resolution_differentials: Vec<Vec<Vec<String>>>,
}

/// `Tor_n(R/I, R/J)` for monomial ideals: resolve `R/I`, reduce modulo
/// `J`, take homology.
pub fn tor(ring: Arc<MonomialRing>, i: &[RingElement], j: &[RingElement], n: i64, w_max: i64) -> Result<TorReport> {
    let res = cyclic_resolution(ring.clone(), i, n + 1, w_max)?;
    let quotient = ring.with_relation_monomials(&monomials_of(j)?)?;
    let map = RingMap::canonical(&ring, &quotient)?;
    let tensored = res.complex.base_change(&map)?;
    let entry = homology(&tensored, n, w_max)?;
    Ok(TorReport { n, entry, resolution_differentials: res.differential_entries() })
}
