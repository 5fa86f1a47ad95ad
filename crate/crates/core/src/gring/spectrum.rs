use std::collections::BTreeSet;

use serde::Serialize;

use super::element::RingElement;
use super::ring::{GradedRing, MonomialRing};
use crate::error::{Error, Result};

/// A prime generated by a set of (non-inverted) generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime {
    pub generators: BTreeSet<usize>,
}

impl MonomialPrime {
    pub fn new(generators: impl IntoIterator<Item = usize>) -> Self {
        MonomialPrime { generators: generators.into_iter().collect() }
    }

    pub fn format(&self, ring: &MonomialRing) -> String {
        if self.generators.is_empty() {
            return "(0)".into();
        }
        let names: Vec<&str> = self.generators.iter().map(|i| ring.generators()[*i].name.as_str()).collect();
        format!("({})", names.join(","))
    }

    pub fn contains_all_relations(&self, ring: &MonomialRing) -> bool {
        ring.relations().iter().all(|r| r.support().any(|i| self.generators.contains(&i)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecPoint {
    pub prime: String,
    #[serde(skip)]
    pub ideal: MonomialPrime,
    pub minimal: bool,
}

/// All monomial primes of a single monomial quotient, in a deterministic
/// order (by size, then generator indices).
pub fn spec_monomial_primes(ring: &GradedRing) -> Result<Vec<SpecPoint>> {
    let ring = ring.single()?;
    Ok(monomial_primes(ring))
}

pub fn monomial_primes(ring: &MonomialRing) -> Vec<SpecPoint> {
    let cands: Vec<usize> = (0..ring.ngens()).filter(|i| !ring.is_inverted(*i)).collect();
    let mut primes = Vec::new();
    for mask in 0u64..(1u64 << cands.len()) {
        let p = MonomialPrime::new(cands.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, i)| *i));
        if p.contains_all_relations(ring) {
            primes.push(p);
        }
    }
    primes.sort_by_key(|p| (p.generators.len(), p.generators.iter().copied().collect::<Vec<_>>()));
    let minimal: Vec<bool> = primes
        .iter()
        .map(|p| !primes.iter().any(|q| q != p && q.generators.is_subset(&p.generators)))
        .collect();
    primes
        .into_iter()
        .zip(minimal)
        .map(|(p, minimal)| SpecPoint { prime: p.format(ring), ideal: p, minimal })
        .collect()
}

/// Whether `p` lies in the basic open set `D(f)` of a monomial `f`.
pub fn basic_open_contains(ring: &MonomialRing, f: &RingElement, p: &MonomialPrime) -> Result<bool> {
    let (m, _) = f.as_monomial().ok_or_else(|| Error::NonMonomial(ring.format(f)))?;
    Ok(!m.support().any(|i| m.0[i] > 0 && p.generators.contains(&i)))
}
