use serde::Serialize;

use super::cover::{exactness_of_cover, CoverExactness};
use super::theory::{classify_dual, classify_epi, DualCertificate, DualVerdict, EpiCertificate, HomologyTheory, TheorySummary};
use crate::complex::{cone, cone_inclusion, cone_projection, ChainComplex, ChainMap};
use crate::error::{Error, Result};

pub const MAX_CATALOG_DEPTH: usize = 3;
pub const MAX_CATALOG_OBJECTS: usize = 64;

#[derive(Clone, Debug)]
pub struct CatalogObject {
    pub id: String,
    pub complex: ChainComplex,
}

#[derive(Clone, Debug)]
pub struct CatalogMap {
    pub id: String,
    pub map: ChainMap,
}

/// Complexes and maps, deduplicated by exact equality of presentations.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub objects: Vec<CatalogObject>,
    pub maps: Vec<CatalogMap>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a complex unless an equal one is present; returns its id.
    pub fn add_object(&mut self, id: &str, x: ChainComplex) -> String {
        if let Some(o) = self.objects.iter().find(|o| o.complex == x) {
            return o.id.clone();
        }
        self.objects.push(CatalogObject { id: id.to_string(), complex: x });
        id.to_string()
    }

    pub fn add_map(&mut self, id: &str, f: ChainMap) -> String {
        if let Some(m) = self.maps.iter().find(|m| m.map == f) {
            return m.id.clone();
        }
        self.maps.push(CatalogMap { id: id.to_string(), map: f });
        id.to_string()
    }

    pub fn object(&self, id: &str) -> Option<&ChainComplex> {
        self.objects.iter().find(|o| o.id == id).map(|o| &o.complex)
    }

    pub fn map(&self, id: &str) -> Option<&ChainMap> {
        self.maps.iter().find(|m| m.id == id).map(|m| &m.map)
    }

    fn contains(&self, x: &ChainComplex) -> bool {
        self.objects.iter().any(|o| o.complex == *x)
    }
}

fn shift_id(id: &str, k: i64) -> String {
    format!("{id}[{k}]")
}

/// Closes under `[±1]` and duals `depth` times. The first level also adds
/// sums of unordered pairs of distinct seeds and cones of the seed maps,
/// each cone with its inclusion and projection. Maps are closed under
/// `[±1]`.
pub fn catalog_closure(seeds: &Catalog, depth: usize) -> Result<Catalog> {
    if depth > MAX_CATALOG_DEPTH {
        return Err(Error::BoundExceeded(format!("catalog depth {depth} > {MAX_CATALOG_DEPTH}")));
    }
    let mut cat = Catalog::new();
    for o in &seeds.objects {
        cat.add_object(&o.id, o.complex.clone());
    }
    for m in &seeds.maps {
        cat.add_map(&m.id, m.map.clone());
    }
    let mut frontier: Vec<CatalogObject> = cat.objects.clone();
    let mut map_frontier: Vec<CatalogMap> = cat.maps.clone();
    for level in 0..depth {
        let mut fresh = Vec::new();
        let mut candidates: Vec<(String, ChainComplex)> = Vec::new();
        for o in &frontier {
            candidates.push((shift_id(&o.id, 1), o.complex.shift(1)));
            candidates.push((shift_id(&o.id, -1), o.complex.shift(-1)));
            candidates.push((format!("{}^v", o.id), o.complex.dual()));
        }
        let mut new_maps = Vec::new();
        if level == 0 {
            for (i, a) in seeds.objects.iter().enumerate() {
                for b in &seeds.objects[i + 1..] {
                    candidates.push((format!("{}+{}", a.id, b.id), a.complex.direct_sum(&b.complex)?));
                }
            }
            for m in &seeds.maps {
                let c = cone(&m.map)?;
                candidates.push((format!("cone({})", m.id), c));
                new_maps.push((format!("inc({})", m.id), cone_inclusion(&m.map)?));
                new_maps.push((format!("proj({})", m.id), cone_projection(&m.map)?));
            }
        }
        for m in &map_frontier {
            new_maps.push((shift_id(&m.id, 1), m.map.shift(1)));
            new_maps.push((shift_id(&m.id, -1), m.map.shift(-1)));
        }
        for (id, x) in candidates {
            if x.is_zero() || cat.contains(&x) {
                continue;
            }
            if cat.objects.len() >= MAX_CATALOG_OBJECTS {
                return Err(Error::BoundExceeded(format!("catalog exceeds {MAX_CATALOG_OBJECTS} objects")));
            }
            cat.add_object(&id, x.clone());
            fresh.push(CatalogObject { id, complex: x });
        }
        let mut fresh_maps = Vec::new();
        for (id, f) in new_maps {
            if cat.maps.iter().all(|m| m.map != f) {
                cat.add_map(&id, f.clone());
                fresh_maps.push(CatalogMap { id, map: f });
            }
        }
        frontier = fresh;
        map_frontier = fresh_maps;
    }
    Ok(cat)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObjectEntry {
    pub id: String,
    pub duals: Vec<DualCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapEntry {
    pub id: String,
    /// One per theory; `None` when source or target is not an `H`-dual.
    pub epis: Vec<Option<EpiCertificate>>,
}

/// Maps between `H`-duals, split by epi verdict. Epi verdicts are exact,
/// so `unknown` stays empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapPartition {
    pub theory: String,
    pub epi: Vec<String>,
    pub not_epi: Vec<String>,
    pub unknown: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Discrepancy {
    Dual { object: String, dual_under: String, not_dual_under: String },
    Epi { map: String, epi_under: String, not_epi_under: String },
}

pub const CONDITION_I_VIOLATED: &str = "flat-replacement condition (i) violated";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiteReport {
    pub theories: Vec<TheorySummary>,
    pub objects: Vec<ObjectEntry>,
    pub maps: Vec<MapEntry>,
    pub partitions: Vec<MapPartition>,
    pub covers: Vec<CoverExactness>,
    pub discrepancies: Vec<Discrepancy>,
    pub verdict: Option<String>,
}

fn dual_of(h: &HomologyTheory, cat: &Catalog, certs: &[DualCertificate], x: &ChainComplex) -> Result<DualVerdict> {
    if let Some(i) = cat.objects.iter().position(|o| o.complex == *x) {
        return Ok(certs[i].verdict.clone());
    }
    Ok(classify_dual(h, x, "")?.verdict)
}

/// Classifies every object and map under each theory; with `covers`, also
/// checks exactness of every `H`-epi cover.
pub fn classify_catalog(theories: &[&HomologyTheory], cat: &Catalog, covers: bool) -> Result<SiteReport> {
    let mut per_theory: Vec<Vec<DualCertificate>> = Vec::new();
    for h in theories {
        per_theory.push(cat.objects.iter().map(|o| classify_dual(h, &o.complex, &o.id)).collect::<Result<_>>()?);
    }
    let objects = cat
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| ObjectEntry { id: o.id.clone(), duals: per_theory.iter().map(|c| c[i].clone()).collect() })
        .collect();
    let mut maps = Vec::new();
    let mut partitions: Vec<MapPartition> = theories
        .iter()
        .map(|h| MapPartition { theory: h.name.clone(), epi: vec![], not_epi: vec![], unknown: vec![] })
        .collect();
    let mut cover_reports = Vec::new();
    for m in &cat.maps {
        let mut epis = Vec::new();
        for (t, h) in theories.iter().enumerate() {
            let s = dual_of(h, cat, &per_theory[t], m.map.source())?;
            let g = dual_of(h, cat, &per_theory[t], m.map.target())?;
            let cert = classify_epi(h, &m.map, &m.id)?;
            if s.is_dual() && g.is_dual() {
                let part = &mut partitions[t];
                if cert.is_epi() {
                    part.epi.push(m.id.clone());
                } else {
                    part.not_epi.push(m.id.clone());
                }
                if covers && cert.is_epi() {
                    cover_reports.push(exactness_of_cover(h, &m.map, &m.id)?);
                }
                epis.push(Some(cert));
            } else {
                epis.push(None);
            }
        }
        maps.push(MapEntry { id: m.id.clone(), epis });
    }
    Ok(SiteReport {
        theories: theories.iter().map(|h| h.summary()).collect(),
        objects,
        maps,
        partitions,
        covers: cover_reports,
        discrepancies: vec![],
        verdict: None,
    })
}

/// Classifies under both theories and lists (a) objects dual for one but
/// not the other and (b) maps between common duals with differing epi
/// verdicts.
pub fn compare_theories(h1: &HomologyTheory, h2: &HomologyTheory, cat: &Catalog) -> Result<SiteReport> {
    if h1.base() != h2.base() {
        return Err(Error::RingMismatch("theories over different base rings".into()));
    }
    let mut report = classify_catalog(&[h1, h2], cat, false)?;
    let names = [h1.name.clone(), h2.name.clone()];
    let mut disc = Vec::new();
    for o in &report.objects {
        let (a, b) = (&o.duals[0].verdict, &o.duals[1].verdict);
        for (x, y, i) in [(a, b, 0), (b, a, 1)] {
            if x.is_dual() && y.is_not_dual() {
                disc.push(Discrepancy::Dual {
                    object: o.id.clone(),
                    dual_under: names[i].clone(),
                    not_dual_under: names[1 - i].clone(),
                });
            }
        }
    }
    let mut epi_disc = false;
    for m in &report.maps {
        if let [Some(a), Some(b)] = m.epis.as_slice() {
            if a.is_epi() != b.is_epi() {
                let i = if a.is_epi() { 0 } else { 1 };
                disc.push(Discrepancy::Epi {
                    map: m.id.clone(),
                    epi_under: names[i].clone(),
                    not_epi_under: names[1 - i].clone(),
                });
                epi_disc = true;
            }
        }
    }
    report.discrepancies = disc;
    report.verdict = epi_disc.then(|| CONDITION_I_VIOLATED.to_string());
    Ok(report)
}
