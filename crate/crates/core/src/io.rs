//! JSON descriptions of rings, modules, complexes, maps and site jobs.
//!
//! Every spec type converts to the library object and back; the CLI reads
//! these files and the round trip `parse(serialize(x)) = x` is tested.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientRing;
use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::gmod::{FreeGradedModule, GradedMatrix, PresentedModule, Shift};
use crate::gring::{GradedRing, Generator, GradingSpec, MonomialRing, RingMap};
use crate::site::{Catalog, HomologyTheory};

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn default_weight() -> i64 {
    1
}

fn default_coeff() -> String {
    "Q".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default)]
    pub degree: i64,
    #[serde(default = "default_weight")]
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialRingSpec {
    #[serde(default)]
    pub grading: GradingSpec,
    #[serde(default = "default_coeff")]
    pub coeff: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub inverted: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Product { product: Vec<MonomialRingSpec> },
    Single(MonomialRingSpec),
}

impl MonomialRingSpec {
    pub fn build(&self) -> Result<MonomialRing> {
        let coeff = CoefficientRing::parse(&self.coeff)?;
        let gens: Vec<Generator> =
            self.generators.iter().map(|g| Generator::new(&g.name, g.degree, g.weight)).collect();
        let n = gens.len();
        let plain = MonomialRing::new(self.grading, coeff.clone(), gens.clone(), vec![], vec![false; n])?;
        let relations = self.relations.iter().map(|r| plain.parse_monomial(r)).collect::<Result<Vec<_>>>()?;
        let mut inverted = vec![false; n];
        for name in &self.inverted {
            let i = plain.gen_index(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            if inverted[i] {
                return Err(Error::AlreadyInverted(name.clone()));
            }
            inverted[i] = true;
        }
        MonomialRing::new(self.grading, coeff, gens, relations, inverted)
    }

    pub fn of(ring: &MonomialRing) -> Self {
        MonomialRingSpec {
            grading: *ring.grading(),
            coeff: ring.coeff().to_string(),
            generators: ring
                .generators()
                .iter()
                .map(|g| GeneratorSpec { name: g.name.clone(), degree: g.degree, weight: g.weight })
                .collect(),
            relations: ring.relations().iter().map(|m| ring.format_monomial(m)).collect(),
            inverted: ring.inverted().map(|i| ring.generators()[i].name.clone()).collect(),
        }
    }
}

impl RingSpec {
    pub fn build(&self) -> Result<GradedRing> {
        match self {
            RingSpec::Single(s) => Ok(GradedRing::Single(s.build()?)),
            RingSpec::Product { product } => {
                GradedRing::product(product.iter().map(MonomialRingSpec::build).collect::<Result<_>>()?)
            }
        }
    }

    pub fn build_single(&self) -> Result<Arc<MonomialRing>> {
        Ok(Arc::new(self.build()?.single()?.clone()))
    }

    pub fn of(ring: &GradedRing) -> Self {
        match ring {
            GradedRing::Single(r) => RingSpec::Single(MonomialRingSpec::of(r)),
            GradedRing::Product(rs) => RingSpec::Product { product: rs.iter().map(MonomialRingSpec::of).collect() },
        }
    }
}

/// A weight alone (degree zero) or a full shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShiftSpec {
    Weight(i64),
    Full { degree: i64, weight: i64 },
}

impl ShiftSpec {
    pub fn shift(self) -> Shift {
        match self {
            ShiftSpec::Weight(w) => Shift::weight(w),
            ShiftSpec::Full { degree, weight } => Shift::new(degree, weight),
        }
    }

    pub fn of(s: Shift) -> Self {
        if s.degree == 0 {
            ShiftSpec::Weight(s.weight)
        } else {
            ShiftSpec::Full { degree: s.degree, weight: s.weight }
        }
    }
}

/// Homological degrees are JSON object keys.
fn degree(key: &str) -> Result<i64> {
    key.trim().parse().map_err(|_| Error::Parse(format!("`{key}` is not a homological degree")))
}

fn free(ring: &Arc<MonomialRing>, shifts: &[ShiftSpec]) -> FreeGradedModule {
    FreeGradedModule::new(ring.clone(), shifts.iter().map(|s| s.shift()).collect())
}

fn shifts_of(m: &FreeGradedModule) -> Vec<ShiftSpec> {
    m.shifts().iter().map(|s| ShiftSpec::of(*s)).collect()
}

/// A matrix `F(cols) → F(rows)`; `entries[i][j]` is row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: Vec<ShiftSpec>,
    pub cols: Vec<ShiftSpec>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub over: RingSpec,
    pub presentation: MatrixSpec,
}

impl ModuleSpec {
    pub fn build(&self) -> Result<PresentedModule> {
        let ring = self.over.build_single()?;
        let p = &self.presentation;
        let m = GradedMatrix::parse(free(&ring, &p.cols), free(&ring, &p.rows), Shift::ZERO, &p.entries)?;
        PresentedModule::new(m)
    }

    pub fn of(m: &PresentedModule) -> Self {
        let p = m.presentation();
        ModuleSpec {
            over: RingSpec::Single(MonomialRingSpec::of(m.ring())),
            presentation: MatrixSpec {
                rows: shifts_of(p.target()),
                cols: shifts_of(p.source()),
                entries: p.format_entries(),
            },
        }
    }
}

/// `terms[n]` lists the shifts of `X_n`; `differentials[n]` the entries of
/// `d_n : X_n → X_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<RingSpec>,
    pub terms: BTreeMap<String, Vec<ShiftSpec>>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<String>>>,
}

impl ComplexSpec {
    /// `ring` is used when the spec has no `over` field.
    pub fn build(&self, ring: Option<&Arc<MonomialRing>>) -> Result<ChainComplex> {
        let ring = match (&self.over, ring) {
            (Some(spec), _) => spec.build_single()?,
            (None, Some(r)) => r.clone(),
            (None, None) => return Err(Error::Parse("complex has no `over` ring".into())),
        };
        let mut terms = BTreeMap::new();
        for (n, s) in &self.terms {
            terms.insert(degree(n)?, free(&ring, s));
        }
        let term = |n: i64| terms.get(&n).cloned().unwrap_or_else(|| FreeGradedModule::zero(ring.clone()));
        let mut diffs = BTreeMap::new();
        for (n, rows) in &self.differentials {
            let n = degree(n)?;
            diffs.insert(n, GradedMatrix::parse(term(n), term(n - 1), Shift::ZERO, rows)?);
        }
        let x = ChainComplex::new(ring, terms, diffs)?;
        x.validate()?;
        Ok(x)
    }

    pub fn of(x: &ChainComplex, id: Option<&str>, with_ring: bool) -> Self {
        ComplexSpec {
            id: id.map(str::to_string),
            over: with_ring.then(|| RingSpec::Single(MonomialRingSpec::of(x.ring()))),
            terms: x.terms().iter().map(|(n, m)| (n.to_string(), shifts_of(m))).collect(),
            differentials: x.differentials().iter().map(|(n, d)| (n.to_string(), d.format_entries())).collect(),
        }
    }
}

/// A chain map between catalog complexes named by id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    pub components: BTreeMap<String, Vec<Vec<String>>>,
}

impl MapSpec {
    pub fn build(&self, cat: &Catalog) -> Result<ChainMap> {
        let lookup = |id: &str| cat.object(id).cloned().ok_or_else(|| Error::Parse(format!("unknown complex `{id}`")));
        let (s, t) = (lookup(&self.source)?, lookup(&self.target)?);
        let mut comps = BTreeMap::new();
        for (n, rows) in &self.components {
            let n = degree(n)?;
            comps.insert(n, GradedMatrix::parse(s.term(n), t.term(n), Shift::ZERO, rows)?);
        }
        ChainMap::new(s, t, comps)
    }

    pub fn of(f: &ChainMap, id: &str, source: &str, target: &str) -> Self {
        MapSpec {
            id: id.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            components: f.components().iter().map(|(n, m)| (n.to_string(), m.format_entries())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalogEntry {
    Complex(ComplexSpec),
    Map(MapSpec),
}

/// One factor of `A`: an explicit target ring with generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub target: MonomialRingSpec,
    #[serde(default)]
    pub map: BTreeMap<String, String>,
}

/// A theory is given by one of: `map` (images in the base ring, where
/// generators sent to `0` are killed), `localize` (a product of
/// localizations) or `components`. None of them means the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheorySpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub localize: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<bool>,
}

impl TheorySpec {
    pub fn build(&self, base: &Arc<MonomialRing>, w: i64) -> Result<HomologyTheory> {
        let given = [self.map.is_some(), self.localize.is_some(), self.components.is_some()];
        if given.iter().filter(|g| **g).count() > 1 {
            return Err(Error::Parse(format!("theory `{}`: give one of map, localize, components", self.name)));
        }
        let h = if let Some(images) = &self.map {
            let killed: Vec<&str> = images.iter().filter(|(_, v)| v.trim() == "0").map(|(k, _)| k.as_str()).collect();
            let target = base.with_relations(&killed)?;
            let pairs: Vec<(String, String)> = images.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            HomologyTheory::new(&self.name, base.clone(), vec![RingMap::from_strings(base, &target, &pairs)?], w)?
        } else if let Some(gens) = &self.localize {
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            HomologyTheory::localizations(&self.name, base.clone(), &gens, w)?
        } else if let Some(comps) = &self.components {
            let maps = comps
                .iter()
                .map(|c| {
                    let pairs: Vec<(String, String)> = c.map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                    RingMap::from_strings(base, &c.target.build()?, &pairs)
                })
                .collect::<Result<Vec<_>>>()?;
            HomologyTheory::new(&self.name, base.clone(), maps, w)?
        } else {
            HomologyTheory::identity(&self.name, base.clone(), w)?
        };
        Ok(match self.flat {
            Some(f) => h.with_flatness(f),
            None => h,
        })
    }
}

/// A `cover_pullback` request under a named theory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackSpec {
    pub theory: String,
    pub p: String,
    pub f: String,
}

fn default_w() -> i64 {
    10
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteJob {
    pub base: RingSpec,
    pub theories: Vec<TheorySpec>,
    pub catalog: Vec<CatalogEntry>,
    #[serde(rename = "W", default = "default_w")]
    pub w: i64,
    #[serde(default)]
    pub ops: Vec<String>,
    /// Closure depth applied to the catalog before classification.
    #[serde(default)]
    pub depth: usize,
    #[serde(default)]
    pub pullbacks: Vec<PullbackSpec>,
}

impl SiteJob {
    pub fn base_ring(&self) -> Result<Arc<MonomialRing>> {
        self.base.build_single()
    }

    pub fn theories(&self, base: &Arc<MonomialRing>) -> Result<Vec<HomologyTheory>> {
        self.theories.iter().map(|t| t.build(base, self.w)).collect()
    }

    /// Complexes first, then maps, in file order.
    pub fn catalog(&self, base: &Arc<MonomialRing>) -> Result<Catalog> {
        let mut cat = Catalog::new();
        for (k, e) in self.catalog.iter().enumerate() {
            if let CatalogEntry::Complex(c) = e {
                let id = c.id.clone().unwrap_or_else(|| format!("X{k}"));
                let x = c.build(Some(base))?;
                if x.ring() != base {
                    return Err(Error::RingMismatch(format!("complex `{id}` is not over the base ring")));
                }
                cat.add_object(&id, x);
            }
        }
        for e in &self.catalog {
            if let CatalogEntry::Map(m) = e {
                cat.add_map(&m.id, m.build(&cat)?);
            }
        }
        Ok(cat)
    }
}
