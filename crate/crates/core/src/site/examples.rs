use std::sync::Arc;

use super::catalog::Catalog;
use super::theory::HomologyTheory;
use crate::complex::{ChainComplex, ChainMap};
use crate::error::Result;
use crate::gmod::{FreeGradedModule, GradedMatrix, Shift};
use crate::gring::MonomialRing;

/// The node `Q[x,y]/(xy)` with its two theories `A = R/y` and
/// `R′ = R_x × R_y`, and seeds `{R, R(1)², K(y)}` with maps `p = (x y)`
/// and `y`.
pub struct NodeSite {
    pub base: Arc<MonomialRing>,
    pub quotient: HomologyTheory,
    pub localizations: HomologyTheory,
    pub seeds: Catalog,
}

pub fn node_site(truncation: i64) -> Result<NodeSite> {
    let base = Arc::new(MonomialRing::polynomial(&["x", "y"]).with_relations(&["x*y"])?);
    let quotient = HomologyTheory::quotient("A", base.clone(), &["y"], truncation)?.with_flatness(false);
    let localizations = HomologyTheory::localizations("R'", base.clone(), &["x", "y"], truncation)?.with_flatness(true);
    let unit = ChainComplex::unit(base.clone());
    let line = FreeGradedModule::line(base.clone(), Shift::ZERO);
    let p = GradedMatrix::from_target(line.clone(), vec![vec![base.parse("x")?, base.parse("y")?]])?;
    let y = GradedMatrix::from_target(line, vec![vec![base.parse("y")?]])?;
    let mut seeds = Catalog::new();
    seeds.add_object("R", unit);
    seeds.add_object("R(1)^2", ChainComplex::concentrated(p.source().clone(), 0));
    seeds.add_object("K(y)", ChainComplex::two_term(y.clone(), 1)?);
    seeds.add_map("p", ChainMap::in_degree(p, 0));
    seeds.add_map("y", ChainMap::in_degree(y, 0));
    Ok(NodeSite { base, quotient, localizations, seeds })
}
