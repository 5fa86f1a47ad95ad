//! Homology theories given by base change, their duals and epimorphisms,
//! covers, and comparison of two theories on a catalog.

mod catalog;
mod cover;
mod examples;
mod theory;

pub use catalog::{
    catalog_closure, classify_catalog, compare_theories, Catalog, CatalogMap, CatalogObject, Discrepancy, MapEntry,
    MapPartition, ObjectEntry, SiteReport, CONDITION_I_VIOLATED, MAX_CATALOG_DEPTH, MAX_CATALOG_OBJECTS,
};
pub use cover::{
    cofiber_closure_check, cover_pullback, exactness_of_cover, CofiberReport, CoverExactness, CoverPullback,
    CoverPullbackReport,
};
pub use examples::{node_site, NodeSite};
pub use theory::{
    classify_dual, classify_epi, DegreeCertificate, DualCertificate, DualVerdict, EpiCertificate, EpiDegree,
    EpiVerdict, HomologyTheory, HomologyType, TheorySummary,
};
