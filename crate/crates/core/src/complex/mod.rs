//! Bounded chain complexes of free graded modules: shifts, duals, cones,
//! tensor products, base change, slice homology, monomial resolutions and
//! Tor.

mod chain;
mod homology;
mod resolution;

pub use chain::{
    cone, cone_inclusion, cone_projection, fiber, fiber_projection, summand_projection, ChainComplex, ChainMap,
};
pub use homology::{
    check_truncation, exact_at, homology, homology_cokernel, homology_module, homology_report, induced_slice_map, slice_homology,
    surjective_on_homology, GeneratorAction, HomologyEntry, HomologyReport, SliceHomology,
};
pub use resolution::{cyclic_resolution, tor, Resolution, TorReport};
