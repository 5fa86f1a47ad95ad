//! Finitely generated graded modules: free modules with shifts, homogeneous
//! matrices, exact kernels, presented modules and freeness certificates.

mod free;
mod groebner;
mod kernel;
mod presented;

pub(crate) use free::same_ring;
pub use free::{koszul_swap, tensor_map, FreeGradedModule, GradedMatrix, Shift};
pub use kernel::{
    columns_to_matrix, in_max_ideal, kernel, kernel_generators, lift, minimize, require_rational, slice_rank,
    submodule_slice, vector_degree, ModuleVector,
};
pub use presented::{
    adams_stage_check, free_rank_type, locally_free_witness, locally_free_witness_over, nakayama_is_zero,
    require_graded_local, spread_out, CoverPatch, FreenessCertificate, FreenessVerdict, LocallyFreeWitness,
    NakayamaReport, PresentedModule, SpreadOut,
};
