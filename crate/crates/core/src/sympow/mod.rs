//! Super linear algebra on tensor powers: Koszul-signed permutation
//! actions, (anti)symmetrizers, rectangular Young symmetrizers and
//! symmetric powers of free module types.

mod operator;
mod perm;
mod space;
mod types;

pub use operator::{
    antisymmetrizer, identity_factorization, operator_is_zero, quasi_idempotence, symmetrizer, young_symmetrizer,
    Combination, FactorizationReport, SignedPermutationOperator, SymBounds, SymReport, Terms, YoungShape,
};
pub use perm::{koszul_sign, Perm};
pub use space::{BasisElement, SuperSpace, TensorWord};
pub use types::{adams_stage_types, sym_type, type_of, AdamsStageEntry, TypeEntry};
