//! Projective Laurent matrices, the semidirect automorphism group with its
//! complex-conjugation action, and the cocycle predicates built on it.

mod matrix;
mod proj;
mod semidirect;

pub use matrix::{j_matrix, mat2, LMat, LMat2, LMat3};
pub use proj::{proj_normalize, ProjElem2};
pub use semidirect::{
    diag_invariant, galois_act, is_cocycle, is_gamma_invariant, j_twisted_invariant, sd_mul,
    twisted_conj, SemidirectElem,
};
