//! The two-matrix family `M`, `A` over the parameter ring, its fibres, the
//! embedding into `PGL_3` acting on `Y_n`, and the checks at `t = 0`.

mod build;
mod embed;
mod torus;

pub use build::{
    build_a, build_m, build_p_h, family_a_matrix, family_m_matrix, family_matrices,
    fiber_element, fiber_matrices, h_of, is_on_xn, verify_identities, FamilySpec,
    IdentityReport, Mutation,
};
pub use embed::{
    embed_n, embed_n_matrix, normalize_point, preserves_yn, rank, restrict_t0, T0Restriction,
    YnCheck,
};
pub use torus::{torus_and_trivialization_check, TorusReport};
