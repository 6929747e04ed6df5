//! Bounds over `[a, b]` split at `c`, where the moments of each half are
//! weighted by `1/α` and `1/β`, and the matrices that convexify them in `α`.

mod bounds;
mod geometry;
mod omega;
mod relations;
mod search;

pub use bounds::{convexified_bound, dbbi_bound, dsfmb_bound, optimal_fmb_params};
pub use geometry::{SplitGeometry, WeightLadder};
pub use omega::{
    erc_condition_matrix, erc_feasible, omega_b, omega_erc, omega_f, omega_merc, omega_mlsr,
    omega_rcc, omega_serc, rcc_feasible, serc_boundary, ErcCertificate, OmegaParams, ALPHA_MIN,
    FEASIBILITY_TOL,
};
pub use relations::{
    check_relation, relation_a_residual, serc_as_mlsr, Relation, RelationCase, RelationReport,
    BOUNDARY_TOL, IDENTITY_TOL,
};
pub use search::{counterexample_search, SearchKind, SearchOptions, Witness, WITNESS_MARGIN};
