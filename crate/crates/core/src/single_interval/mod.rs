//! Single-interval bound family: GFMB, IFB-GFMB, S-GFMB, S-FMB and BBI,
//! the `Ψ` machinery, and the constructions showing they are equivalent.

mod bounds;
mod psi;
mod transforms;
mod weights;

pub use bounds::{
    bbi_bound, gfmb_bound, ifb_gfmb_bound, optimal_bbi_params, sfmb_bound, sgfmb_bound, PSI_TOL,
};
pub use psi::{split_free_matrix, PsiMatrix};
pub use transforms::{
    sfmb_from_sgfmb, transform_ifb_to_gfmb, BasisChange, GfmbTransform, SfmbTransform,
};
pub use weights::{FreeMatrix, FreeParams, WeightBlockMatrix};
