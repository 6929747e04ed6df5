//! Moves a parameter set between bound variants without changing its value:
//! independent functions to an orthogonal basis, and an arbitrary `χ` to
//! `χ = w`.

use delaybounds::function_spaces::{moments, Basis, Segment, Space, VectorPolynomial};
use delaybounds::single_interval::{
    gfmb_bound, ifb_gfmb_bound, sfmb_bound, sfmb_from_sgfmb, sgfmb_bound, transform_ifb_to_gfmb,
    BasisChange, FreeMatrix, FreeParams, PsiMatrix, WeightBlockMatrix,
};
use nalgebra::{DMatrix, DVector};

fn main() -> delaybounds::Result<()> {
    let space = Space::continuous(-1.0, 1.0)?;
    let basis = Basis::build(&space, 2)?;
    let f = VectorPolynomial::from_coeffs(vec![vec![1.0, 0.0, -3.0, 2.0]])?;
    let weight = DMatrix::from_element(1, 1, 2.0);
    let w = moments(&space, &basis, &f)?;

    // p_0 = Π_0, p_1 = Π_1 + Π_0, p_2 = Π_2 - 0.5 Π_1
    let c = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, -0.5, 1.0]);
    let change = BasisChange::new(c, basis.norms())?;
    let w_tilde = change.transform_moments(&w)?;
    let phi = DMatrix::from_diagonal(&DVector::from_column_slice(&[0.2, 0.1, 0.3]));
    let n_blocks = vec![
        DMatrix::from_element(1, 1, -1.0),
        DMatrix::from_element(1, 1, 0.5),
        DMatrix::from_element(1, 1, -0.2),
    ];
    let psi = PsiMatrix::from_schur(&phi, n_blocks, weight.clone())?;
    let fp = FreeParams::new(DVector::from_element(1, 0.3), Segment::First);

    let ifb = ifb_gfmb_bound(&psi, &change, &fp, &w_tilde)?;
    let t = transform_ifb_to_gfmb(&psi, &change)?;
    let gfmb = gfmb_bound(&t.psi, basis.norms(), &fp, &w)?;
    println!("ifb-gfmb {ifb:.12}");
    println!("gfmb     {gfmb:.12} (transformed, min eigenvalue {:.3e})", t.certificate.min_eigenvalue);

    let weights = WeightBlockMatrix::single(basis.norms(), &weight)?;
    let core = DMatrix::from_row_slice(3, 3, &[-0.5, 0.1, 0.0, 0.2, -1.0, 0.3, 0.0, 0.0, -0.2]);
    let n = FreeMatrix::padded(&core, Segment::First, 1)?;
    let chi = DVector::from_column_slice(&[1.0, -2.0, 0.5]);
    let sgfmb = sgfmb_bound(&n, &chi, &w, &weights)?;
    let s = sfmb_from_sgfmb(&chi, &n, &w)?;
    let sfmb = sfmb_bound(&s.n_tilde, &w, &weights)?;
    println!("sgfmb    {sgfmb:.12}");
    println!("sfmb     {sfmb:.12} (eta {:.4}, |QᵀQ - I| {:.1e})", s.eta, s.orthogonality_error);
    Ok(())
}
