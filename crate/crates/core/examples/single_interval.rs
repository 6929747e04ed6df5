//! The single-interval family on `f(t) = (t^2, 0)` over `[0, 1]` with `ν = 1`:
//! a feasible GFMB choice, the tuned S-GFMB and S-FMB parameters and the
//! Bessel-based value `7/36` they reach.

use delaybounds::function_spaces::{exact_energy, moments, Basis, Segment, Space, VectorPolynomial};
use delaybounds::single_interval::{
    bbi_bound, gfmb_bound, optimal_bbi_params, sfmb_bound, sgfmb_bound, FreeParams, PsiMatrix,
    WeightBlockMatrix,
};
use nalgebra::{DMatrix, DVector};

fn main() -> delaybounds::Result<()> {
    let space = Space::continuous(0.0, 1.0)?;
    let basis = Basis::build(&space, 1)?;
    let f = VectorPolynomial::from_coeffs(vec![vec![0.0, 0.0, 1.0], vec![0.0]])?;
    let weight = DMatrix::identity(2, 2);
    let w = moments(&space, &basis, &f)?;
    let weights = WeightBlockMatrix::single(basis.norms(), &weight)?;

    let exact = exact_energy(&space, &f, &weight)?;
    let bbi = bbi_bound(&w, &weights, Segment::First)?;
    println!("exact  {exact:.6}");
    println!("bbi    {bbi:.6} (7/36 = {:.6})", 7.0 / 36.0);

    // any N with Z_kl = N_k W⁻¹ N_lᵀ keeps Ψ on the PSD boundary
    let n_blocks = vec![
        DMatrix::from_row_slice(4, 2, &[-1.0, 0.0, 0.0, -0.5, 0.2, 0.0, 0.0, 0.1]),
        DMatrix::from_row_slice(4, 2, &[0.0, 0.3, -0.4, 0.0, -2.0, 0.0, 0.0, 0.0]),
    ];
    let psi = PsiMatrix::minimal(n_blocks, weight.clone())?;
    let chi = DVector::from_column_slice(&[0.1, 0.0, 0.05, 0.02]);
    let gfmb = gfmb_bound(&psi, basis.norms(), &FreeParams::new(chi.clone(), Segment::First), &w)?;
    println!("gfmb   {gfmb:.6} (untuned)");

    let n = optimal_bbi_params(&w, &weights, &chi, Segment::First)?;
    println!("sgfmb  {:.6} (tuned for chi)", sgfmb_bound(&n, &chi, &w, &weights)?);
    let n = optimal_bbi_params(&w, &weights, &w.stacked(), Segment::First)?;
    println!("sfmb   {:.6} (chi = w)", sfmb_bound(&n, &w, &weights)?);
    Ok(())
}
