//! Orthogonal bases on an interval and on an integer range, projections of a
//! polynomial onto them and the exact weighted energy they are compared with.

use delaybounds::function_spaces::{exact_energy, moments, Basis, Space, VectorPolynomial};
use nalgebra::DMatrix;

fn describe(space: &Space, order: usize, f: &VectorPolynomial, w: &DMatrix<f64>) -> delaybounds::Result<()> {
    let basis = Basis::build(space, order)?;
    println!("{:?} on [{}, {}], measure {}", space.kind(), space.lower(), space.upper(), space.measure());
    for (k, (p, rho)) in basis.functions().iter().zip(basis.norms()).enumerate() {
        let mut worst = 0.0f64;
        for q in &basis.functions()[..k] {
            worst = worst.max(space.inner_product(p, q).abs());
        }
        println!("  Pi_{k}: |Pi|^2 = {rho:.6}, max |<Pi_{k}, Pi_j<{k}>| = {worst:.1e}");
    }
    let w_k = moments(space, &basis, f)?;
    println!("  moments {:?}", w_k.stacked().as_slice());
    println!("  <f, W f> = {:.6}", exact_energy(space, f, w)?);
    Ok(())
}

fn main() -> delaybounds::Result<()> {
    // f(t) = (t^2, 1 - t)
    let f = VectorPolynomial::from_coeffs(vec![vec![0.0, 0.0, 1.0], vec![1.0, -1.0]])?;
    let w = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
    describe(&Space::continuous(0.0, 2.0)?, 3, &f, &w)?;
    describe(&Space::discrete(0, 9)?, 3, &f, &w)?;
    Ok(())
}
