//! Two-interval bounds for `f(t) = (t, 1)` on `[0, 1]` across split points:
//! the Bessel-based value, the tuned free-matrix value and the convexified
//! matrices with `Y = 𝒲/2`.

use delaybounds::function_spaces::{exact_energy, split_moments, Basis, Space, VectorPolynomial};
use delaybounds::two_interval::{
    convexified_bound, dbbi_bound, dsfmb_bound, erc_feasible, omega_merc, omega_rcc, omega_serc,
    optimal_fmb_params, SplitGeometry, WeightLadder, FEASIBILITY_TOL,
};
use nalgebra::DMatrix;

fn main() -> delaybounds::Result<()> {
    let space = Space::continuous(0.0, 1.0)?;
    let f = VectorPolynomial::from_coeffs(vec![vec![0.0, 1.0], vec![1.0]])?;
    let weight = DMatrix::identity(2, 2);
    let ladder = WeightLadder::new(&weight, 1)?;
    let y = ladder.matrix() * 0.5;
    let zero = DMatrix::zeros(ladder.size(), ladder.size());
    let cert = erc_feasible(&zero, &zero, &y, &y, &ladder, FEASIBILITY_TOL)?;
    println!("exact {:.6}; Y feasible: {} (min eigenvalue {:.3})",
        exact_energy(&space, &f, &weight)?, cert.passed, cert.min_eigenvalue());
    println!("{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}", "alpha", "dbbi", "ds-fmb", "serc", "merc", "rcc");
    for k in 1..10 {
        let c = k as f64 / 10.0;
        let (d1, d2) = space.split(c)?;
        let w = split_moments((&d1, &d2), (&Basis::build(&d1, 1)?, &Basis::build(&d2, 1)?), &f)?;
        let g = SplitGeometry::new(0.0, c, 1.0)?;
        let (n1, n2) = optimal_fmb_params(&w, &g, &ladder)?;
        println!(
            "{:>6.2} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>9.6}",
            g.alpha,
            dbbi_bound(&w, &g, &ladder)?,
            dsfmb_bound(&w, &g, &n1, &n2, &ladder)?,
            convexified_bound(&w, &omega_serc(g.alpha, &y, &y, &ladder)?, g.h)?,
            convexified_bound(&w, &omega_merc(g.alpha, &y, &ladder)?, g.h)?,
            convexified_bound(&w, &omega_rcc(&y, &ladder)?, g.h)?,
        );
    }
    Ok(())
}
