//! Seeded random generators for matrices, functions and parameter sets.
//!
//! Every trial draws from its own ChaCha stream derived from `(seed, trial)`,
//! so results do not depend on evaluation order.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::function_spaces::{Polynomial, VectorPolynomial};
use crate::linalg;
use crate::two_interval::WeightLadder;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn uniform_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, scale: f64) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..=1.0) * scale)
}

pub fn uniform_vector<R: Rng>(rng: &mut R, len: usize, scale: f64) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.gen_range(-1.0..=1.0) * scale)
}

/// `AᵀA + 0.1 I` with `A` uniform in `[−1, 1]`.
pub fn random_weight<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let a = uniform_matrix(rng, n, n, 1.0);
    linalg::symmetrize(&(a.transpose() * &a + DMatrix::identity(n, n) * 0.1))
}

/// `GᵀG + εI`.
pub fn random_psd<R: Rng>(rng: &mut R, size: usize, eps: f64) -> DMatrix<f64> {
    let g = uniform_matrix(rng, size, size, 1.0);
    linalg::symmetrize(&(g.transpose() * &g + DMatrix::identity(size, size) * eps))
}

/// Symmetric matrix with a negative eigenvalue between `−1` and `−0.1`.
pub fn random_indefinite<R: Rng>(rng: &mut R, size: usize) -> DMatrix<f64> {
    let base = random_psd(rng, size, 1e-6);
    let v = uniform_vector(rng, size, 1.0).normalize();
    let lift = linalg::quad(&v, &base, &v) + rng.gen_range(0.1..=1.0);
    linalg::symmetrize(&(base - &v * v.transpose() * lift))
}

/// Invertible matrix with 2-norm condition number below `max_cond`.
pub fn random_invertible<R: Rng>(rng: &mut R, size: usize, max_cond: f64) -> DMatrix<f64> {
    loop {
        let c = uniform_matrix(rng, size, size, 1.0) + DMatrix::identity(size, size) * 0.5;
        if linalg::condition_number(&c) < max_cond {
            return c;
        }
    }
}

/// Matrix with spectral norm drawn uniformly from `(0, max_norm]`.
pub fn random_contraction<R: Rng>(rng: &mut R, size: usize, max_norm: f64) -> DMatrix<f64> {
    let k = uniform_matrix(rng, size, size, 1.0);
    let sigma = k.clone().singular_values().max();
    if sigma == 0.0 {
        return k;
    }
    let target = rng.gen_range(0.0..=1.0_f64).max(1e-3) * max_norm;
    k * (target / sigma)
}

/// `Y = L K Lᵀ` with `𝒲 = L Lᵀ`, `|K| ≤ 1`: exactly the `Y`'s that satisfy the
/// endpoint condition with `X_1 = X_2 = 0`, `Y_1 = Y_2 = Y`.
pub fn random_rcc_y<R: Rng>(rng: &mut R, ladder: &WeightLadder) -> DMatrix<f64> {
    let l = ladder
        .matrix()
        .clone()
        .cholesky()
        .expect("weight ladder is positive definite")
        .l();
    let k = random_contraction(rng, ladder.size(), 1.0);
    &l * k * l.transpose()
}

/// Entry scale for unconstrained free matrices.
pub fn ladder_scale(ladder: &WeightLadder) -> f64 {
    linalg::max_abs(ladder.matrix()).max(1e-3)
}

/// Feasible ERC parameters: arbitrary `Y`'s and `X`'s pushed below the
/// boundary by random PSD slack.
pub fn random_erc<R: Rng>(
    rng: &mut R,
    ladder: &WeightLadder,
) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let m1 = ladder.size();
    let s = ladder_scale(ladder);
    let y1 = uniform_matrix(rng, m1, m1, 0.5 * s);
    let y2 = uniform_matrix(rng, m1, m1, 0.5 * s);
    let (w, winv) = (ladder.matrix(), ladder.inverse());
    let slack1 = random_psd(rng, m1, 0.0) * (rng.gen_range(0.0..=1.0) * s / m1 as f64);
    let slack2 = random_psd(rng, m1, 0.0) * (rng.gen_range(0.0..=1.0) * s / m1 as f64);
    let x1 = linalg::symmetrize(&(w - &y1 * winv * y1.transpose() - slack1));
    let x2 = linalg::symmetrize(&(w - y2.transpose() * winv * &y2 - slack2));
    (x1, x2, y1, y2)
}

/// Random polynomial with `dim` coordinates of degree `degree`, coefficients
/// uniform in `[−1, 1]`, expanded around `center`.
pub fn random_function<R: Rng>(
    rng: &mut R,
    dim: usize,
    degree: usize,
    center: f64,
) -> VectorPolynomial {
    let comps = (0..dim)
        .map(|_| {
            let coeffs = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            Polynomial::centered(coeffs, center)
        })
        .collect();
    VectorPolynomial::new(comps).expect("degree within bounds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_interval::rcc_feasible;

    #[test]
    fn streams_are_deterministic() {
        let a = uniform_matrix(&mut trial_rng(1, 5), 3, 3, 1.0);
        let b = uniform_matrix(&mut trial_rng(1, 5), 3, 3, 1.0);
        let c = uniform_matrix(&mut trial_rng(1, 6), 3, 3, 1.0);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn weight_is_well_conditioned() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..50 {
            let w = random_weight(&mut rng, 3);
            assert!(linalg::psd_check(&w, 0.0).unwrap().min_eigenvalue >= 0.1 - 1e-12);
        }
    }

    #[test]
    fn indefinite_has_negative_eigenvalue() {
        let mut rng = trial_rng(4, 0);
        for _ in 0..50 {
            let a = random_indefinite(&mut rng, 5);
            assert!(linalg::psd_check(&a, 0.0).unwrap().min_eigenvalue < -0.09);
        }
    }

    #[test]
    fn rcc_samples_are_feasible() {
        let mut rng = trial_rng(9, 0);
        let ladder = WeightLadder::new(&random_weight(&mut rng, 2), 1).unwrap();
        for _ in 0..50 {
            let y = random_rcc_y(&mut rng, &ladder);
            assert!(rcc_feasible(&y, &ladder, 1e-9).unwrap().passed);
        }
    }
}
