// SPDX-License-Identifier: Apache-2.0

//! Seeded random matrices with controlled spectra.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{Complex, ComplexMatrix, PositiveDefiniteMatrix};

pub use rand::SeedableRng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary via Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    loop {
        let g = gaussian_matrix(rng, dim);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

fn orthonormalize_columns(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..n {
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..n {
                    let v = cols[k][i] * proj;
                    cols[j][i] -= v;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    Some(ComplexMatrix::from_fn(n, |i, j| cols[j][i]))
}

/// Positive definite matrix with log-uniform spectrum in
/// `[cond^{-1/2}, cond^{1/2}]` and Haar eigenvectors.
pub fn random_spd<R: Rng + ?Sized>(rng: &mut R, dim: usize, cond: f64) -> PositiveDefiniteMatrix {
    let half = 0.5 * cond.max(1.0).ln();
    let values: Vec<f64> = (0..dim).map(|_| rng.random_range(-half..=half).exp()).collect();
    let u = random_unitary(rng, dim);
    PositiveDefiniteMatrix::from_spectrum(u, values).expect("positive spectrum")
}

/// Invertible matrix `U S V*` with singular values log-spread exactly over
/// `[cond^{-1/2}, cond^{1/2}]`, so its condition number is `cond` (for
/// `dim > 1`).
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, dim: usize, cond: f64) -> ComplexMatrix {
    let u = random_unitary(rng, dim);
    let v = random_unitary(rng, dim);
    let half = 0.5 * cond.max(1.0).ln();
    let mut logs: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    let (lo, hi) = logs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    for l in logs.iter_mut() {
        let t = if hi > lo { (*l - lo) / (hi - lo) } else { 0.5 };
        *l = (2.0 * t - 1.0) * half;
    }
    let s = ComplexMatrix::from_fn(dim, |i, j| {
        if i == j {
            Complex::new(logs[i].exp(), 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    &(&u * &s) * &v.adjoint()
}
