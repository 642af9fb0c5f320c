// SPDX-License-Identifier: Apache-2.0

//! Smallest enclosing Euclidean ball of a finite vector set, known only
//! through its Gram matrix.
//!
//! Solves the dual quadratic program
//!
//! ```text
//! maximize   Σ λ_i |w_i|² - |Σ λ_i w_i|²   over the probability simplex
//! ```
//!
//! by a primal active-set method. Any feasible `λ` gives a lower bound on the
//! squared radius (weak duality), and at the optimum `Σ λ_i w_i` is the center.

use crate::linalg::real_symmetric_eigen;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DualBall {
    /// Convex weights; the ball center is `Σ weights[i] · w_i`.
    pub weights: Vec<f64>,
    /// Dual objective at `weights`, a certified lower bound on the squared radius.
    pub radius_sq: f64,
}

fn dual_value(gram: &[f64], m: usize, lambda: &[f64]) -> f64 {
    let mut linear = 0.0;
    let mut quad = 0.0;
    for i in 0..m {
        if lambda[i] == 0.0 {
            continue;
        }
        linear += lambda[i] * gram[i * m + i];
        for j in 0..m {
            quad += lambda[i] * gram[i * m + j] * lambda[j];
        }
    }
    (linear - quad).max(0.0)
}

/// Orthonormal basis of `{p ∈ R^k : Σ p = 0}` (Helmert contrasts), column-major.
fn helmert(k: usize) -> Vec<Vec<f64>> {
    (1..k)
        .map(|j| {
            let norm = ((j * (j + 1)) as f64).sqrt();
            let mut col = vec![0.0; k];
            for v in col.iter_mut().take(j) {
                *v = 1.0 / norm;
            }
            col[j] = -(j as f64) / norm;
            col
        })
        .collect()
}

pub(crate) fn enclosing_ball_dual(gram: &[f64], m: usize) -> DualBall {
    assert_eq!(gram.len(), m * m);
    if m == 0 {
        return DualBall {
            weights: Vec::new(),
            radius_sq: 0.0,
        };
    }
    let diag: Vec<f64> = (0..m).map(|i| gram[i * m + i]).collect();
    let scale = diag.iter().copied().fold(0.0, f64::max);
    let start = diag
        .iter()
        .enumerate()
        .fold(0, |best, (i, &d)| if d > diag[best] { i } else { best });
    let mut lambda = vec![0.0; m];
    lambda[start] = 1.0;
    if scale == 0.0 {
        return DualBall {
            weights: lambda,
            radius_sq: 0.0,
        };
    }

    let kkt_tol = 1e-14 * scale;
    let mut free = vec![start];
    let mut stationary = true;
    let max_steps = 40 * m + 200;

    for _ in 0..max_steps {
        // gradient of f(λ) = λᵀGλ - dᵀλ
        let grad: Vec<f64> = (0..m)
            .map(|i| {
                let gl: f64 = free.iter().map(|&j| gram[i * m + j] * lambda[j]).sum();
                2.0 * gl - diag[i]
            })
            .collect();

        if stationary {
            let mu = -free.iter().map(|&i| grad[i]).sum::<f64>() / free.len() as f64;
            let mut entering = None;
            let mut worst = -kkt_tol;
            for i in 0..m {
                if free.contains(&i) {
                    continue;
                }
                let reduced = grad[i] + mu;
                if reduced < worst {
                    worst = reduced;
                    entering = Some(i);
                }
            }
            match entering {
                Some(i) => {
                    free.push(i);
                    stationary = false;
                    continue;
                }
                None => break,
            }
        }

        let k = free.len();
        if k == 1 {
            stationary = true;
            continue;
        }
        let basis = helmert(k);
        let r = k - 1;
        // reduced Hessian Zᵀ(2G_FF)Z and reduced gradient Zᵀg_F
        let mut gz = vec![0.0; k * r];
        for a in 0..k {
            for (c, col) in basis.iter().enumerate() {
                gz[a * r + c] = (0..k).map(|b| 2.0 * gram[free[a] * m + free[b]] * col[b]).sum();
            }
        }
        let mut hess = vec![0.0; r * r];
        for (c1, col) in basis.iter().enumerate() {
            for c2 in 0..r {
                hess[c1 * r + c2] = (0..k).map(|a| col[a] * gz[a * r + c2]).sum();
            }
        }
        let rgrad: Vec<f64> = basis
            .iter()
            .map(|col| (0..k).map(|a| col[a] * grad[free[a]]).sum())
            .collect();
        let (vals, vecs) = real_symmetric_eigen(&hess, r);
        let hmax = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let curv_tol = 1e-12 * hmax.max(scale);

        let mut newton = vec![0.0; r];
        let mut flat = vec![0.0; r];
        for (e, &h) in vals.iter().enumerate() {
            let q: f64 = (0..r).map(|i| vecs[i * r + e] * rgrad[i]).sum();
            for i in 0..r {
                if h > curv_tol {
                    newton[i] -= q / h * vecs[i * r + e];
                } else {
                    flat[i] -= q * vecs[i * r + e];
                }
            }
        }
        let flat_norm = flat.iter().map(|v| v * v).sum::<f64>().sqrt();
        let unbounded = flat_norm > 1e-13 * scale;
        let reduced_step = if unbounded { flat } else { newton };
        let step: Vec<f64> = (0..k)
            .map(|a| basis.iter().zip(&reduced_step).map(|(col, y)| col[a] * y).sum())
            .collect();

        let mut alpha = if unbounded { f64::INFINITY } else { 1.0 };
        let mut blocking = None;
        for (a, &p) in step.iter().enumerate() {
            if p < 0.0 {
                let ratio = -lambda[free[a]] / p;
                if ratio < alpha {
                    alpha = ratio;
                    blocking = Some(a);
                }
            }
        }
        if !alpha.is_finite() {
            // no descent possible along a zero-curvature ray
            stationary = true;
            continue;
        }
        for (a, &p) in step.iter().enumerate() {
            lambda[free[a]] += alpha * p;
        }
        match blocking {
            Some(a) => {
                lambda[free[a]] = 0.0;
                free.remove(a);
                free.retain(|&i| {
                    if lambda[i] <= 0.0 {
                        lambda[i] = 0.0;
                        false
                    } else {
                        true
                    }
                });
                if free.is_empty() {
                    // numerically degenerate; restart from the farthest vector
                    lambda.iter_mut().for_each(|l| *l = 0.0);
                    lambda[start] = 1.0;
                    free.push(start);
                }
                stationary = free.len() == 1;
            }
            None => stationary = true,
        }
    }

    for l in lambda.iter_mut() {
        if *l < 0.0 {
            *l = 0.0;
        }
    }
    let total: f64 = lambda.iter().sum();
    lambda.iter_mut().for_each(|l| *l /= total);
    let radius_sq = dual_value(gram, m, &lambda);
    DualBall {
        weights: lambda,
        radius_sq,
    }
}
