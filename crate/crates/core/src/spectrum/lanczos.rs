//! Smallest eigenpair of a symmetric operator by restarted Lanczos with full
//! reorthogonalization.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosOptions {
    /// Target for `||S x - theta x|| / ||x||`.
    pub tol: f64,
    /// Largest Krylov basis kept between restarts.
    pub max_dim: usize,
    pub max_restarts: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            tol: 1e-10,
            max_dim: 120,
            max_restarts: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Unit eigenvector of the symmetric operator.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Smallest eigenvalue of the symmetric `n x n` operator `apply`.
///
/// The start vector should overlap the bottom eigenvector; for Dirichlet
/// Laplacians a positive vector always does.
pub fn smallest_eigenpair(
    n: usize,
    apply: impl Fn(&[f64], &mut [f64]),
    start: Vec<f64>,
    opts: LanczosOptions,
) -> Result<Eigenpair> {
    assert!(
        n > 0 && start.len() == n,
        "start vector must match a nonempty operator"
    );
    let mut x = start;
    let s = norm(&x);
    x.iter_mut().for_each(|v| *v /= s);
    let mut w = vec![0.0; n];
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![x.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let dim = opts.max_dim.min(n);
        loop {
            let j = basis.len() - 1;
            apply(&basis[j], &mut w);
            iterations += 1;
            alpha.push(dot(&basis[j], &w));
            // Two passes of Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
                }
            }
            let b = norm(&w);
            let scale = alpha.iter().fold(1.0f64, |m, a| m.max(a.abs()));
            let breakdown = b <= 1e-13 * scale;
            if breakdown || basis.len() == dim {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|v| v / b).collect());
        }
        let k = alpha.len();
        let t = DMatrix::from_fn(k, k, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let (low, theta) = eig
            .eigenvalues
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let y = eig.eigenvectors.column(low);
        x.iter_mut().for_each(|v| *v = 0.0);
        for (b, &c) in basis.iter().zip(y.iter()) {
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += c * bi);
        }
        let s = norm(&x);
        x.iter_mut().for_each(|v| *v /= s);
        apply(&x, &mut w);
        iterations += 1;
        residual = w
            .iter()
            .zip(&x)
            .map(|(wi, xi)| (wi - theta * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= opts.tol {
            return Ok(Eigenpair {
                value: theta,
                vector: x,
                residual,
                iterations,
            });
        }
    }
    Err(Error::NoConvergence {
        residual,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_laplacian() {
        // Dirichlet path of length n: eigenvalues 2 - 2 cos(k pi/(n+1)).
        let n = 300;
        let apply = |x: &[f64], y: &mut [f64]| {
            for i in 0..n {
                let left = if i > 0 { x[i - 1] } else { 0.0 };
                let right = if i + 1 < n { x[i + 1] } else { 0.0 };
                y[i] = 2.0 * x[i] - left - right;
            }
        };
        let pair = smallest_eigenpair(n, apply, vec![1.0; n], LanczosOptions::default()).unwrap();
        let exact = 2.0 - 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
        assert!((pair.value - exact).abs() < 1e-12);
        assert!(pair.residual <= 1e-10);
    }

    #[test]
    fn gives_up_when_budget_is_tiny() {
        let n = 400;
        let apply = |x: &[f64], y: &mut [f64]| {
            for i in 0..n {
                let left = if i > 0 { x[i - 1] } else { 0.0 };
                let right = if i + 1 < n { x[i + 1] } else { 0.0 };
                y[i] = 2.0 * x[i] - left - right;
            }
        };
        let opts = LanczosOptions {
            tol: 1e-14,
            max_dim: 3,
            max_restarts: 2,
        };
        assert!(matches!(
            smallest_eigenpair(n, apply, vec![1.0; n], opts),
            Err(Error::NoConvergence { .. })
        ));
    }
}
