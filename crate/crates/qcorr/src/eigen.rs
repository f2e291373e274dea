//! Hermitian eigendecomposition, range projectors and support tests.
//!
//! The solver is a cyclic Jacobi iteration adapted to complex Hermitian input.
//! Each rotation annihilates one off-diagonal entry `a_pq` with a unitary plane
//! rotation: a phase factor first makes the targeted entry real, then the
//! classical symmetric Jacobi rotation zeroes it. The off-diagonal Frobenius
//! mass decreases monotonically and the iteration converges quadratically, so
//! a handful of sweeps reaches machine-level reconstruction error. The
//! contract is the reconstruction bound, not the method.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tolerance;

/// Eigenvalues (descending) and matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &lambda) in self.eigenvalues.iter().enumerate() {
                acc += v.get(i, k) * v.get(j, k).conj() * lambda;
            }
            acc
        })
    }

    /// Number of eigenvalues above `cutoff`.
    pub fn rank(&self, cutoff: f64) -> usize {
        self.eigenvalues.iter().filter(|&&x| x > cutoff).count()
    }
}

const MAX_SWEEPS: usize = 100;
const CONVERGENCE: f64 = 1e-14;

/// Eigendecomposition of a Hermitian matrix.
///
/// Rejects non-square input and matrices whose Hermitian defect exceeds the
/// construction tolerance; the reported error carries the Frobenius defect.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    a.check_hermitian(tolerance::HERMITICITY)?;
    let n = a.rows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![],
            eigenvectors: ComplexMatrix::zeros(0, 0),
        });
    }

    let mut m = a.clone();
    m.hermitize();
    let scale = m.frobenius_norm().max(1.0);
    let mut v = ComplexMatrix::identity(n);
    let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m.get(p, q).norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= CONVERGENCE * scale {
            break;
        }

        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let beta = m.get(p, q);
                let beta_abs = beta.norm();
                if beta_abs == 0.0 {
                    continue;
                }
                // unit phase making a_pq real positive
                let u = beta.conj() / beta_abs;

                let theta = (d[q] - d[p]) / (2.0 * beta_abs);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let h = t * beta_abs;

                d[p] -= h;
                d[q] += h;
                m.set(p, p, Complex64::new(d[p], 0.0));
                m.set(q, q, Complex64::new(d[q], 0.0));
                m.set(p, q, Complex64::new(0.0, 0.0));
                m.set(q, p, Complex64::new(0.0, 0.0));

                let uc = u.conj();
                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let apj = m.get(p, j);
                    let aqj = m.get(q, j);
                    let new_p = apj * c - aqj * uc * s;
                    let new_q = apj * s + aqj * uc * c;
                    m.set(p, j, new_p);
                    m.set(q, j, new_q);
                    m.set(j, p, new_p.conj());
                    m.set(j, q, new_q.conj());
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c - viq * u * s);
                    v.set(i, q, vip * s + viq * u * c);
                }
            }
        }
    }

    // sort descending, permuting eigenvector columns alongside
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).expect("eigenvalues are finite"));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Orthogonal projector onto the span of eigenvectors with eigenvalue above
/// `cutoff`.
pub fn range_projector(rho: &DensityMatrix, cutoff: f64) -> ComplexMatrix {
    let spectral = rho.spectral();
    let n = spectral.eigenvalues.len();
    let v = &spectral.eigenvectors;
    let mut p = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in spectral.eigenvalues.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        for i in 0..n {
            let vi = v.get(i, k);
            for j in 0..n {
                let add = vi * v.get(j, k).conj();
                p.set(i, j, p.get(i, j) + add);
            }
        }
    }
    p
}

/// Whether the support of `rho` lies inside the support of `sigma`:
/// `||(1 - P_sigma) rho (1 - P_sigma)||_F <= cutoff`.
pub fn support_contained(rho: &DensityMatrix, sigma: &DensityMatrix, cutoff: f64) -> Result<bool> {
    if rho.total_dim() != sigma.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "total dimensions differ: {} vs {}",
            rho.total_dim(),
            sigma.total_dim()
        )));
    }
    let p = range_projector(sigma, cutoff);
    let q = &ComplexMatrix::identity(p.rows()) - &p;
    let leak = q.matmul(rho.mat()).matmul(&q).frobenius_norm();
    Ok(leak <= cutoff)
}
