//! Entropy functionals: von Neumann, Shannon and relative entropy.

use crate::density::DensityMatrix;
use crate::eigen::eig_hermitian;
use crate::error::{Error, Result};
use crate::matrix::Complex64;
use crate::tolerance;

/// Logarithm base for all information quantities. Every identity in this
/// crate is base-invariant; bits give round reference numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

impl LogBase {
    /// Conversion factor from natural-log units.
    #[inline]
    pub fn from_nats(&self, nats: f64) -> f64 {
        match self {
            LogBase::Bits => nats / std::f64::consts::LN_2,
            LogBase::Nats => nats,
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBase::Bits => write!(f, "bits"),
            LogBase::Nats => write!(f, "nats"),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bits" => Ok(LogBase::Bits),
            "nats" => Ok(LogBase::Nats),
            other => Err(Error::InvalidParameter(format!(
                "log base must be 'bits' or 'nats', got '{other}'"
            ))),
        }
    }
}

/// `-sum lambda ln lambda` over clipped eigenvalues, in nats.
fn entropy_of_spectrum_nats(eigenvalues: &[f64]) -> f64 {
    let mut s = 0.0;
    for &lambda in eigenvalues {
        // density-matrix spectra live in [0, 1]; clip numerical stragglers
        let l = lambda.clamp(0.0, 1.0);
        if l > 0.0 {
            s -= l * l.ln();
        }
    }
    s
}

/// Von Neumann entropy `S(rho) = -tr(rho log rho)`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> f64 {
    base.from_nats(entropy_of_spectrum_nats(&rho.spectral().eigenvalues))
}

/// Shannon entropy of a probability vector, with `0 log 0 := 0`.
pub fn shannon_entropy(weights: &[f64], base: LogBase) -> Result<f64> {
    let mut sum = 0.0;
    for &w in weights {
        if w < 0.0 {
            return Err(Error::InvalidWeights(format!("negative weight {w}")));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > tolerance::UNIT_TRACE {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {sum}, expected 1"
        )));
    }
    let mut h = 0.0;
    for &w in weights {
        if w > 0.0 {
            h -= w * w.ln();
        }
    }
    Ok(base.from_nats(h))
}

/// Relative entropy `S(rho || sigma) = tr(rho log rho) - tr(rho log sigma)`,
/// computed from both spectral decompositions restricted to the support of
/// `sigma`.
///
/// Eigenvalues of `sigma` below the rank cutoff count as exactly zero; if the
/// weight of `rho` outside that support exceeds the leak tolerance the call
/// fails with a support error rather than returning infinity.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix, base: LogBase) -> Result<f64> {
    relative_entropy_with_cutoff(rho, sigma, base, tolerance::RANK_CUTOFF, tolerance::SUPPORT_LEAK)
}

pub fn relative_entropy_with_cutoff(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    base: LogBase,
    rank_cutoff: f64,
    support_leak: f64,
) -> Result<f64> {
    if rho.total_dim() != sigma.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "total dimensions differ: {} vs {}",
            rho.total_dim(),
            sigma.total_dim()
        )));
    }
    let rho_spec = eig_hermitian(rho.mat())?;
    let sigma_spec = eig_hermitian(sigma.mat())?;

    // weight of rho along every eigenvector of sigma
    let n = rho.total_dim();
    let v = &sigma_spec.eigenvectors;
    let mut escaped = 0.0;
    let mut cross_nats = 0.0;
    for (j, &s) in sigma_spec.eigenvalues.iter().enumerate() {
        let mut q = 0.0;
        for row in 0..n {
            let mut amp = Complex64::new(0.0, 0.0);
            for col in 0..n {
                amp += rho.mat().get(row, col) * v.get(col, j);
            }
            q += (v.get(row, j).conj() * amp).re;
        }
        let q = q.max(0.0);
        if s > rank_cutoff {
            cross_nats += q * s.ln();
        } else {
            escaped += q;
        }
    }
    if escaped > support_leak {
        return Err(Error::SupportNotContained { mass: escaped });
    }

    let minus_s_rho_nats = -entropy_of_spectrum_nats(&rho_spec.eigenvalues);
    Ok(base.from_nats(minus_s_rho_nats - cross_nats))
}
