//! Multipartite density matrices and partial traces.
//!
//! A state over subsystems `1..=N` with local dimensions `d_1..d_N` is stored
//! as a dense `D x D` matrix, `D = prod d_n`. The composite index of the basis
//! vector `|i_1 .. i_N>` is `sum_n i_n * prod_{m>n} d_m`, i.e. subsystem 1 is
//! the most significant digit. One fixed convention keeps partial-trace
//! results bit-reproducible.

use crate::eigen::{eig_hermitian, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

/// Composite-index strides for the given local dimensions.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for n in (0..dims.len().saturating_sub(1)).rev() {
        s[n] = s[n + 1] * dims[n + 1];
    }
    s
}

/// Composite offsets spanned by the subsystems in `subset` (0-based, sorted),
/// enumerated in lexicographic digit order.
pub(crate) fn subset_offsets(dims: &[usize], subset: &[usize]) -> Vec<usize> {
    let strides = strides(dims);
    let mut offsets = vec![0usize];
    for &n in subset {
        let mut next = Vec::with_capacity(offsets.len() * dims[n]);
        for &base in &offsets {
            for digit in 0..dims[n] {
                next.push(base + digit * strides[n]);
            }
        }
        offsets = next;
    }
    offsets
}

/// Validates and canonicalizes a 1-based subsystem selection into sorted
/// 0-based indices.
fn canonical_subsystems(selection: &[usize], n: usize) -> Result<Vec<usize>> {
    if selection.is_empty() {
        return Err(Error::InvalidSubsystems(
            "subsystem selection is empty".into(),
        ));
    }
    let mut idx: Vec<usize> = Vec::with_capacity(selection.len());
    for &s in selection {
        if s == 0 || s > n {
            return Err(Error::InvalidSubsystems(format!(
                "subsystem {s} out of range 1..={n}"
            )));
        }
        idx.push(s - 1);
    }
    idx.sort_unstable();
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSubsystems(format!(
            "duplicate subsystem in {selection:?}"
        )));
    }
    Ok(idx)
}

impl DensityMatrix {
    /// Validating constructor: checks shape, the dimension cap, Hermiticity,
    /// unit trace and positive semidefiniteness.
    pub fn new(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        Self::with_dim_cap(dims, mat, tolerance::DIM_CAP)
    }

    pub fn with_dim_cap(dims: Vec<usize>, mat: ComplexMatrix, cap: usize) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidDensity(format!(
                "local dimensions must all be >= 1, got {dims:?}"
            )));
        }
        let total: usize = dims.iter().product();
        if total > cap {
            return Err(Error::DimensionCap { dim: total, cap });
        }
        if mat.rows() != total || mat.cols() != total {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but dims {:?} give total dimension {}",
                mat.rows(),
                mat.cols(),
                dims,
                total
            )));
        }
        let state = Self { dims, mat };
        state.validate()?;
        Ok(state)
    }

    /// Re-checks all density-matrix invariants.
    pub fn validate(&self) -> Result<()> {
        self.mat.check_hermitian(tolerance::HERMITICITY)?;
        let tr = self.mat.trace();
        if (tr.re - 1.0).abs() > tolerance::UNIT_TRACE || tr.im.abs() > tolerance::UNIT_TRACE {
            return Err(Error::InvalidDensity(format!(
                "trace is {tr} instead of 1"
            )));
        }
        let spectral = eig_hermitian(&self.mat)?;
        if let Some(&min) = spectral
            .eigenvalues
            .iter()
            .min_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"))
        {
            if min < -tolerance::EIGENVALUE_FLOOR {
                return Err(Error::InvalidDensity(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// Constructor for matrices that are positive and unit-trace by
    /// construction (mixtures, reductions, tensor products of valid states).
    /// Only re-enforces exact Hermitian symmetry of the stored entries.
    pub(crate) fn from_trusted(dims: Vec<usize>, mut mat: ComplexMatrix) -> Self {
        debug_assert_eq!(mat.rows(), dims.iter().product::<usize>());
        mat.hermitize();
        Self { dims, mat }
    }

    /// Pure state `|psi><psi|` from amplitudes (normalized internally).
    pub fn from_pure(dims: Vec<usize>, amplitudes: &[Complex64]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if amplitudes.len() != total {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for total dimension {}",
                amplitudes.len(),
                total
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        let mat = ComplexMatrix::from_fn(total, total, |i, j| {
            amplitudes[i] * amplitudes[j].conj() / norm_sq
        });
        Ok(Self::from_trusted(dims, mat))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn purity(&self) -> f64 {
        self.mat.matmul(&self.mat).trace().re
    }

    pub fn spectral(&self) -> SpectralDecomposition {
        eig_hermitian(&self.mat).expect("stored density matrices are Hermitian")
    }

    /// Reduction to the given subsystems (1-based labels). The kept subsystems
    /// retain their original relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep_idx = canonical_subsystems(keep, self.dims.len())?;
        if keep_idx.len() == self.dims.len() {
            return Ok(self.clone());
        }
        let traced_idx: Vec<usize> = (0..self.dims.len())
            .filter(|n| !keep_idx.contains(n))
            .collect();

        let kept_offsets = subset_offsets(&self.dims, &keep_idx);
        let traced_offsets = subset_offsets(&self.dims, &traced_idx);
        let d_keep = kept_offsets.len();

        let mut out = ComplexMatrix::zeros(d_keep, d_keep);
        for (r, &row_base) in kept_offsets.iter().enumerate() {
            for (c, &col_base) in kept_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &t in &traced_offsets {
                    acc += self.mat.get(row_base + t, col_base + t);
                }
                out.set(r, c, acc);
            }
        }
        let new_dims: Vec<usize> = keep_idx.iter().map(|&n| self.dims[n]).collect();
        Ok(Self::from_trusted(new_dims, out))
    }

    /// Embeds `self` into a larger space: subsystem `n` occupies the
    /// coordinate window starting at `offsets[n]` inside a subsystem of
    /// dimension `big_dims[n]`. Entries outside the window are zero.
    pub fn embed(&self, big_dims: &[usize], offsets: &[usize]) -> Result<DensityMatrix> {
        if big_dims.len() != self.dims.len() || offsets.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "embed expects {} subsystems, got dims {:?} / offsets {:?}",
                self.dims.len(),
                big_dims,
                offsets
            )));
        }
        for n in 0..self.dims.len() {
            if offsets[n] + self.dims[n] > big_dims[n] {
                return Err(Error::InvalidBlocks(format!(
                    "subsystem {}: block of size {} at offset {} exceeds dimension {}",
                    n + 1,
                    self.dims[n],
                    offsets[n],
                    big_dims[n]
                )));
            }
        }
        let big_strides = strides(big_dims);
        let small_strides = strides(&self.dims);
        let d_small = self.total_dim();
        let map = |small_index: usize| -> usize {
            let mut rem = small_index;
            let mut big = 0usize;
            for n in 0..self.dims.len() {
                let digit = rem / small_strides[n];
                rem %= small_strides[n];
                big += (digit + offsets[n]) * big_strides[n];
            }
            big
        };
        let d_big: usize = big_dims.iter().product();
        let mut out = ComplexMatrix::zeros(d_big, d_big);
        for r in 0..d_small {
            let br = map(r);
            for c in 0..d_small {
                out.set(br, map(c), self.mat.get(r, c));
            }
        }
        Ok(Self::from_trusted(big_dims.to_vec(), out))
    }

    /// Conjugation `U rho U^dagger` by a unitary on the full space.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.rows() != self.total_dim() || u.cols() != self.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, state dimension is {}",
                u.rows(),
                u.cols(),
                self.total_dim()
            )));
        }
        let mat = u.matmul(&self.mat).matmul(&u.adjoint());
        Ok(Self::from_trusted(self.dims.clone(), mat))
    }
}
