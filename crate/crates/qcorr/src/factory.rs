//! Deterministic generators: random states, product states, block-orthogonal
//! mixtures and the product-component family satisfying equality in strong
//! subadditivity.
//!
//! Orthogonality between mixture components is realized on direct-sum blocks
//! in standard basis order: class `k` of a constrained subsystem occupies the
//! coordinates directly after classes `1..k-1`. Contiguous blocks keep
//! verification and serialization deterministic; a seeded local unitary can
//! hide the block structure for stress tests.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tolerance;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded deterministic random stream: identical seed, identical output
/// sequence across runs.
#[derive(Debug, Clone)]
pub struct Rng {
    stream: ChaCha8Rng,
    seed: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            stream: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn uniform(&mut self) -> f64 {
        self.stream.gen::<f64>()
    }

    /// Standard normal via Box-Muller.
    pub fn gaussian(&mut self) -> f64 {
        self.complex_gaussian().re
    }

    /// Complex number with independent standard-normal real and imaginary
    /// parts.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let u1 = loop {
            let x = self.stream.gen::<f64>();
            if x > 0.0 {
                break x;
            }
        };
        let u2 = self.stream.gen::<f64>();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(radius * angle.cos(), radius * angle.sin())
    }
}

/// A convex mixture of density matrices over identical subsystem dimensions.
#[derive(Debug, Clone)]
pub struct Mixture {
    weights: Vec<f64>,
    components: Vec<DensityMatrix>,
}

impl Mixture {
    pub fn new(weights: Vec<f64>, components: Vec<DensityMatrix>) -> Result<Self> {
        if weights.len() != components.len() || weights.is_empty() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} components",
                weights.len(),
                components.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w <= tolerance::MIN_WEIGHT) {
            return Err(Error::InvalidWeights(format!(
                "weight {w} is not strictly positive"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        let dims = components[0].dims().to_vec();
        if components.iter().any(|c| c.dims() != dims) {
            return Err(Error::DimensionMismatch(
                "mixture components have differing dims".into(),
            ));
        }
        Ok(Self {
            weights,
            components,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn components(&self) -> &[DensityMatrix] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        self.components[0].dims()
    }

    /// The mixed state `sum_k w_k rho^k`.
    pub fn mix(&self) -> DensityMatrix {
        let d = self.components[0].total_dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (w, comp) in self.weights.iter().zip(&self.components) {
            acc = &acc + &comp.mat().scale_re(*w);
        }
        DensityMatrix::from_trusted(self.dims().to_vec(), acc)
    }

    /// Largest Frobenius norm of `rho^k_C rho^{k'}_C` over component pairs,
    /// where `rho^k_C` is the reduction of component `k` to `cluster`.
    /// Zero certifies pairwise orthogonal supports on that cluster.
    pub fn max_cross_norm(&self, cluster: &[usize]) -> Result<f64> {
        let reductions: Vec<DensityMatrix> = self
            .components
            .iter()
            .map(|c| c.partial_trace(cluster))
            .collect::<Result<_>>()?;
        let mut max = 0.0f64;
        for k in 0..reductions.len() {
            for kp in (k + 1)..reductions.len() {
                let cross = reductions[k].mat().matmul(reductions[kp].mat());
                max = max.max(cross.frobenius_norm());
            }
        }
        Ok(max)
    }

    /// Applies the same unitary to every component.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Mixture> {
        let components = self
            .components
            .iter()
            .map(|c| c.conjugate(u))
            .collect::<Result<Vec<_>>>()?;
        Mixture::new(self.weights.clone(), components)
    }
}

/// Block dimensions per orthogonality-constrained subsystem: entry `s` lists
/// the class-`k` block sizes on subsystem `s`, which must fit inside the
/// subsystem dimension when summed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAllocation {
    per_subsystem: Vec<Vec<usize>>,
}

impl BlockAllocation {
    /// Allocation constraining both subsystems of a bipartite family.
    pub fn bipartite(blocks_first: Vec<usize>, blocks_second: Vec<usize>) -> Result<Self> {
        if blocks_first.len() != blocks_second.len() {
            return Err(Error::InvalidBlocks(format!(
                "{} classes on the first subsystem vs {} on the second",
                blocks_first.len(),
                blocks_second.len()
            )));
        }
        Self::validate_blocks(&blocks_first)?;
        Self::validate_blocks(&blocks_second)?;
        Ok(Self {
            per_subsystem: vec![blocks_first, blocks_second],
        })
    }

    /// Allocation constraining a single subsystem.
    pub fn single(blocks: Vec<usize>) -> Result<Self> {
        Self::validate_blocks(&blocks)?;
        Ok(Self {
            per_subsystem: vec![blocks],
        })
    }

    fn validate_blocks(blocks: &[usize]) -> Result<()> {
        if blocks.is_empty() {
            return Err(Error::InvalidBlocks("no classes".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidBlocks("block dimension 0".into()));
        }
        Ok(())
    }

    pub fn n_classes(&self) -> usize {
        self.per_subsystem[0].len()
    }

    pub fn n_constrained(&self) -> usize {
        self.per_subsystem.len()
    }

    pub fn blocks(&self, subsystem: usize) -> &[usize] {
        &self.per_subsystem[subsystem]
    }

    /// Starting offset of each class on each constrained subsystem, after
    /// checking that the blocks fit into `dims`.
    fn offsets(&self, dims: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut all = Vec::with_capacity(self.per_subsystem.len());
        for (s, blocks) in self.per_subsystem.iter().enumerate() {
            let needed: usize = blocks.iter().sum();
            if needed > dims[s] {
                return Err(Error::InvalidBlocks(format!(
                    "blocks {:?} need dimension {} but subsystem has {}",
                    blocks, needed, dims[s]
                )));
            }
            let mut offs = Vec::with_capacity(blocks.len());
            let mut acc = 0;
            for &b in blocks {
                offs.push(acc);
                acc += b;
            }
            all.push(offs);
        }
        Ok(all)
    }
}

/// Random density matrix of the requested rank: `G G^dagger / tr(G G^dagger)`
/// with `G` a `D x rank` matrix of independent standard complex Gaussians.
pub fn random_density(dims: &[usize], rank: usize, rng: &mut Rng) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidParameter(format!("bad dims {dims:?}")));
    }
    if total > tolerance::DIM_CAP {
        return Err(Error::DimensionCap {
            dim: total,
            cap: tolerance::DIM_CAP,
        });
    }
    if rank == 0 || rank > total {
        return Err(Error::InvalidParameter(format!(
            "rank {rank} out of range 1..={total}"
        )));
    }
    let g: Vec<Complex64> = (0..total * rank).map(|_| rng.complex_gaussian()).collect();
    let mut mat = ComplexMatrix::zeros(total, total);
    let mut trace = 0.0;
    for i in 0..total {
        for j in 0..total {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..rank {
                acc += g[i * rank + k] * g[j * rank + k].conj();
            }
            mat.set(i, j, acc);
            if i == j {
                trace += acc.re;
            }
        }
    }
    Ok(DensityMatrix::from_trusted(
        dims.to_vec(),
        mat.scale_re(1.0 / trace),
    ))
}

/// Random pure state (rank-1 special case).
pub fn random_pure(dims: &[usize], rng: &mut Rng) -> Result<DensityMatrix> {
    random_density(dims, 1, rng)
}

/// Tensor product of the factors, concatenating their subsystem dimensions.
pub fn product_state(factors: &[DensityMatrix]) -> Result<DensityMatrix> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidParameter("product of zero factors".into()))?;
    let mut dims = first.dims().to_vec();
    let mut mat = first.mat().clone();
    for factor in &factors[1..] {
        dims.extend_from_slice(factor.dims());
        mat = mat.kron(factor.mat());
    }
    let total: usize = dims.iter().product();
    if total > tolerance::DIM_CAP {
        return Err(Error::DimensionCap {
            dim: total,
            cap: tolerance::DIM_CAP,
        });
    }
    Ok(DensityMatrix::from_trusted(dims, mat))
}

/// Random unitary via modified Gram-Schmidt on a square complex Gaussian
/// matrix.
pub fn random_unitary(dim: usize, rng: &mut Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.complex_gaussian()).collect())
        .collect();
    for j in 0..dim {
        for i in 0..j {
            let proj: Complex64 = cols[i]
                .iter()
                .zip(&cols[j])
                .map(|(a, b)| a.conj() * b)
                .sum();
            let prev = cols[i].clone();
            for (z, p) in cols[j].iter_mut().zip(&prev) {
                *z -= proj * p;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Tensor product of independent random unitaries, one per subsystem.
pub fn random_local_unitary(dims: &[usize], rng: &mut Rng) -> ComplexMatrix {
    let mut u = random_unitary(dims[0], rng);
    for &d in &dims[1..] {
        u = u.kron(&random_unitary(d, rng));
    }
    u
}

fn block_components(
    dims: (usize, usize),
    alloc: &BlockAllocation,
    rng: &mut Rng,
) -> Result<Vec<DensityMatrix>> {
    let big_dims = [dims.0, dims.1];
    let offsets = alloc.offsets(&big_dims)?;
    let classes = alloc
        .blocks(0)
        .iter()
        .zip(&offsets[0])
        .zip(alloc.blocks(1).iter().zip(&offsets[1]));
    let mut components = Vec::with_capacity(alloc.n_classes());
    for ((&b1, &o1), (&b2, &o2)) in classes {
        let small = random_density(&[b1, b2], b1 * b2, rng)?;
        components.push(small.embed(&big_dims, &[o1, o2])?);
    }
    Ok(components)
}

/// Mixture of bipartite states whose class-`k` component lives on block `k`
/// of both subsystems, so the reductions of distinct components are
/// orthogonal on each subsystem.
pub fn biorthogonal_mixture(
    dims: (usize, usize),
    alloc: &BlockAllocation,
    weights: &[f64],
    rng: &mut Rng,
) -> Result<Mixture> {
    if alloc.n_constrained() != 2 {
        return Err(Error::InvalidBlocks(
            "biorthogonal families constrain both subsystems".into(),
        ));
    }
    if weights.len() != alloc.n_classes() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} classes",
            weights.len(),
            alloc.n_classes()
        )));
    }
    let components = block_components(dims, alloc, rng)?;
    Mixture::new(weights.to_vec(), components)
}

/// Mixture of bipartite states orthogonal on the first subsystem only: the
/// class-`k` component occupies block `k` there while the second subsystem is
/// unconstrained.
pub fn monoorthogonal_mixture(
    dims: (usize, usize),
    alloc: &BlockAllocation,
    weights: &[f64],
    rng: &mut Rng,
) -> Result<Mixture> {
    if alloc.n_constrained() != 1 {
        return Err(Error::InvalidBlocks(
            "monoorthogonal families constrain exactly one subsystem".into(),
        ));
    }
    if weights.len() != alloc.n_classes() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} classes",
            weights.len(),
            alloc.n_classes()
        )));
    }
    let big_dims = [dims.0, dims.1];
    let offsets = alloc.offsets(&[dims.0])?;
    let mut components = Vec::with_capacity(alloc.n_classes());
    for (&b, &off) in alloc.blocks(0).iter().zip(&offsets[0]) {
        let small = random_density(&[b, dims.1], b * dims.1, rng)?;
        components.push(small.embed(&big_dims, &[off, 0])?);
    }
    Mixture::new(weights.to_vec(), components)
}

/// Tripartite family satisfying equality in strong subadditivity: each
/// component is `rho_12^k (x) rho_3^k` with the `rho_12^k` biorthogonal on
/// blocks of subsystems 1 and 2. With at least two classes and genuinely
/// distinct third factors, the mixed state keeps `I_{12} = I_{1,23}` while
/// `I_{23} > 0`.
///
/// Returns the mixed state together with the component mixture.
pub fn ssa_equality_family(
    dims: (usize, usize, usize),
    alloc: &BlockAllocation,
    weights: &[f64],
    rng: &mut Rng,
    distinct_rho3: bool,
) -> Result<(DensityMatrix, Mixture)> {
    if alloc.n_constrained() != 2 {
        return Err(Error::InvalidBlocks(
            "the family constrains subsystems 1 and 2".into(),
        ));
    }
    if weights.len() != alloc.n_classes() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} classes",
            weights.len(),
            alloc.n_classes()
        )));
    }
    let pairs = block_components((dims.0, dims.1), alloc, rng)?;
    let k = alloc.n_classes();
    let thirds: Vec<DensityMatrix> = if distinct_rho3 {
        let sampled: Vec<DensityMatrix> = (0..k)
            .map(|_| random_density(&[dims.2], dims.2, rng))
            .collect::<Result<_>>()?;
        for a in 0..k {
            for b in (a + 1)..k {
                let dist = (sampled[a].mat() - sampled[b].mat()).frobenius_norm();
                if dist <= tolerance::DISTINCTNESS {
                    return Err(Error::InvalidParameter(format!(
                        "third factors {a} and {b} coincide (distance {dist:.3e}); \
                         use another seed"
                    )));
                }
            }
        }
        sampled
    } else {
        let shared = random_density(&[dims.2], dims.2, rng)?;
        vec![shared; k]
    };
    let components: Vec<DensityMatrix> = pairs
        .iter()
        .zip(&thirds)
        .map(|(pair, third)| product_state(&[pair.clone(), third.clone()]))
        .collect::<Result<_>>()?;
    let mixture = Mixture::new(weights.to_vec(), components)?;
    Ok((mixture.mix(), mixture))
}

/// Golden fixture states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedState {
    /// `(|00> + |11>) / sqrt(2)` on dims (2,2).
    Bell,
    /// `(|000> + |111>) / sqrt(2)` on dims (2,2,2).
    Ghz,
    /// `(|001> + |010> + |100>) / sqrt(3)` on dims (2,2,2).
    W3,
    /// `I_D / D` on the given dims.
    MaxMixed(Vec<usize>),
}

pub fn named_state(name: &NamedState) -> Result<DensityMatrix> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match name {
        NamedState::Bell => {
            let mut amps = vec![zero; 4];
            amps[0] = one;
            amps[3] = one;
            DensityMatrix::from_pure(vec![2, 2], &amps)
        }
        NamedState::Ghz => {
            let mut amps = vec![zero; 8];
            amps[0] = one;
            amps[7] = one;
            DensityMatrix::from_pure(vec![2, 2, 2], &amps)
        }
        NamedState::W3 => {
            let mut amps = vec![zero; 8];
            amps[1] = one;
            amps[2] = one;
            amps[4] = one;
            DensityMatrix::from_pure(vec![2, 2, 2], &amps)
        }
        NamedState::MaxMixed(dims) => {
            if dims.is_empty() || dims.contains(&0) {
                return Err(Error::InvalidParameter(format!("bad dims {dims:?}")));
            }
            let total: usize = dims.iter().product();
            let mat = ComplexMatrix::identity(total).scale_re(1.0 / total as f64);
            DensityMatrix::new(dims.clone(), mat)
        }
    }
}
