//! Named verifiers for the entropy identities and inequalities.
//!
//! Premise checks are hard errors; conclusion checks are pass/fail reports.
//! Conflating "hypothesis not met" with "identity violated" would make a
//! verification campaign unsound, so a verifier refuses to run when its
//! premises fail and otherwise always returns a report.

use crate::correlation::{
    among_cluster_information, binary_decomposition, correlation_information, mutual_information,
    ssa_excess, within_cluster_information,
};
use crate::density::DensityMatrix;
use crate::eigen::range_projector;
use crate::entropy::{relative_entropy, shannon_entropy, von_neumann_entropy, LogBase};
use crate::error::{Error, Result};
use crate::factory::{ssa_equality_family, BlockAllocation, Mixture, Rng};
use crate::partition::{Partition, SplitTree};
use crate::tolerance;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Outcome of one named check.
///
/// `residual = |lhs - rhs|` for equality checks and `max(0, lhs - rhs)` for
/// inequality checks (`lhs <= rhs` convention); `passed` holds exactly when
/// `residual <= tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check_name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seed: Option<u64>,
    pub context: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn equality(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let residual = (lhs - rhs).abs();
        Self {
            check_name: name.into(),
            lhs,
            rhs,
            residual,
            tolerance,
            passed: residual <= tolerance,
            seed: None,
            context: BTreeMap::new(),
        }
    }

    pub fn inequality(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let residual = (lhs - rhs).max(0.0);
        Self {
            check_name: name.into(),
            lhs,
            rhs,
            residual,
            tolerance,
            passed: residual <= tolerance,
            seed: None,
            context: BTreeMap::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_context(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.context.insert(key.into(), value.into());
        self
    }
}

fn require(condition: bool, message: impl Into<String>) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::PremiseViolation(message.into()))
    }
}

/// Subadditivity: `S_{1..N} <= sum_n S_n`.
pub fn verify_subadditivity(
    rho: &DensityMatrix,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    require(rho.n_subsystems() >= 2, "need at least two subsystems")?;
    let s_total = von_neumann_entropy(rho, base);
    let mut sum_singles = 0.0;
    for n in 1..=rho.n_subsystems() {
        sum_singles += von_neumann_entropy(&rho.partial_trace(&[n])?, base);
    }
    Ok(
        VerificationReport::inequality("subadditivity", s_total, sum_singles, tol)
            .with_context("gap", format!("{:.17e}", sum_singles - s_total)),
    )
}

/// Equality case of subadditivity, for states constructed as full products:
/// `sum_n S_n - S_{1..N} = 0`.
pub fn verify_subadditivity_equality(
    rho: &DensityMatrix,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    require(rho.n_subsystems() >= 2, "need at least two subsystems")?;
    let i = correlation_information(rho, base)?;
    Ok(VerificationReport::equality(
        "subadditivity-equality",
        i,
        0.0,
        tol,
    ))
}

/// Cluster additivity: total correlation information equals the among-cluster
/// part plus the within-cluster parts, for any partition.
pub fn verify_cluster_additivity(
    rho: &DensityMatrix,
    partition: &Partition,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    let total = correlation_information(rho, base)?;
    let among = among_cluster_information(rho, partition, base)?;
    let mut within_sum = 0.0;
    for cluster in partition.clusters() {
        within_sum += within_cluster_information(rho, cluster, base)?;
    }
    Ok(
        VerificationReport::equality("cluster-additivity", total, among + within_sum, tol)
            .with_context("partition", partition.to_string())
            .with_context("among", format!("{:.17e}", among))
            .with_context("within_sum", format!("{:.17e}", within_sum)),
    )
}

/// Bell-number cap for exhaustive partition sweeps (203 partitions at N = 6).
const MAX_EXHAUSTIVE_SUBSYSTEMS: usize = 6;

/// Cluster additivity over every set partition of the subsystems.
pub fn verify_cluster_additivity_all_partitions(
    rho: &DensityMatrix,
    base: LogBase,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let n = rho.n_subsystems();
    if n > MAX_EXHAUSTIVE_SUBSYSTEMS {
        return Err(Error::InvalidParameter(format!(
            "exhaustive partition sweep capped at {MAX_EXHAUSTIVE_SUBSYSTEMS} subsystems, got {n}"
        )));
    }
    crate::partition::set_partitions(n)
        .iter()
        .map(|p| verify_cluster_additivity(rho, p, base, tol))
        .collect()
}

/// Successive binary splitting: the per-node mutual informations of a binary
/// split tree sum to the total correlation information.
pub fn verify_binary_chain(
    rho: &DensityMatrix,
    tree: &SplitTree,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    let terms = binary_decomposition(rho, tree, base)?;
    let sum: f64 = terms.iter().map(|(_, v)| v).sum();
    let total = correlation_information(rho, base)?;
    let mut report = VerificationReport::equality("binary-chain", sum, total, tol);
    for (label, value) in terms {
        report = report.with_context(label, format!("{:.17e}", value));
    }
    Ok(report)
}

/// Strong subadditivity in its general form: mutual information between two
/// clusters never increases when part of one cluster is discarded.
/// The report carries the raw excess and whether equality was detected.
pub fn verify_ssa(
    rho: &DensityMatrix,
    cluster_a: &[usize],
    cluster_b: &[usize],
    discard: &[usize],
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    let excess = ssa_excess(rho, cluster_a, cluster_b, discard, base)?;
    let full = mutual_information(rho, cluster_a, cluster_b, base)?;
    let reduced = full - excess;
    Ok(VerificationReport::inequality("ssa", reduced, full, tol)
        .with_context("excess", format!("{:.17e}", excess))
        .with_context("equality_detected", (excess.abs() <= tol).to_string()))
}

/// Pairing of the six tripartite excesses: `I_{1,23} - I_{12} = I_{12,3} - I_{23}`,
/// equivalently `I_{1,23} + I_{23} = I_{12,3} + I_{12}`.
pub fn verify_excess_pairing(
    rho: &DensityMatrix,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    require(rho.n_subsystems() == 3, "excess pairing is tripartite")?;
    let i_1_23 = mutual_information(rho, &[1], &[2, 3], base)?;
    let i_12 = mutual_information(rho, &[1], &[2], base)?;
    let i_12_3 = mutual_information(rho, &[1, 2], &[3], base)?;
    let i_23 = mutual_information(rho, &[2], &[3], base)?;
    Ok(
        VerificationReport::equality("excess-pairing", i_1_23 - i_12, i_12_3 - i_23, tol)
            .with_context("sum_form_lhs", format!("{:.17e}", i_1_23 + i_23))
            .with_context("sum_form_rhs", format!("{:.17e}", i_12_3 + i_12)),
    )
}

/// For a product state `rho_{1..M} (x) rho_{M+1..N}`: the mutual information
/// between a cluster and a cluster containing all of `{M+1..N}` plus at least
/// one earlier subsystem is unchanged when any of the `{M+1..N}` members are
/// discarded.
pub fn verify_product_discard(
    rho: &DensityMatrix,
    split_at: usize,
    k_cluster: &[usize],
    l_cluster: &[usize],
    l_prime: &[usize],
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    let n = rho.n_subsystems();
    require(
        split_at >= 1 && split_at < n,
        format!("split {split_at} must lie strictly inside 1..{n}"),
    )?;
    let tail: BTreeSet<usize> = (split_at + 1..=n).collect();
    let l_set: BTreeSet<usize> = l_cluster.iter().copied().collect();
    let lp_set: BTreeSet<usize> = l_prime.iter().copied().collect();
    let k_set: BTreeSet<usize> = k_cluster.iter().copied().collect();

    require(
        tail.is_subset(&l_set),
        format!("cluster {l_cluster:?} must contain all of {tail:?}"),
    )?;
    require(
        l_set.iter().any(|s| *s <= split_at),
        format!("cluster {l_cluster:?} must contain a subsystem at or below {split_at}"),
    )?;
    require(
        k_set.is_disjoint(&l_set),
        format!("clusters {k_cluster:?} and {l_cluster:?} must not overlap"),
    )?;
    require(
        lp_set.is_subset(&l_set),
        format!("{l_prime:?} must be a subset of {l_cluster:?}"),
    )?;
    let removed: BTreeSet<usize> = l_set.difference(&lp_set).copied().collect();
    require(
        removed.is_subset(&tail),
        format!("only members of {tail:?} may be discarded, attempted {removed:?}"),
    )?;
    require(!lp_set.is_empty(), "the reduced cluster is empty")?;

    // the product premise itself: no correlation across the cut
    let front: Vec<usize> = (1..=split_at).collect();
    let back: Vec<usize> = (split_at + 1..=n).collect();
    let cut = mutual_information(rho, &front, &back, base)?;
    require(
        cut.abs() <= tol.max(tolerance::EQUALITY),
        format!("state is not a product across the cut: I = {cut:.3e}"),
    )?;

    let full = mutual_information(rho, k_cluster, l_cluster, base)?;
    let reduced = mutual_information(rho, k_cluster, l_prime, base)?;
    Ok(
        VerificationReport::equality("product-discard", full, reduced, tol)
            .with_context("cut_mutual_information", format!("{:.17e}", cut)),
    )
}

fn reductions_cross_max(mixture: &Mixture, cluster: &[usize]) -> Result<f64> {
    mixture.max_cross_norm(cluster)
}

/// For a tripartite mixture whose 12-reductions are biorthogonal: the range
/// projectors of the subsystem-2 reductions are pairwise orthogonal and the
/// {2,3}-reductions of distinct components annihilate each other, so the
/// decomposition is biorthogonal for the `{1}+{23}` split as well.
pub fn verify_implied_biorthogonality(
    mixture: &Mixture,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    let _ = base;
    require(
        mixture.dims().len() == 3,
        "implied biorthogonality needs tripartite components",
    )?;
    let cross_1 = reductions_cross_max(mixture, &[1])?;
    let cross_2 = reductions_cross_max(mixture, &[2])?;
    require(
        cross_1 <= tol && cross_2 <= tol,
        format!(
            "12-reductions are not biorthogonal: cross norms {cross_1:.3e} / {cross_2:.3e}"
        ),
    )?;

    let projectors: Vec<_> = mixture
        .components()
        .iter()
        .map(|c| {
            c.partial_trace(&[2])
                .map(|r| range_projector(&r, tolerance::RANK_CUTOFF))
        })
        .collect::<Result<_>>()?;
    let mut projector_cross = 0.0f64;
    for i in 0..projectors.len() {
        for j in (i + 1)..projectors.len() {
            projector_cross = projector_cross.max(projectors[i].matmul(&projectors[j]).frobenius_norm());
        }
    }
    let cross_23 = reductions_cross_max(mixture, &[2, 3])?;

    Ok(VerificationReport::equality(
        "implied-biorthogonality",
        projector_cross.max(cross_23),
        0.0,
        tol,
    )
    .with_context("projector_cross_max", format!("{:.17e}", projector_cross))
    .with_context("cross_23_max", format!("{:.17e}", cross_23)))
}

/// Mixing property of mutual information for biorthogonal bipartite mixtures:
/// `I(mix) = H(w) + sum_k w_k I^k`.
pub fn verify_biorthogonal_mixing(
    mixture: &Mixture,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    require(
        mixture.dims().len() == 2,
        "biorthogonal mixing needs bipartite components",
    )?;
    let cross_1 = reductions_cross_max(mixture, &[1])?;
    let cross_2 = reductions_cross_max(mixture, &[2])?;
    require(
        cross_1 <= tol && cross_2 <= tol,
        format!(
            "components are not biorthogonal: cross norms {cross_1:.3e} / {cross_2:.3e}"
        ),
    )?;

    let mixed = mixture.mix();
    let i_mix = mutual_information(&mixed, &[1], &[2], base)?;
    let h = shannon_entropy(mixture.weights(), base)?;
    let mut avg = 0.0;
    for (w, comp) in mixture.weights().iter().zip(mixture.components()) {
        avg += w * mutual_information(comp, &[1], &[2], base)?;
    }
    Ok(
        VerificationReport::equality("biorthogonal-mixing", i_mix, h + avg, tol)
            .with_context("shannon", format!("{:.17e}", h))
            .with_context("avg_component_mi", format!("{:.17e}", avg)),
    )
}

/// Entropy decomposition of an arbitrary mixture:
/// `S(mix) = sum_k w_k S(rho^k || mix) + sum_k w_k S(rho^k)`.
/// Support containment of every component inside the mixture is checked by
/// the relative-entropy evaluation itself.
pub fn verify_entropy_decomposition(
    mixture: &Mixture,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    let mixed = mixture.mix();
    let s_mix = von_neumann_entropy(&mixed, base);
    let mut divergence = 0.0;
    let mut avg_entropy = 0.0;
    for (w, comp) in mixture.weights().iter().zip(mixture.components()) {
        divergence += w * relative_entropy(comp, &mixed, base)?;
        avg_entropy += w * von_neumann_entropy(comp, base);
    }
    Ok(VerificationReport::equality(
        "entropy-decomposition",
        s_mix,
        divergence + avg_entropy,
        tol,
    )
    .with_context("avg_divergence", format!("{:.17e}", divergence))
    .with_context("avg_entropy", format!("{:.17e}", avg_entropy)))
}

/// Mixing property of mutual information for mixtures monoorthogonal in the
/// first of the two subsystems:
/// `I(mix) = sum_k w_k S(rho_second^k || rho_second) + sum_k w_k I^k`.
pub fn verify_monoorthogonal_mixing(
    mixture: &Mixture,
    base: LogBase,
    tol: f64,
) -> Result<VerificationReport> {
    require(
        mixture.dims().len() == 2,
        "monoorthogonal mixing needs bipartite components",
    )?;
    let cross = reductions_cross_max(mixture, &[1])?;
    require(
        cross <= tol,
        format!("components are not orthogonal on the first subsystem: {cross:.3e}"),
    )?;

    let mixed = mixture.mix();
    let i_mix = mutual_information(&mixed, &[1], &[2], base)?;
    let second_mixed = mixed.partial_trace(&[2])?;
    let mut divergence = 0.0;
    let mut avg = 0.0;
    for (w, comp) in mixture.weights().iter().zip(mixture.components()) {
        let second = comp.partial_trace(&[2])?;
        divergence += w * relative_entropy(&second, &second_mixed, base)?;
        avg += w * mutual_information(comp, &[1], &[2], base)?;
    }
    Ok(VerificationReport::equality(
        "monoorthogonal-mixing",
        i_mix,
        divergence + avg,
        tol,
    )
    .with_context("avg_divergence", format!("{:.17e}", divergence))
    .with_context("avg_component_mi", format!("{:.17e}", avg)))
}

/// End-to-end check of the SSA-equality family built from biorthogonal pairs
/// and per-class third factors. Emits five reports: per-component equality,
/// mixed-state equality, positivity (or vanishing, for one class) of
/// `I_{23}`, the dual equality `I_{23} = I_{12,3}`, and biorthogonality of
/// the induced `{1}+{23}` split.
pub fn verify_ssa_equality_family(
    dims: (usize, usize, usize),
    alloc: &BlockAllocation,
    weights: &[f64],
    rng: &mut Rng,
    base: LogBase,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let seed = rng.seed();
    let k = alloc.n_classes();
    let (mixed, mixture) = ssa_equality_family(dims, alloc, weights, rng, k >= 2)?;

    let mut component_residual = 0.0f64;
    for comp in mixture.components() {
        let i_12 = mutual_information(comp, &[1], &[2], base)?;
        let i_1_23 = mutual_information(comp, &[1], &[2, 3], base)?;
        component_residual = component_residual.max((i_12 - i_1_23).abs());
    }
    let components_report = VerificationReport::equality(
        "ssa-equality-family/components",
        component_residual,
        0.0,
        tol,
    )
    .with_seed(seed);

    let i_12 = mutual_information(&mixed, &[1], &[2], base)?;
    let i_1_23 = mutual_information(&mixed, &[1], &[2, 3], base)?;
    let mixed_report =
        VerificationReport::equality("ssa-equality-family/mixed", i_12, i_1_23, tol)
            .with_seed(seed);

    let i_23 = mutual_information(&mixed, &[2], &[3], base)?;
    let i23_report = if k >= 2 {
        VerificationReport::inequality("ssa-equality-family/i23-positive", tol, i_23, 0.0)
            .with_seed(seed)
            .with_context("i23", format!("{:.17e}", i_23))
    } else {
        VerificationReport::inequality("ssa-equality-family/i23-zero", i_23, 0.0, tol)
            .with_seed(seed)
            .with_context("i23", format!("{:.17e}", i_23))
    };

    let i_12_3 = mutual_information(&mixed, &[1, 2], &[3], base)?;
    let dual_report =
        VerificationReport::equality("ssa-equality-family/dual-equality", i_23, i_12_3, tol)
            .with_seed(seed);

    let mut biortho_report = verify_implied_biorthogonality(&mixture, base, tol)?;
    biortho_report.check_name = "ssa-equality-family/biorthogonality".into();
    let biortho_report = biortho_report.with_seed(seed);

    Ok(vec![
        components_report,
        mixed_report,
        i23_report,
        dual_report,
        biortho_report,
    ])
}
