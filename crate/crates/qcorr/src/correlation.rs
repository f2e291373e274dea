//! Correlation information over cluster partitions, mutual information and
//! strong-subadditivity excesses.
//!
//! The total correlation information of a state is `sum_n S_n - S_{1..N}`;
//! for an arbitrary partition into clusters it splits exactly into the
//! among-cluster part `sum_k S_{C_k} - S_{1..N}` plus the within-cluster
//! parts `sum_{n in C_k} S_n - S_{C_k}`.

use crate::density::DensityMatrix;
use crate::entropy::{von_neumann_entropy, LogBase};
use crate::error::{Error, Result};
use crate::partition::{Partition, SplitTree};
use std::collections::BTreeSet;

/// Entropy of the reduction to `cluster` (1-based labels).
pub fn cluster_entropy(rho: &DensityMatrix, cluster: &[usize], base: LogBase) -> Result<f64> {
    Ok(von_neumann_entropy(&rho.partial_trace(cluster)?, base))
}

/// Total correlation information `sum_n S_n - S_{1..N}`.
pub fn correlation_information(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let mut sum_singles = 0.0;
    for n in 1..=rho.n_subsystems() {
        sum_singles += cluster_entropy(rho, &[n], base)?;
    }
    Ok(sum_singles - von_neumann_entropy(rho, base))
}

/// Correlation information inside one cluster, `sum_{n in C} S_n - S_C`.
/// Singleton clusters return exactly zero.
pub fn within_cluster_information(
    rho: &DensityMatrix,
    cluster: &[usize],
    base: LogBase,
) -> Result<f64> {
    if cluster.len() == 1 {
        // validate the label, then short-circuit: S_n - S_n = 0
        rho.partial_trace(cluster)?;
        return Ok(0.0);
    }
    let mut sum_singles = 0.0;
    for &n in cluster {
        sum_singles += cluster_entropy(rho, &[n], base)?;
    }
    Ok(sum_singles - cluster_entropy(rho, cluster, base)?)
}

/// Among-cluster correlation information `sum_k S_{C_k} - S_{1..N}`.
pub fn among_cluster_information(
    rho: &DensityMatrix,
    partition: &Partition,
    base: LogBase,
) -> Result<f64> {
    if partition.n_subsystems() != rho.n_subsystems() {
        return Err(Error::InvalidPartition(format!(
            "partition over {} subsystems applied to a state with {}",
            partition.n_subsystems(),
            rho.n_subsystems()
        )));
    }
    let mut sum_clusters = 0.0;
    for cluster in partition.clusters() {
        sum_clusters += cluster_entropy(rho, cluster, base)?;
    }
    Ok(sum_clusters - von_neumann_entropy(rho, base))
}

fn check_disjoint(a: &[usize], b: &[usize]) -> Result<()> {
    let sa: BTreeSet<usize> = a.iter().copied().collect();
    if b.iter().any(|x| sa.contains(x)) {
        return Err(Error::InvalidSubsystems(format!(
            "clusters {a:?} and {b:?} overlap"
        )));
    }
    Ok(())
}

/// Mutual information `S_A + S_B - S_{AB}` between two disjoint clusters;
/// subsystems outside `A u B` are traced out.
pub fn mutual_information(
    rho: &DensityMatrix,
    cluster_a: &[usize],
    cluster_b: &[usize],
    base: LogBase,
) -> Result<f64> {
    check_disjoint(cluster_a, cluster_b)?;
    let mut joint: Vec<usize> = cluster_a.iter().chain(cluster_b).copied().collect();
    joint.sort_unstable();
    let s_a = cluster_entropy(rho, cluster_a, base)?;
    let s_b = cluster_entropy(rho, cluster_b, base)?;
    let s_ab = cluster_entropy(rho, &joint, base)?;
    Ok(s_a + s_b - s_ab)
}

/// Excess of mutual information lost by discarding `discard` from cluster `b`:
/// `I_{a,b} - I_{a,b\discard}`. Strong subadditivity makes this nonnegative;
/// a value below tolerance signals equality.
pub fn ssa_excess(
    rho: &DensityMatrix,
    cluster_a: &[usize],
    cluster_b: &[usize],
    discard: &[usize],
    base: LogBase,
) -> Result<f64> {
    check_disjoint(cluster_a, cluster_b)?;
    let b_set: BTreeSet<usize> = cluster_b.iter().copied().collect();
    let d_set: BTreeSet<usize> = discard.iter().copied().collect();
    if !d_set.is_subset(&b_set) || d_set == b_set {
        return Err(Error::InvalidSubsystems(format!(
            "discard {discard:?} must be a proper subset of cluster {cluster_b:?}"
        )));
    }
    let b_rest: Vec<usize> = cluster_b
        .iter()
        .copied()
        .filter(|s| !d_set.contains(s))
        .collect();
    let full = mutual_information(rho, cluster_a, cluster_b, base)?;
    let reduced = mutual_information(rho, cluster_a, &b_rest, base)?;
    Ok(full - reduced)
}

/// Evaluates the total correlation information through successive binary
/// splits: each internal node of the tree contributes the mutual information
/// between its two leaf sets, and the terms sum to `correlation_information`.
pub fn binary_decomposition(
    rho: &DensityMatrix,
    tree: &SplitTree,
    base: LogBase,
) -> Result<Vec<(String, f64)>> {
    tree.validate(rho.n_subsystems())?;
    let mut terms = Vec::new();
    collect_terms(rho, tree, base, &mut terms)?;
    Ok(terms)
}

fn collect_terms(
    rho: &DensityMatrix,
    tree: &SplitTree,
    base: LogBase,
    terms: &mut Vec<(String, f64)>,
) -> Result<()> {
    if let SplitTree::Node(left, right) = tree {
        let mut a = left.leaves();
        let mut b = right.leaves();
        a.sort_unstable();
        b.sort_unstable();
        let value = mutual_information(rho, &a, &b, base)?;
        let label = format!(
            "{{{}}}|{{{}}}",
            a.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
            b.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
        );
        terms.push((label, value));
        collect_terms(rho, left, base, terms)?;
        collect_terms(rho, right, base, terms)?;
    }
    Ok(())
}
