//! Numerical toolkit for correlation information in multipartite quantum states.
//!
//! The crate provides dense complex linear algebra specialized for multipartite
//! Hilbert spaces (tensor products, partial traces, Hermitian eigendecomposition),
//! entropy and correlation-information functionals over arbitrary cluster
//! partitions, seeded generators for random states and for orthogonal-mixture
//! state families, and named verifiers that check entropy identities and
//! inequalities (subadditivity, cluster additivity, strong subadditivity and its
//! equality cases) to explicit numerical tolerances.
//!
//! Subsystems are labeled `1..=N` throughout, matching the usual physics
//! convention; subsystem 1 is the most significant factor of the composite index.

pub mod correlation;
pub mod density;
pub mod eigen;
pub mod entropy;
pub mod error;
pub mod factory;
pub mod matrix;
pub mod partition;
pub mod tolerance;
pub mod verify;

pub use correlation::{
    among_cluster_information, binary_decomposition, cluster_entropy, correlation_information,
    mutual_information, ssa_excess, within_cluster_information,
};
pub use density::DensityMatrix;
pub use eigen::{eig_hermitian, range_projector, support_contained, SpectralDecomposition};
pub use entropy::{relative_entropy, shannon_entropy, von_neumann_entropy, LogBase};
pub use error::{Error, Result};
pub use factory::{
    biorthogonal_mixture, monoorthogonal_mixture, named_state, product_state, random_density,
    random_pure, ssa_equality_family, BlockAllocation, Mixture, NamedState, Rng,
};
pub use matrix::{Complex64, ComplexMatrix};
pub use partition::{set_partitions, Partition, SplitTree};
pub use verify::{
    verify_binary_chain, verify_biorthogonal_mixing, verify_cluster_additivity,
    verify_cluster_additivity_all_partitions, verify_entropy_decomposition,
    verify_excess_pairing, verify_implied_biorthogonality, verify_monoorthogonal_mixing,
    verify_product_discard, verify_ssa, verify_ssa_equality_family, verify_subadditivity,
    verify_subadditivity_equality, VerificationReport,
};
