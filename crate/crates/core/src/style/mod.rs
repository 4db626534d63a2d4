//! Style fingerprints, separation indices, PCA and clustering.

pub mod cluster;
pub mod fingerprint;
pub mod pca;

pub use cluster::{cluster, cluster_scores, purity};
pub use fingerprint::{
    eta, expected_separation, fingerprint, nu, separation_stats, theta, theta_of, u_vector, union_spread,
    CodeSetProfiles, EtaStats, SeparationStats, StyleFingerprint,
};
pub use pca::{covariance, jacobi_eigen, pca, pca_rows, Pca};
