//! Numerical tolerances. All comparisons are absolute and entrywise.

/// Default entrywise tolerance for matrix identities.
pub const ENTRY: f64 = 1e-9;
/// Tolerance for identities that involve a full group sum.
pub const GROUP_SUM: f64 = 1e-8;
/// Distance from an integer allowed when reading off ranks and multiplicities.
pub const INTEGRALITY: f64 = 1e-6;
/// Vectorization identities on random inputs.
pub const VEC_IDENTITY: f64 = 1e-10;
/// Unit-norm check for state vectors.
pub const UNIT_NORM: f64 = 1e-9;
/// Pairwise orthonormality of subspace bases.
pub const ORTHONORMAL: f64 = 1e-8;
/// Eigenvalues within this distance of 1 count as accepting.
pub const EIGEN_CLUSTER: f64 = 1e-8;
/// Slack added to every certified robustness bound.
pub const BOUND_SLACK: f64 = 1e-8;
/// Normalization below which a projected state is treated as zero.
pub const DEGENERATE_NORM_SQR: f64 = 1e-12;
