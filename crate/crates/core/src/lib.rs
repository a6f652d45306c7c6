//! Exact, desk-scale representation theory of the symmetric group and the
//! witness-verification circuits built on top of it.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is dense complex
//! linear algebra over explicitly enumerated groups, so sizes are capped by
//! [`Limits`]:
//!
//! * [`symgroup`]: partitions, standard tableaux, permutations and `S_n`.
//! * [`yyrep`]: Young-Yamanouchi irreps, characters, tensor and regular
//!   representations, the dense group Fourier transform.
//! * [`wfs`]: weak Fourier sampling projectors, the generalized phase
//!   estimation Kraus operators and measurement sampling.
//! * [`kronecker`]: representation multiplicities and Kronecker coefficients
//!   by two independent routes.
//! * [`entangled`]: vectorization, maximally entangled states over subspaces
//!   and the subspaces `M_lambda`.
//! * [`verifier`]: the internal-state test, the `(sigma, lambda)` verifier,
//!   its acceptance operator and numerical certification of the robustness
//!   bounds.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod entangled;
mod error;
pub mod kronecker;
pub mod linalg;
pub mod random;
pub mod symgroup;
pub mod tolerance;
pub mod verifier;
pub mod wfs;
pub mod yyrep;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use symgroup::{Partition, Permutation, StandardTableau, SymmetricGroup};
pub use yyrep::{GroupRep, RepContext, RepKind};

/// Size guards for explicitly enumerated groups and dense objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which `S_n` is enumerated (`n!` elements).
    pub max_degree: usize,
    /// Largest `n` for which dense `|G| x |G|` objects and per-element
    /// representation tables are built.
    pub dense_max_degree: usize,
    /// Largest number of amplitudes in a simulated state vector.
    pub max_state_len: usize,
}

impl Limits {
    pub const DEFAULT_MAX_DEGREE: usize = 7;
    pub const DEFAULT_DENSE_MAX_DEGREE: usize = 6;
    pub const DEFAULT_MAX_STATE_LEN: usize = 1 << 24;

    pub fn with_dense_max_degree(mut self, n: usize) -> Self {
        self.dense_max_degree = n;
        self
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: Self::DEFAULT_MAX_DEGREE,
            dense_max_degree: Self::DEFAULT_DENSE_MAX_DEGREE,
            max_state_len: Self::DEFAULT_MAX_STATE_LEN,
        }
    }
}

/// `n!` as `u128`.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
