//! Seeded randomness. Every sampling interface takes an explicit `u64` seed
//! and draws from ChaCha8 seeded with it; trial `t` of a batch uses
//! `seed + t` (wrapping), so batches can run in any order or in parallel.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{norm, orthonormalize, ComplexMatrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

pub fn trial_rng(seed: u64, trial: usize) -> SeededRng {
    rng_from_seed(trial_seed(seed, trial))
}

/// Complex number with independent standard normal real and imaginary parts.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<C64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

/// Haar-random unit vector: a normalized complex Gaussian vector.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    loop {
        let v = gaussian_vector(rng, dim);
        let nv = norm(&v);
        if nv > 0.0 {
            return v.into_iter().map(|z| z / nv).collect();
        }
    }
}

/// Matrix with i.i.d. complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Random unitary from Gram-Schmidt on the columns of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    loop {
        let g = gaussian_matrix(rng, dim, dim);
        let cols: Vec<Vec<C64>> = (0..dim).map(|j| g.column(j)).collect();
        let q = orthonormalize(&cols, 1e-8);
        if q.len() == dim {
            return ComplexMatrix::from_columns(dim, &q);
        }
    }
}
