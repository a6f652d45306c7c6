//! Timing of the `Xi_lambda` group-sum kernel, serial against rayon.
//!
//! Informational only: nothing here is compared against thresholds.

use std::time::Instant;

use kronwit_core::wfs::wfs_projector_direct;
use kronwit_core::yyrep::tensor_rep;
use kronwit_core::Partition;
use serde::Serialize;

use crate::{context, parallel, CliError};

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    /// Representation summed over, `rho^mu ⊗ rho^mu` with `mu = (n-1, 1)`.
    pub rep: String,
    pub lambda: String,
    pub group_order: usize,
    pub dim: usize,
    pub repeats: usize,
    pub threads: usize,
    pub serial_ms: f64,
    pub parallel_ms: f64,
    /// Group elements per second in the serial kernel.
    pub serial_elements_per_s: f64,
    pub parallel_elements_per_s: f64,
    pub speedup: f64,
    /// Serial and parallel matrices are bitwise equal.
    pub identical: bool,
}

fn per_call_ms(repeats: usize, mut f: impl FnMut()) -> f64 {
    let start = Instant::now();
    for _ in 0..repeats {
        f();
    }
    start.elapsed().as_secs_f64() * 1e3 / repeats as f64
}

pub fn bench(sizes: &[usize], repeats: usize) -> Result<Vec<BenchRow>, CliError> {
    let repeats = repeats.max(1);
    let mut rows = Vec::new();
    for &n in sizes {
        if n < 2 {
            return Err(CliError::Usage(format!("bench sizes must be at least 2, got {n}")));
        }
        let ctx = context(n)?;
        let mu = Partition::new(vec![n - 1, 1])?;
        let sigma = tensor_rep(&mu, &mu)?;
        let lambda = mu.clone();
        let a = wfs_projector_direct(&ctx, &sigma, &lambda)?;
        let b = parallel::projector_direct(&ctx, &sigma, &lambda)?;
        let serial_ms = per_call_ms(repeats, || {
            wfs_projector_direct(&ctx, &sigma, &lambda).expect("already computed once");
        });
        let parallel_ms = per_call_ms(repeats, || {
            parallel::projector_direct(&ctx, &sigma, &lambda).expect("already computed once");
        });
        let order = ctx.order();
        rows.push(BenchRow {
            n,
            rep: format!("{mu}x{mu}"),
            lambda: lambda.to_string(),
            group_order: order,
            dim: sigma.dim(),
            repeats,
            threads: rayon::current_num_threads(),
            serial_ms,
            parallel_ms,
            serial_elements_per_s: order as f64 / (serial_ms / 1e3),
            parallel_elements_per_s: order as f64 / (parallel_ms / 1e3),
            speedup: serial_ms / parallel_ms,
            identical: a.matrix().data() == b.matrix().data(),
        });
    }
    Ok(rows)
}
