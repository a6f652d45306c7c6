//! Std companion of `kronwit-core`: JSON formats, the `kronwit` command line,
//! a rayon-backed projector kernel, the self-test harness and benchmarks.

pub mod bench;
pub mod cli;
mod error;
pub mod io;
pub mod parallel;
pub mod reptext;
pub mod selftest;

pub use cli::{run, CommandResult, Status};
pub use error::CliError;

use kronwit_core::{Limits, RepContext};

/// Environment variable overriding the largest `n` for dense `|G| x |G|` work.
pub const DENSE_CAP_VAR: &str = "KRONWIT_DENSE_CAP";

/// Default limits with the dense cap taken from [`DENSE_CAP_VAR`] when set.
pub fn limits_from_env() -> Result<Limits, CliError> {
    let limits = Limits::default();
    match std::env::var(DENSE_CAP_VAR) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{DENSE_CAP_VAR}={v:?} is not a nonnegative integer")))?;
            Ok(limits.with_dense_max_degree(n))
        }
        Err(_) => Ok(limits),
    }
}

/// `RepContext` for `S_n` under [`limits_from_env`].
pub fn context(n: usize) -> Result<RepContext, CliError> {
    Ok(RepContext::with_limits(n, limits_from_env()?)?)
}
