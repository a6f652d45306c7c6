//! Multiplicities `m_{sigma lambda}` and Kronecker coefficients
//! `m_{mu nu lambda}`, each by a character sum over conjugacy classes and by
//! the rank of the isotypic projector.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::C64;
use crate::symgroup::Partition;
use crate::tolerance;
use crate::wfs::wfs_projector;
use crate::yyrep::{tensor_rep, GroupRep, RepContext};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    CharacterSum,
    ProjectorRank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub value: usize,
    pub route: Route,
}

/// `(1/|G|) sum_g conj(chi^lambda(g)) chi^sigma(g)` as a class sum, rounded
/// to the nearest nonnegative integer.
pub fn multiplicity_character(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<Multiplicity> {
    ctx.check_rep(sigma)?;
    let l = ctx.partition_index(lambda)?;
    let table = ctx.character_table();
    let mut sum = C64::new(0.0, 0.0);
    for (c, class) in ctx.group().classes().iter().enumerate() {
        sum += C64::new(table[l][c], 0.0).conj() * ctx.class_character(sigma, c)? * class.size as f64;
    }
    let value = sum / ctx.order() as f64;
    let r = value.re.round();
    if (value.re - r).abs() > tolerance::INTEGRALITY || value.im.abs() > tolerance::INTEGRALITY || r < 0.0 {
        return Err(Error::NumericalConsistency(format!(
            "character inner product {} for lambda = {} is not a nonnegative integer",
            value, lambda
        )));
    }
    Ok(Multiplicity { value: r as usize, route: Route::CharacterSum })
}

/// `rank(Xi_lambda) / d_lambda`, failing unless the division is exact.
pub fn multiplicity_rank(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<Multiplicity> {
    let rank = wfs_projector(ctx, sigma, lambda)?.rank();
    let d = lambda.dimension();
    if rank % d != 0 {
        return Err(Error::NumericalConsistency(format!(
            "projector rank {} is not divisible by d_lambda = {} for lambda = {}",
            rank, d, lambda
        )));
    }
    Ok(Multiplicity { value: rank / d, route: Route::ProjectorRank })
}

pub fn multiplicity(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition, route: Route) -> Result<Multiplicity> {
    match route {
        Route::CharacterSum => multiplicity_character(ctx, sigma, lambda),
        Route::ProjectorRank => multiplicity_rank(ctx, sigma, lambda),
    }
}

/// Multiplicity of `rho^lambda` in `rho^mu ⊗ rho^nu`.
pub fn kronecker_coefficient(ctx: &RepContext, mu: &Partition, nu: &Partition, lambda: &Partition, route: Route) -> Result<Multiplicity> {
    multiplicity(ctx, &tensor_rep(mu, nu)?, lambda, route)
}

/// Both routes for one triple.
pub fn kronecker_both(ctx: &RepContext, mu: &Partition, nu: &Partition, lambda: &Partition) -> Result<(Multiplicity, Multiplicity)> {
    let sigma = tensor_rep(mu, nu)?;
    Ok((multiplicity_character(ctx, &sigma, lambda)?, multiplicity_rank(ctx, &sigma, lambda)?))
}

/// `m_{mu nu lambda} > 0`, by the character route.
pub fn is_positive(ctx: &RepContext, mu: &Partition, nu: &Partition, lambda: &Partition) -> Result<bool> {
    Ok(kronecker_coefficient(ctx, mu, nu, lambda, Route::CharacterSum)?.value > 0)
}

/// `lambda -> m_{mu nu lambda}` for every `lambda`, in partition order.
pub fn kronecker_row(ctx: &RepContext, mu: &Partition, nu: &Partition) -> Result<Vec<(Partition, usize)>> {
    let sigma = tensor_rep(mu, nu)?;
    ctx.partitions()
        .iter()
        .map(|l| Ok((l.clone(), multiplicity_character(ctx, &sigma, l)?.value)))
        .collect()
}
