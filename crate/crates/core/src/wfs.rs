//! Weak Fourier sampling: the isotypic projectors
//! `Xi_lambda = (d_lambda/|G|) sum_g conj(chi^lambda(g)) sigma(g)`, the Kraus
//! operators of generalized phase estimation, measurement sampling and the
//! lightning distribution.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::entangled::{apply_left_register, phi_plus, StateVector};
use crate::error::invalid;
use crate::kronecker::multiplicity_character;
use crate::linalg::{inner, ComplexMatrix, MatrixAccumulator, C64, ZERO};
use crate::random::rng_from_seed;
use crate::symgroup::Partition;
use crate::tolerance;
use crate::yyrep::{tensor_rep, GroupRep, RepContext, RepKind};
use crate::{Error, Result};

/// Group elements per chunk in projector sums. Chunks are summed in order
/// and then merged pairwise, so any schedule that respects the chunking
/// (serial here, parallel in the CLI) produces the same bits.
pub const SUM_CHUNK: usize = 24;

/// A Hermitian idempotent with integral trace.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector {
    matrix: ComplexMatrix,
    rank: usize,
}

impl Projector {
    /// Validates Hermiticity and idempotency within
    /// [`tolerance::GROUP_SUM`] and reads the rank from the trace, which must
    /// be within [`tolerance::INTEGRALITY`] of an integer.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(invalid!("projector must be square, got {}x{}", matrix.rows(), matrix.cols()));
        }
        let herm = matrix.hermiticity_residual();
        if herm > tolerance::GROUP_SUM {
            return Err(Error::NumericalConsistency(format!("projector is not Hermitian (residual {herm:e})")));
        }
        let idem = matrix.matmul(&matrix).max_abs_diff(&matrix);
        if idem > tolerance::GROUP_SUM {
            return Err(Error::NumericalConsistency(format!("projector is not idempotent (residual {idem:e})")));
        }
        let rank = integral_trace(&matrix)?;
        Ok(Projector { matrix, rank })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `<v|P|v>`.
    pub fn expectation(&self, v: &[C64]) -> f64 {
        inner(v, &self.matrix.mul_vec(v)).re
    }
}

fn integral_trace(m: &ComplexMatrix) -> Result<usize> {
    let t = m.trace();
    let r = t.re.round();
    if (t.re - r).abs() > tolerance::INTEGRALITY || t.im.abs() > tolerance::INTEGRALITY || r < 0.0 {
        return Err(Error::NumericalConsistency(format!("trace {} is not a nonnegative integer", t)));
    }
    Ok(r as usize)
}

/// `sum_{g in range} conj(chi^lambda(g)) sigma(g)` over element indices in
/// `range`, unscaled.
pub fn character_weighted_sum(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition, range: Range<usize>) -> Result<MatrixAccumulator> {
    let mut acc = MatrixAccumulator::new(sigma.dim(), sigma.dim());
    for g in range {
        let chi = ctx.irrep_character(lambda, g)?;
        if chi != 0.0 {
            acc.add_scaled(C64::new(chi, 0.0), &ctx.image(sigma, g)?);
        }
    }
    Ok(acc)
}

/// Element ranges of the chunks used by projector sums.
pub fn sum_chunks(order: usize) -> Vec<Range<usize>> {
    (0..order).step_by(SUM_CHUNK).map(|s| s..(s + SUM_CHUNK).min(order)).collect()
}

/// Pairwise merge of per-chunk partial sums, always in the same tree shape.
pub fn merge_chunks(mut parts: Vec<MatrixAccumulator>) -> Option<MatrixAccumulator> {
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                a.merge(&b);
            }
            next.push(a);
        }
        parts = next;
    }
    parts.pop()
}

/// Scales a finished character-weighted sum by `d_lambda/|G|` and validates
/// it as a projector.
pub fn finish_projector(ctx: &RepContext, lambda: &Partition, sum: MatrixAccumulator) -> Result<Projector> {
    let scale = lambda.dimension() as f64 / ctx.order() as f64;
    Projector::from_matrix(sum.finish().scale_real(scale))
}

/// `Xi_lambda` straight from the group sum, whatever the kind of `sigma`.
pub fn wfs_projector_direct(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<Projector> {
    ctx.check_rep(sigma)?;
    ctx.partition_index(lambda)?;
    ctx.require_dense("group sums")?;
    let parts = sum_chunks(ctx.order())
        .into_iter()
        .map(|r| character_weighted_sum(ctx, sigma, lambda, r))
        .collect::<Result<Vec<_>>>()?;
    let sum = merge_chunks(parts).expect("groups are nonempty");
    finish_projector(ctx, lambda, sum)
}

/// `Xi_lambda` for `sigma`.
///
/// Lifted and amplified representations reuse the projector of the inner
/// representation (`Xi ⊗ I`, `I ⊗ Xi`), conjugates take the entrywise
/// conjugate; everything else is the direct group sum.
pub fn wfs_projector(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<Projector> {
    ctx.check_rep(sigma)?;
    ctx.partition_index(lambda)?;
    match sigma.kind() {
        RepKind::LiftWithIdentity(inner_rep, d) => {
            let p = wfs_projector(ctx, inner_rep, lambda)?;
            let rank = p.rank * d;
            Ok(Projector { matrix: p.matrix.kron(&ComplexMatrix::identity(*d)), rank })
        }
        RepKind::Amplified(m, inner_rep) => {
            let p = wfs_projector(ctx, inner_rep, lambda)?;
            let rank = p.rank * m;
            Ok(Projector { matrix: ComplexMatrix::identity(*m).kron(&p.matrix), rank })
        }
        RepKind::Conjugate(inner_rep) => {
            let p = wfs_projector(ctx, inner_rep, lambda)?;
            Ok(Projector { matrix: p.matrix.conj(), rank: p.rank })
        }
        _ => wfs_projector_direct(ctx, sigma, lambda),
    }
}

/// `(lambda, Xi_lambda)` for every `lambda`, in partition order.
pub fn wfs_povm(ctx: &RepContext, sigma: &GroupRep) -> Result<Vec<(Partition, Projector)>> {
    ctx.partitions().iter().map(|l| Ok((l.clone(), wfs_projector(ctx, sigma, l)?))).collect()
}

/// The Kraus operator `E_lambda` of generalized phase estimation, mapping the
/// target space into control ⊗ target.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausElement {
    lambda: Partition,
    matrix: ComplexMatrix,
}

impl KrausElement {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `E^dagger E`.
    pub fn gram(&self) -> ComplexMatrix {
        self.matrix.adjoint().matmul(&self.matrix)
    }

    /// `E^dagger E` validated as a projector.
    pub fn effect(&self) -> Result<Projector> {
        Projector::from_matrix(self.gram())
    }
}

/// `E_lambda = (1/sqrt|G|) sum_g (Pi_lambda FT |g>) ⊗ sigma(g)`, a
/// `(|G| D) x D` matrix; `Pi_lambda` keeps the Fourier rows of the `lambda`
/// block.
pub fn gpe_kraus(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<KrausElement> {
    ctx.check_rep(sigma)?;
    ctx.require_dense("generalized phase estimation")?;
    let order = ctx.order();
    let d = sigma.dim();
    if order.saturating_mul(d).saturating_mul(d) > ctx.limits().max_state_len {
        return Err(Error::ResourceLimit(format!(
            "Kraus operator of shape {}x{} exceeds the state cap of {} entries",
            order * d,
            d,
            ctx.limits().max_state_len
        )));
    }
    let ft = ctx.fourier_transform_matrix()?;
    let start = ctx.fourier_block_offset(lambda)?;
    let rows = start..start + lambda.dimension().pow(2);
    let mut e = ComplexMatrix::zeros(order * d, d);
    let norm = 1.0 / (order as f64).sqrt();
    for g in 0..order {
        let s = ctx.image(sigma, g)?;
        for r in rows.clone() {
            let c = ft[(r, g)] * norm;
            if c == ZERO {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    e[(r * d + a, b)] += c * s[(a, b)];
                }
            }
        }
    }
    Ok(KrausElement { lambda: lambda.clone(), matrix: e })
}

/// Outcome of a weak Fourier sampling measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct WfsOutcome {
    pub lambda: Partition,
    pub probability: f64,
    pub state: StateVector,
}

/// `<psi|Xi_lambda|psi>` for every `lambda`, with the unnormalized
/// post-measurement vectors `Xi_lambda psi`.
///
/// `psi` either has dimension `D`, or `D^2` in which case `Xi_lambda` acts on
/// the left register.
pub fn wfs_branches(ctx: &RepContext, sigma: &GroupRep, psi: &StateVector) -> Result<Vec<(Partition, f64, Vec<C64>)>> {
    let d = sigma.dim();
    let lifted = if psi.dim() == d {
        false
    } else if psi.dim() == d * d {
        true
    } else {
        return Err(invalid!("state of dimension {} does not match D = {} or D^2 = {}", psi.dim(), d, d * d));
    };
    let mut out = Vec::new();
    for (lambda, proj) in wfs_povm(ctx, sigma)? {
        let v = if lifted {
            apply_left_register(proj.matrix(), psi.amplitudes())?
        } else {
            proj.matrix().mul_vec(psi.amplitudes())
        };
        let prob = inner(psi.amplitudes(), &v).re.max(0.0);
        out.push((lambda, prob, v));
    }
    Ok(out)
}

/// Samples `lambda` with probability `<psi|Xi_lambda|psi>` and returns the
/// normalized post-measurement state.
pub fn measure_wfs_with<R: Rng + ?Sized>(ctx: &RepContext, sigma: &GroupRep, psi: &StateVector, rng: &mut R) -> Result<WfsOutcome> {
    let branches = wfs_branches(ctx, sigma, psi)?;
    let total: f64 = branches.iter().map(|b| b.1).sum();
    let u: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let last = branches.iter().rposition(|b| b.1 > 0.0).ok_or_else(|| {
        Error::NumericalConsistency("all weak Fourier sampling probabilities vanish".into())
    })?;
    for (idx, (lambda, prob, v)) in branches.into_iter().enumerate() {
        if prob <= 0.0 {
            continue;
        }
        acc += prob;
        if u < acc || idx == last {
            let (state, _) = StateVector::normalized(psi.registers().to_vec(), v)?;
            return Ok(WfsOutcome { lambda, probability: prob, state });
        }
    }
    unreachable!("the last positive branch always returns")
}

/// [`measure_wfs_with`] on a ChaCha8 generator seeded with `seed`.
pub fn measure_wfs(ctx: &RepContext, sigma: &GroupRep, psi: &StateVector, seed: u64) -> Result<WfsOutcome> {
    measure_wfs_with(ctx, sigma, psi, &mut rng_from_seed(seed))
}

/// `lambda -> d_lambda m_{mu nu lambda} / (d_mu d_nu)` in partition order.
pub fn lightning_distribution(ctx: &RepContext, mu: &Partition, nu: &Partition) -> Result<Vec<(Partition, f64)>> {
    let sigma = tensor_rep(mu, nu)?;
    ctx.check_rep(&sigma)?;
    let denom = (mu.dimension() * nu.dimension()) as f64;
    ctx.partitions()
        .iter()
        .map(|l| {
            let m = multiplicity_character(ctx, &sigma, l)?.value;
            Ok((l.clone(), (l.dimension() * m) as f64 / denom))
        })
        .collect()
}

/// `lambda -> <Phi+|(Xi_lambda ⊗ I)|Phi+>` on `C^D ⊗ C^D`, `D = d_mu d_nu`.
pub fn lightning_born(ctx: &RepContext, mu: &Partition, nu: &Partition) -> Result<Vec<(Partition, f64)>> {
    let sigma = tensor_rep(mu, nu)?;
    ctx.check_rep(&sigma)?;
    let phi = phi_plus(sigma.dim());
    wfs_branches(ctx, &sigma, &phi).map(|b| b.into_iter().map(|(l, p, _)| (l, p)).collect())
}
