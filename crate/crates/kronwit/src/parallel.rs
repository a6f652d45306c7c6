//! Rayon versions of the group-sum kernels.
//!
//! Chunks come from [`sum_chunks`] and are merged by [`merge_chunks`], the
//! same shapes the serial code uses, so results are bitwise identical to
//! the single-threaded ones whatever the thread count.

use kronwit_core::verifier::{CorollaryInstance, LemmaInstance, TestReport, TrialMode};
use kronwit_core::wfs::{character_weighted_sum, finish_projector, merge_chunks, sum_chunks, wfs_projector, Projector};
use kronwit_core::{GroupRep, Partition, RepContext, RepKind, Result};
use rayon::prelude::*;

/// `Xi_lambda` by the direct group sum, chunks summed in parallel.
pub fn projector_direct(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<Projector> {
    ctx.check_rep(sigma)?;
    ctx.partition_index(lambda)?;
    ctx.require_dense("group sums")?;
    let parts = sum_chunks(ctx.order())
        .into_par_iter()
        .map(|r| character_weighted_sum(ctx, sigma, lambda, r))
        .collect::<Result<Vec<_>>>()?;
    finish_projector(ctx, lambda, merge_chunks(parts).expect("groups are nonempty"))
}

/// Same value as `wfs::wfs_projector`.
pub fn projector(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<Projector> {
    match sigma.kind() {
        RepKind::LiftWithIdentity(..) | RepKind::Amplified(..) | RepKind::Conjugate(..) => wfs_projector(ctx, sigma, lambda),
        _ => projector_direct(ctx, sigma, lambda),
    }
}

pub fn povm(ctx: &RepContext, sigma: &GroupRep) -> Result<Vec<(Partition, Projector)>> {
    ctx.partitions().iter().map(|l| Ok((l.clone(), projector(ctx, sigma, l)?))).collect()
}

/// Lemma reports for trials `0..trials`, in trial order.
pub fn lemma_trials(ctx: &RepContext, inst: &LemmaInstance, trials: usize, seed: u64, mode: TrialMode) -> Result<Vec<TestReport>> {
    (0..trials).into_par_iter().map(|t| inst.run_trial(ctx, t, seed, mode)).collect()
}

/// Corollary (and theorem) reports for trials `0..trials`, in trial order.
pub fn corollary_trials(ctx: &RepContext, inst: &CorollaryInstance, trials: usize, seed: u64, mode: TrialMode) -> Result<Vec<TestReport>> {
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|t| inst.run_trial(ctx, t, seed, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use kronwit_core::verifier::certify_corollary_bound;
    use kronwit_core::wfs::wfs_projector_direct;
    use kronwit_core::yyrep::tensor_rep;

    #[test]
    fn parallel_sum_is_bitwise_serial() {
        let ctx = RepContext::new(5).unwrap();
        let mu: Partition = "3,2".parse().unwrap();
        let sigma = tensor_rep(&mu, &"4,1".parse().unwrap()).unwrap();
        for lambda in ctx.partitions() {
            let a = projector_direct(&ctx, &sigma, lambda).unwrap();
            let b = wfs_projector_direct(&ctx, &sigma, lambda).unwrap();
            assert_eq!(a.matrix().data(), b.matrix().data());
            assert_eq!(a.rank(), b.rank());
        }
    }

    #[test]
    fn parallel_trials_keep_order() {
        let ctx = RepContext::new(3).unwrap();
        let l: Partition = "2,1".parse().unwrap();
        let inst = CorollaryInstance::new(&ctx, &l, &l, &l).unwrap();
        let a = corollary_trials(&ctx, &inst, 20, 9, TrialMode::Haar).unwrap();
        let b = certify_corollary_bound(&ctx, &l, &l, &l, 20, 9, TrialMode::Haar).unwrap();
        assert_eq!(a, b);
    }
}
