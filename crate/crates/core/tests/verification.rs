use kronwit_core::entangled::{
    apply_left_register, block_decomposition, m_lambda_subspace, max_entangled_over, phi_plus, psi_lambda, unvectorize, vec_state, vectorize,
    MLambdaRoute, StateVector, Subspace,
};
use kronwit_core::kronecker::kronecker_coefficient;
use kronwit_core::kronecker::Route;
use kronwit_core::linalg::{inner, ComplexMatrix};
use kronwit_core::random::{gaussian_matrix, haar_state, rng_from_seed};
use kronwit_core::verifier::{
    acceptance_operator_for, certify_corollary_bound, certify_lemma_bound, channel_e, internal_test_operator, internal_test_probability,
    verification_acceptance_operator, CorollaryInstance, LemmaInstance, TrialMode,
};
use kronwit_core::wfs::wfs_projector;
use kronwit_core::yyrep::{irrep, tensor_rep};
use kronwit_core::{GroupRep, Partition, RepContext, C64};
use proptest::prelude::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

// (B ⊗ C) vec A by explicit index expansion:
// sum_{k,l} B_ik C_jl A_kl at position (i, j).
fn kron_apply_oracle(b: &ComplexMatrix, c: &ComplexMatrix, a: &ComplexMatrix) -> Vec<C64> {
    let mut out = Vec::new();
    for i in 0..b.rows() {
        for j in 0..c.rows() {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..b.cols() {
                for l in 0..c.cols() {
                    s += b[(i, k)] * c[(j, l)] * a[(k, l)];
                }
            }
            out.push(s);
        }
    }
    out
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn matrix_strategy(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
        .prop_map(move |v| ComplexMatrix::from_vec(n, n, v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn vectorization_identities(a in matrix_strategy(3), b in matrix_strategy(3), c in matrix_strategy(3)) {
        let va = vectorize(&a);
        let vb = vectorize(&b);
        prop_assert!((inner(&va, &va).re - a.frobenius_norm().powi(2)).abs() < 1e-10);
        prop_assert!((inner(&va, &vb) - a.adjoint().matmul(&b).trace()).norm() < 1e-10);
        let lhs = kron_apply_oracle(&b, &c, &a);
        let rhs = vectorize(&b.matmul(&a).matmul(&c.transpose()));
        prop_assert!(max_diff(&lhs, &rhs) < 1e-10);
        prop_assert!(max_diff(&b.kron(&c).mul_vec(&va), &lhs) < 1e-10);
        prop_assert_eq!(unvectorize(&va, 3, 3).unwrap(), a);
    }

    #[test]
    fn channel_is_a_self_adjoint_idempotent(x in matrix_strategy(4), y in matrix_strategy(4)) {
        let ctx = RepContext::new(3).unwrap();
        let sigma = tensor_rep(&p("2,1"), &p("2,1")).unwrap();
        let ex = channel_e(&ctx, &sigma, &x).unwrap();
        let ey = channel_e(&ctx, &sigma, &y).unwrap();
        prop_assert!(channel_e(&ctx, &sigma, &ex).unwrap().max_abs_diff(&ex) < 1e-9);
        prop_assert!((ex.frobenius_inner(&y) - x.frobenius_inner(&ey)).norm() < 1e-9);
        let xx = x.frobenius_inner(&ex);
        prop_assert!(xx.im.abs() < 1e-10 && xx.re >= -1e-10);
    }
}

#[test]
fn phi_plus_from_scaled_identity() {
    for d in 1..5 {
        let (s, _) = vec_state(&ComplexMatrix::identity(d)).unwrap();
        assert!(max_diff(s.amplitudes(), phi_plus(d).amplitudes()) < 1e-15);
    }
}

#[test]
fn channel_examples() {
    let ctx = RepContext::new(3).unwrap();
    let amp = GroupRep::amplified(2, &irrep(&p("2,1")));
    let x = gaussian_matrix(&mut rng_from_seed(8), 4, 4);
    let e = channel_e(&ctx, &amp, &x).unwrap();
    // block (i, j) of E(X) is tr(X^(ij))/2 * I_2
    for i in 0..2 {
        for j in 0..2 {
            let blk = x.block(2 * i, 2 * j, 2, 2);
            let expected = ComplexMatrix::identity(2).scale(blk.trace() / 2.0);
            assert!(e.block(2 * i, 2 * j, 2, 2).max_abs_diff(&expected) < 1e-12);
        }
    }
    let id = ComplexMatrix::identity(4);
    assert!(channel_e(&ctx, &amp, &id).unwrap().max_abs_diff(&id) < 1e-12);
}

#[test]
fn internal_test_examples() {
    let ctx = RepContext::new(3).unwrap();
    let amp = GroupRep::amplified(2, &irrep(&p("2,1")));
    // |a> ⊗ Phi+ inside the blocks: X = A ⊗ I_2 / sqrt(2), ||A||_F = 1
    let mut a = ComplexMatrix::zeros(2, 2);
    a[(0, 1)] = C64::new(0.6, 0.0);
    a[(1, 0)] = C64::new(0.0, 0.8);
    let (good, _) = vec_state(&a.kron(&ComplexMatrix::identity(2))).unwrap();
    let t = internal_test_probability(&ctx, &amp, good.amplitudes()).unwrap();
    assert!((t.formula - 1.0).abs() < 1e-12 && (t.circuit - 1.0).abs() < 1e-12);

    // every 2x2 block traceless
    let traceless = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
    let (bad, _) = vec_state(&gaussian_matrix(&mut rng_from_seed(2), 2, 2).kron(&traceless)).unwrap();
    let t = internal_test_probability(&ctx, &amp, bad.amplitudes()).unwrap();
    assert!((t.formula - 0.5).abs() < 1e-12 && (t.circuit - 0.5).abs() < 1e-12);

    let sigma = tensor_rep(&p("2,1"), &p("2,1")).unwrap();
    let mut rng = rng_from_seed(21);
    for _ in 0..50 {
        let psi = haar_state(&mut rng, 16);
        let t = internal_test_probability(&ctx, &sigma, &psi).unwrap();
        assert!((t.circuit - (0.5 + 0.5 * t.overlap)).abs() < 1e-8);
        assert!(t.circuit >= 0.5 - 1e-12);
        assert_eq!((t.circuit - 1.0).abs() < 1e-8, (t.formula - 1.0).abs() < 1e-8);
    }
}

#[test]
fn projector_commutes_with_internal_test() {
    for n in [3, 4] {
        let ctx = RepContext::new(n).unwrap();
        for (mu, nu) in [(0, 1), (1, 1), (1, 2)] {
            let sigma = tensor_rep(&ctx.partitions()[mu], &ctx.partitions()[nu]).unwrap();
            let t = internal_test_operator(&ctx, &sigma).unwrap();
            for lambda in ctx.partitions() {
                let lifted = wfs_projector(&ctx, &sigma, lambda).unwrap().matrix().kron(&ComplexMatrix::identity(sigma.dim()));
                assert!(lifted.matmul(&t).max_abs_diff(&t.matmul(&lifted)) < 1e-8);
            }
        }
    }
}

#[test]
fn accepting_multiplicity_is_m_squared_with_a_gap() {
    for n in 2..=4 {
        let ctx = RepContext::new(n).unwrap();
        for mu in ctx.partitions() {
            for nu in ctx.partitions() {
                if mu > nu {
                    continue;
                }
                for lambda in ctx.partitions() {
                    let m = kronecker_coefficient(&ctx, mu, nu, lambda, Route::CharacterSum).unwrap().value;
                    let op = verification_acceptance_operator(&ctx, mu, nu, lambda).unwrap();
                    assert_eq!(op.accepting_multiplicity(), m * m, "({mu}) ({nu}) ({lambda})");
                    assert!(op.spectrum_excess() < 1e-8);
                    assert!(op.has_gap(op.soundness(), op.completeness()));
                    assert!(op.soundness() <= 8.0 / 9.0);
                    if m == 0 {
                        assert!(op.spectrum()[0] <= op.soundness());
                    }
                }
            }
        }
    }
}

#[test]
fn regular_representation_multiplicity_gap() {
    let ctx = RepContext::new(3).unwrap();
    let (left, _) = ctx.regular_representations().unwrap();
    let lambda = p("2,1");
    let op = acceptance_operator_for(&ctx, &left, &lambda).unwrap();
    assert_eq!(op.accepting_multiplicity(), 4);
    let span = m_lambda_subspace(&ctx, &left, &lambda, MLambdaRoute::Span).unwrap();
    let fixed = m_lambda_subspace(&ctx, &left, &lambda, MLambdaRoute::FixedPoint).unwrap();
    assert_eq!((span.dim(), fixed.dim()), (2, 4));
    assert!(fixed.containment_residual(&span) < 1e-8);
    let b = block_decomposition(&ctx, &left, &lambda).unwrap();
    assert!(b.conjugation_residual(&left) < 1e-9);
}

#[test]
fn s3_witness_is_the_unique_accepting_state() {
    let ctx = RepContext::new(3).unwrap();
    let l = p("2,1");
    let sigma = tensor_rep(&l, &l).unwrap();
    let op = verification_acceptance_operator(&ctx, &l, &l, &l).unwrap();
    assert_eq!(op.accepting_multiplicity(), 1);
    let xi = wfs_projector(&ctx, &sigma, &l).unwrap();
    let witness = max_entangled_over(&Subspace::image_of(xi.matrix()).unwrap()).unwrap();
    assert!((op.acceptance_probability(witness.amplitudes()) - 1.0).abs() < 1e-9);
    assert!((inner(&op.eigenvector(0), witness.amplitudes()).norm() - 1.0).abs() < 1e-8);
    let t = internal_test_probability(&ctx, &sigma, witness.amplitudes()).unwrap();
    assert!((t.formula - 1.0).abs() < 1e-9);
}

#[test]
fn containment_of_span_route_in_fixed_points() {
    for n in [3, 4] {
        let ctx = RepContext::new(n).unwrap();
        for mu in ctx.partitions() {
            for lambda in ctx.partitions() {
                let sigma = tensor_rep(mu, &ctx.partitions()[1]).unwrap();
                let span = m_lambda_subspace(&ctx, &sigma, lambda, MLambdaRoute::Span).unwrap();
                let fixed = m_lambda_subspace(&ctx, &sigma, lambda, MLambdaRoute::FixedPoint).unwrap();
                assert!(fixed.containment_residual(&span) < 1e-8);
                if span.dim() == 1 {
                    assert_eq!(fixed.dim(), 1);
                    assert!(span.containment_residual(&fixed) < 1e-8);
                }
            }
        }
    }
}

#[test]
fn psi_lambda_matches_lightning_weight() {
    let ctx = RepContext::new(3).unwrap();
    let l = p("2,1");
    let sigma = tensor_rep(&l, &l).unwrap();
    let phi = phi_plus(4);
    let (psi, a) = psi_lambda(&ctx, &sigma, &l, &phi).unwrap();
    // A = (|G|/d)^2 * <phi|Xi ⊗ I|phi> = 9 * 1/2
    assert!((a - 4.5).abs() < 1e-9);
    let xi = wfs_projector(&ctx, &sigma, &l).unwrap();
    let back = apply_left_register(xi.matrix(), psi.amplitudes()).unwrap();
    assert!(max_diff(&back, psi.amplitudes()) < 1e-8);
    let mut rng = rng_from_seed(4);
    for _ in 0..10 {
        let phi = StateVector::new(vec![4, 4], haar_state(&mut rng, 16)).unwrap();
        let (psi, _) = psi_lambda(&ctx, &sigma, &l, &phi).unwrap();
        let back = apply_left_register(xi.matrix(), psi.amplitudes()).unwrap();
        assert!(max_diff(&back, psi.amplitudes()) < 1e-8);
    }
}

#[test]
fn lemma_bound_examples() {
    let ctx = RepContext::new(3).unwrap();
    let inst = LemmaInstance::new(&ctx, 2, &p("2,1")).unwrap();
    let exact = inst.target().basis()[2].clone();
    let r = inst.check(&ctx, 0, &exact).unwrap();
    assert!(r.epsilon < 1e-12 && r.distance_to_target < 1e-12 && r.bound_satisfied);

    let traceless = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
    let (bad, _) = vec_state(&gaussian_matrix(&mut rng_from_seed(6), 2, 2).kron(&traceless)).unwrap();
    let r = inst.check(&ctx, 0, bad.amplitudes()).unwrap();
    assert!((r.epsilon - 0.5).abs() < 1e-12);
    assert!((r.bound - 2.0).abs() < 1e-12 && (r.distance_to_target - 1.0).abs() < 1e-12 && r.bound_satisfied);

    for mode in [TrialMode::Haar, TrialMode::Perturbed { scale: 0.1 }] {
        let reports = certify_lemma_bound(&ctx, 2, &p("2,1"), 200, 3, mode).unwrap();
        assert_eq!(reports.len(), 200);
        assert!(reports.iter().enumerate().all(|(i, r)| r.trial == i && r.bound_satisfied));
    }
}

#[test]
fn corollary_bound_examples() {
    let ctx = RepContext::new(3).unwrap();
    let l = p("2,1");
    let inst = CorollaryInstance::new(&ctx, &l, &l, &l).unwrap();
    let exact = inst.accepting().basis()[0].clone();
    let reports = inst.check(&ctx, 0, &exact).unwrap();
    assert!(reports.iter().all(|r| r.epsilon < 1e-9 && r.distance_to_target < 1e-8));

    // in Gamma_lambda with traceless internal block: internal test gives 1/2
    let sigma = inst.sigma().clone();
    let xi = wfs_projector(&ctx, &sigma, &l).unwrap();
    let img = Subspace::image_of(xi.matrix()).unwrap();
    let (b0, b1) = (&img.basis()[0], &img.basis()[1]);
    let x = ComplexMatrix::outer(b0, b1);
    let (psi, _) = vec_state(&x).unwrap();
    let t = internal_test_probability(&ctx, &sigma, psi.amplitudes()).unwrap();
    assert!((t.formula - 0.5).abs() < 1e-9);
    let reports = inst.check(&ctx, 0, psi.amplitudes()).unwrap();
    assert!((reports[0].epsilon - 0.5).abs() < 1e-9);

    let reports = certify_corollary_bound(&ctx, &l, &l, &l, 200, 9, TrialMode::Haar).unwrap();
    assert!(reports.iter().all(|r| r.bound_satisfied));
}
