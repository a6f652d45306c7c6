//! The internal-state test, the two-step `(sigma, lambda)` verifier, its
//! acceptance operator, and Monte-Carlo certification of the robustness
//! bounds.
//!
//! States live on `C^D ⊗ C^D` and are read as `psi = vec X`. The group average
//! `E(X) = (1/|G|) sum_k sigma(k) X sigma(k)^dagger` is the orthogonal
//! projection onto the commutant of `sigma`; its vectorized form is
//! `Q = (1/|G|) sum_k sigma(k) ⊗ conj(sigma(k))`.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::entangled::{apply_left_register, square_side, unvectorize, vectorize, StateVector, Subspace};
use crate::error::invalid;
use crate::linalg::{hermitian_eigen, inner, norm, ComplexMatrix, MatrixAccumulator, C64, ONE, ZERO};
use crate::random::{haar_state, rng_from_seed, trial_rng};
use crate::symgroup::Partition;
use crate::tolerance;
use crate::wfs::{measure_wfs_with, wfs_projector, Projector};
use crate::yyrep::{irrep, tensor_rep, GroupRep, RepContext};
use crate::{Error, Result};

/// `E(X) = (1/|G|) sum_k sigma(k) X sigma(k)^dagger`.
pub fn channel_e(ctx: &RepContext, sigma: &GroupRep, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    ctx.check_rep(sigma)?;
    let d = sigma.dim();
    if x.rows() != d || x.cols() != d {
        return Err(invalid!("channel input must be {}x{}, got {}x{}", d, d, x.rows(), x.cols()));
    }
    let mut acc = MatrixAccumulator::new(d, d);
    for k in 0..ctx.order() {
        let s = ctx.image(sigma, k)?;
        acc.add_scaled(ONE, &s.matmul(x).matmul(&s.adjoint()));
    }
    Ok(acc.finish().scale_real(1.0 / ctx.order() as f64))
}

fn check_operator_size(ctx: &RepContext, side: usize, what: &str) -> Result<()> {
    if side.saturating_mul(side) > ctx.limits().max_state_len {
        return Err(Error::ResourceLimit(format!(
            "{what} of size {side}x{side} exceeds the cap of {} entries",
            ctx.limits().max_state_len
        )));
    }
    Ok(())
}

/// `Q = (1/|G|) sum_k sigma(k) ⊗ conj(sigma(k))` on `C^{D^2}`.
pub fn twirl_operator(ctx: &RepContext, sigma: &GroupRep) -> Result<ComplexMatrix> {
    ctx.check_rep(sigma)?;
    let dd = sigma.dim() * sigma.dim();
    check_operator_size(ctx, dd, "twirl operator")?;
    let mut acc = MatrixAccumulator::new(dd, dd);
    for k in 0..ctx.order() {
        let s = ctx.image(sigma, k)?;
        acc.add_scaled(ONE, &s.kron(&s.conj()));
    }
    Ok(acc.finish().scale_real(1.0 / ctx.order() as f64))
}

/// `T = I/2 + Q/2`, the acceptance operator of the Hadamard-test form of
/// the internal-state test.
pub fn internal_test_operator(ctx: &RepContext, sigma: &GroupRep) -> Result<ComplexMatrix> {
    let q = twirl_operator(ctx, sigma)?;
    Ok(ComplexMatrix::identity(q.rows()).add(&q).scale_real(0.5))
}

/// Both acceptance values of the internal-state test for one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InternalTest {
    /// `<X, E(X)>_F`, real and in `[0, 1]` for unit `vec X`.
    pub overlap: f64,
    /// `1/2 + 1/2 |<X, E(X)>_F|^2`.
    pub formula: f64,
    /// Simulated Hadamard test, `1/2 + 1/2 Re<tau|U|tau>`.
    pub circuit: f64,
}

fn state_matrix(sigma: &GroupRep, psi: &[C64]) -> Result<ComplexMatrix> {
    let d = sigma.dim();
    if psi.len() != d * d {
        return Err(invalid!("state of dimension {} given for D^2 = {}", psi.len(), d * d));
    }
    unvectorize(psi, d, d)
}

/// `(<X, E(X)>_F, 1/2 + 1/2 |<X, E(X)>_F|^2)` for `psi = vec X`.
pub fn internal_test_formula(ctx: &RepContext, sigma: &GroupRep, psi: &[C64]) -> Result<(f64, f64)> {
    let x = state_matrix(sigma, psi)?;
    let overlap = x.frobenius_inner(&channel_e(ctx, sigma, &x)?);
    Ok((overlap.re, 0.5 + 0.5 * overlap.norm_sqr()))
}

/// Statevector simulation of the 1-bit phase estimation circuit: a qubit
/// in `|0>`, the control register in the uniform superposition over `G`,
/// then `H`, controlled `U = sum_k |k><k| ⊗ sigma(k) ⊗ conj(sigma(k))`, `H`;
/// returns the probability of reading 0 on the qubit.
pub fn simulate_internal_test_circuit(ctx: &RepContext, sigma: &GroupRep, psi: &[C64]) -> Result<f64> {
    ctx.check_rep(sigma)?;
    let d = sigma.dim();
    state_matrix(sigma, psi)?;
    let order = ctx.order();
    let dd = d * d;
    let half = order * dd;
    let len = 2usize.saturating_mul(half);
    if len > ctx.limits().max_state_len {
        return Err(Error::ResourceLimit(format!(
            "circuit state of 2 * |G| * D^2 = {} amplitudes exceeds the cap of {}",
            len,
            ctx.limits().max_state_len
        )));
    }
    let mut state = alloc::vec![ZERO; len];
    let amp = 1.0 / (order as f64).sqrt();
    for k in 0..order {
        for (v, z) in psi.iter().enumerate() {
            state[k * dd + v] = z * amp;
        }
    }
    hadamard_on_qubit(&mut state, half);
    for k in 0..order {
        let s = ctx.image(sigma, k)?;
        let block = &mut state[half + k * dd..half + (k + 1) * dd];
        // (s ⊗ conj s) vec Y = vec(s Y s^dagger)
        let y = unvectorize(block, d, d)?;
        block.copy_from_slice(s.matmul(&y).matmul(&s.adjoint()).data());
    }
    hadamard_on_qubit(&mut state, half);
    Ok(state[..half].iter().map(|z| z.norm_sqr()).sum())
}

fn hadamard_on_qubit(state: &mut [C64], half: usize) {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let (zero, one) = state.split_at_mut(half);
    for (a, b) in zero.iter_mut().zip(one.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = (x + y) * h;
        *b = (x - y) * h;
    }
}

pub fn internal_test_probability(ctx: &RepContext, sigma: &GroupRep, psi: &[C64]) -> Result<InternalTest> {
    let (overlap, formula) = internal_test_formula(ctx, sigma, psi)?;
    let circuit = simulate_internal_test_circuit(ctx, sigma, psi)?;
    Ok(InternalTest { overlap, formula, circuit })
}

/// `A = (Xi_lambda ⊗ I) T (Xi_lambda ⊗ I)` with its spectrum.
#[derive(Clone, Debug)]
pub struct AcceptanceOperator {
    matrix: ComplexMatrix,
    spectrum: Vec<f64>,
    eigenvectors: ComplexMatrix,
    accepting: usize,
    soundness: f64,
}

impl AcceptanceOperator {
    /// Diagonalizes a Hermitian acceptance operator. Eigenvalues within
    /// [`tolerance::EIGEN_CLUSTER`] of 1 count as accepting; the soundness is
    /// the largest remaining eigenvalue (0 if there is none).
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eigen(&matrix)?;
        let accepting = eig.values.iter().filter(|&&v| v >= 1.0 - tolerance::EIGEN_CLUSTER).count();
        let soundness = eig.values.get(accepting).copied().unwrap_or(0.0).max(0.0);
        Ok(AcceptanceOperator { matrix, spectrum: eig.values, eigenvectors: eig.vectors, accepting, soundness })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// Always 1: accepting states pass with certainty.
    pub fn completeness(&self) -> f64 {
        1.0
    }

    pub fn soundness(&self) -> f64 {
        self.soundness
    }

    /// Multiplicity of the eigenvalue 1.
    pub fn accepting_multiplicity(&self) -> usize {
        self.accepting
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// Eigenspace of the eigenvalue 1.
    pub fn accepting_subspace(&self) -> Subspace {
        let basis = (0..self.accepting).map(|k| self.eigenvector(k)).collect();
        Subspace::from_orthonormal(self.matrix.rows(), basis).expect("eigenvectors are orthonormal")
    }

    /// Eigenvalues strictly inside `(s, c)`, each side shrunk by
    /// [`tolerance::EIGEN_CLUSTER`].
    pub fn eigenvalues_between(&self, s: f64, c: f64) -> Vec<f64> {
        self.spectrum
            .iter()
            .copied()
            .filter(|&v| v > s + tolerance::EIGEN_CLUSTER && v < c - tolerance::EIGEN_CLUSTER)
            .collect()
    }

    /// No eigenvalue in `(s, c)`.
    pub fn has_gap(&self, s: f64, c: f64) -> bool {
        self.eigenvalues_between(s, c).is_empty()
    }

    /// Largest distance of an eigenvalue from `[0, 1]`.
    pub fn spectrum_excess(&self) -> f64 {
        self.spectrum.iter().map(|&v| (-v).max(v - 1.0).max(0.0)).fold(0.0, f64::max)
    }

    /// `<psi|A|psi>`.
    pub fn acceptance_probability(&self, psi: &[C64]) -> f64 {
        inner(psi, &self.matrix.mul_vec(psi)).re
    }
}

/// Acceptance operator of the two-step verifier for `sigma` and `lambda`.
pub fn acceptance_operator_for(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<AcceptanceOperator> {
    let xi = wfs_projector(ctx, sigma, lambda)?;
    let t = internal_test_operator(ctx, sigma)?;
    let lifted = xi.matrix().kron(&ComplexMatrix::identity(sigma.dim()));
    let a = lifted.matmul(&t).matmul(&lifted);
    let a = a.add(&a.adjoint()).scale_real(0.5);
    AcceptanceOperator::from_matrix(a)
}

/// [`acceptance_operator_for`] with `sigma = rho^mu ⊗ rho^nu`.
pub fn verification_acceptance_operator(ctx: &RepContext, mu: &Partition, nu: &Partition, lambda: &Partition) -> Result<AcceptanceOperator> {
    acceptance_operator_for(ctx, &tensor_rep(mu, nu)?, lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Internal-state test on `I_m ⊗ irrep`, distance to `{|a> ⊗ Phi+}`,
    /// bound `2 sqrt(2 eps)`.
    Lemma,
    /// Full verifier, distance to the accepting eigenspace, bound
    /// `3 sqrt(2 eps)`.
    Corollary,
    /// Internal-state test on the post-measurement state, distance to the
    /// accepting eigenspace, bound `2 sqrt(2 eps)`.
    Theorem,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Lemma => "lemma",
            CheckKind::Corollary => "corollary",
            CheckKind::Theorem => "theorem",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestReport {
    pub check: CheckKind,
    pub trial: usize,
    pub acceptance_probability: f64,
    pub epsilon: f64,
    pub distance_to_target: f64,
    pub bound: f64,
    pub bound_satisfied: bool,
}

impl TestReport {
    /// Fills in `epsilon`, the bound `factor * sqrt(2 eps)` and the verdict.
    pub fn new(check: CheckKind, trial: usize, acceptance_probability: f64, distance_to_target: f64, factor: f64) -> Self {
        let epsilon = (1.0 - acceptance_probability).max(0.0);
        let bound = factor * (2.0 * epsilon).sqrt();
        TestReport {
            check,
            trial,
            acceptance_probability,
            epsilon,
            distance_to_target,
            bound,
            bound_satisfied: distance_to_target <= bound + tolerance::BOUND_SLACK,
        }
    }
}

/// How certification trials draw their states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TrialMode {
    /// Haar-random unit vectors.
    Haar,
    /// `normalize(target + scale * h)` with `h` Haar-random.
    Perturbed { scale: f64 },
}

/// The state of trial `trial`, drawn from `seed + trial`.
pub fn trial_state(mode: TrialMode, target: &[C64], seed: u64, trial: usize) -> Vec<C64> {
    let mut rng = trial_rng(seed, trial);
    let h = haar_state(&mut rng, target.len());
    match mode {
        TrialMode::Haar => h,
        TrialMode::Perturbed { scale } => {
            let v: Vec<C64> = target.iter().zip(&h).map(|(t, x)| t + x * scale).collect();
            let nv = norm(&v);
            v.into_iter().map(|z| z / nv).collect()
        }
    }
}

/// `sigma = I_m ⊗ rho^lambda` and the subspace `{vec(A ⊗ I) : A in C^{m x m}}`.
#[derive(Clone, Debug)]
pub struct LemmaInstance {
    sigma: GroupRep,
    target: Subspace,
}

impl LemmaInstance {
    pub fn new(ctx: &RepContext, copies: usize, lambda: &Partition) -> Result<Self> {
        if copies == 0 {
            return Err(invalid!("need at least one copy of the irrep"));
        }
        ctx.partition_index(lambda)?;
        let sigma = GroupRep::amplified(copies, &irrep(lambda));
        let d1 = lambda.dimension();
        let d = sigma.dim();
        check_operator_size(ctx, d, "lemma instance")?;
        let s = C64::new(1.0 / (d1 as f64).sqrt(), 0.0);
        let mut basis = Vec::with_capacity(copies * copies);
        for i in 0..copies {
            for j in 0..copies {
                let mut e = ComplexMatrix::zeros(copies, copies);
                e[(i, j)] = s;
                basis.push(vectorize(&e.kron(&ComplexMatrix::identity(d1))));
            }
        }
        Ok(LemmaInstance { sigma, target: Subspace::from_orthonormal(d * d, basis)? })
    }

    pub fn sigma(&self) -> &GroupRep {
        &self.sigma
    }

    pub fn target(&self) -> &Subspace {
        &self.target
    }

    /// Report for one state.
    pub fn check(&self, ctx: &RepContext, trial: usize, psi: &[C64]) -> Result<TestReport> {
        let (_, formula) = internal_test_formula(ctx, &self.sigma, psi)?;
        Ok(TestReport::new(CheckKind::Lemma, trial, formula, self.target.distance(psi), 2.0))
    }

    pub fn run_trial(&self, ctx: &RepContext, trial: usize, seed: u64, mode: TrialMode) -> Result<TestReport> {
        let d = self.sigma.dim();
        let phi = crate::entangled::phi_plus(d);
        self.check(ctx, trial, &trial_state(mode, phi.amplitudes(), seed, trial))
    }
}

/// Internal-state test reports for `trials` seeded states on
/// `I_copies ⊗ rho^lambda`, in trial order.
pub fn certify_lemma_bound(ctx: &RepContext, copies: usize, lambda: &Partition, trials: usize, seed: u64, mode: TrialMode) -> Result<Vec<TestReport>> {
    let inst = LemmaInstance::new(ctx, copies, lambda)?;
    (0..trials).map(|t| inst.run_trial(ctx, t, seed, mode)).collect()
}

/// `sigma = rho^mu ⊗ rho^nu`, its projector `Xi_lambda` and the accepting
/// eigenspace of the verifier.
#[derive(Clone, Debug)]
pub struct CorollaryInstance {
    sigma: GroupRep,
    xi: Projector,
    accepting: Subspace,
}

impl CorollaryInstance {
    pub fn new(ctx: &RepContext, mu: &Partition, nu: &Partition, lambda: &Partition) -> Result<Self> {
        let sigma = tensor_rep(mu, nu)?;
        let op = acceptance_operator_for(ctx, &sigma, lambda)?;
        if op.accepting_multiplicity() == 0 {
            return Err(invalid!("m({}, {}, {}) = 0: nothing is accepted", mu, nu, lambda));
        }
        let xi = wfs_projector(ctx, &sigma, lambda)?;
        Ok(CorollaryInstance { sigma, xi, accepting: op.accepting_subspace() })
    }

    pub fn sigma(&self) -> &GroupRep {
        &self.sigma
    }

    pub fn accepting(&self) -> &Subspace {
        &self.accepting
    }

    /// Corollary report for `psi` and, when the measurement outcome has
    /// positive probability, the report for the post-measurement state.
    pub fn check(&self, ctx: &RepContext, trial: usize, psi: &[C64]) -> Result<Vec<TestReport>> {
        let projected = apply_left_register(self.xi.matrix(), psi)?;
        let p = inner(psi, &projected).re.max(0.0);
        let mut reports = Vec::with_capacity(2);
        let mut post_report = None;
        let mut accept = 0.0;
        if p > tolerance::DEGENERATE_NORM_SQR {
            let s = 1.0 / p.sqrt();
            let post: Vec<C64> = projected.iter().map(|z| z * s).collect();
            let (_, formula) = internal_test_formula(ctx, &self.sigma, &post)?;
            accept = p * formula;
            post_report = Some(TestReport::new(CheckKind::Theorem, trial, formula, self.accepting.distance(&post), 2.0));
        }
        reports.push(TestReport::new(CheckKind::Corollary, trial, accept, self.accepting.distance(psi), 3.0));
        reports.extend(post_report);
        Ok(reports)
    }

    pub fn run_trial(&self, ctx: &RepContext, trial: usize, seed: u64, mode: TrialMode) -> Result<Vec<TestReport>> {
        let target = &self.accepting.basis()[0];
        self.check(ctx, trial, &trial_state(mode, target, seed, trial))
    }
}

/// Verifier reports for `trials` seeded states, in trial order; each trial
/// contributes a corollary report and usually a theorem report.
pub fn certify_corollary_bound(
    ctx: &RepContext,
    mu: &Partition,
    nu: &Partition,
    lambda: &Partition,
    trials: usize,
    seed: u64,
    mode: TrialMode,
) -> Result<Vec<TestReport>> {
    let inst = CorollaryInstance::new(ctx, mu, nu, lambda)?;
    let mut out = Vec::new();
    for t in 0..trials {
        out.extend(inst.run_trial(ctx, t, seed, mode)?);
    }
    Ok(out)
}

/// One sampled run of the two-step verifier.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifierRun {
    /// Measured irrep label.
    pub outcome: Partition,
    pub outcome_probability: f64,
    /// Acceptance probability of the internal-state test on the
    /// post-measurement state; absent when the label was wrong.
    pub internal_probability: Option<f64>,
    pub accepted: bool,
}

/// Measures `{Xi_mu ⊗ I}` on `psi`, rejects unless the outcome is `lambda`,
/// then accepts with the simulated internal-test circuit probability. Both
/// draws come from one ChaCha8 stream seeded with `seed`.
pub fn run_verifier(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition, psi: &StateVector, seed: u64) -> Result<VerifierRun> {
    ctx.partition_index(lambda)?;
    let d = sigma.dim();
    if psi.dim() != d * d {
        return Err(invalid!("verifier input of dimension {} given for D^2 = {}", psi.dim(), d * d));
    }
    square_side(psi.dim())?;
    let mut rng = rng_from_seed(seed);
    let outcome = measure_wfs_with(ctx, sigma, psi, &mut rng)?;
    if outcome.lambda != *lambda {
        return Ok(VerifierRun { outcome: outcome.lambda, outcome_probability: outcome.probability, internal_probability: None, accepted: false });
    }
    let p = simulate_internal_test_circuit(ctx, sigma, outcome.state.amplitudes())?;
    let accepted = rng.random::<f64>() < p;
    Ok(VerifierRun { outcome: outcome.lambda, outcome_probability: outcome.probability, internal_probability: Some(p), accepted })
}
