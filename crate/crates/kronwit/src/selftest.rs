//! Runs the invariant suites of every module at small `n` and summarizes
//! pass/fail counts and the largest residual seen.
//!
//! The JSON summary depends only on `(n_max, trials, seed)`; wall-clock
//! times are returned separately so they never enter it.

use std::time::Instant;

use kronwit_core::entangled::{max_entangled_over, phi_plus, psi_lambda, vectorize, Subspace};
use kronwit_core::kronecker::{kronecker_both, multiplicity_character};
use kronwit_core::random::{gaussian_matrix, haar_state, rng_from_seed};
use kronwit_core::symgroup::enumerate_partitions;
use kronwit_core::verifier::{
    acceptance_operator_for, internal_test_probability, CorollaryInstance, LemmaInstance, TrialMode,
};
use kronwit_core::wfs::{gpe_kraus, lightning_born, lightning_distribution, wfs_povm};
use kronwit_core::yyrep::tensor_rep;
use kronwit_core::{factorial, ComplexMatrix, Partition, Permutation, RepContext, C64};
use rand::Rng;
use serde::Serialize;

use crate::CliError;

/// Largest `n_max` accepted.
pub const N_MAX_LIMIT: usize = 5;
/// Suites doing `|G|`-sized sums over all index pairs stop here.
const HEAVY_N: usize = 4;
const KEEP_FAILURES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_residual: f64,
    /// First few failing checks.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

struct Suite {
    report: SuiteReport,
}

impl Suite {
    fn new(name: &str) -> Self {
        Suite {
            report: SuiteReport { name: name.into(), checks: 0, passed: 0, failed: 0, max_residual: 0.0, failures: Vec::new() },
        }
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.report.checks += 1;
        if ok {
            self.report.passed += 1;
        } else {
            self.report.failed += 1;
            if self.report.failures.len() < KEEP_FAILURES {
                self.report.failures.push(label());
            }
        }
    }

    fn residual(&mut self, r: f64, tol: f64, label: impl FnOnce() -> String) {
        if r.is_nan() {
            self.report.max_residual = f64::NAN;
        } else if !self.report.max_residual.is_nan() {
            self.report.max_residual = self.report.max_residual.max(r);
        }
        self.check(r <= tol, || format!("{} (residual {r:e})", label()));
    }

    /// Runs `body`; an error counts as one failed check.
    fn run(mut self, body: impl FnOnce(&mut Suite) -> kronwit_core::Result<()>) -> SuiteReport {
        if let Err(e) = body(&mut self) {
            self.check(false, || e.to_string());
        }
        self.report
    }
}

fn p(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

fn contexts(n_max: usize) -> kronwit_core::Result<Vec<RepContext>> {
    (1..=n_max).map(RepContext::new).collect()
}

fn symgroup_suite(ctxs: &[RepContext]) -> SuiteReport {
    const PARTITION_COUNTS: [usize; 7] = [1, 1, 2, 3, 5, 7, 11];
    Suite::new("symgroup").run(|s| {
        for ctx in ctxs {
            let n = ctx.degree();
            let parts = enumerate_partitions(n)?;
            s.check(parts.len() == PARTITION_COUNTS[n], || format!("p({n}) = {}", parts.len()));
            s.check(parts.windows(2).all(|w| w[0] > w[1]), || format!("partition order at n = {n}"));
            let total: usize = parts.iter().map(|l| l.dimension().pow(2)).sum();
            s.check(total as u128 == factorial(n), || format!("sum d^2 at n = {n}"));
            let elems = ctx.group().elements();
            s.check(elems.windows(2).all(|w| w[0].one_line() < w[1].one_line()), || format!("element order at n = {n}"));
            for g in elems {
                let word = g.adjacent_transposition_decomposition();
                let back = Permutation::from_adjacent_word(n, &word)?;
                s.check(back == *g && word.len() == g.inversions(), || format!("decomposition of {g}"));
            }
        }
        Ok(())
    })
}

fn yyrep_suite(ctxs: &[RepContext]) -> SuiteReport {
    Suite::new("yyrep").run(|s| {
        for ctx in ctxs {
            let n = ctx.degree();
            let order = ctx.order() as f64;
            for lambda in ctx.partitions() {
                let rep = ctx.irrep(lambda)?;
                s.residual(rep.relation_residual(), 1e-9, || format!("Coxeter relations for ({lambda})"));
                for g in rep.generators() {
                    s.residual(g.unitarity_residual(), 1e-9, || format!("unitary generator for ({lambda})"));
                }
            }
            // character orthogonality over classes
            let table = ctx.character_table();
            let classes = ctx.group().classes();
            for a in 0..table.len() {
                for b in 0..table.len() {
                    let v: f64 = classes.iter().enumerate().map(|(c, cl)| cl.size as f64 * table[a][c] * table[b][c]).sum::<f64>() / order;
                    let expected = if a == b { 1.0 } else { 0.0 };
                    s.residual((v - expected).abs(), 1e-8, || format!("character orthogonality at n = {n}"));
                }
            }
            if n > HEAVY_N {
                continue;
            }
            let parts = ctx.partitions();
            for (a, la) in parts.iter().enumerate() {
                for (b, lb) in parts.iter().enumerate() {
                    let (da, db) = (la.dimension(), lb.dimension());
                    let mut worst: f64 = 0.0;
                    for i in 0..da {
                        for j in 0..da {
                            for k in 0..db {
                                for l in 0..db {
                                    let mut sum = C64::new(0.0, 0.0);
                                    for g in 0..ctx.order() {
                                        sum += ctx.irrep_image(la, g)?[(i, j)] * ctx.irrep_image(lb, g)?[(k, l)].conj();
                                    }
                                    let expected = if a == b && i == k && j == l { order / da as f64 } else { 0.0 };
                                    worst = worst.max((sum - expected).norm());
                                }
                            }
                        }
                    }
                    s.residual(worst, 1e-8, || format!("Schur orthogonality ({la}) ({lb})"));
                }
            }
            let ft = ctx.fourier_transform_matrix()?;
            s.residual(ft.unitarity_residual(), 1e-9, || format!("Fourier transform unitarity at n = {n}"));
        }
        Ok(())
    })
}

fn wfs_suite(ctxs: &[RepContext]) -> SuiteReport {
    Suite::new("wfs").run(|s| {
        for ctx in ctxs {
            let n = ctx.degree();
            for mu in ctx.partitions() {
                for nu in ctx.partitions() {
                    let sigma = tensor_rep(mu, nu)?;
                    let d = sigma.dim();
                    let povm = wfs_povm(ctx, &sigma)?;
                    let mut total = ComplexMatrix::zeros(d, d);
                    for (i, (lambda, xi)) in povm.iter().enumerate() {
                        total = total.add(xi.matrix());
                        let m = multiplicity_character(ctx, &sigma, lambda)?.value;
                        s.check(xi.rank() == m * lambda.dimension(), || format!("rank of Xi_({lambda}) on ({mu})x({nu})"));
                        for (_, other) in &povm[i + 1..] {
                            s.residual(xi.matrix().matmul(other.matrix()).max_abs(), 1e-8, || format!("orthogonality on ({mu})x({nu})"));
                        }
                        if n <= HEAVY_N {
                            let e = gpe_kraus(ctx, &sigma, lambda)?;
                            s.residual(e.gram().max_abs_diff(xi.matrix()), 1e-8, || format!("Kraus identity for ({lambda}) on ({mu})x({nu})"));
                        }
                    }
                    s.residual(total.max_abs_diff(&ComplexMatrix::identity(d)), 1e-8, || format!("resolution of identity on ({mu})x({nu})"));
                }
            }
        }
        Ok(())
    })
}

fn kronecker_suite(ctxs: &[RepContext], seed: u64) -> SuiteReport {
    Suite::new("kronecker").run(|s| {
        let mut rng = rng_from_seed(seed);
        for ctx in ctxs {
            let parts = ctx.partitions();
            let mut triples = Vec::new();
            if ctx.degree() <= HEAVY_N {
                for a in parts {
                    for b in parts {
                        for c in parts {
                            triples.push((a, b, c));
                        }
                    }
                }
            } else {
                for _ in 0..50 {
                    let pick = |r: &mut kronwit_core::random::SeededRng| &parts[r.random_range(0..parts.len())];
                    triples.push((pick(&mut rng), pick(&mut rng), pick(&mut rng)));
                }
            }
            for (a, b, c) in triples {
                let (x, y) = kronecker_both(ctx, a, b, c)?;
                s.check(x.value == y.value, || format!("routes disagree on ({a}) ({b}) ({c}): {} vs {}", x.value, y.value));
            }
            for a in parts {
                for b in parts {
                    let sigma = tensor_rep(a, b)?;
                    let mut total = 0;
                    for l in parts {
                        total += multiplicity_character(ctx, &sigma, l)?.value * l.dimension();
                    }
                    s.check(total == a.dimension() * b.dimension(), || format!("sum m d for ({a}) ({b})"));
                }
            }
        }
        Ok(())
    })
}

fn entangled_suite(ctxs: &[RepContext], trials: usize, seed: u64) -> SuiteReport {
    Suite::new("entangled").run(|s| {
        let mut rng = rng_from_seed(seed);
        for t in 0..trials {
            let (r, c, k, l) = (rng.random_range(1..5), rng.random_range(1..5), rng.random_range(1..5), rng.random_range(1..5));
            let a = gaussian_matrix(&mut rng, c, l);
            let b = gaussian_matrix(&mut rng, r, c);
            let cm = gaussian_matrix(&mut rng, k, l);
            let lhs = b.kron(&cm).mul_vec(&vectorize(&a));
            let rhs = vectorize(&b.matmul(&a).matmul(&cm.transpose()));
            let r = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            s.residual(r, 1e-10, || format!("vectorization identity, trial {t}"));
        }
        for ctx in ctxs.iter().filter(|c| c.degree() <= HEAVY_N) {
            for mu in ctx.partitions() {
                for nu in ctx.partitions() {
                    let formula = lightning_distribution(ctx, mu, nu)?;
                    let born = lightning_born(ctx, mu, nu)?;
                    let r = formula.iter().zip(&born).map(|(a, b)| (a.1 - b.1).abs()).fold(0.0, f64::max);
                    s.residual(r, 1e-9, || format!("lightning distribution for ({mu}) ({nu})"));
                    let sigma = tensor_rep(mu, nu)?;
                    let phi = phi_plus(sigma.dim());
                    for (lambda, xi) in wfs_povm(ctx, &sigma)? {
                        if xi.rank() == 0 {
                            continue;
                        }
                        let (psi, _) = psi_lambda(ctx, &sigma, &lambda, &phi)?;
                        let target = max_entangled_over(&Subspace::image_of(xi.matrix())?)?;
                        let r = psi.amplitudes().iter().zip(target.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                        s.residual(r, 1e-8, || format!("Psi_lambda of Phi+ for ({lambda}) on ({mu})x({nu})"));
                    }
                }
            }
        }
        Ok(())
    })
}

fn verifier_suite(ctxs: &[RepContext], trials: usize, seed: u64) -> SuiteReport {
    Suite::new("verifier").run(|s| {
        for ctx in ctxs.iter().filter(|c| c.degree() <= HEAVY_N) {
            for mu in ctx.partitions() {
                for nu in ctx.partitions() {
                    let sigma = tensor_rep(mu, nu)?;
                    for lambda in ctx.partitions() {
                        let m = multiplicity_character(ctx, &sigma, lambda)?.value;
                        let op = acceptance_operator_for(ctx, &sigma, lambda)?;
                        let label = || format!("({mu}) ({nu}) ({lambda})");
                        s.check(op.accepting_multiplicity() == m * m, || format!("eigenvalue-1 multiplicity for {}", label()));
                        s.check(op.has_gap(op.soundness(), 1.0), || format!("spectral gap for {}", label()));
                        s.check(op.soundness() <= 8.0 / 9.0, || format!("soundness {} for {}", op.soundness(), label()));
                        s.residual(op.spectrum_excess(), 1e-8, || format!("spectrum in [0, 1] for {}", label()));
                    }
                }
            }
        }
        if ctxs.len() < 3 {
            return Ok(());
        }
        let ctx = &ctxs[2];
        let l = p("2,1");
        let sigma = tensor_rep(&l, &l)?;
        let mut rng = rng_from_seed(seed);
        for t in 0..trials.min(20) {
            let psi = haar_state(&mut rng, 16);
            let it = internal_test_probability(ctx, &sigma, &psi)?;
            s.residual((it.circuit - (0.5 + 0.5 * it.overlap)).abs(), 1e-8, || format!("internal test circuit, trial {t}"));
        }
        let lemma = LemmaInstance::new(ctx, 2, &l)?;
        let corollary = CorollaryInstance::new(ctx, &l, &l, &l)?;
        for mode in [TrialMode::Haar, TrialMode::Perturbed { scale: 0.1 }] {
            for t in 0..trials {
                let mut reports = vec![lemma.run_trial(ctx, t, seed, mode)?];
                reports.extend(corollary.run_trial(ctx, t, seed, mode)?);
                for r in reports {
                    s.residual((r.distance_to_target - r.bound).max(0.0), 1e-8, || format!("{} bound, trial {t}", r.check.name()));
                }
            }
        }
        Ok(())
    })
}

/// Runs every suite; also returns `(suite name, milliseconds)` pairs.
pub fn selftest(n_max: usize, trials: usize, seed: u64) -> Result<(SelftestReport, Vec<(String, f64)>), CliError> {
    if n_max == 0 || n_max > N_MAX_LIMIT {
        return Err(CliError::Usage(format!("--n-max must be in 1..={N_MAX_LIMIT}, got {n_max}")));
    }
    let ctxs = contexts(n_max)?;
    let mut suites = Vec::new();
    let mut times = Vec::new();
    let runs: [&dyn Fn() -> SuiteReport; 6] = [
        &|| symgroup_suite(&ctxs),
        &|| yyrep_suite(&ctxs),
        &|| wfs_suite(&ctxs),
        &|| kronecker_suite(&ctxs, seed),
        &|| entangled_suite(&ctxs, trials, seed),
        &|| verifier_suite(&ctxs, trials, seed),
    ];
    for run in runs {
        let start = Instant::now();
        let report = run();
        times.push((report.name.clone(), start.elapsed().as_secs_f64() * 1e3));
        suites.push(report);
    }
    let passed = suites.iter().all(|s| s.failed == 0);
    Ok((SelftestReport { n_max, trials, seed, passed, suites }, times))
}
