//! `kronwit` subcommands. Every command prints one JSON document on stdout.
//!
//! Exit codes: 0 ok, 2 invalid argument (including usage errors and states
//! with no component in the requested subspace), 3 resource limit,
//! 4 numerical consistency or a failed check.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kronwit_core::entangled::{max_entangled_over, phi_plus, psi_lambda, Subspace};
use kronwit_core::kronecker::{kronecker_both, kronecker_coefficient, multiplicity_character, Route as CoreRoute};
use kronwit_core::symgroup::{enumerate_partitions, enumerate_tableaux};
use kronwit_core::verifier::{run_verifier, verification_acceptance_operator, CorollaryInstance, LemmaInstance, TrialMode};
use kronwit_core::wfs::{gpe_kraus, lightning_distribution, measure_wfs};
use kronwit_core::yyrep::tensor_rep;
use kronwit_core::{Partition, Permutation};
use serde_json::{json, Map, Value};

use crate::io::{read_state, rounded, subspace_json, MatrixJson, ProjectorJson, ReportJson, StateJson};
use crate::reptext::{parse_partition, RepSpec};
use crate::{bench, context, parallel, selftest, CliError, DENSE_CAP_VAR};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    InvalidArgument,
    ResourceLimit,
    NumericalConsistency,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvalidArgument => 2,
            Status::ResourceLimit => 3,
            Status::NumericalConsistency => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InvalidArgument => "invalid-argument",
            Status::ResourceLimit => "resource-limit",
            Status::NumericalConsistency => "numerical-consistency",
        }
    }
}

/// Outcome of one invocation.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    /// The JSON document; a plain string for help and usage text.
    pub payload: Value,
    pub elapsed_ms: f64,
    /// Errors and usage text go to stderr, everything else to stdout.
    pub to_stderr: bool,
    pretty: bool,
    timings: bool,
    /// Extra `(label, ms)` pairs shown with `--timings`.
    phases: Vec<(String, f64)>,
}

impl CommandResult {
    /// Text written for this result (without timing lines).
    pub fn render(&self) -> String {
        match &self.payload {
            Value::String(s) => s.clone(),
            v if self.pretty => serde_json::to_string_pretty(&rounded(v)).expect("JSON values serialize") + "\n",
            v => serde_json::to_string(v).expect("JSON values serialize") + "\n",
        }
    }

    pub fn emit(&self) {
        let text = self.render();
        // a closed pipe is not worth a panic
        if self.to_stderr {
            let _ = std::io::stderr().write_all(text.as_bytes());
        } else {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
        if self.timings {
            let mut err = std::io::stderr();
            for (label, ms) in &self.phases {
                let _ = writeln!(err, "{label}: {ms:.3} ms");
            }
            let _ = writeln!(err, "elapsed_ms: {:.3}", self.elapsed_ms);
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "kronwit",
    version,
    about = "Young-Yamanouchi irreps of S_n, weak Fourier sampling, Kronecker coefficients and the (sigma, lambda) verifier",
    after_help = "Representations: 2,1 (irrep), 2,1x2,1 (tensor), left:3 / right:3 (regular), amp:M:REP, lift:D:REP, conj:REP.\n\
                  Environment: KRONWIT_DENSE_CAP=n raises or lowers the largest n for dense |G| x |G| work (default 6)."
)]
struct Cli {
    /// Indented output with floats rounded to 6 significant digits
    #[arg(long, global = true)]
    pretty: bool,
    /// Print wall-clock times to stderr
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

fn partition_arg(s: &str) -> Result<Partition, String> {
    parse_partition(s).map_err(|e| e.to_string())
}

fn rep_arg(s: &str) -> Result<RepSpec, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partitions, dimensions and standard tableaux
    Sym {
        #[command(subcommand)]
        cmd: SymCmd,
    },
    /// Representation matrices, characters, the group Fourier transform
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Weak Fourier sampling projectors and measurement
    Wfs {
        #[command(subcommand)]
        cmd: WfsCmd,
    },
    /// Kronecker coefficient m(mu, nu, lambda)
    Kron {
        #[arg(value_parser = partition_arg)]
        mu: Partition,
        #[arg(value_parser = partition_arg)]
        nu: Partition,
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
    },
    /// Irrep distribution of weak Fourier sampling on Phi+ for rho^mu ⊗ rho^nu
    Lightning {
        #[arg(value_parser = partition_arg)]
        mu: Partition,
        #[arg(value_parser = partition_arg)]
        nu: Partition,
    },
    /// Maximally entangled states
    State {
        #[command(subcommand)]
        cmd: StateCmd,
    },
    /// Acceptance operator, bound certification and sampled runs of the verifier
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Run every invariant suite at n <= n-max
    Selftest {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the projector group sum, serial against parallel
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [4, 5, 6])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Worker threads for the parallel kernel (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum SymCmd {
    /// Partitions of n in reverse lexicographic order
    Partitions { n: usize },
    /// Dimension of the irrep
    Dim {
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
    },
    /// Standard tableaux of the shape, ordered by reading word
    Tableaux {
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
    },
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Matrix of a permutation given in one-line notation (2,3,1)
    Matrix {
        #[arg(value_parser = rep_arg)]
        rep: RepSpec,
        perm: String,
    },
    /// Character on one permutation, or on every conjugacy class
    Char {
        #[arg(value_parser = rep_arg)]
        rep: RepSpec,
        perm: Option<String>,
    },
    /// Dense Fourier transform of S_n
    Ft { n: usize },
}

#[derive(Subcommand, Debug)]
enum WfsCmd {
    /// Projector onto the lambda-isotypic component
    Project {
        #[arg(value_parser = rep_arg)]
        rep: RepSpec,
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
        /// Print the phase-estimation Kraus element instead
        #[arg(long)]
        kraus: bool,
    },
    /// All projectors, in partition order
    Povm {
        #[arg(value_parser = rep_arg)]
        rep: RepSpec,
    },
    /// Sample an irrep label and the post-measurement state
    Measure {
        #[arg(value_parser = rep_arg)]
        rep: RepSpec,
        /// State JSON file, or - for stdin
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum StateCmd {
    /// (1/sqrt d) sum_i |i>|i>
    PhiPlus { d: usize },
    /// Maximally entangled state over the image of Xi_lambda
    PhiPi {
        #[arg(value_parser = rep_arg)]
        rep: RepSpec,
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
    },
    /// Character-weighted group average of a state (default Phi+)
    PsiLambda {
        #[arg(value_parser = rep_arg)]
        rep: RepSpec,
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long)]
        state: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Spectrum, completeness and soundness of the acceptance operator
    Spectrum {
        #[arg(value_parser = partition_arg)]
        mu: Partition,
        #[arg(value_parser = partition_arg)]
        nu: Partition,
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
        /// Include an orthonormal basis of the accepting eigenspace
        #[arg(long)]
        subspace: bool,
    },
    /// Check the robustness bounds on seeded random states
    Certify {
        #[arg(value_parser = partition_arg)]
        mu: Partition,
        #[arg(value_parser = partition_arg)]
        nu: Partition,
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Haar)]
        mode: ModeArg,
        /// Perturbation size for --mode perturbed
        #[arg(long, default_value_t = 0.1)]
        scale: f64,
    },
    /// One sampled run: measure the irrep label, then the internal-state test
    Run {
        #[arg(value_parser = partition_arg)]
        mu: Partition,
        #[arg(value_parser = partition_arg)]
        nu: Partition,
        #[arg(value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Char,
    Rank,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    /// I_m ⊗ rho^lambda with m = m(mu, nu, lambda); bound 2 sqrt(2 eps)
    Lemma,
    /// Full verifier on rho^mu ⊗ rho^nu; bounds 3 sqrt(2 eps) and 2 sqrt(2 eps)
    Corollary,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Haar,
    Perturbed,
}

/// A successful command: the payload and whether every check in it passed.
struct Done {
    payload: Value,
    passed: bool,
    phases: Vec<(String, f64)>,
}

impl Done {
    fn ok(payload: Value) -> Result<Done, CliError> {
        Ok(Done { payload, passed: true, phases: Vec::new() })
    }
}

fn permutation(text: &str, n: usize) -> Result<Permutation, CliError> {
    let images = text
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad permutation {text:?}: expected one-line notation like 2,3,1")))?;
    if images.len() != n {
        return Err(CliError::Usage(format!("permutation {text:?} has degree {} but the representation is of S_{n}", images.len())));
    }
    Ok(Permutation::from_one_line(&images)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("JSON values serialize")
}

fn sym(cmd: SymCmd) -> Result<Done, CliError> {
    match cmd {
        SymCmd::Partitions { n } => {
            let parts: Vec<String> = enumerate_partitions(n)?.iter().map(ToString::to_string).collect();
            Done::ok(to_value(&parts))
        }
        SymCmd::Dim { lambda } => Done::ok(json!({ "d": lambda.dimension() })),
        SymCmd::Tableaux { lambda } => {
            let t: Vec<Vec<Vec<usize>>> = enumerate_tableaux(&lambda).iter().map(|t| t.rows().to_vec()).collect();
            Done::ok(to_value(&t))
        }
    }
}

fn rep(cmd: RepCmd) -> Result<Done, CliError> {
    match cmd {
        RepCmd::Matrix { rep, perm } => {
            let ctx = context(rep.degree()?)?;
            let sigma = rep.build(&ctx)?;
            let g = permutation(&perm, ctx.degree())?;
            Done::ok(to_value(&MatrixJson::new(&ctx.rep_evaluate(&sigma, &g)?)))
        }
        RepCmd::Char { rep, perm } => {
            let ctx = context(rep.degree()?)?;
            let sigma = rep.build(&ctx)?;
            if let Some(perm) = perm {
                let g = permutation(&perm, ctx.degree())?;
                return Done::ok(json!({ "chi": ctx.character(&sigma, &g)?.re }));
            }
            let mut classes = Vec::new();
            for (c, class) in ctx.group().classes().iter().enumerate() {
                classes.push(json!({
                    "cycle_type": class.cycle_type.to_string(),
                    "size": class.size,
                    "chi": ctx.class_character(&sigma, c)?.re,
                }));
            }
            Done::ok(json!({ "classes": classes }))
        }
        RepCmd::Ft { n } => {
            let ctx = context(n)?;
            Done::ok(to_value(&MatrixJson::new(&ctx.fourier_transform_matrix()?)))
        }
    }
}

fn wfs(cmd: WfsCmd) -> Result<Done, CliError> {
    match cmd {
        WfsCmd::Project { rep, lambda, kraus } => {
            let ctx = context(rep.degree()?)?;
            let sigma = rep.build(&ctx)?;
            if kraus {
                let e = gpe_kraus(&ctx, &sigma, &lambda)?;
                let rank = e.effect()?.rank();
                return Done::ok(to_value(&ProjectorJson::kraus(&e, rank)));
            }
            let xi = parallel::projector(&ctx, &sigma, &lambda)?;
            Done::ok(to_value(&ProjectorJson::new(&lambda, &xi)))
        }
        WfsCmd::Povm { rep } => {
            let ctx = context(rep.degree()?)?;
            let sigma = rep.build(&ctx)?;
            let all: Vec<ProjectorJson> = parallel::povm(&ctx, &sigma)?.iter().map(|(l, p)| ProjectorJson::new(l, p)).collect();
            Done::ok(to_value(&all))
        }
        WfsCmd::Measure { rep, state, seed } => {
            let ctx = context(rep.degree()?)?;
            let sigma = rep.build(&ctx)?;
            let psi = read_state(&state)?;
            let out = measure_wfs(&ctx, &sigma, &psi, seed)?;
            Done::ok(json!({
                "lambda": out.lambda.to_string(),
                "probability": out.probability,
                "state": to_value(&StateJson::new(&out.state)),
            }))
        }
    }
}

fn kron(mu: Partition, nu: Partition, lambda: Partition, route: RouteArg) -> Result<Done, CliError> {
    let ctx = context(mu.n())?;
    let single = |r: CoreRoute, name: &str| -> Result<Done, CliError> {
        let m = kronecker_coefficient(&ctx, &mu, &nu, &lambda, r)?;
        Done::ok(json!({ "m": m.value, "route": name }))
    };
    match route {
        RouteArg::Char => single(CoreRoute::CharacterSum, "char"),
        RouteArg::Rank => single(CoreRoute::ProjectorRank, "rank"),
        RouteArg::Both => {
            let (c, r) = kronecker_both(&ctx, &mu, &nu, &lambda)?;
            let agree = c.value == r.value;
            let payload = if agree {
                json!({ "m": c.value, "routes_agree": true })
            } else {
                json!({ "m": c.value, "routes_agree": false, "m_rank": r.value })
            };
            Ok(Done { payload, passed: agree, phases: Vec::new() })
        }
    }
}

fn lightning(mu: Partition, nu: Partition) -> Result<Done, CliError> {
    let ctx = context(mu.n())?;
    let mut out = Map::new();
    for (l, p) in lightning_distribution(&ctx, &mu, &nu)? {
        out.insert(l.paren_label(), json!(p));
    }
    Done::ok(Value::Object(out))
}

fn state(cmd: StateCmd) -> Result<Done, CliError> {
    match cmd {
        StateCmd::PhiPlus { d } => {
            if d == 0 {
                return Err(CliError::Usage("dimension must be positive".into()));
            }
            Done::ok(to_value(&StateJson::new(&phi_plus(d))))
        }
        StateCmd::PhiPi { rep, lambda } => {
            let ctx = context(rep.degree()?)?;
            let sigma = rep.build(&ctx)?;
            let xi = parallel::projector(&ctx, &sigma, &lambda)?;
            let phi = max_entangled_over(&Subspace::image_of(xi.matrix())?)?;
            Done::ok(to_value(&StateJson::new(&phi)))
        }
        StateCmd::PsiLambda { rep, lambda, state } => {
            let ctx = context(rep.degree()?)?;
            let sigma = rep.build(&ctx)?;
            let phi = match state {
                Some(path) => read_state(&path)?,
                None => phi_plus(sigma.dim()),
            };
            let (psi, a) = psi_lambda(&ctx, &sigma, &lambda, &phi)?;
            Done::ok(json!({ "normalization": a, "state": to_value(&StateJson::new(&psi)) }))
        }
    }
}

fn verify(cmd: VerifyCmd) -> Result<Done, CliError> {
    match cmd {
        VerifyCmd::Spectrum { mu, nu, lambda, subspace } => {
            let ctx = context(mu.n())?;
            let m = multiplicity_character(&ctx, &tensor_rep(&mu, &nu)?, &lambda)?.value;
            let op = verification_acceptance_operator(&ctx, &mu, &nu, &lambda)?;
            let gap = op.has_gap(op.soundness(), op.completeness());
            let mut out = json!({
                "mu": mu.to_string(),
                "nu": nu.to_string(),
                "lambda": lambda.to_string(),
                "m": m,
                "dimension": op.matrix().rows(),
                "completeness": op.completeness(),
                "soundness": op.soundness(),
                "accepting_multiplicity": op.accepting_multiplicity(),
                "gap": gap,
                "spectrum": op.spectrum(),
            });
            if subspace {
                out["accepting_subspace"] = to_value(&subspace_json(&op.accepting_subspace()));
            }
            Ok(Done { payload: out, passed: gap, phases: Vec::new() })
        }
        VerifyCmd::Certify { mu, nu, lambda, trials, seed, check, mode, scale } => {
            let ctx = context(mu.n())?;
            let mode = match mode {
                ModeArg::Haar => TrialMode::Haar,
                ModeArg::Perturbed if scale.is_finite() && scale >= 0.0 => TrialMode::Perturbed { scale },
                ModeArg::Perturbed => return Err(CliError::Usage(format!("--scale must be finite and nonnegative, got {scale}"))),
            };
            let mut reports = Vec::new();
            let mut phases = Vec::new();
            if matches!(check, CheckArg::Lemma | CheckArg::All) {
                let start = Instant::now();
                let m = multiplicity_character(&ctx, &tensor_rep(&mu, &nu)?, &lambda)?.value;
                let inst = LemmaInstance::new(&ctx, m, &lambda)?;
                reports.extend(parallel::lemma_trials(&ctx, &inst, trials, seed, mode)?);
                phases.push(("lemma".to_string(), start.elapsed().as_secs_f64() * 1e3));
            }
            if matches!(check, CheckArg::Corollary | CheckArg::All) {
                let start = Instant::now();
                let inst = CorollaryInstance::new(&ctx, &mu, &nu, &lambda)?;
                reports.extend(parallel::corollary_trials(&ctx, &inst, trials, seed, mode)?);
                phases.push(("corollary".to_string(), start.elapsed().as_secs_f64() * 1e3));
            }
            let passed = reports.iter().all(|r| r.bound_satisfied);
            let json: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
            Ok(Done { payload: to_value(&json), passed, phases })
        }
        VerifyCmd::Run { mu, nu, lambda, state, seed } => {
            let ctx = context(mu.n())?;
            let sigma = tensor_rep(&mu, &nu)?;
            let psi = read_state(&state)?;
            let run = run_verifier(&ctx, &sigma, &lambda, &psi, seed)?;
            Done::ok(json!({
                "outcome": run.outcome.to_string(),
                "outcome_probability": run.outcome_probability,
                "internal_probability": run.internal_probability,
                "accepted": run.accepted,
            }))
        }
    }
}

fn dispatch(command: Command) -> Result<Done, CliError> {
    match command {
        Command::Sym { cmd } => sym(cmd),
        Command::Rep { cmd } => rep(cmd),
        Command::Wfs { cmd } => wfs(cmd),
        Command::Kron { mu, nu, lambda, route } => kron(mu, nu, lambda, route),
        Command::Lightning { mu, nu } => lightning(mu, nu),
        Command::State { cmd } => state(cmd),
        Command::Verify { cmd } => verify(cmd),
        Command::Selftest { n_max, trials, seed } => {
            let (report, times) = selftest::selftest(n_max, trials, seed)?;
            Ok(Done { passed: report.passed, payload: to_value(&report), phases: times })
        }
        Command::Bench { sizes, repeats, threads } => {
            let rows = match threads {
                Some(0) => return Err(CliError::Usage("--threads must be positive".into())),
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| CliError::Usage(format!("cannot start {t} threads: {e}")))?
                    .install(|| bench::bench(&sizes, repeats))?,
                None => bench::bench(&sizes, repeats)?,
            };
            Done::ok(to_value(&rows))
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let start = Instant::now();
    let elapsed = |s: Instant| s.elapsed().as_secs_f64() * 1e3;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let failed = e.use_stderr();
            return CommandResult {
                status: if failed { Status::InvalidArgument } else { Status::Ok },
                payload: Value::String(e.render().to_string()),
                elapsed_ms: elapsed(start),
                to_stderr: failed,
                pretty: false,
                timings: false,
                phases: Vec::new(),
            };
        }
    };
    let (pretty, timings) = (cli.pretty, cli.timings);
    match dispatch(cli.command) {
        Ok(done) => CommandResult {
            status: if done.passed { Status::Ok } else { Status::NumericalConsistency },
            payload: done.payload,
            elapsed_ms: elapsed(start),
            to_stderr: false,
            pretty,
            timings,
            phases: done.phases,
        },
        Err(e) => {
            let message = match &e {
                CliError::Core(c) => c.message().to_string(),
                other => other.to_string(),
            };
            let mut payload = json!({ "status": e.status().name(), "error": e.kind(), "message": message });
            if matches!(&e, CliError::Core(kronwit_core::Error::ResourceLimit(_))) {
                payload["hint"] = json!(format!("set {DENSE_CAP_VAR}=n to change the dense cap"));
            }
            CommandResult {
                status: e.status(),
                payload,
                elapsed_ms: elapsed(start),
                to_stderr: true,
                pretty,
                timings,
                phases: Vec::new(),
            }
        }
    }
}
