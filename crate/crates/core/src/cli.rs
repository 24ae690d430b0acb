//! The `mbm` command line. Every command renders a report as JSON or as
//! text; text reports start with a `#` header line carrying the version and
//! seed.
//!
//! Exit codes: 0 success, 1 input error, 2 forbidden graph, 3 verification
//! failure or oracle mismatch.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bisection::{
    is_swap_locally_minimal, local_search_bisection, strongly_minimal_search, Bisection, BisectionError,
    BisectionReport,
};
use crate::classifier::{ClassificationReport, ForbiddenKind};
use crate::constructor::{construct_mbm, ConstructError};
use crate::decider::{is_mbm_profile, max_ones_stable, DeciderError};
use crate::dynamics::{default_step_budget, run_to_stable_with_budget, DynamicsError, SchedulerPolicy};
use crate::format::{parse_edge_list, to_dot, write_edge_list};
use crate::graph::{Graph, Profile};
use crate::oracle::{
    compare_graph, enumerate_graphs, reachable_stable_set, Counterexample, OracleError, MAX_GRAPH_N,
};
use crate::reduction::{build_reduction, parse_cnf, CorrespondenceReport, ReductionParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_MAX_N: usize = 100_000;
const COUNTEREXAMPLE_DUMP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Input = 1,
    Forbidden = 2,
    Verification = 3,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

/// Rendered stdout and the exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit: Exit,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    MinIndex,
    Random,
    Scripted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    /// Every labeled graph on `--n` nodes: classifier against exhaustive search.
    Graphs,
    /// Every graph and profile on `--n` nodes: two-phase maximum against search.
    Profile,
    /// `--samples` seeded random graphs on `--n` nodes.
    Random,
}

#[derive(Debug, Parser)]
#[command(name = "mbm", version, about = "Minority-becomes-majority analysis for sequential majority dynamics")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest graph order accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_N, global = true)]
    pub max_n: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forbidden class and extremality of a graph.
    Classify { graph: PathBuf },
    /// A minimum-size winning minority profile with its update prefix.
    Construct {
        graph: PathBuf,
        /// Write a DOT rendering of the initial profile here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Whether a strict-minority profile can end with at most n/2 zeros.
    Decide { graph: PathBuf, profile: String },
    /// Runs the dynamics to a stable profile.
    Simulate {
        graph: PathBuf,
        profile: String,
        #[arg(long, value_enum, default_value_t = Policy::MinIndex)]
        policy: Policy,
        /// Comma-separated node ids for the scripted policy.
        #[arg(long, value_delimiter = ',')]
        script: Vec<usize>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Reports a bisection, or searches for a locally minimal one.
    Bisect {
        graph: PathBuf,
        /// Comma-separated ids of the larger side.
        #[arg(long, value_delimiter = ',')]
        side_s: Option<Vec<usize>>,
    },
    /// Exhaustive cross-checks on small graphs.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = OracleMode::Graphs)]
        mode: OracleMode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, hide = true)]
        inject_mismatch: bool,
    },
    /// Compiles a formula into a hardness instance.
    Reduce {
        cnf: PathBuf,
        #[arg(long, default_value = "1/16")]
        epsilon: String,
        #[arg(long)]
        clique_size: Option<usize>,
        /// Also run every assignment and compare with satisfiability.
        #[arg(long)]
        check: bool,
        /// Write the edge list here instead of into the report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the JSON label map here.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Construct { .. } => "construct",
            Command::Decide { .. } => "decide",
            Command::Simulate { .. } => "simulate",
            Command::Bisect { .. } => "bisect",
            Command::Oracle { .. } => "oracle",
            Command::Reduce { .. } => "reduce",
        }
    }
}

#[derive(Debug)]
struct Failure {
    exit: Exit,
    message: String,
}

fn input(message: impl std::fmt::Display) -> Failure {
    Failure {
        exit: Exit::Input,
        message: message.to_string(),
    }
}

fn verification(message: impl std::fmt::Display) -> Failure {
    Failure {
        exit: Exit::Verification,
        message: message.to_string(),
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    seed: u64,
    result: &'a T,
}

struct Ctx<'a> {
    format: OutputFormat,
    seed: u64,
    max_n: usize,
    command: &'a str,
}

impl Ctx<'_> {
    /// JSON envelope, or the header line followed by `text`.
    fn render<T: Serialize>(&self, result: &T, text: impl FnOnce(&mut String)) -> String {
        match self.format {
            OutputFormat::Json => {
                let env = Envelope {
                    tool: "mbm",
                    version: VERSION,
                    command: self.command,
                    seed: self.seed,
                    result,
                };
                let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut s = format!("# mbm {VERSION} {} seed={}\n", self.command, self.seed);
                text(&mut s);
                s
            }
        }
    }

    fn graph(&self, path: &Path) -> Result<Graph, Failure> {
        let text = read_input(path)?;
        let g = parse_edge_list(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
        if g.n() > self.max_n {
            return Err(input(format!("graph has {} nodes, above --max-n {}", g.n(), self.max_n)));
        }
        Ok(g)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn profile_for(g: &Graph, text: &str) -> Result<Profile, Failure> {
    let p: Profile = text.parse().map_err(|e| input(format!("profile: {e}")))?;
    if p.len() != g.n() {
        return Err(input(format!("profile has {} entries for {} nodes", p.len(), g.n())));
    }
    Ok(p)
}

/// Parses arguments from the process and runs.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Input } else { Exit::Ok };
            let _ = e.print();
            return code.into();
        }
    };
    let outcome = run(&cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.exit.into()
}

pub fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        format: cli.format,
        seed: cli.seed,
        max_n: cli.max_n,
        command: cli.command.name(),
    };
    let result = match &cli.command {
        Command::Classify { graph } => classify(&ctx, graph),
        Command::Construct { graph, dot } => construct(&ctx, graph, dot.as_deref()),
        Command::Decide { graph, profile } => decide(&ctx, graph, profile),
        Command::Simulate {
            graph,
            profile,
            policy,
            script,
            max_steps,
        } => simulate(&ctx, graph, profile, *policy, script, *max_steps),
        Command::Bisect { graph, side_s } => bisect(&ctx, graph, side_s.as_deref()),
        Command::Oracle {
            n,
            mode,
            samples,
            inject_mismatch,
        } => oracle(&ctx, *n, *mode, *samples, *inject_mismatch),
        Command::Reduce {
            cnf,
            epsilon,
            clique_size,
            check,
            out,
            labels,
        } => reduce(&ctx, cnf, epsilon, *clique_size, *check, out.as_deref(), labels.as_deref()),
    };
    match result {
        Ok((exit, stdout)) => Outcome {
            exit,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            exit: f.exit,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

type CmdResult = Result<(Exit, String), Failure>;

fn classify(ctx: &Ctx, path: &Path) -> CmdResult {
    let g = ctx.graph(path)?;
    let r = ClassificationReport::of(&g);
    let out = ctx.render(&r, |s| {
        writeln!(s, "nodes {} edges {}", r.n, r.edges).unwrap();
        if r.forbidden {
            writeln!(s, "{} (forbidden)", r.class).unwrap();
        } else {
            let shape = match r.extremal {
                None => "odd",
                Some(true) => "even, extremal",
                Some(false) => "even, non-extremal",
            };
            writeln!(s, "{}, {shape}", r.class).unwrap();
        }
    });
    Ok((Exit::Ok, out))
}

fn construct(ctx: &Ctx, path: &Path, dot: Option<&Path>) -> CmdResult {
    let g = ctx.graph(path)?;
    let cert = construct_mbm(&g).map_err(|e| match e {
        ConstructError::ForbiddenGraph(k) => Failure {
            exit: Exit::Forbidden,
            message: format!("forbidden: {k}"),
        },
        other => verification(other),
    })?;
    if let Some(dot) = dot {
        write_file(dot, &to_dot(&g, Some(&cert.s0)))?;
    }
    let r = cert.report(&g);
    let out = ctx.render(&r, |s| {
        writeln!(s, "route {:?}", r.route).unwrap();
        writeln!(s, "s0 {}", r.s0).unwrap();
        writeln!(s, "prefix {:?}", r.prefix).unwrap();
        writeln!(s, "post_prefix {}", r.post_prefix).unwrap();
        writeln!(s, "ones {} -> {} of {}", r.ones_before, r.ones_after, r.n).unwrap();
        writeln!(s, "validated {}", r.validated).unwrap();
    });
    Ok((if r.validated { Exit::Ok } else { Exit::Verification }, out))
}

fn decide(ctx: &Ctx, path: &Path, profile: &str) -> CmdResult {
    let g = ctx.graph(path)?;
    let s0 = profile_for(&g, profile)?;
    let d = is_mbm_profile(&g, &s0).map_err(input)?;
    let r = d.report();
    let out = ctx.render(&r, |s| {
        writeln!(s, "mbm {}", r.mbm).unwrap();
        writeln!(s, "ones {} -> {} of {}", r.initial_ones, r.final_ones, g.n()).unwrap();
        writeln!(s, "end {}", r.trace.end).unwrap();
        writeln!(s, "steps {:?}", d.trace.nodes()).unwrap();
    });
    Ok((Exit::Ok, out))
}

fn simulate(
    ctx: &Ctx,
    path: &Path,
    profile: &str,
    policy: Policy,
    script: &[usize],
    max_steps: Option<usize>,
) -> CmdResult {
    let g = ctx.graph(path)?;
    let s0 = profile_for(&g, profile)?;
    let policy = match policy {
        Policy::MinIndex => SchedulerPolicy::MinIndex,
        Policy::Random => SchedulerPolicy::SeededRandom(ctx.seed),
        Policy::Scripted => SchedulerPolicy::Scripted(script.to_vec()),
    };
    let budget = max_steps.unwrap_or_else(|| default_step_budget(g.n()));
    let trace = run_to_stable_with_budget(&g, &s0, &policy, budget).map_err(|e| match e {
        DynamicsError::StepBudgetExceeded { .. } => verification(e),
        other => input(other),
    })?;
    let r = trace.report();
    let out = ctx.render(&r, |s| {
        writeln!(s, "start {}", r.start).unwrap();
        for step in &r.steps {
            writeln!(s, "{:>4} node {} {} -> {}", step.step, step.node, step.from, step.to).unwrap();
        }
        writeln!(s, "end {}", r.end).unwrap();
        writeln!(s, "ones {} -> {}", r.ones_before, r.ones_after).unwrap();
    });
    Ok((Exit::Ok, out))
}

#[derive(Serialize)]
struct BisectOutput {
    search: &'static str,
    iterations: Option<usize>,
    swap_locally_minimal: bool,
    #[serde(flatten)]
    report: BisectionReport,
}

fn bisect(ctx: &Ctx, path: &Path, side_s: Option<&[usize]>) -> CmdResult {
    let g = ctx.graph(path)?;
    let (search, iterations, b) = match side_s {
        Some(side) => ("given", None, Bisection::new(g.n(), side).map_err(input)?),
        None => match strongly_minimal_search(&g) {
            Ok(o) => ("strongly-minimal", Some(o.iterations), o.bisection),
            Err(BisectionError::OddOrder | BisectionError::ExtremalGraph | BisectionError::ForbiddenGraph(_)) => {
                ("swap-local", None, local_search_bisection(&g, &Bisection::canonical(g.n())))
            }
            Err(e) => return Err(verification(e)),
        },
    };
    let r = BisectOutput {
        search,
        iterations,
        swap_locally_minimal: is_swap_locally_minimal(&g, &b),
        report: BisectionReport::of(&g, &b),
    };
    let out = ctx.render(&r, |s| {
        writeln!(s, "search {search}").unwrap();
        writeln!(s, "side_s {:?}", r.report.side_s).unwrap();
        writeln!(s, "width {}", r.report.width).unwrap();
        writeln!(s, "deficiencies {:?}", r.report.deficiencies).unwrap();
        writeln!(s, "class {:?}", r.report.class).unwrap();
        writeln!(s, "swap-locally-minimal {}", r.swap_locally_minimal).unwrap();
        for w in &r.report.witnesses {
            writeln!(s, "witness {}", serde_json::to_string(w).unwrap()).unwrap();
        }
    });
    Ok((Exit::Ok, out))
}

#[derive(Serialize)]
struct OracleReport {
    mode: &'static str,
    n: usize,
    graphs_checked: usize,
    profiles_checked: usize,
    /// Graphs per forbidden class, for the graph modes.
    per_class: BTreeMap<String, usize>,
    mismatches: usize,
    counterexamples: Vec<OracleCounterexample>,
}

#[derive(Serialize)]
struct OracleCounterexample {
    edge_mask: u64,
    profile: Option<String>,
    detail: String,
}

impl From<Counterexample> for OracleCounterexample {
    fn from(c: Counterexample) -> Self {
        OracleCounterexample {
            edge_mask: c.edge_mask,
            profile: c.witness.map(|p| p.to_string()),
            detail: c.detail,
        }
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::TooLarge { .. } => input(e),
        other => verification(other),
    }
}

fn oracle(ctx: &Ctx, n: usize, mode: OracleMode, samples: usize, inject: bool) -> CmdResult {
    if n > ctx.max_n {
        return Err(input(format!("--n {n} is above --max-n {}", ctx.max_n)));
    }
    let mut r = OracleReport {
        mode: match mode {
            OracleMode::Graphs => "graphs",
            OracleMode::Profile => "profile",
            OracleMode::Random => "random",
        },
        n,
        graphs_checked: 0,
        profiles_checked: 0,
        per_class: BTreeMap::new(),
        mismatches: 0,
        counterexamples: Vec::new(),
    };
    let record = |r: &mut OracleReport, c: OracleCounterexample| {
        r.mismatches += 1;
        if r.counterexamples.len() < COUNTEREXAMPLE_DUMP {
            r.counterexamples.push(c);
        }
    };
    let check_graph = |r: &mut OracleReport, g: &Graph| -> Result<(), Failure> {
        let found = compare_graph(g).map_err(oracle_failure)?;
        let found = match (found, inject && r.graphs_checked == 0) {
            (None, true) => Some(Counterexample {
                n: g.n(),
                edge_mask: g.edge_mask().unwrap_or(0),
                class: ForbiddenKind::NotForbidden,
                oracle_mbm: false,
                witness: None,
                detail: "injected mismatch".into(),
            }),
            (found, _) => found,
        };
        r.graphs_checked += 1;
        let class = crate::classifier::classify_forbidden(g).kind;
        *r.per_class.entry(class.to_string()).or_default() += 1;
        if let Some(c) = found {
            record(r, c.into());
        }
        Ok(())
    };
    match mode {
        OracleMode::Graphs => {
            for g in enumerate_graphs(n).map_err(oracle_failure)? {
                check_graph(&mut r, &g)?;
            }
        }
        OracleMode::Random => {
            if n > MAX_GRAPH_N {
                return Err(oracle_failure(OracleError::TooLarge { n, limit: MAX_GRAPH_N }));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            for _ in 0..samples {
                check_graph(&mut r, &Graph::random_gnp(n, 0.5, &mut rng))?;
            }
        }
        OracleMode::Profile => {
            for (i, g) in enumerate_graphs(n).map_err(oracle_failure)?.enumerate() {
                r.graphs_checked += 1;
                for m in 0u64..1 << n {
                    let s = Profile::from_mask(n, m);
                    r.profiles_checked += 1;
                    let fast = max_ones_stable(&g, &s).map_err(|e: DeciderError| verification(e))?;
                    let slow = reachable_stable_set(&g, &s)
                        .map_err(oracle_failure)?
                        .iter()
                        .map(Profile::ones_count)
                        .max()
                        .unwrap_or(0);
                    let injected = inject && i == 0 && m == 0;
                    if fast != slow || injected {
                        record(
                            &mut r,
                            OracleCounterexample {
                                edge_mask: g.edge_mask().unwrap_or(0),
                                profile: Some(s.to_string()),
                                detail: if injected {
                                    "injected mismatch".into()
                                } else {
                                    format!("two-phase maximum {fast}, exhaustive maximum {slow}")
                                },
                            },
                        );
                    }
                }
            }
        }
    }
    let out = ctx.render(&r, |s| {
        if r.profiles_checked > 0 {
            writeln!(
                s,
                "{} graphs, {} profiles checked, {} mismatches",
                r.graphs_checked, r.profiles_checked, r.mismatches
            )
            .unwrap();
        } else {
            writeln!(s, "{} graphs checked, {} mismatches", r.graphs_checked, r.mismatches).unwrap();
        }
        for (class, count) in &r.per_class {
            writeln!(s, "  {class}: {count}").unwrap();
        }
        for c in &r.counterexamples {
            writeln!(
                s,
                "counterexample edge_mask={} profile={} {}",
                c.edge_mask,
                c.profile.as_deref().unwrap_or("-"),
                c.detail
            )
            .unwrap();
        }
    });
    Ok((if r.mismatches == 0 { Exit::Ok } else { Exit::Verification }, out))
}

#[derive(Serialize)]
struct ReduceReport<'a> {
    params: &'a ReductionParams,
    n: usize,
    edges: usize,
    proper_ones: usize,
    minority_bound: usize,
    edge_list: Option<String>,
    labels: Option<BTreeMap<usize, &'a str>>,
    correspondence: Option<CorrespondenceReport>,
}

fn reduce(
    ctx: &Ctx,
    cnf: &Path,
    epsilon: &str,
    clique_size: Option<usize>,
    check: bool,
    out: Option<&Path>,
    labels: Option<&Path>,
) -> CmdResult {
    let phi = parse_cnf(&read_input(cnf)?).map_err(|e| input(format!("{}: {e}", cnf.display())))?;
    let eps: Ratio<i64> = epsilon
        .parse()
        .map_err(|_| input(format!("epsilon {epsilon:?} is not a fraction p/q")))?;
    let inst = build_reduction(&phi, eps, clique_size).map_err(input)?;
    if inst.n() > ctx.max_n {
        return Err(input(format!("instance has {} nodes, above --max-n {}", inst.n(), ctx.max_n)));
    }
    let edge_list = write_edge_list(&inst.graph);
    if let Some(path) = out {
        write_file(path, &edge_list)?;
    }
    let label_map = inst.label_map();
    if let Some(path) = labels {
        write_file(path, &(serde_json::to_string_pretty(&label_map).expect("labels serialize") + "\n"))?;
    }
    let correspondence = if check {
        Some(inst.correspondence_report().map_err(verification)?)
    } else {
        None
    };
    let mismatches = correspondence.as_ref().map_or(0, |c| c.mismatches);
    let json = ctx.format == OutputFormat::Json;
    let r = ReduceReport {
        params: &inst.params,
        n: inst.n(),
        edges: inst.graph.edge_count(),
        proper_ones: inst.proper_ones(),
        minority_bound: inst.minority_bound(),
        edge_list: (json && out.is_none()).then(|| edge_list.clone()),
        labels: (json && labels.is_none()).then(|| label_map.clone()),
        correspondence,
    };
    let text = ctx.render(&r, |s| {
        let p = &inst.params;
        writeln!(
            s,
            "# variables {} clauses {} clique {} epsilon {}",
            p.num_vars, p.num_clauses, p.clique_size, p.epsilon
        )
        .unwrap();
        writeln!(s, "# nodes {} edges {}", r.n, r.edges).unwrap();
        writeln!(s, "# proper ones {} <= {}", r.proper_ones, r.minority_bound).unwrap();
        if let Some(c) = &r.correspondence {
            for line in c.to_string().lines() {
                writeln!(s, "# {line}").unwrap();
            }
        }
        if out.is_none() {
            s.push_str(&edge_list);
        }
    });
    Ok((if mismatches == 0 { Exit::Ok } else { Exit::Verification }, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("mbm").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn arguments() {
        let cli = parse(&["--format", "json", "--seed", "7", "simulate", "g.txt", "0101", "--policy", "scripted", "--script", "1,2"]);
        assert_eq!(cli.format, OutputFormat::Json);
        assert_eq!(cli.seed, 7);
        match cli.command {
            Command::Simulate { policy, script, .. } => {
                assert_eq!(policy, Policy::Scripted);
                assert_eq!(script, vec![1, 2]);
            }
            other => panic!("{other:?}"),
        }
        let cli = parse(&["oracle", "--n", "4", "--mode", "profile", "--format", "json"]);
        assert_eq!(cli.format, OutputFormat::Json);
        assert!(matches!(cli.command, Command::Oracle { n: 4, mode: OracleMode::Profile, .. }));
        assert!(Cli::try_parse_from(["mbm", "classify"]).is_err());
    }

    #[test]
    fn oracle_counts() {
        let o = run(&parse(&["oracle", "--n", "4"]));
        assert_eq!(o.exit, Exit::Ok);
        assert!(o.stdout.contains("64 graphs checked, 0 mismatches"), "{}", o.stdout);
        let o = run(&parse(&["oracle", "--n", "3", "--inject-mismatch"]));
        assert_eq!(o.exit, Exit::Verification);
        assert!(o.stdout.contains("injected mismatch"));
        let o = run(&parse(&["oracle", "--n", "3", "--mode", "profile", "--inject-mismatch"]));
        assert_eq!(o.exit, Exit::Verification);
        let o = run(&parse(&["oracle", "--n", "9"]));
        assert_eq!(o.exit, Exit::Input);
        let o = run(&parse(&["oracle", "--n", "6", "--max-n", "5"]));
        assert_eq!(o.exit, Exit::Input);
    }

    #[test]
    fn missing_file_is_input_error() {
        let o = run(&parse(&["classify", "/nonexistent/graph.txt"]));
        assert_eq!(o.exit, Exit::Input);
        assert!(o.stderr.starts_with("error: "));
    }
}
