use std::fs;
use std::io::{self, Read};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lilykernel::cores::{
    constraint_core_rc_dom, constraint_core_roman, constraint_core_total, reduce_annotated_lambda_mu,
    solution_core_scattered, CoreOptions, CoreResult, Peel,
};
use lilykernel::domination::{approx_dominating, approx_rc_dominating, RcApprox};
use lilykernel::io::harness::verify_pipeline;
use lilykernel::io::{generate, parse_graph, parse_instance, write_graph, write_instance, Family, GeneratorSpec};
use lilykernel::kernels::{
    be_kernel, multikernel_dom_ind, multikernel_domination_family, reduce, AnnotatedInstance, Params, Problem,
};
use lilykernel::oracle::{Oracle, Witness, DEFAULT_SIZE_GUARD};
use lilykernel::projections::{projection_kernel, verify_projection_kernel};
use lilykernel::wideness::{find_uniform_lily, verify_lily, LilyOutcome};
use lilykernel::{Error, Graph, Vertex};

#[derive(Parser)]
#[command(
    name = "lilyk",
    version,
    about = "Kernelization for distance-r domination-type problems"
)]
struct Cli {
    /// Seed for generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest graph the exact oracle accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_GUARD)]
    size_guard: usize,
    /// Remove several centres per lily while peeling cores.
    #[arg(long, global = true)]
    experimental_batch: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph, e.g. `grid(4,3)` or `random_degenerate(30,2)`.
    Gen {
        family: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certified approximate dominating set.
    Approx {
        #[arg(long, value_enum, default_value_t = ApproxProblem::Dom)]
        problem: ApproxProblem,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        c: usize,
        input: String,
    },
    /// Search for a uniform water lily.
    Lily {
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = 1)]
        adhesion: usize,
        #[arg(long, default_value_t = 2)]
        min_centres: usize,
        /// Candidate centres (comma separated); all vertices by default.
        #[arg(long, value_delimiter = ',')]
        candidates: Option<Vec<Vertex>>,
        input: String,
    },
    /// Constraint or solution core with its peel trace.
    Core {
        #[command(flatten)]
        problem: ProblemArgs,
        input: String,
    },
    /// Annotated bikernel for budget `k`, written as an instance.
    Bikernel {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        input: String,
    },
    /// Plain kernel: bikernel followed by the matching gadget.
    Kernel {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        input: String,
    },
    /// Joint kernel for several problems, written as a graph.
    Multikernel {
        #[arg(long, value_enum)]
        family: MultiFamily,
        /// Radius of the domination family.
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        lambda: u32,
        #[arg(long, default_value_t = 2)]
        mu: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        input: String,
    },
    /// Exact optimum of a small instance or graph.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        input: String,
    },
    /// End-to-end checks against the exact oracle.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Original against bikernel and gadget kernel for every budget in a range.
    Pipeline {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Budgets as `a..b` (inclusive); `0..n` by default.
        #[arg(long)]
        k_range: Option<String>,
        input: String,
    },
    /// Both projection-kernel properties, recomputed from scratch.
    Projkernel {
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, value_delimiter = ',')]
        x: Vec<Vertex>,
        input: String,
    },
    /// Offset identities of both multikernels.
    Multikernel {
        #[arg(long, default_value_t = 1)]
        lambda: u32,
        #[arg(long, default_value_t = 2)]
        mu: u32,
        input: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ApproxProblem {
    Dom,
    Rcdom,
}

#[derive(Clone, Copy, ValueEnum)]
enum MultiFamily {
    /// Domination, total and Roman domination at one radius.
    Domination,
    /// Domination and independence for all radii in `[lambda, mu]`.
    DomInd,
}

#[derive(Args)]
struct ProblemArgs {
    /// rcdom, total, roman, scatter, lambdamu or perfectcode.
    #[arg(long)]
    problem: Option<Problem>,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    c: usize,
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    #[arg(long, default_value_t = 1)]
    mu: usize,
}

impl ProblemArgs {
    fn get(&self) -> Result<(Problem, Params), Error> {
        let problem = self
            .problem
            .ok_or_else(|| Error::Input("--problem is required".into()))?;
        let params = Params {
            r: self.r,
            c: self.c,
            lambda: self.lambda,
            mu: self.mu,
        };
        params.validate(problem)?;
        Ok((problem, params))
    }
}

/// Failure with its exit code.
enum Failure {
    Lib(Error),
    Io(String),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    seed: u64,
    oracle: Oracle,
    opts: CoreOptions,
}

fn read_text(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(input).map_err(|e| Failure::Io(format!("{input}: {e}")))
}

fn is_generator(input: &str) -> bool {
    input.contains('(') && !Path::new(input).exists()
}

/// A graph from a file, stdin (`-`) or a generator expression.
fn load_graph(ctx: &Ctx, input: &str) -> Result<(String, Graph), Failure> {
    if is_generator(input) {
        let spec = GeneratorSpec::new(input.parse::<Family>()?, ctx.seed);
        return Ok((spec.to_string(), generate(&spec)?));
    }
    let text = read_text(input)?;
    let g = parse_graph(&text).or_else(|e| parse_instance(&text).map(|i| i.graph).map_err(|_| e))?;
    Ok((input.to_string(), g))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Outcome {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ids(set: &[Vertex]) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn opt(o: Option<usize>) -> String {
    o.map_or_else(|| "infeasible".to_string(), |v| v.to_string())
}

fn peel_line(p: &Peel) -> String {
    format!(
        "peel side={:?} removed={} roots={} centres={}",
        p.side,
        ids(&p.removed),
        p.roots,
        p.centres
    )
}

fn cmd_gen(ctx: &Ctx, family: &str, output: &Option<PathBuf>) -> Outcome {
    let spec = GeneratorSpec::new(family.parse()?, ctx.seed);
    emit(&write_graph(&generate(&spec)?), output)
}

fn cmd_approx(ctx: &Ctx, problem: ApproxProblem, r: u32, c: usize, input: &str) -> Outcome {
    let (_, g) = load_graph(ctx, input)?;
    match problem {
        ApproxProblem::Dom => {
            let all: Vec<Vertex> = g.vertices().collect();
            let d = approx_dominating(&g, &all, r)?;
            println!("dominator={}", ids(&d.dominator));
            println!("witness={}", ids(&d.witness));
            let ratio = d
                .certified_ratio()
                .map_or("-".to_string(), |q| format!("{:.3}", q.value()));
            println!(
                "size={} lower_bound={} certified_ratio={ratio}",
                d.dominator.len(),
                d.witness.len()
            );
        }
        ApproxProblem::Rcdom => match approx_rc_dominating(&g, r, c)? {
            RcApprox::Feasible(d) => {
                println!("dominator={}", ids(&d.set));
                println!("witness={}", ids(&d.first.witness));
                for s in &d.stages {
                    println!(
                        "stage level={} input={} shadow_picks={} repair_picks={} residual={} output={}",
                        s.level, s.input_size, s.shadow_picks, s.repair_picks, s.residual, s.output_size
                    );
                }
                println!("size={} lower_bound={}", d.set.len(), d.first.witness.len());
            }
            RcApprox::Infeasible(why) => println!("infeasible {why:?}"),
        },
    }
    Ok(())
}

struct LilyArgs<'a> {
    depth: u32,
    radius: u32,
    adhesion: usize,
    min_centres: usize,
    candidates: &'a Option<Vec<Vertex>>,
}

fn cmd_lily(ctx: &Ctx, a: LilyArgs<'_>, input: &str) -> Outcome {
    let (_, g) = load_graph(ctx, input)?;
    let cands = a.candidates.clone().unwrap_or_else(|| g.vertices().collect());
    match find_uniform_lily(&g, &cands, a.depth, a.radius, a.adhesion, a.min_centres)? {
        LilyOutcome::Found(lily) => {
            println!("roots={}", ids(&lily.roots));
            println!("centres={}", ids(&lily.centres));
            println!("profile={}", lily.profile.encode());
            let report = verify_lily(&g, &lily);
            for c in &report.checks {
                let w = c.witness.map_or(String::new(), |v| format!(" witness={v}"));
                println!("check {}={}{w}", c.name, c.passed);
            }
            if let Some(w) = &report.warning {
                println!("warning {w}");
            }
            if !report.all_passed() {
                return Err(Failure::Disagreement("lily failed verification".into()));
            }
        }
        LilyOutcome::Failed(why) => println!("no lily: {why:?}"),
    }
    Ok(())
}

fn core_of(ctx: &Ctx, g: &Graph, problem: Problem, p: Params) -> Result<Vec<String>, Failure> {
    let r = p.r;
    let res: CoreResult = match problem {
        Problem::RcDom => constraint_core_rc_dom(g, r, p.c, &ctx.opts)?,
        Problem::Total => constraint_core_total(g, r, &ctx.opts)?,
        Problem::Roman => constraint_core_roman(g, r, &ctx.opts)?,
        Problem::Scatter => solution_core_scattered(g, r, p.c, &ctx.opts)?,
        Problem::LambdaMu | Problem::PerfectCode => {
            let (lambda, mu) = (p.lambda, p.mu);
            let Some(dhat) = approx_rc_dominating(g, r, mu)?.feasible() else {
                return Err(Error::Infeasible(format!("no ({r},{mu})-dominating set exists")).into());
            };
            let all: Vec<Vertex> = g.vertices().collect();
            let red = reduce_annotated_lambda_mu(g, &all, &all, r, lambda, mu, &dhat.set, &ctx.opts)?;
            let mut out = vec![format!("L={}", ids(&red.l)), format!("U={}", ids(&red.u))];
            out.extend(red.trace.iter().map(peel_line));
            return Ok(out);
        }
    };
    let mut out = vec![format!("core={}", ids(&res.core)), format!("rounds={}", res.rounds)];
    out.extend(res.trace.iter().map(peel_line));
    Ok(out)
}

fn cmd_core(ctx: &Ctx, pa: &ProblemArgs, input: &str) -> Outcome {
    let (problem, params) = pa.get()?;
    let (_, g) = load_graph(ctx, input)?;
    for line in core_of(ctx, &g, problem, params)? {
        println!("{line}");
    }
    Ok(())
}

/// Bikernel for budget `k`, or the fixture of an early exit.
fn bikernel_for(ctx: &Ctx, pa: &ProblemArgs, k: usize, input: &str) -> Result<AnnotatedInstance, Failure> {
    let (problem, params) = pa.get()?;
    let (_, g) = load_graph(ctx, input)?;
    let red = reduce(&g, problem, params, &ctx.opts)?;
    let bk = red.for_budget(k);
    eprintln!(
        "input_n={} core={} witness={}",
        g.n(),
        red.core.len(),
        red.witness.len()
    );
    match &bk.exit {
        Some(exit) => eprintln!("early_exit verdict={} reason={}", exit.verdict, exit.reason),
        None => eprintln!("kernel_n={} k={}", bk.instance.graph.n(), bk.instance.k),
    }
    Ok(bk.instance)
}

fn cmd_bikernel(ctx: &Ctx, pa: &ProblemArgs, k: usize, output: &Option<PathBuf>, input: &str) -> Outcome {
    let inst = bikernel_for(ctx, pa, k, input)?;
    emit(&write_instance(&inst), output)
}

fn cmd_kernel(ctx: &Ctx, pa: &ProblemArgs, k: usize, output: &Option<PathBuf>, input: &str) -> Outcome {
    let inst = bikernel_for(ctx, pa, k, input)?;
    let plain = be_kernel(&inst)?;
    eprintln!("plain_n={} k={} offset={}", plain.graph.n(), plain.k, plain.offset);
    emit(&write_instance(&plain), output)
}

struct MultiArgs {
    family: MultiFamily,
    r: u32,
    lambda: u32,
    mu: u32,
}

fn cmd_multikernel(ctx: &Ctx, a: MultiArgs, output: &Option<PathBuf>, input: &str) -> Outcome {
    let (_, g) = load_graph(ctx, input)?;
    let mk = match a.family {
        MultiFamily::Domination => {
            let (mk, off) = multikernel_domination_family(&g, a.r, &ctx.opts)?;
            eprintln!("offset dom={} total={} roman={}", off.dom, off.total, off.roman);
            mk
        }
        MultiFamily::DomInd => {
            let (mk, off) = multikernel_dom_ind(&g, a.lambda, a.mu, &ctx.opts)?;
            for (r, c) in &off.per_radius {
                eprintln!("offset r={r} dom={c} ind_{}={c}", 2 * r);
            }
            mk
        }
    };
    eprintln!(
        "core={} kernel_n={} outside={} output_n={}",
        mk.core.len(),
        mk.kernel_n,
        mk.outside.len(),
        mk.graph.n()
    );
    emit(&write_graph(&mk.graph), output)
}

fn cmd_solve(ctx: &Ctx, pa: &ProblemArgs, input: &str) -> Outcome {
    let inst = if is_generator(input) {
        None
    } else {
        parse_instance(&read_text(input)?).ok()
    };
    let inst = match inst {
        Some(i) => i,
        None => {
            let (problem, params) = pa.get()?;
            let (_, g) = load_graph(ctx, input)?;
            AnnotatedInstance::plain(g, problem, params, 0)
        }
    };
    let ans = inst.optimum(&ctx.oracle)?;
    println!("problem={} optimum={}", inst.problem, opt(ans.optimum));
    match &ans.witness {
        Witness::Set(s) => println!("witness={}", ids(s)),
        Witness::Roman { d1, d2 } => println!("witness d1={} d2={}", ids(d1), ids(d2)),
        Witness::None => {}
    }
    println!(
        "k={} accepted={} enumerated={}",
        inst.k,
        inst.decide(&ctx.oracle)?,
        ans.enumerated_count
    );
    Ok(())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Lib(Error::Input(format!("bad k-range '{s}', expected a..b")));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn cmd_verify_pipeline(ctx: &Ctx, pa: &ProblemArgs, k_range: &Option<String>, input: &str) -> Outcome {
    let (problem, params) = pa.get()?;
    let (name, g) = load_graph(ctx, input)?;
    let ks = match k_range {
        Some(s) => parse_range(s)?,
        None => 0..=g.n(),
    };
    let report = verify_pipeline(&name, &g, problem, params, ks, &ctx.oracle, &ctx.opts)?;
    for line in report.lines() {
        println!("{line}");
    }
    if !report.agreed() {
        return Err(Failure::Disagreement("pipeline disagrees with the oracle".into()));
    }
    Ok(())
}

fn cmd_verify_projkernel(ctx: &Ctx, r: u32, c: usize, x: &[Vertex], input: &str) -> Outcome {
    let (_, g) = load_graph(ctx, input)?;
    let pk = projection_kernel(&g, x, r, c, None)?;
    let check = verify_projection_kernel(&g, x, r, c, &pk.graph, &pk.map);
    println!(
        "n={} closure={} path_closure={} kernel_n={} kernel_m={}",
        g.n(),
        pk.closure.len(),
        pk.path_closure.len(),
        pk.graph.n(),
        pk.graph.m()
    );
    println!(
        "distances_preserved={} profiles_realized={}",
        check.distance_witness.is_none(),
        check.profile_witness.is_none()
    );
    if !check.is_ok() {
        return Err(Failure::Disagreement(format!("{check:?}")));
    }
    Ok(())
}

fn cmd_verify_multikernel(ctx: &Ctx, lambda: u32, mu: u32, input: &str) -> Outcome {
    let (_, g) = load_graph(ctx, input)?;
    let o = &ctx.oracle;
    let mut ok = true;
    let mut check = |what: String, got: Option<usize>, want: Option<usize>| {
        println!(
            "identity {what} kernel={} expected={} holds={}",
            opt(got),
            opt(want),
            got == want
        );
        ok &= got == want;
    };
    for r in lambda..=mu {
        let (mk, off) = multikernel_domination_family(&g, r, &ctx.opts)?;
        let h = &mk.graph;
        let shift = |v: Option<usize>, by: usize| v.map(|v| v + by);
        check(
            format!("dom_{r}"),
            o.opt_rc_dom(h, r, 1, None)?.optimum,
            shift(o.opt_rc_dom(&g, r, 1, None)?.optimum, off.dom),
        );
        check(
            format!("total_{r}"),
            o.opt_total(h, r, None)?.optimum,
            shift(o.opt_total(&g, r, None)?.optimum, off.total),
        );
        check(
            format!("roman_{r}"),
            o.opt_roman(h, r, None)?.optimum,
            shift(o.opt_roman(&g, r, None)?.optimum, off.roman),
        );
    }
    let (mk, off) = multikernel_dom_ind(&g, lambda, mu, &ctx.opts)?;
    let h = &mk.graph;
    for &(r, c) in &off.per_radius {
        let shift = |v: Option<usize>| v.map(|v| v + c);
        check(
            format!("dom_{r} (dom/ind)"),
            o.opt_rc_dom(h, r, 1, None)?.optimum,
            shift(o.opt_rc_dom(&g, r, 1, None)?.optimum),
        );
        check(
            format!("ind_{}", 2 * r),
            o.max_scattered(h, r, 1, None)?.optimum,
            shift(o.max_scattered(&g, r, 1, None)?.optimum),
        );
    }
    if !ok {
        return Err(Failure::Disagreement("multikernel offset identity failed".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        seed: cli.seed,
        oracle: Oracle::with_guard(cli.size_guard),
        opts: CoreOptions {
            batch: cli.experimental_batch,
            ..CoreOptions::default()
        },
    };
    match &cli.command {
        Command::Gen { family, output } => cmd_gen(&ctx, family, output),
        Command::Approx { problem, r, c, input } => cmd_approx(&ctx, *problem, *r, *c, input),
        Command::Lily {
            depth,
            radius,
            adhesion,
            min_centres,
            candidates,
            input,
        } => cmd_lily(
            &ctx,
            LilyArgs {
                depth: *depth,
                radius: *radius,
                adhesion: *adhesion,
                min_centres: *min_centres,
                candidates,
            },
            input,
        ),
        Command::Core { problem, input } => cmd_core(&ctx, problem, input),
        Command::Bikernel {
            problem,
            k,
            output,
            input,
        } => cmd_bikernel(&ctx, problem, *k, output, input),
        Command::Kernel {
            problem,
            k,
            output,
            input,
        } => cmd_kernel(&ctx, problem, *k, output, input),
        Command::Multikernel {
            family,
            r,
            lambda,
            mu,
            output,
            input,
        } => cmd_multikernel(
            &ctx,
            MultiArgs {
                family: *family,
                r: *r,
                lambda: *lambda,
                mu: *mu,
            },
            output,
            input,
        ),
        Command::Solve { problem, input } => cmd_solve(&ctx, problem, input),
        Command::Verify { what } => match what {
            Verify::Pipeline {
                problem,
                k_range,
                input,
            } => cmd_verify_pipeline(&ctx, problem, k_range, input),
            Verify::Projkernel { r, c, x, input } => cmd_verify_projkernel(&ctx, *r, *c, x, input),
            Verify::Multikernel { lambda, mu, input } => cmd_verify_multikernel(&ctx, *lambda, *mu, input),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeGuard { .. } | Error::ClosureDiverged(_) => 3,
                Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}
