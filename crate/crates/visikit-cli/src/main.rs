//! `visikit` — generate graphs, verify visibility/general-position sets,
//! run the certified approximation, query exact oracles, and build or unwind
//! reduction gadgets. Every command's result is a single JSON object per
//! line on stdout; artifacts (graphs, gadget instances) go to `--out`.
//!
//! Exit codes: 0 success, 1 a set failed verification or a guaranteed bound
//! was missed, 2 usage or input errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use visikit::approx::approx_mu_set;
use visikit::dist::{all_pairs_distances, rational_str};
use visikit::generate::{generate, GraphKind};
use visikit::io as graph_io;
use visikit::oracle::max_set_exact;
use visikit::reductions::{
    build_clique_product_gadget, build_diam2_gadget, build_gp_universal_gadget,
    extract_best_layer_is, extract_clique_or_is, extract_is_from_mu_set,
    extract_is_from_total_set, prune_layer_conflicts, ReductionInstance, ReductionKind,
};
use visikit::visibility::{verify_set_with, SetKind, Sigma};
use visikit::{Error as VisError, Graph, VertexSet};
use visikit_cli::corpus::bench_corpus;
use visikit_cli::report::Report;

#[derive(Parser)]
#[command(name = "visikit", version, about = "Mutual-visibility and general-position set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph; prints the edge list, or writes it with --out.
    Gen(GenArgs),
    /// Check a vertex set against one of the five set kinds.
    Verify(VerifyArgs),
    /// Construct a mu-set with a certified exact lower bound.
    Approx(ApproxArgs),
    /// Exhaustive optimum on a small graph.
    Exact(ExactArgs),
    /// Build a reduction gadget instance from a source graph.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Map a verified set on a gadget instance back to source structure.
    Extract(ExtractArgs),
    /// Run the certified approximation across the built-in corpus.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Complete,
    Grid,
    Random,
    Subcubic,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum FormatArg {
    #[default]
    Edgelist,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count (path, cycle, complete, random, subcubic).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Edge probability (random).
    #[arg(long)]
    p: Option<f64>,
    /// Edge count (subcubic).
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the edge list here and print a report instead.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    /// One of mu, mud, muo, mut, gp.
    #[arg(long)]
    kind: String,
    /// Relaxation factor as a rational "p/q" (or an integer); gp needs 1.
    #[arg(long, default_value = "1")]
    sigma: String,
    /// Comma-separated vertex ids; empty for the empty set.
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long)]
    allow_disconnected: bool,
    /// Add per-phase wall-clock times to the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ApproxArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    allow_disconnected: bool,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    /// One of mu, mud, muo, mut, gp.
    #[arg(long)]
    kind: String,
    /// Raise the oracle's size ceiling (hard cap 64).
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    allow_disconnected: bool,
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Diameter-2 gadget: layer cliques, edge vertices, two hubs.
    Diam2 {
        #[command(flatten)]
        common: ReduceArgs,
        /// Omit the copy hub (no embed/extract support on the result).
        #[arg(long)]
        no_y: bool,
    },
    /// Clique-by-source Cartesian product; the source needs a universal vertex.
    Product {
        #[command(flatten)]
        common: ReduceArgs,
    },
    /// Source plus one universal vertex (single layer, diameter <= 2).
    Gp {
        #[command(flatten)]
        common: ReduceArgs,
    },
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    /// Copy count.
    #[arg(long = "L", default_value_t = 1)]
    l: usize,
    /// Write the instance JSON here and print a report instead.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    allow_disconnected: bool,
}

#[derive(Args)]
struct ExtractArgs {
    /// Gadget instance file produced by `reduce`.
    #[arg(long)]
    input: PathBuf,
    /// The verified set on the gadget, comma-separated.
    #[arg(long, default_value = "")]
    set: String,
    /// Which verifier admitted the set. DIAM2: mu or mut; CLIQUE_PRODUCT:
    /// mu, mud, muo, or mut; GP_UNIVERSAL: gp (default).
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSONL report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err.root_cause().downcast_ref::<VisError>().map_or(2, error_class);
            ExitCode::from(code)
        }
    }
}

/// VISIKIT_THREADS caps the worker pool; unset means the library default.
fn init_threads() -> std::result::Result<(), String> {
    match std::env::var("VISIKIT_THREADS") {
        Ok(raw) => {
            let k: usize = raw
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| format!("VISIKIT_THREADS must be a positive integer, got {raw:?}"))?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .map_err(|e| format!("thread pool setup failed: {e}"))
        }
        Err(_) => Ok(()),
    }
}

/// 1 for "the math said no" (failed verification, missed guarantee), 2 for
/// everything the user can fix in the invocation or input.
fn error_class(e: &VisError) -> u8 {
    match e {
        VisError::VerificationFailed { .. }
        | VisError::BoundNotMet { .. }
        | VisError::NotIndependent { .. }
        | VisError::GadgetInvariant(_) => 1,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Approx(args) => cmd_approx(args),
        Cmd::Exact(args) => cmd_exact(args),
        Cmd::Reduce(which) => cmd_reduce(which),
        Cmd::Extract(args) => cmd_extract(args),
        Cmd::Bench(args) => cmd_bench(args),
    }
}

fn load_graph(path: &Path, _format: FormatArg, allow_disconnected: bool) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = graph_io::parse_edge_list(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    if !allow_disconnected {
        g.check_connected().with_context(|| {
            format!("{}: pass --allow-disconnected to load anyway", path.display())
        })?;
    }
    Ok(g)
}

fn parse_set(raw: &str) -> Result<VertexSet> {
    let mut ids = Vec::new();
    for tok in raw.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        ids.push(tok.parse().with_context(|| format!("bad vertex id {tok:?} in --set"))?);
    }
    Ok(VertexSet::new(ids))
}

fn parse_kind(raw: &str) -> Result<SetKind> {
    raw.parse::<SetKind>().map_err(Into::into)
}

/// Per-phase wall-clock accumulator; inert unless --timings was given.
struct Phases {
    map: Option<BTreeMap<String, f64>>,
    last: Instant,
}

impl Phases {
    fn new(enabled: bool) -> Phases {
        Phases { map: enabled.then(BTreeMap::new), last: Instant::now() }
    }

    fn mark(&mut self, name: &str) {
        let now = Instant::now();
        if let Some(map) = &mut self.map {
            map.insert(name.to_string(), (now - self.last).as_secs_f64() * 1e3);
        }
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.map
    }
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    let need = |opt: Option<usize>, flag: &str| {
        opt.with_context(|| format!("--{flag} is required for this family"))
    };
    let (kind, descriptor) = match args.family {
        Family::Path => {
            let n = need(args.n, "n")?;
            (GraphKind::Path { n }, format!("path_n{n}"))
        }
        Family::Cycle => {
            let n = need(args.n, "n")?;
            (GraphKind::Cycle { n }, format!("cycle_n{n}"))
        }
        Family::Complete => {
            let n = need(args.n, "n")?;
            (GraphKind::Complete { n }, format!("complete_n{n}"))
        }
        Family::Grid => {
            let rows = need(args.rows, "rows")?;
            let cols = need(args.cols, "cols")?;
            (GraphKind::Grid { rows, cols }, format!("grid_{rows}x{cols}"))
        }
        Family::Random => {
            let n = need(args.n, "n")?;
            let p = args.p.context("--p is required for --family random")?;
            (GraphKind::RandomConnected { n, p }, format!("random_n{n}_p{p}_s{}", args.seed))
        }
        Family::Subcubic => {
            let n = need(args.n, "n")?;
            let m = need(args.edges, "edges")?;
            (GraphKind::RandomSubcubic { n, m }, format!("subcubic_n{n}_m{m}_s{}", args.seed))
        }
    };
    let g = generate(&kind, args.seed)?;
    let text = graph_io::to_edge_list(&g);
    match args.out {
        Some(path) => {
            fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            let mut report = Report::new("gen");
            report.instance = Some(descriptor);
            report.n = Some(g.n());
            report.m = Some(g.m());
            report.seed = Some(args.seed);
            report.out_file = Some(path.display().to_string());
            print!("{}", report.to_line());
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let mut phases = Phases::new(args.timings);
    let g = load_graph(&args.input, args.format, args.allow_disconnected)?;
    let kind = parse_kind(&args.kind)?;
    let sigma: Sigma = args.sigma.parse()?;
    let set = parse_set(&args.set)?;
    set.validate(g.n())?;
    phases.mark("load");
    let dist = all_pairs_distances(&g)?;
    phases.mark("distances");
    let verdict = verify_set_with(&g, &dist, &set, kind, sigma)?;
    phases.mark("verify");

    let mut report = Report::new("verify");
    report.algorithm = Some("verifier".into());
    report.instance = Some(args.input.display().to_string());
    report.n = Some(g.n());
    report.m = Some(g.m());
    report.kind = Some(kind.name().into());
    report.sigma = Some(sigma.to_string());
    report.set_size = Some(set.len());
    report.set = Some(set.into_vec());
    report.ok = Some(verdict.ok());
    report.witness = verdict.witness().map(|w| w.ids());
    report.timings_ms = phases.finish();
    print!("{}", report.to_line());
    Ok(u8::from(!verdict.ok()))
}

fn cmd_approx(args: ApproxArgs) -> Result<u8> {
    let mut phases = Phases::new(args.timings);
    let g = load_graph(&args.input, args.format, args.allow_disconnected)?;
    phases.mark("load");
    let dist = all_pairs_distances(&g)?;
    let (avg, avg_float) = dist.average()?;
    phases.mark("distances");
    let (set, cert) = approx_mu_set(&g, args.seed)?;
    phases.mark("construct");
    let verified = verify_set_with(&g, &dist, &set, SetKind::Mu, Sigma::ONE)?.ok();
    let ok = verified && cert.met_by(set.len());
    phases.mark("verify");

    let mut report = Report::new("approx");
    report.algorithm = Some("approx-mu".into());
    report.instance = Some(args.input.display().to_string());
    report.n = Some(g.n());
    report.m = Some(g.m());
    report.diameter = Some(dist.diameter());
    report.avg_distance = Some(rational_str(&avg));
    report.avg_distance_float = Some(avg_float);
    report.kind = Some(SetKind::Mu.name().into());
    report.bound = Some(cert.total_string());
    report.bound_float = Some(cert.total_float());
    report.jensen_floor = cert.jensen_floor;
    report.seed = Some(args.seed);
    report.set_size = Some(set.len());
    report.set = Some(set.into_vec());
    report.ok = Some(ok);
    report.timings_ms = phases.finish();
    print!("{}", report.to_line());
    Ok(u8::from(!ok))
}

fn cmd_exact(args: ExactArgs) -> Result<u8> {
    let mut phases = Phases::new(args.timings);
    let g = load_graph(&args.input, args.format, args.allow_disconnected)?;
    let kind = parse_kind(&args.kind)?;
    phases.mark("load");
    let result = max_set_exact(&g, kind, args.limit)?;
    phases.mark("search");
    let dist = all_pairs_distances(&g)?;
    let ok = verify_set_with(&g, &dist, &result.best_set, kind, Sigma::ONE)?.ok();
    phases.mark("verify");

    let mut report = Report::new("exact");
    report.algorithm = Some(
        match kind {
            SetKind::MuD => "descending-enumeration",
            _ => "branch-and-bound",
        }
        .into(),
    );
    report.instance = Some(args.input.display().to_string());
    report.n = Some(g.n());
    report.m = Some(g.m());
    report.kind = Some(kind.name().into());
    report.optimum = Some(result.optimum);
    report.explored = Some(result.explored);
    report.set_size = Some(result.best_set.len());
    report.set = Some(result.best_set.into_vec());
    report.ok = Some(ok);
    report.timings_ms = phases.finish();
    print!("{}", report.to_line());
    Ok(u8::from(!ok))
}

fn cmd_reduce(which: ReduceCmd) -> Result<u8> {
    let (common, inst, algorithm) = match which {
        ReduceCmd::Diam2 { common, no_y } => {
            let h = load_graph(&common.input, common.format, common.allow_disconnected)?;
            let inst = build_diam2_gadget(&h, common.l, !no_y)?;
            (common, inst, "diam2")
        }
        ReduceCmd::Product { common } => {
            let h = load_graph(&common.input, common.format, common.allow_disconnected)?;
            let inst = build_clique_product_gadget(&h, common.l)?;
            (common, inst, "clique-product")
        }
        ReduceCmd::Gp { common } => {
            if common.l != 1 {
                bail!("the universal-vertex gadget is single-layer; omit --L");
            }
            let h = load_graph(&common.input, common.format, common.allow_disconnected)?;
            let inst = build_gp_universal_gadget(&h)?;
            (common, inst, "gp-universal")
        }
    };
    let json = inst.to_json();
    match common.out {
        Some(path) => {
            fs::write(&path, format!("{json}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            let mut report = Report::new("reduce");
            report.algorithm = Some(algorithm.into());
            report.instance = Some(common.input.display().to_string());
            report.layers = Some(inst.layer_count());
            report.n = Some(inst.gadget().n());
            report.m = Some(inst.gadget().m());
            report.out_file = Some(path.display().to_string());
            print!("{}", report.to_line());
        }
        None => println!("{json}"),
    }
    Ok(0)
}

fn cmd_extract(args: ExtractArgs) -> Result<u8> {
    let mut phases = Phases::new(args.timings);
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let inst = ReductionInstance::from_json(&text)
        .with_context(|| format!("loading {}", args.input.display()))?;
    let x = parse_set(&args.set)?;
    let kind = args.kind.as_deref().map(parse_kind).transpose()?;
    phases.mark("load");

    let mut report = Report::new("extract");
    report.instance = Some(args.input.display().to_string());
    report.layers = Some(inst.layer_count());
    match inst.kind() {
        ReductionKind::Diam2 => {
            let kind = kind.context(
                "extraction from a DIAM2 instance needs --kind mu (single layer) or mut",
            )?;
            let (s, algorithm) = match kind {
                SetKind::Mu => (extract_is_from_mu_set(&inst, &x)?, "diam2-mu-extract"),
                SetKind::MuT => (extract_is_from_total_set(&inst, &x)?, "diam2-total-extract"),
                other => bail!("DIAM2 extraction supports mu or mut, not {other}"),
            };
            phases.mark("extract");
            report.algorithm = Some(algorithm.into());
            report.kind = Some(kind.name().into());
            report.n = Some(inst.source().n());
            report.m = Some(inst.source().m());
            report.set_size = Some(s.len());
            report.set = Some(s.into_vec());
        }
        ReductionKind::CliqueProduct => {
            let kind = kind.context(
                "extraction from a CLIQUE_PRODUCT instance needs --kind mu, mud, muo, or mut",
            )?;
            let pruned = prune_layer_conflicts(&inst, &x, kind)?;
            let s = extract_best_layer_is(&inst, &pruned)?;
            phases.mark("extract");
            report.algorithm = Some("prune-and-best-layer".into());
            report.kind = Some(kind.name().into());
            report.n = Some(inst.source().n());
            report.m = Some(inst.source().m());
            report.pruned_set = Some(pruned.into_vec());
            report.set_size = Some(s.len());
            report.set = Some(s.into_vec());
        }
        ReductionKind::GpUniversal => {
            if kind.is_some_and(|k| k != SetKind::Gp) {
                bail!("GP_UNIVERSAL instances hold gp sets; drop --kind or pass gp");
            }
            let (s, tag) = extract_clique_or_is(inst.gadget(), &x)?;
            phases.mark("extract");
            report.algorithm = Some("clique-or-independent-set".into());
            report.kind = Some(SetKind::Gp.name().into());
            report.n = Some(inst.gadget().n());
            report.m = Some(inst.gadget().m());
            report.tag = Some(tag.to_string());
            report.set_size = Some(s.len());
            report.set = Some(s.into_vec());
        }
    }
    report.ok = Some(true);
    report.timings_ms = phases.finish();
    print!("{}", report.to_line());
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<u8> {
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut all_ok = true;
    for (idx, entry) in bench_corpus().into_iter().enumerate() {
        let seed = args.seed.wrapping_add(idx as u64);
        let mut phases = Phases::new(args.timings);
        let dist = all_pairs_distances(&entry.graph)?;
        let (avg, avg_float) = dist.average()?;
        phases.mark("distances");
        let (set, cert) = approx_mu_set(&entry.graph, seed)?;
        phases.mark("construct");
        let verified =
            verify_set_with(&entry.graph, &dist, &set, SetKind::Mu, Sigma::ONE)?.ok();
        let ok = verified && cert.met_by(set.len());
        all_ok &= ok;
        phases.mark("verify");

        let mut report = Report::new("bench");
        report.algorithm = Some("approx-mu".into());
        report.instance = Some(entry.id);
        report.n = Some(entry.graph.n());
        report.m = Some(entry.graph.m());
        report.diameter = Some(dist.diameter());
        report.avg_distance = Some(rational_str(&avg));
        report.avg_distance_float = Some(avg_float);
        report.kind = Some(SetKind::Mu.name().into());
        report.bound = Some(cert.total_string());
        report.bound_float = Some(cert.total_float());
        report.jensen_floor = cert.jensen_floor;
        report.seed = Some(seed);
        report.set_size = Some(set.len());
        report.set = Some(set.into_vec());
        report.ok = Some(ok);
        report.timings_ms = phases.finish();
        sink.write_all(report.to_line().as_bytes()).context("writing report line")?;
    }
    sink.flush().context("flushing report")?;
    Ok(u8::from(!all_ok))
}
