use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropfrieze::classical::{
    enumerate_triangulations, frieze_from_quiddity, parse_diagonals, quiddity_from_triangulation,
    tropical_band_from_diagonal, FriezeBand,
};
use tropfrieze::dynkin::{parse_quiver_text, orient, DynkinType, ExchangeQuiver, Orientation};
use tropfrieze::frieze::{from_tilting_values, is_tropical_frieze, values_json};
use tropfrieze::harness::{verify, Theorem, VerifyConfig};
use tropfrieze::io::{build_cache, check_cache, CacheStatus, CACHE_ENV, DEFAULT_CACHE_DIR};
use tropfrieze::ringel::{additive_from_slice, ringel_decompose, ClusterAdditiveFunction};
use tropfrieze::seed::{g_of, normal_form, seed_from_path, sign_coherent_tilters, Seed};
use tropfrieze::ClusterCategory;

#[derive(Parser, Debug)]
#[command(name = "tropfrieze", version, about = "Tropical friezes on cluster categories of Dynkin type")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// PRNG seed for sampled checks; echoed in every output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, env = CACHE_ENV, default_value = DEFAULT_CACHE_DIR)]
    cache_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exchange-quiver mutation.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Tropical friezes on Γ_C.
    #[command(subcommand)]
    Frieze(FriezeCmd),
    /// Classical (Coxeter–Conway) frieze bands.
    #[command(subcommand)]
    Classical(ClassicalCmd),
    /// Tropical band of the given order generated by a diagonal.
    TropicalBand {
        #[arg(long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        diagonal: String,
    },
    /// Cluster-additive functions.
    #[command(subcommand)]
    Ringel(RingelCmd),
    /// Counts and listings.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// On-disk cache of Γ_C and the mutation graph.
    #[command(subcommand)]
    Cache(CacheCmd),
    /// Property suites over sampled or exhaustive inputs.
    Verify {
        #[arg(long)]
        theorem: Theorem,
        #[command(flatten)]
        host: Host,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Interpret --samples per cluster-tilting seed.
        #[arg(long)]
        per_seed: bool,
        #[arg(long)]
        exhaustive: bool,
        /// Inclusive range `lo..hi`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct Host {
    #[arg(long = "type")]
    dynkin: DynkinType,
    /// `linear`, `alternating` or an arrow list such as `2>1,2>3`.
    #[arg(long, default_value = "linear")]
    orientation: Orientation,
}

impl Host {
    fn category(&self) -> Result<ClusterCategory> {
        Ok(ClusterCategory::new(self.dynkin, &self.orientation)?)
    }
}

#[derive(Args, Debug, Clone)]
struct SeedValues {
    #[command(flatten)]
    host: Host,
    /// Values on the summands of the seed.
    #[arg(long, allow_hyphen_values = true)]
    values: String,
    /// Mutation path (1-based directions) from the initial seed.
    #[arg(long, default_value = "")]
    path: String,
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    Mutate {
        /// `type=A3; arrows=1>2,2>3`; overrides --type/--orientation.
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long = "type")]
        dynkin: Option<DynkinType>,
        #[arg(long, default_value = "linear")]
        orientation: Orientation,
        #[arg(long)]
        path: String,
    },
}

#[derive(Subcommand, Debug)]
enum FriezeCmd {
    /// The frieze with prescribed values on a cluster-tilting seed.
    Gen(SeedValues),
    /// Checks every exchange relation for values given on all of Γ_C.
    Verify {
        #[command(flatten)]
        host: Host,
        /// Values in vertex order (as listed by `frieze gen`).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
        values: Option<String>,
        /// JSON file as written by `frieze gen --format json`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// A seed with g ≤ 0 and the values m on it.
    NormalForm(SeedValues),
    /// Seeds on which the frieze is non-negative and non-positive.
    SignCoherent(SeedValues),
}

#[derive(Subcommand, Debug)]
enum ClassicalCmd {
    FromQuiddity {
        #[arg(long)]
        quiddity: String,
    },
    FromTriangulation {
        #[arg(long)]
        order: usize,
        /// `02,03,04` or `0-2,0-3,0-4`.
        #[arg(long)]
        diagonals: String,
    },
}

#[derive(Subcommand, Debug)]
enum RingelCmd {
    /// Writes a cluster-additive function as a sum of hammock functions.
    Decompose {
        #[command(flatten)]
        host: Host,
        /// Values on the projective slice P_1..P_n.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "values")]
        slice_values: Option<String>,
        /// Values on all of Γ_C in vertex order.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EnumerateCmd {
    Tilting(Host),
    Graph(Host),
    Triangulations {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    Build(CacheTarget),
    Check(CacheTarget),
}

#[derive(Args, Debug)]
struct CacheTarget {
    #[arg(long = "type", required_unless_present = "all")]
    dynkin: Option<DynkinType>,
    #[arg(long, default_value = "linear")]
    orientation: Orientation,
    /// Every supported type in linear and alternating orientation.
    #[arg(long)]
    all: bool,
}

/// How a command ended, beyond plain success.
enum Status {
    Ok,
    Failed,
    Internal(Value),
}

struct Output {
    text: String,
    status: Status,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: Status::Ok }
    }
}

struct Ctx {
    format: Format,
    seed: u64,
}

impl Ctx {
    fn json(&self, mut v: Value) -> String {
        if let Value::Object(map) = &mut v {
            map.insert("seed".into(), json!(self.seed));
        }
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }

    fn header(&self, what: &str) -> String {
        format!("# {what} seed={}\n", self.seed)
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<i64>().with_context(|| format!("`{x}` is not an integer"))).collect()
}

fn parse_path(s: &str, rank: usize) -> Result<Vec<usize>> {
    parse_ints(s)?
        .into_iter()
        .map(|k| {
            if k < 1 || k as usize > rank {
                bail!("direction {k} outside 1..={rank}")
            }
            Ok(k as usize - 1)
        })
        .collect()
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s.split_once("..").with_context(|| format!("range `{s}` is not of the form lo..hi"))?;
    let (lo, hi) = (lo.trim().parse::<i64>()?, hi.trim().parse::<i64>()?);
    if lo > hi {
        bail!("empty range {lo}..{hi}");
    }
    Ok((lo, hi))
}

fn values_for(cat: &ClusterCategory, s: &str) -> Result<Vec<i64>> {
    let v = parse_ints(s)?;
    if v.len() != cat.ar().len() {
        bail!("expected {} values (one per vertex of Γ_C), got {}", cat.ar().len(), v.len());
    }
    Ok(v)
}

fn seed_and_values(args: &SeedValues) -> Result<(ClusterCategory, Seed, Vec<i64>)> {
    let cat = args.host.category()?;
    let seed = seed_from_path(&cat, &parse_path(&args.path, cat.rank())?)?;
    let values = parse_ints(&args.values)?;
    Ok((cat, seed, values))
}

fn value_table(cat: &ClusterCategory, values: &[i64], ctx: &Ctx) -> String {
    let g = cat.ar();
    match ctx.format {
        Format::Json => ctx.json(values_json(cat, values)),
        Format::Csv => {
            let mut out = String::from("vertex,value\n");
            for (v, x) in values.iter().enumerate() {
                let _ = writeln!(out, "{},{x}", g.id(v));
            }
            out
        }
        Format::Ascii => {
            let width = (0..g.len()).map(|v| g.id(v).len()).max().unwrap_or(1);
            let mut out = ctx.header(&format!("{} {}", g.dynkin(), g.orientation()));
            for (v, x) in values.iter().enumerate() {
                let _ = writeln!(out, "{:<width$}  {x:>4}", g.id(v));
            }
            out
        }
    }
}

fn render_band(band: &FriezeBand, ctx: &Ctx) -> String {
    match ctx.format {
        Format::Json => ctx.json(band.to_json()),
        Format::Csv => band.render_csv(),
        Format::Ascii => ctx.header(&format!("order {}", band.order())) + &band.render_ascii(2),
    }
}

fn render_quiver(q: &ExchangeQuiver, t: Option<DynkinType>, ctx: &Ctx) -> String {
    match ctx.format {
        Format::Json => ctx.json(json!({"type": t.map(|t| t.to_string()), "quiver": q.to_json()})),
        Format::Csv => q.matrix().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n").collect(),
        Format::Ascii => q.to_text(t) + "\n",
    }
}

fn seed_json(cat: &ClusterCategory, s: &Seed, values: &[i64]) -> Value {
    let g = cat.ar();
    json!({
        "summands": s.summands.iter().map(|&v| g.id(v)).collect::<Vec<_>>(),
        "path": s.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "values": s.summands.iter().map(|&v| values[v]).collect::<Vec<_>>(),
        "g": g_of(values, s),
    })
}

fn run(cli: Cli) -> Result<Output> {
    let ctx = Ctx { format: cli.format, seed: cli.seed };
    Ok(match cli.command {
        Command::Quiver(QuiverCmd::Mutate { quiver, dynkin, orientation, path }) => {
            let (t, q) = match (quiver, dynkin) {
                (Some(text), _) => {
                    let (t, q) = parse_quiver_text(&text)?;
                    (Some(t), q)
                }
                (None, Some(t)) => (Some(t), orient(t, &orientation)?),
                (None, None) => bail!("give --quiver or --type"),
            };
            let path = parse_path(&path, q.n())?;
            let q = path.iter().try_fold(q, |q, &k| q.mutate(k))?;
            Output::ok(render_quiver(&q, t, &ctx))
        }
        Command::Frieze(FriezeCmd::Gen(args)) => {
            let (cat, seed, values) = seed_and_values(&args)?;
            let f = from_tilting_values(&cat, &seed, &values)?;
            Output::ok(value_table(&cat, f.values(), &ctx))
        }
        Command::Frieze(FriezeCmd::Verify { host, values, input }) => {
            let cat = host.category()?;
            let values = match (values, input) {
                (Some(v), _) => values_for(&cat, &v)?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let doc: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                    let map = doc.get("values").and_then(Value::as_object).context("input has no `values` object")?;
                    let g = cat.ar();
                    (0..g.len())
                        .map(|v| map.get(g.id(v)).and_then(Value::as_i64).with_context(|| format!("no value for {}", g.id(v))))
                        .collect::<Result<_>>()?
                }
                (None, None) => bail!("give --values or --input"),
            };
            let check = is_tropical_frieze(&cat, &values)?;
            let certificate = check.certificate().map(|v| {
                json!({"relation": v.render(&cat), "lhs": v.lhs, "rhs": v.rhs, "mesh": v.mesh})
            });
            let text = match ctx.format {
                Format::Json => ctx.json(json!({
                    "is_frieze": check.is_frieze(),
                    "relations_checked": check.relations_checked,
                    "violations": check.violations.len(),
                    "certificate": certificate,
                })),
                _ => match check.certificate() {
                    None => format!("frieze: yes ({} relations checked)\n", check.relations_checked),
                    Some(v) => format!("frieze: no\nviolated: {}\n", v.render(&cat)),
                },
            };
            Output { text, status: if check.is_frieze() { Status::Ok } else { Status::Failed } }
        }
        Command::Frieze(FriezeCmd::NormalForm(args)) => {
            let (cat, seed, values) = seed_and_values(&args)?;
            let f = from_tilting_values(&cat, &seed, &values)?;
            let nf = normal_form(&cat, f.values())?;
            let text = match ctx.format {
                Format::Json => ctx.json(json!({
                    "tilting": seed_json(&cat, &nf.seed, f.values()),
                    "m": nf.m,
                    "strategy": nf.strategy.to_string(),
                })),
                _ => format!("{}{}\nm = {:?}\nstrategy: {}\n", ctx.header("normal form"), nf.seed.render(&cat), nf.m, nf.strategy),
            };
            Output::ok(text)
        }
        Command::Frieze(FriezeCmd::SignCoherent(args)) => {
            let (cat, seed, values) = seed_and_values(&args)?;
            let f = from_tilting_values(&cat, &seed, &values)?;
            let (pos, neg) = sign_coherent_tilters(&cat, f.values())?;
            let text = match ctx.format {
                Format::Json => ctx.json(json!({
                    "nonnegative": seed_json(&cat, &pos, f.values()),
                    "nonpositive": seed_json(&cat, &neg, f.values()),
                })),
                _ => format!(
                    "{}f >= 0 on {}\nf <= 0 on {}\n",
                    ctx.header("sign-coherent seeds"),
                    pos.render(&cat),
                    neg.render(&cat)
                ),
            };
            Output::ok(text)
        }
        Command::Classical(ClassicalCmd::FromQuiddity { quiddity }) => {
            Output::ok(render_band(&frieze_from_quiddity(&parse_ints(&quiddity)?)?, &ctx))
        }
        Command::Classical(ClassicalCmd::FromTriangulation { order, diagonals }) => {
            let q = quiddity_from_triangulation(order, &parse_diagonals(&diagonals)?)?;
            Output::ok(render_band(&frieze_from_quiddity(&q)?, &ctx))
        }
        Command::TropicalBand { order, diagonal } => {
            Output::ok(render_band(&tropical_band_from_diagonal(order, &parse_ints(&diagonal)?)?, &ctx))
        }
        Command::Ringel(RingelCmd::Decompose { host, slice_values, values }) => {
            let cat = host.category()?;
            let g = cat.ar();
            let f = match (slice_values, values) {
                (Some(s), _) => {
                    let v = parse_ints(&s)?;
                    if v.len() != cat.rank() {
                        bail!("expected {} slice values, got {}", cat.rank(), v.len());
                    }
                    let slice: Vec<(usize, i64)> = (0..cat.rank()).map(|i| (g.projective(i), v[i])).collect();
                    additive_from_slice(&cat, &slice)?
                }
                (None, Some(v)) => ClusterAdditiveFunction::new(&cat, values_for(&cat, &v)?)?,
                (None, None) => bail!("give --slice-values or --values"),
            };
            let comb = ringel_decompose(&cat, &f)?;
            let text = match ctx.format {
                Format::Json => ctx.json(comb.to_json(&cat, true)),
                Format::Csv => {
                    let mut out = String::from("vertex,coeff\n");
                    for (&x, &n) in &comb.coefficients {
                        let _ = writeln!(out, "{},{n}", g.id(x));
                    }
                    out
                }
                Format::Ascii => {
                    let terms: Vec<String> =
                        comb.coefficients.iter().map(|(&x, &n)| format!("{n}·h[{}]", g.id(x))).collect();
                    let sum = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    format!("{}f = {sum}\n", ctx.header(&format!("{} {}", g.dynkin(), g.orientation())))
                }
            };
            Output::ok(text)
        }
        Command::Enumerate(EnumerateCmd::Tilting(host)) => {
            let cat = host.category()?;
            let g = cat.ar();
            let mut sets: Vec<Vec<String>> = cat
                .graph()?
                .nodes
                .iter()
                .map(|s| {
                    let mut ids: Vec<String> = s.summands.iter().map(|&v| g.id(v).to_string()).collect();
                    ids.sort();
                    ids
                })
                .collect();
            sets.sort();
            let text = match ctx.format {
                Format::Json => ctx.json(json!({"type": g.dynkin().to_string(), "count": sets.len(), "tilting": sets})),
                Format::Csv => sets.iter().map(|s| s.join(";") + "\n").collect(),
                Format::Ascii => {
                    let mut out = ctx.header(&format!("{} cluster-tilting objects: {}", g.dynkin(), sets.len()));
                    for s in &sets {
                        let _ = writeln!(out, "{{{}}}", s.join(", "));
                    }
                    out
                }
            };
            Output::ok(text)
        }
        Command::Enumerate(EnumerateCmd::Graph(host)) => {
            let cat = host.category()?;
            let graph = cat.graph()?;
            let text = match ctx.format {
                Format::Json => ctx.json(graph.to_json(&cat)),
                Format::Csv => {
                    let mut out = String::from("from,direction,to\n");
                    for &(a, k, b) in &graph.edges {
                        let _ = writeln!(out, "{a},{},{b}", k + 1);
                    }
                    out
                }
                Format::Ascii => {
                    let mut out =
                        ctx.header(&format!("mutation graph: {} seeds, {} edges", graph.len(), graph.edges.len()));
                    for (i, s) in graph.nodes.iter().enumerate() {
                        let _ = writeln!(out, "{i:>4}  {}", s.render(&cat));
                    }
                    out
                }
            };
            Output::ok(text)
        }
        Command::Enumerate(EnumerateCmd::Triangulations { order }) => {
            let all = enumerate_triangulations(order);
            let render = |t: &Vec<(usize, usize)>| t.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",");
            let text = match ctx.format {
                Format::Json => ctx.json(json!({
                    "order": order,
                    "count": all.len(),
                    "triangulations": all.iter().map(render).collect::<Vec<_>>(),
                })),
                Format::Csv => all.iter().map(|t| render(t) + "\n").collect(),
                Format::Ascii => {
                    let mut out = ctx.header(&format!("triangulations of the {order}-gon: {}", all.len()));
                    for t in &all {
                        out.push_str(&render(t));
                        out.push('\n');
                    }
                    out
                }
            };
            Output::ok(text)
        }
        Command::Cache(cmd) => {
            let (target, build) = match &cmd {
                CacheCmd::Build(t) => (t, true),
                CacheCmd::Check(t) => (t, false),
            };
            let hosts: Vec<(DynkinType, Orientation)> = if target.all {
                let mut types: Vec<DynkinType> = (1..=8).map(DynkinType::a).collect();
                types.extend((4..=6).map(DynkinType::d));
                types.extend((6..=8).map(DynkinType::e));
                types
                    .into_iter()
                    .flat_map(|t| [(t, Orientation::Linear), (t, Orientation::Alternating)])
                    .collect()
            } else {
                vec![(target.dynkin.expect("required by clap"), target.orientation.clone())]
            };
            let mut report = BTreeMap::new();
            let mut all_fresh = true;
            for (t, o) in hosts {
                let cat = ClusterCategory::new(t, &o)?;
                if build {
                    for path in build_cache(&cli.cache_dir, &cat)? {
                        report.insert(path.display().to_string(), "written".to_string());
                    }
                } else {
                    for (path, status) in check_cache(&cli.cache_dir, &cat)? {
                        all_fresh &= status == CacheStatus::Fresh;
                        report.insert(path.display().to_string(), format!("{status:?}").to_lowercase());
                    }
                }
            }
            let text = match ctx.format {
                Format::Json => ctx.json(json!({ "files": report, "ok": all_fresh })),
                _ => report.iter().map(|(p, s)| format!("{s:<8} {p}\n")).collect(),
            };
            Output { text, status: if all_fresh { Status::Ok } else { Status::Failed } }
        }
        Command::Verify { theorem, host, samples, per_seed, exhaustive, range } => {
            let cat = host.category()?;
            let mut config = VerifyConfig { samples, per_seed, exhaustive, rng_seed: ctx.seed, ..VerifyConfig::new(theorem) };
            if let Some(r) = range {
                config.range = parse_range(&r)?;
            } else if exhaustive {
                config.range = (-2, 2);
            }
            let report = verify(&cat, &config)?;
            let doc = serde_json::to_value(&report).expect("serializable");
            let status = if report.has_internal_failure() {
                Status::Internal(doc.clone())
            } else if report.passed() {
                Status::Ok
            } else {
                Status::Failed
            };
            let text = match ctx.format {
                Format::Json => ctx.json(doc),
                _ => {
                    let mut out = format!(
                        "{} on {} {}: {} samples, {} failures, {} ms (seed {})\n",
                        report.theorem,
                        report.dynkin,
                        report.orientation,
                        report.samples,
                        report.failures.len(),
                        report.elapsed_ms,
                        report.seed
                    );
                    for (k, n) in &report.notes {
                        let _ = writeln!(out, "  {k}: {n}");
                    }
                    for f in report.failures.iter().take(10) {
                        let _ = writeln!(out, "  sample {}: {}", f.sample, f.detail);
                    }
                    out
                }
            };
            Output { text, status }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let args: Vec<String> = std::env::args().collect();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Failed => ExitCode::from(2),
                Status::Internal(dump) => {
                    eprintln!("{}", json!({"internal_invariant_violation": dump, "args": args}));
                    ExitCode::from(3)
                }
            }
        }
        Err(e) => match e.downcast_ref::<tropfrieze::Error>() {
            Some(inner) if inner.is_internal() => {
                eprintln!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "internal_invariant_violation": inner.to_string(),
                        "args": args,
                    }))
                    .expect("serializable")
                );
                ExitCode::from(3)
            }
            _ => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}
