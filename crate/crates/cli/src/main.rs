//! `topoctl`: generate placements, build topologies, simulate the message
//! protocol, verify guarantees and run Monte-Carlo experiments.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use topoctl_core::algorithms::Registry;
use topoctl_core::experiments::{
    construct_complete_instance, construct_degree10_instance, generate_uniform_points, run_monte_carlo,
    ExperimentConfig,
};
use topoctl_core::graph::{component_count, is_connected};
use topoctl_core::io::{format_edges, format_points, parse_points};
use topoctl_core::metrics::{degree_pmf, stretch_cdf, PairSample};
use topoctl_core::protocol::simulate_protocol;
use topoctl_core::verify::verify_instance;
use topoctl_core::{build_gilbert, Adjacency, DiskModel, PointSet, Topology};

#[derive(Parser)]
#[command(name = "topoctl", version, about = "Identifier-only topology control for unit-disk networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a point set as `id,x,y` CSV.
    Gen(GenArgs),
    /// Build a topology and write it as an edge list.
    Build(BuildArgs),
    /// Report metrics of one topology on one instance.
    Analyze(AnalyzeArgs),
    /// Run the three-round protocol and report its bit cost.
    Protocol(ProtocolArgs),
    /// Check an algorithm's guarantees on one instance.
    Verify(VerifyArgs),
    /// Run a Monte-Carlo experiment from a JSON config.
    Mc(McArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Construct {
    Degree10,
    Complete,
}

#[derive(Args)]
struct GenArgs {
    /// Number of nodes (uniform placement or `complete` construction).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Deterministic construction instead of a uniform placement.
    #[arg(long, value_enum)]
    construct: Option<Construct>,
    /// Communication range used by the constructions.
    #[arg(long, default_value_t = 1.0)]
    range: f64,
    /// Cluster diameter as a fraction of the range, for `complete`.
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "radius", required = true, multiple = false)]
struct RangeArgs {
    /// Communication range R.
    #[arg(long, group = "radius")]
    range: Option<f64>,
    /// Node density N; R = sqrt(N / (pi n)).
    #[arg(long, group = "radius")]
    density: Option<f64>,
}

#[derive(Args)]
struct Instance {
    /// Point set CSV (`id,x,y`).
    #[arg(long)]
    points: PathBuf,
    #[command(flatten)]
    range: RangeArgs,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long, default_value = "alg1")]
    algorithm: String,
    /// Edge-list output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long, default_value = "alg1")]
    algorithm: String,
    /// Stretch exponents.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 1.0, 2.0])]
    alpha: Vec<f64>,
    /// Sampled node pairs for stretch; all pairs when omitted.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ProtocolArgs {
    #[command(flatten)]
    instance: Instance,
    /// JSON-lines transcript output; stdout when omitted.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long, default_value = "alg1")]
    algorithm: String,
    /// Random execution schedules for the order-independence check.
    #[arg(long, default_value_t = 10)]
    schedules: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct McArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Master seed; replaces the config's seed.
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
}

/// An error carrying the process exit code.
#[derive(Debug)]
struct Exit(u8);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Build(a) => build(a),
        Command::Analyze(a) => analyze(a),
        Command::Protocol(a) => protocol(a),
        Command::Verify(a) => verify(a),
        Command::Mc(a) => mc(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<Exit>() {
            Some(Exit(code)) => ExitCode::from(*code),
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => stdout(text.as_bytes()),
    }
}

/// Writes to stdout; a reader that hangs up early (`| head`) is not an error.
fn stdout(bytes: &[u8]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(bytes).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn gen(a: GenArgs) -> Result<()> {
    let points = match a.construct {
        Some(Construct::Degree10) => construct_degree10_instance(&DiskModel::new(a.range)?),
        Some(Construct::Complete) => {
            let n = a.n.context("--construct complete needs --n")?;
            construct_complete_instance(n, a.epsilon, &DiskModel::new(a.range)?)?
        }
        None => {
            let n = a.n.context("--n is required for a uniform placement")?;
            generate_uniform_points(n, a.seed)?
        }
    };
    emit(a.out.as_deref(), &format!("id,x,y\n{}", format_points(&points)))
}

struct Loaded {
    points: PointSet,
    model: DiskModel,
    gilbert: Adjacency,
}

fn load(instance: &Instance) -> Result<Loaded> {
    let text = fs::read_to_string(&instance.points)
        .with_context(|| format!("reading {}", instance.points.display()))?;
    let points = parse_points(&text).with_context(|| format!("parsing {}", instance.points.display()))?;
    let model = match (instance.range.range, instance.range.density) {
        (Some(r), None) => DiskModel::new(r)?,
        (None, Some(d)) => DiskModel::from_density(points.len(), d)?,
        _ => bail!("exactly one of --range and --density is required"),
    };
    let gilbert = build_gilbert(&points, &model);
    Ok(Loaded { points, model, gilbert })
}

fn topology(l: &Loaded, algorithm: &str) -> Result<Topology> {
    let algo = Registry::builtin().create(algorithm)?;
    Ok(algo.build(&l.points, &l.gilbert)?)
}

fn build(a: BuildArgs) -> Result<()> {
    let l = load(&a.instance)?;
    let topo = topology(&l, &a.algorithm)?;
    let edges = format!("id_a,id_b\n{}", format_edges(&topo));
    emit(a.out.as_deref(), &edges)?;
    let summary = format!(
        "nodes={}\nrange={}\nedges={}\nmax_degree={}\nconnected={}\ngilbert_edges={}\ngilbert_connected={}\n",
        l.points.len(),
        l.model.range(),
        topo.edge_count(),
        topo.max_degree(),
        is_connected(&topo),
        l.gilbert.edge_count(),
        is_connected(&l.gilbert),
    );
    // Keep stdout a clean edge list when no output file is given.
    if a.out.is_some() {
        stdout(summary.as_bytes())
    } else {
        eprint!("{summary}");
        Ok(())
    }
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    let l = load(&a.instance)?;
    let topo = topology(&l, &a.algorithm)?;
    let n = l.points.len();
    let pmf = degree_pmf(std::slice::from_ref(&topo))?;
    let sample = match a.pairs {
        Some(m) => PairSample::Random { m, seed: a.seed },
        None => PairSample::All,
    };
    let mut stretch = Vec::new();
    for &alpha in &a.alpha {
        // A single node has no pairs to measure.
        if n < 2 {
            break;
        }
        match stretch_cdf(&l.points, &l.gilbert, &topo, alpha, sample) {
            Ok(cdf) => stretch.push(json!({
                "alpha": alpha,
                "pairs": cdf.samples,
                "median": cdf.quantile(0.5),
                "q90": cdf.quantile(0.9),
                "p_le_2": cdf.prob_le(2.0),
                "p_le_5": cdf.prob_le(5.0),
                "inf_mass": cdf.inf_mass,
            })),
            // Every sampled pair was disconnected in the Gilbert graph.
            Err(topoctl_core::TopoError::Empty(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let report = json!({
        "algorithm": a.algorithm,
        "nodes": n,
        "range": l.model.range(),
        "edges": topo.edge_count(),
        "normalized_edges": topo.edge_count() as f64 / n as f64,
        "mean_degree": pmf.mean(),
        "max_degree": topo.max_degree(),
        "connected": is_connected(&topo),
        "components": component_count(&topo),
        "gilbert_edges": l.gilbert.edge_count(),
        "gilbert_connected": is_connected(&l.gilbert),
        "gilbert_components": component_count(&l.gilbert),
        "degree_pmf": pmf.mass.iter().map(|(d, m)| json!([d, m])).collect::<Vec<_>>(),
        "stretch": stretch,
    });
    let mut text = String::new();
    match a.format {
        Format::Json => writeln!(text, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => {
            writeln!(text, "metric,value")?;
            for (k, v) in report.as_object().unwrap() {
                match (k.as_str(), v) {
                    ("degree_pmf", serde_json::Value::Array(rows)) => {
                        for r in rows {
                            writeln!(text, "degree_pmf[{}],{}", r[0], r[1])?;
                        }
                    }
                    ("stretch", serde_json::Value::Array(rows)) => {
                        for r in rows {
                            for (sk, sv) in r.as_object().unwrap().iter().filter(|(sk, _)| *sk != "alpha") {
                                writeln!(text, "stretch[{}].{sk},{sv}", r["alpha"])?;
                            }
                        }
                    }
                    (_, serde_json::Value::String(s)) => writeln!(text, "{k},{s}")?,
                    _ => writeln!(text, "{k},{v}")?,
                }
            }
        }
    }
    stdout(text.as_bytes())
}

fn protocol(a: ProtocolArgs) -> Result<()> {
    let l = load(&a.instance)?;
    let out = simulate_protocol(&l.gilbert);
    let mut buf = Vec::new();
    out.write_transcript(&mut buf)?;
    let totals = out.ledger.round_totals();
    let summary = format!(
        "messages={}\nid_width={}\nround1_bits={}\nround2_bits={}\nround3_bits={}\ntotal_bits={}\nmean_bits_per_node={}\nedges={}\n",
        out.transcript.len(),
        out.ledger.id_width,
        totals[0],
        totals[1],
        totals[2],
        out.ledger.total(),
        out.ledger.mean_per_node(),
        out.topology.edge_count(),
    );
    match &a.transcript {
        Some(p) => {
            fs::write(p, &buf).with_context(|| format!("writing {}", p.display()))?;
            stdout(summary.as_bytes())
        }
        None => {
            stdout(&buf)?;
            eprint!("{summary}");
            Ok(())
        }
    }
}

fn verify(a: VerifyArgs) -> Result<()> {
    let l = load(&a.instance)?;
    let algo = Registry::builtin().create(&a.algorithm)?;
    let report = verify_instance(&l.points, &l.gilbert, algo.as_ref(), a.schedules, a.seed)?;
    let mut text = String::new();
    match a.format {
        Format::Json => writeln!(text, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => {
            writeln!(text, "algorithm={} edges={} max_degree={}", report.algorithm, report.edges, report.max_degree)?;
            for c in &report.checks {
                writeln!(text, "{:<5} {}: {}", c.status.to_string(), c.name, c.detail)?;
            }
        }
    }
    stdout(text.as_bytes())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Exit(1).into())
    }
}

fn mc(a: McArgs) -> Result<()> {
    let text = fs::read_to_string(&a.config).with_context(|| format!("reading {}", a.config.display()))?;
    let mut config = ExperimentConfig::from_json(&text).with_context(|| format!("parsing {}", a.config.display()))?;
    config.seed = a.seed;
    if a.workers == Some(0) {
        bail!("--workers must be at least 1");
    }
    let report = run_monte_carlo(&config, a.workers)?;
    report
        .write_to_dir(&a.out)
        .with_context(|| format!("writing {}", a.out.display()))?;
    let mut text = String::new();
    for s in report.summaries()? {
        writeln!(
            text,
            "{} N={}: trials={} connected={:.4} gilbert_connected={:.4} mean_degree={:.3} edges_q99={:.3}",
            s.algorithm,
            s.density,
            s.trials,
            s.connectivity_rate,
            s.gilbert_connectivity_rate,
            s.mean_degree,
            s.normalized_edges_q99
        )?;
    }
    stdout(text.as_bytes())
}
