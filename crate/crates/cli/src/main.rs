//! Command-line front end. Every verdict is a thin binding to a library
//! call; this layer only parses arguments, moves files and prints reports.
//!
//! Exit codes: 0 success / verdict true, 1 verdict false, 2 usage or input
//! error. Reports go to stdout as JSON unless `--plain`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bundletri::build::{self, FacetBijection, StarringTrace};
use bundletri::complex::{SimplicialComplex, Vertex};
use bundletri::error::Error;
use bundletri::partitions::{self, Partition};
use bundletri::suite::{run_suite, SuiteConfig};
use bundletri::{homology, io, iso, recognize};

#[derive(Parser)]
#[command(name = "bundletri", version, about = "Triangulations of sphere bundles over the circle")]
struct Cli {
    /// Plain text output instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a complex and write it to a file.
    Build(BuildArgs),
    /// Decision procedures with certificates.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Z₂ homology, Euler characteristic, orientability, duality.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Isomorphism testing and related invariants.
    #[command(subcommand)]
    Iso(IsoCmd),
    /// Partition counts and listings.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Run the full verification battery.
    PaperSuite {
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// sphere | ball | cycle | boundary-n | kuhnel | k2d4 | stacked
    shape: String,
    /// Dimension d.
    #[arg(long)]
    dim: Option<usize>,
    /// The m parameter: window count for boundary-n, vertex count for cycle.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated weakly increasing parts, e.g. 1,3.
    #[arg(long)]
    partition: Option<String>,
    /// Starring trace file for `stacked`.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Output file (.json for the JSON form, text otherwise).
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Stacked-sphere recognition with a replayable certificate.
    Stacked { file: PathBuf },
    /// All vertex links are stacked spheres.
    ClassK { file: PathBuf },
    /// A facet bijection satisfies the distance-3 condition.
    Admissible {
        file: PathBuf,
        /// Pairs x:y, comma separated, e.g. 10:1,11:2,12:3,13:4.
        #[arg(long)]
        pairs: String,
    },
    /// The induced sphere on the given vertices is combinatorially two-sided.
    TwoSided {
        file: PathBuf,
        /// Comma-separated vertex labels.
        #[arg(long)]
        vertices: String,
    },
    /// Pseudomanifold checks (weak, strong, normal).
    Pseudomanifold { file: PathBuf },
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// Z₂ Betti numbers.
    Betti { file: PathBuf },
    /// Relative Z₂ Betti numbers of the pair (K, L).
    Relative { file_k: PathBuf, file_l: PathBuf },
    /// Euler characteristic.
    Euler { file: PathBuf },
    /// Orientability with an orientation or an obstruction cycle.
    Orientable { file: PathBuf },
    /// Duality equality for nested induced pairs.
    Alexander {
        file: PathBuf,
        /// Comma-separated inner vertex set L.
        #[arg(long)]
        l: String,
        /// Comma-separated outer vertex set L'.
        #[arg(long)]
        lp: String,
    },
}

#[derive(Subcommand)]
enum IsoCmd {
    /// Facet-preserving isomorphism between two complexes.
    Test { file_a: PathBuf, file_b: PathBuf },
    /// Automorphism count.
    Auts { file: PathBuf },
    /// Non-edge graph, optionally written to a graph file.
    NonEdge {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild a stacked sphere from its edge graph.
    Reconstruct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PartitionsCmd {
    /// P(n), P₀(n), P₁(n) and the recurrence value.
    Count { n: usize },
    /// All partitions of n with parities.
    List { n: usize },
}

/// What a command produced: a report body and a verdict (None = not a
/// decision, treated as success).
struct Outcome {
    body: Value,
    verdict: Option<bool>,
    artifacts: Vec<String>,
}

impl Outcome {
    fn data(body: Value) -> Self {
        Outcome { body, verdict: None, artifacts: Vec::new() }
    }

    fn verdict(v: bool, body: Value) -> Self {
        Outcome { body, verdict: Some(v), artifacts: Vec::new() }
    }

    fn with_artifact(mut self, path: &std::path::Path) -> Self {
        self.artifacts.push(path.display().to_string());
        self
    }
}

fn parse_vertex_list(s: &str) -> Result<BTreeSet<Vertex>, Error> {
    s.split(',')
        .map(|t| t.trim().parse::<Vertex>().map_err(|_| Error::InvalidArgument(format!("bad vertex `{t}`"))))
        .collect()
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    let parts: Result<Vec<usize>, Error> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad part `{t}`"))))
        .collect();
    Partition::new(parts?)
}

fn parse_pairs(s: &str) -> Result<FacetBijection, Error> {
    let mut pairs = Vec::new();
    for tok in s.split(',') {
        let (x, y) = tok
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected x:y, got `{tok}`")))?;
        let x: Vertex = x.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad vertex `{x}`")))?;
        let y: Vertex = y.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad vertex `{y}`")))?;
        pairs.push((x, y));
    }
    FacetBijection::new(pairs)
}

fn required<T>(opt: Option<T>, flag: &str) -> Result<T, Error> {
    opt.ok_or_else(|| Error::InvalidArgument(format!("missing required {flag}")))
}

fn summary(k: &SimplicialComplex) -> Value {
    json!({
        "dim": k.dim(),
        "vertices": k.num_vertices(),
        "facets": k.num_facets(),
        "f_vector": k.f_vector(),
    })
}

fn run_build(args: &BuildArgs) -> Result<Outcome, Error> {
    let k = match args.shape.as_str() {
        "sphere" => build::standard_sphere(required(args.dim, "--dim")?),
        "ball" => build::standard_ball(required(args.dim, "--dim")?),
        "cycle" => build::cycle(required(args.m, "--m")?)?,
        "boundary-n" => build::boundary_n(required(args.dim, "--dim")?, required(args.m, "--m")?)?,
        "kuhnel" => build::kuhnel(required(args.dim, "--dim")?)?,
        "k2d4" => {
            let p = parse_partition(&required(args.partition.as_ref(), "--partition")?)?;
            build::k_2d4(required(args.dim, "--dim")?, &p)?
        }
        "stacked" => {
            let trace = match &args.trace {
                Some(path) => io::import_trace(path)?,
                None => StarringTrace::default(),
            };
            build::stacked_sphere(required(args.dim, "--dim")?, &trace)?
        }
        other => return Err(Error::InvalidArgument(format!("unknown shape `{other}`"))),
    };
    io::export_complex(&k, &args.output)?;
    Ok(Outcome::data(summary(&k)).with_artifact(&args.output))
}

fn run_verify(cmd: &VerifyCmd) -> Result<Outcome, Error> {
    match cmd {
        VerifyCmd::Stacked { file } => {
            let k = io::import_complex(file)?;
            let r = recognize::is_stacked_sphere(&k)?;
            let cert = r.certificate.as_ref().map(|c| {
                json!({
                    "base_facets": c.base.facets().map(|f| f.vertices().to_vec()).collect::<Vec<_>>(),
                    "trace": c.trace.steps.iter()
                        .map(|(f, v)| json!({"facet": f.vertices().to_vec(), "vertex": v}))
                        .collect::<Vec<_>>(),
                })
            });
            Ok(Outcome::verdict(r.verdict, json!({"certificate": cert, "reason": r.reason})))
        }
        VerifyCmd::ClassK { file } => {
            let k = io::import_complex(file)?;
            let v = recognize::is_class_k(&k)?;
            Ok(Outcome::verdict(v, json!({})))
        }
        VerifyCmd::Admissible { file, pairs } => {
            let k = io::import_complex(file)?;
            let psi = parse_pairs(pairs)?;
            let r = recognize::is_admissible(&k, &psi)?;
            let violation = r.violation.as_ref().map(|v| {
                json!({"x": v.x, "y": v.y, "distance": v.distance, "path": v.path})
            });
            Ok(Outcome::verdict(r.verdict, json!({"violation": violation})))
        }
        VerifyCmd::TwoSided { file, vertices } => {
            let k = io::import_complex(file)?;
            let set = parse_vertex_list(vertices)?;
            let r = recognize::is_two_sided(&k, &set)?;
            let comps: Vec<Vec<Vec<Vertex>>> = r
                .components
                .iter()
                .map(|c| c.iter().map(|e| e.vertices().to_vec()).collect())
                .collect();
            Ok(Outcome::verdict(r.verdict, json!({"components": comps})))
        }
        VerifyCmd::Pseudomanifold { file } => {
            let k = io::import_complex(file)?;
            let weak = k.is_weak_pseudomanifold()?;
            let strong = weak && k.is_pseudomanifold()?;
            let normal = strong && k.is_normal_pseudomanifold()?;
            Ok(Outcome::verdict(strong, json!({"weak": weak, "pseudomanifold": strong, "normal": normal})))
        }
    }
}

fn run_homology(cmd: &HomologyCmd) -> Result<Outcome, Error> {
    match cmd {
        HomologyCmd::Betti { file } => {
            let k = io::import_complex(file)?;
            Ok(Outcome::data(json!({"betti_z2": homology::betti_z2(&k)})))
        }
        HomologyCmd::Relative { file_k, file_l } => {
            let k = io::import_complex(file_k)?;
            let l = io::import_complex(file_l)?;
            Ok(Outcome::data(json!({"relative_betti_z2": homology::relative_betti_z2(&k, &l)?})))
        }
        HomologyCmd::Euler { file } => {
            let k = io::import_complex(file)?;
            Ok(Outcome::data(json!({"euler": homology::euler_characteristic(&k)})))
        }
        HomologyCmd::Orientable { file } => {
            let k = io::import_complex(file)?;
            match homology::orientable(&k)? {
                homology::OrientationOutcome::Orientable(o) => {
                    let signs: Vec<Value> = o
                        .signs
                        .iter()
                        .map(|(f, s)| json!({"facet": f.vertices().to_vec(), "sign": s}))
                        .collect();
                    Ok(Outcome::verdict(true, json!({"orientation": signs})))
                }
                homology::OrientationOutcome::Obstruction(cycle) => {
                    let facets: Vec<Vec<Vertex>> = cycle.iter().map(|f| f.vertices().to_vec()).collect();
                    Ok(Outcome::verdict(false, json!({"obstruction_cycle": facets})))
                }
            }
        }
        HomologyCmd::Alexander { file, l, lp } => {
            let k = io::import_complex(file)?;
            let l = parse_vertex_list(l)?;
            let lp = parse_vertex_list(lp)?;
            let v = homology::alexander_check(&k, &l, &lp)?;
            Ok(Outcome::verdict(v, json!({})))
        }
    }
}

fn run_iso(cmd: &IsoCmd) -> Result<Outcome, Error> {
    match cmd {
        IsoCmd::Test { file_a, file_b } => {
            let a = io::import_complex(file_a)?;
            let b = io::import_complex(file_b)?;
            match iso::complex_isomorphism(&a, &b) {
                iso::IsoWitness::Mapping(m) => {
                    let pairs: Vec<(Vertex, Vertex)> = m.into_iter().collect();
                    Ok(Outcome::verdict(true, json!({"mapping": pairs})))
                }
                iso::IsoWitness::Refutation(r) => Ok(Outcome::verdict(false, json!({"refutation": r}))),
            }
        }
        IsoCmd::Auts { file } => {
            let k = io::import_complex(file)?;
            Ok(Outcome::data(json!({"automorphisms": iso::automorphism_count(&k)})))
        }
        IsoCmd::NonEdge { file, output } => {
            let k = io::import_complex(file)?;
            let g = iso::non_edge_graph(&k);
            let mut out = Outcome::data(json!({
                "nodes": g.num_nodes(),
                "non_edges": g.num_edges(),
                "component_profiles": iso::component_profiles(&g),
            }));
            if let Some(path) = output {
                io::export_graph(&g, path)?;
                out = out.with_artifact(path);
            }
            Ok(out)
        }
        IsoCmd::Reconstruct { graph, dim, output } => {
            let g = io::import_graph(graph)?;
            let k = iso::reconstruct_stacked(&g, *dim)?;
            let mut out = Outcome::data(summary(&k));
            if let Some(path) = output {
                io::export_complex(&k, path)?;
                out = out.with_artifact(path);
            }
            Ok(out)
        }
    }
}

fn run_partitions(cmd: &PartitionsCmd) -> Result<Outcome, Error> {
    match cmd {
        PartitionsCmd::Count { n } => {
            let (p, p0, p1) = partitions::counts(*n)?;
            Ok(Outcome::data(json!({
                "n": n,
                "count": p,
                "even": p0,
                "odd": p1,
                "recurrence": partitions::partition_count(*n).to_string(),
                "hardy_ramanujan": partitions::hardy_ramanujan(*n),
            })))
        }
        PartitionsCmd::List { n } => {
            let all = partitions::enumerate_partitions(*n)?;
            let list: Vec<Value> = all
                .iter()
                .map(|p| {
                    json!({
                        "parts": p.parts(),
                        "parity": match p.parity() {
                            partitions::Parity::Even => "even",
                            partitions::Parity::Odd => "odd",
                        },
                    })
                })
                .collect();
            Ok(Outcome::data(json!({"n": n, "partitions": list})))
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Build(args) => run_build(args),
        Command::Verify(cmd) => run_verify(cmd),
        Command::Homology(cmd) => run_homology(cmd),
        Command::Iso(cmd) => run_iso(cmd),
        Command::Partitions(cmd) => run_partitions(cmd),
        Command::PaperSuite { max_dim, seed } => {
            let report = run_suite(&SuiteConfig { max_dim: *max_dim, seed: *seed });
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                        "millis": c.millis,
                    })
                })
                .collect();
            Ok(Outcome::verdict(report.passed, json!({"checks": checks})))
        }
    }
}

fn print_report(cli: &Cli, command_line: &str, outcome: &Outcome, millis: u128) {
    if cli.plain {
        if let Some(v) = outcome.verdict {
            println!("verdict: {v}");
        }
        if let Some(obj) = outcome.body.as_object() {
            for (key, val) in obj {
                println!("{key}: {val}");
            }
        }
        for a in &outcome.artifacts {
            println!("wrote: {a}");
        }
    } else {
        let report = json!({
            "command": command_line,
            "verdict": outcome.verdict,
            "data": outcome.body,
            "artifacts": outcome.artifacts,
            "millis": millis,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_line: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            print_report(&cli, &command_line, &outcome, start.elapsed().as_millis());
            match outcome.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
