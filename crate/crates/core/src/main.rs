use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trifree::coloring::{solve, ListAssignment};
use trifree::configurations::{disk_instance, find_reducible};
use trifree::flexibility::{
    check_counting_bound, estimate_probabilities, satisfy_request, satisfy_weighted, theoretical_epsilon,
};
use trifree::io::{parse_lists, parse_request, parse_weights, ratio, write_coloring, write_lists};
use trifree::planar::{parse_graph, write_graph, PlanarGraph, Vertex};
use trifree::reducibility::is_reducible;
use trifree::{discharging, gen, Error, Result};

/// Reducible configurations, discharging and flexible list colorings of
/// triangle-free plane graphs.
#[derive(Parser, Debug)]
#[command(name = "trifree", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    #[arg(long, global = true, env = "TRIFREE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, env = "TRIFREE_TRIALS", default_value_t = 1000)]
    trials: u64,
    /// List size.
    #[arg(long, global = true, env = "TRIFREE_K", default_value_t = 4)]
    k: usize,
    /// Distance for the independent sets in FORB.
    #[arg(long, global = true, env = "TRIFREE_D", default_value_t = 1)]
    d: usize,
    /// Exponent parameter of epsilon and of the counting bound.
    #[arg(long, global = true, env = "TRIFREE_B", default_value_t = 31)]
    b: u32,
    /// Largest subgraph the exhaustive reducibility check accepts.
    #[arg(long, global = true, env = "TRIFREE_CAP", default_value_t = trifree::reducibility::DEFAULT_CAP)]
    cap: usize,
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, env = "TRIFREE_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the facial walks.
    Faces { graph: PathBuf },
    /// Check FIX and FORB for an induced subgraph.
    CheckReducible {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        subgraph: Vec<Vertex>,
    },
    /// Find a reducible configuration.
    FindConfig {
        graph: PathBuf,
        /// Also run the exhaustive check when the configuration fits under --cap.
        #[arg(long)]
        verify: bool,
    },
    /// Replay the discharging on a disk instance.
    Discharge { graph: PathBuf },
    /// Find one coloring from the lists.
    Color { graph: PathBuf, lists: PathBuf },
    /// Count colorings and compare with 2^(n/b).
    Count { graph: PathBuf, lists: PathBuf },
    /// Best sampled coloring for a request or weighted request.
    Flex {
        graph: PathBuf,
        lists: PathBuf,
        #[arg(long, conflicts_with = "weights", required_unless_present = "weights")]
        request: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Per-pair hit counts of the sampler.
    Estimate { graph: PathBuf, lists: PathBuf },
    /// Generate a test fixture: a graph, or lists for a given graph.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::TriangleFree)]
        kind: Kind,
        /// Vertex bound for random graphs.
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Print random --k lists for this graph instead.
        #[arg(long)]
        lists_for: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        palette: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    TriangleFree,
    SmallFree,
    Quadrangulation,
    Cube,
}

/// Outcome of a subcommand: its report and whether the answer was "yes".
struct Report {
    text: String,
    yes: bool,
}

impl Report {
    fn yes(text: String) -> Self {
        Report { text, yes: true }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn graph(path: &Path) -> Result<PlanarGraph> {
    parse_graph(&read(path)?)
}

fn lists(path: &Path) -> Result<ListAssignment> {
    parse_lists(&read(path)?)
}

fn covered(g: &PlanarGraph, l: &ListAssignment) -> Result<()> {
    match g.vertices().find(|&v| l.size(v) == 0) {
        Some(v) => Err(Error::PreconditionViolated(format!("vertex {v} has no list"))),
        None => Ok(()),
    }
}

fn faces(g: &PlanarGraph) -> String {
    let mut out = String::new();
    for f in g.faces() {
        write!(out, "face {} :", f.id).unwrap();
        for v in &f.walk {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    if let Some(f) = g.outer_face() {
        writeln!(out, "outer {f}").unwrap();
    }
    out
}

fn check_reducible(g: &PlanarGraph, h: &[Vertex], o: &Opts) -> Result<Report> {
    let verdict = is_reducible(g, h, o.d, o.k, o.cap)?;
    let mut out = format!("reducible {}\n", verdict.reducible);
    if let Some(w) = &verdict.witness {
        writeln!(out, "witness {}", w.condition).unwrap();
        let mut verts: Vec<Vertex> = h.to_vec();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            writeln!(out, "bound {v} {}", w.bound.get(v)).unwrap();
        }
        out += &write_lists(&w.lists, verts);
    }
    Ok(Report { text: out, yes: verdict.reducible })
}

fn find_config(g: &PlanarGraph, verify: bool, o: &Opts) -> Result<Report> {
    let cfg = find_reducible(g)?;
    let mut out = cfg.describe();
    if verify {
        match cfg.verify(g, o.cap)? {
            Some(v) => writeln!(out, "reducible {}", v.reducible).unwrap(),
            None => writeln!(out, "reducible skipped").unwrap(),
        }
    }
    Ok(Report::yes(out))
}

/// Uses the outer face as `C` when it is a short cycle, otherwise the disk
/// the configuration search would work in.
fn discharge(g: &PlanarGraph) -> Result<Report> {
    let outer = g.outer_face().map(|f| g.face(f)).filter(|f| f.is_cycle() && f.len() <= 5);
    let (inner, cycle) = match outer {
        Some(f) => (g.clone(), f.walk.clone()),
        None => disk_instance(g)?,
    };
    let c = cycle.iter().copied().collect();
    let report = discharging::verify(&inner, &c)?;
    Ok(Report::yes(report.to_string()))
}

fn color(g: &PlanarGraph, l: &ListAssignment) -> Result<Report> {
    covered(g, l)?;
    Ok(match solve(g, l) {
        Some(c) => Report::yes(write_coloring(&c)),
        None => Report { text: "uncolorable\n".into(), yes: false },
    })
}

fn count(g: &PlanarGraph, l: &ListAssignment, o: &Opts) -> Result<Report> {
    covered(g, l)?;
    let check = check_counting_bound(g, l, o.b)?;
    Ok(Report { yes: check.count > 0, text: check.to_string() })
}

fn flex(
    g: &PlanarGraph,
    l: &ListAssignment,
    request: Option<&Path>,
    weights: Option<&Path>,
    o: &Opts,
) -> Result<Report> {
    let mut out = String::new();
    let best = if let Some(path) = request {
        let r = parse_request(&read(path)?)?;
        let res = satisfy_request(g, l, &r, o.trials, o.seed)?;
        writeln!(out, "requested {}", r.len()).unwrap();
        writeln!(out, "honored {}", res.score.to_integer()).unwrap();
        writeln!(out, "fraction {}", ratio(&res.fraction)).unwrap();
        writeln!(out, "seed {}", res.seed).unwrap();
        res.best
    } else {
        let path = weights.expect("clap requires one of the request files");
        let w = parse_weights(&read(path)?)?;
        let res = satisfy_weighted(g, l, &w, o.trials, o.seed)?;
        writeln!(out, "weight {}", ratio(&w.values().sum())).unwrap();
        writeln!(out, "collected {}", ratio(&res.score)).unwrap();
        writeln!(out, "fraction {}", ratio(&res.fraction)).unwrap();
        writeln!(out, "seed {}", res.seed).unwrap();
        res.best
    };
    out += &write_coloring(&best);
    Ok(Report::yes(out))
}

fn estimate(g: &PlanarGraph, l: &ListAssignment, o: &Opts) -> Result<Report> {
    let stats = estimate_probabilities(g, l, o.trials, o.seed)?;
    let k = u32::try_from(o.k).map_err(|_| Error::PreconditionViolated("k is too large".into()))?;
    let eps = theoretical_epsilon(k, o.b)?;
    Ok(Report::yes(format!("{stats}epsilon {}\n", ratio(&eps))))
}

fn generate(kind: Kind, n: usize, lists_for: Option<&Path>, palette: u32, o: &Opts) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    if let Some(path) = lists_for {
        let g = graph(path)?;
        if (palette as usize) < o.k {
            return Err(Error::PreconditionViolated(format!("palette {palette} is smaller than k = {}", o.k)));
        }
        let l = gen::random_lists(&g, o.k, palette, &mut rng);
        return Ok(Report::yes(write_lists(&l, g.vertices())));
    }
    let g = match kind {
        Kind::TriangleFree => gen::random_triangle_free(n, &mut rng),
        Kind::SmallFree => gen::random_small_free(n, &mut rng),
        Kind::Quadrangulation => gen::random_quadrangulation(n, &mut rng),
        Kind::Cube => gen::cube(),
    };
    Ok(Report::yes(write_graph(&g)))
}

fn run(cli: &Cli) -> Result<Report> {
    let o = &cli.opts;
    match &cli.command {
        Command::Faces { graph: p } => Ok(Report::yes(faces(&graph(p)?))),
        Command::CheckReducible { graph: p, subgraph } => check_reducible(&graph(p)?, subgraph, o),
        Command::FindConfig { graph: p, verify } => find_config(&graph(p)?, *verify, o),
        Command::Discharge { graph: p } => discharge(&graph(p)?),
        Command::Color { graph: p, lists: q } => color(&graph(p)?, &lists(q)?),
        Command::Count { graph: p, lists: q } => count(&graph(p)?, &lists(q)?, o),
        Command::Flex { graph: p, lists: q, request, weights } => {
            flex(&graph(p)?, &lists(q)?, request.as_deref(), weights.as_deref(), o)
        }
        Command::Estimate { graph: p, lists: q } => estimate(&graph(p)?, &lists(q)?, o),
        Command::Gen { kind, n, lists_for, palette } => generate(*kind, *n, lists_for.as_deref(), *palette, o),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TheoremViolation(_) | Error::InternalNoColoring(_) | Error::NoRichVertexOnNegativeFace { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.opts.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.opts.jobs).build_global() {
            eprintln!("error io-error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(if r.yes { 0 } else { 1 })
        }
        Err(e) => {
            if let Error::TheoremViolation(dump) = &e {
                print!("{dump}");
            }
            eprintln!("error {}: {e}", e.code());
            ExitCode::from(exit_code(&e))
        }
    }
}
