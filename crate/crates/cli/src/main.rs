use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deviant_core::betti::{betti_table, BettiTable};
use deviant_core::deviations::{deviations_graded, deviations_multigraded, gamma_alpha};
use deviant_core::dgmodel::{model_homology, ModelKind};
use deviant_core::ideals::{cycle_graph, edge_ideal, path_graph, Graph, GraphKind};
use deviant_core::koszul::{homology, minimal_generator_bidegrees};
use deviant_core::linalg::{Field, PrimeField, Rationals};
use deviant_core::series::ExponentVector;
use deviant_core::verify::{self, Mode};

mod output;

use output::{Format, Rows};

/// Largest ambient dimension for strand-by-strand homology (2^n strands).
const MAX_HOMOLOGY_VARS: usize = 16;
/// Largest truncation order for graded deviations.
const MAX_SMAX: usize = 400;
/// Largest number of multidegrees in a multigraded truncation box.
const MAX_BOX: u128 = 2_000_000;

#[derive(Parser, Debug)]
#[command(name = "deviant", version, about = "Deviations, Betti numbers and Koszul homology of edge ideals of paths and cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
struct GraphArgs {
    /// The path on N vertices.
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// The cycle on N vertices.
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    /// A graph read from an edge-list file (`n <count>` header, one `i j` per line).
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded or multigraded deviations, or the (gamma_s, alpha_s) table.
    Deviations {
        #[command(flatten)]
        graph: GraphArgs,
        /// Highest homological degree for graded deviations (default n + 1).
        #[arg(long)]
        smax: Option<usize>,
        /// Emit the (gamma_s, alpha_s) table for s = 1..=SMAX.
        #[arg(long, value_name = "SMAX", conflicts_with_all = ["path", "cycle", "edges"])]
        gamma_alpha: Option<usize>,
        /// Multigraded deviations inside a truncation box.
        #[arg(long)]
        multigraded: bool,
        /// Componentwise cap: one integer for all variables or a comma list (default 1).
        #[arg(long, requires = "multigraded")]
        cap: Option<String>,
        /// Bound on the total degree (default: the norm of the cap).
        #[arg(long, requires = "multigraded")]
        degree_bound: Option<u64>,
    },
    /// Betti table of a path or cycle.
    Betti {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Engine::Jacques)]
        engine: Engine,
        /// One row per multidegree instead of the graded table.
        #[arg(long)]
        multigraded: bool,
        /// Field characteristic: 0 or a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Multigraded Koszul homology dimensions of any edge ideal.
    Homology {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Engine::Koszul)]
        engine: Engine,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Bidegrees (i, j) of minimal algebra generators of Koszul homology.
    Generators {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Run the numbered reproducibility criteria.
    Verify {
        /// Small sizes only (n <= 6).
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        /// Stated sizes (n <= 8, reference table to s = 25). The default.
        #[arg(long)]
        full: bool,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Engine {
    /// Closed-form Betti numbers.
    Jacques,
    /// Homology of the Koszul complex.
    Koszul,
    /// Homology of the reduced minimal model.
    Model,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

impl From<deviant_core::Error> for Failure {
    fn from(e: deviant_core::Error) -> Self {
        use deviant_core::Error as E;
        match e {
            E::InvalidGraph(_)
            | E::KindMismatch { .. }
            | E::AmbientMismatch { .. }
            | E::NotPrime(_)
            | E::Parse { .. }
            | E::InvalidVariable(_)
            | E::MalformedSequences(_)
            | E::NotSquarefree(_) => Failure::Usage(e.to_string()),
            E::OutOfRange(_) => Failure::Resource(e.to_string()),
            _ => Failure::Violation(e.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn load_graph(args: &GraphArgs) -> Outcome<Graph> {
    let g = match (args.path, args.cycle, &args.edges) {
        (Some(n), _, _) => path_graph(n)?,
        (_, Some(n), _) => cycle_graph(n)?,
        (_, _, Some(file)) => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
            Graph::from_edge_list(&text)?
        }
        _ => return Err(Failure::Usage("one of --path, --cycle or --edges is required".into())),
    };
    Ok(g)
}

fn model_kind(g: &Graph) -> Outcome<ModelKind> {
    match g.kind() {
        GraphKind::Path => Ok(ModelKind::Path),
        GraphKind::Cycle => Ok(ModelKind::Cycle),
        GraphKind::General => Err(Failure::Usage("this engine needs --path or --cycle".into())),
    }
}

fn parse_cap(text: Option<&str>, n: usize) -> Outcome<ExponentVector> {
    let bad = |t: &str| Failure::Usage(format!("bad --cap {t:?}"));
    let Some(t) = text else { return Ok(ExponentVector::ones(n)) };
    let parts: Vec<u32> = t.split(',').map(|x| x.trim().parse().map_err(|_| bad(t))).collect::<Outcome<_>>()?;
    match parts.len() {
        1 => Ok(ExponentVector::new(vec![parts[0]; n])),
        k if k == n => Ok(ExponentVector::new(parts)),
        _ => Err(Failure::Usage(format!("--cap has {} entries, graph has {n} vertices", parts.len()))),
    }
}

fn box_size(cap: &ExponentVector) -> u128 {
    cap.components().iter().map(|&c| c as u128 + 1).fold(1u128, |a, b| a.saturating_mul(b))
}

fn with_field<T>(
    characteristic: u64,
    q: impl FnOnce(&Rationals) -> Outcome<T>,
    p: impl FnOnce(&PrimeField) -> Outcome<T>,
) -> Outcome<T> {
    if characteristic == 0 {
        q(&Rationals)
    } else {
        p(&PrimeField::new(characteristic)?)
    }
}

fn check_homology_size(n: usize) -> Outcome<()> {
    if n > MAX_HOMOLOGY_VARS {
        return Err(Failure::Resource(format!("{n} vertices exceeds the homology limit of {MAX_HOMOLOGY_VARS}")));
    }
    Ok(())
}

fn homology_table<F: Field>(g: &Graph, engine: Engine, field: &F) -> Outcome<BettiTable> {
    check_homology_size(g.n())?;
    Ok(match engine {
        Engine::Jacques => betti_table(g)?,
        Engine::Koszul => homology(&edge_ideal(g), &ExponentVector::ones(g.n()), field)?.betti(),
        Engine::Model => model_homology(model_kind(g)?, g.n(), field)?,
    })
}

fn run(cli: &Cli) -> Outcome<(Rows, bool)> {
    match &cli.command {
        Command::Deviations { graph, smax, gamma_alpha: ga, multigraded, cap, degree_bound } => {
            if let Some(s) = ga {
                if *s > MAX_SMAX {
                    return Err(Failure::Resource(format!("smax {s} exceeds {MAX_SMAX}")));
                }
                return Ok((Rows::gamma_alpha(&gamma_alpha(*s)?), true));
            }
            let g = load_graph(graph)?;
            if *multigraded {
                let cap = parse_cap(cap.as_deref(), g.n())?;
                if box_size(&cap) > MAX_BOX {
                    return Err(Failure::Resource(format!("truncation box has more than {MAX_BOX} multidegrees")));
                }
                let bound = degree_bound.unwrap_or(cap.norm());
                Ok((Rows::multigraded_deviations(&deviations_multigraded(&g, &cap, bound)?), true))
            } else {
                let s = smax.unwrap_or(g.n() + 1);
                if s > MAX_SMAX {
                    return Err(Failure::Resource(format!("smax {s} exceeds {MAX_SMAX}")));
                }
                Ok((Rows::graded_deviations(&deviations_graded(&g, s)?), true))
            }
        }
        Command::Betti { graph, engine, multigraded, characteristic } => {
            let g = load_graph(graph)?;
            model_kind(&g)?;
            let t = with_field(*characteristic, |f| homology_table(&g, *engine, f), |f| homology_table(&g, *engine, f))?;
            Ok((if *multigraded { Rows::multigraded_betti(&t) } else { Rows::graded_betti(&t) }, true))
        }
        Command::Homology { graph, engine, characteristic } => {
            let g = load_graph(graph)?;
            let t = with_field(*characteristic, |f| homology_table(&g, *engine, f), |f| homology_table(&g, *engine, f))?;
            Ok((Rows::multigraded_betti(&t), true))
        }
        Command::Generators { graph, characteristic } => {
            let g = load_graph(graph)?;
            check_homology_size(g.n())?;
            let ideal = edge_ideal(&g);
            let cap = ExponentVector::ones(g.n());
            let gens = with_field(
                *characteristic,
                |f| Ok(minimal_generator_bidegrees(&homology(&ideal, &cap, f)?)?),
                |f| Ok(minimal_generator_bidegrees(&homology(&ideal, &cap, f)?)?),
            )?;
            Ok((Rows::generators(&gens), true))
        }
        Command::Verify { quick, characteristic, .. } => {
            let mode = if *quick { Mode::Quick } else { Mode::Full };
            let criteria = verify::run(mode, *characteristic)?;
            let ok = criteria.iter().filter(|c| c.gating).all(|c| c.passed());
            let ratios = if *characteristic == 2 { Vec::new() } else { verify::ratio_report(12)? };
            Ok((Rows::verify(mode, *characteristic, &criteria, &ratios), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("pool configured once");
    }
    let result = run(&cli).and_then(|(rows, ok)| {
        let text = rows.render(cli.format);
        match &cli.out {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        if ok {
            Ok(())
        } else {
            Err(Failure::Violation("a theorem check failed".into()))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
