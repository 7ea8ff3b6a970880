use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use regraph_cli::document::GraphDocument;
use regraph_cli::output;
use regraph_cli::verify::{self, VerifySettings};
use regraph_core::{
    count_closed_paths, count_geodesic_paths, density_table, graph,
    prohibited_direction_counts, tree_walk_counts, Budget, Graph,
};

#[derive(Parser, Debug)]
#[command(name = "regraph", version, about = "Trace-formula toolkit for finite regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph document for a built-in generator.
    Generate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate closed-path and geodesic-path counts.
    Census {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 12)]
        l_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification pipeline and report per-stage results.
    Verify {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 12)]
        l_max: usize,
        /// Truncation length for the geodesic sum in the heat-trace check.
        #[arg(long, default_value_t = 24)]
        l_trunc: usize,
        /// Times at which the heat-trace identity is checked.
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 1.0])]
        t: Vec<f64>,
        /// Eigensolver off-diagonal norm threshold.
        #[arg(long, default_value_t = 1e-12)]
        eigen_tol: f64,
        /// Largest graph for which exhaustive path enumeration is attempted.
        #[arg(long, default_value_t = Budget::default().max_vertices)]
        budget_vertices: usize,
        /// Longest paths enumerated exhaustively.
        #[arg(long, default_value_t = Budget::default().max_length)]
        budget_length: usize,
        /// Total enumeration step budget.
        #[arg(long, default_value_t = Budget::default().max_steps)]
        budget_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the spectral density (contractible and full) on a grid.
    Density {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 24)]
        l_trunc: usize,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump exact tree-walk counting sequences as exponent,coefficient rows.
    Series {
        /// Branching number of the regular tree (degree minus one).
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum)]
        series: SeriesKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SeriesKind {
    /// Closed walks on the tree from a fixed root.
    PTree,
    /// First returns to the root; row k counts returns of length 2k.
    PTilde,
    /// Closed walks with one root direction prohibited.
    PHat,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Kind {
    Cycle,
    Complete,
    Petersen,
    Hypercube,
    Circulant,
    RandomRegular,
}

#[derive(Args, Debug, Clone)]
struct GraphSource {
    /// Graph document (JSON file); mutually exclusive with --kind.
    #[arg(long, conflicts_with = "kind")]
    graph: Option<PathBuf>,
    /// Built-in generator.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Vertex count (dimension for hypercube).
    #[arg(long)]
    n: Option<usize>,
    /// Degree for random-regular.
    #[arg(long)]
    degree: Option<usize>,
    /// Seed for random-regular; same seed, same graph.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Circulant connection offsets, comma-separated.
    #[arg(long, value_delimiter = ',')]
    offsets: Vec<usize>,
    /// Rejection-sampling attempt budget for random-regular.
    #[arg(long, default_value_t = graph::DEFAULT_REJECTION_BUDGET)]
    budget_rejection: usize,
}

impl GraphSource {
    fn resolve(&self) -> anyhow::Result<(String, Graph)> {
        if let Some(path) = &self.graph {
            let doc = GraphDocument::parse(&output::read_to_string(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            let g = doc.build()?;
            return Ok((doc.name, g));
        }
        let need_n = || self.n.context("this generator requires --n");
        match self.kind {
            None => bail!("provide a graph with --graph FILE or --kind GENERATOR"),
            Some(Kind::Cycle) => {
                let n = need_n()?;
                Ok((format!("cycle-{n}"), graph::cycle(n)?))
            }
            Some(Kind::Complete) => {
                let n = need_n()?;
                Ok((format!("complete-{n}"), graph::complete(n)?))
            }
            Some(Kind::Petersen) => Ok(("petersen".into(), graph::petersen()?)),
            Some(Kind::Hypercube) => {
                let d = u32::try_from(need_n()?).context("hypercube dimension too large")?;
                Ok((format!("hypercube-{d}"), graph::hypercube(d)?))
            }
            Some(Kind::Circulant) => {
                let n = need_n()?;
                if self.offsets.is_empty() {
                    bail!("circulant requires --offsets");
                }
                Ok((
                    format!("circulant-{n}"),
                    graph::circulant(n, &self.offsets)?,
                ))
            }
            Some(Kind::RandomRegular) => {
                let n = need_n()?;
                let degree = self.degree.context("random-regular requires --degree")?;
                let g = graph::random_regular(n, degree, self.seed, self.budget_rejection)?;
                Ok((format!("random-{n}-{degree}-{}", self.seed), g))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Generate { source, out } => {
            let (name, g) = source.resolve()?;
            output::emit(out.as_deref(), &GraphDocument::from_graph(name, &g).to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Census {
            source,
            l_max,
            format,
            out,
        } => {
            let (_, g) = source.resolve()?;
            let p = count_closed_paths(&g, l_max);
            let gp = count_geodesic_paths(&g, l_max);
            let text = match format {
                Format::Csv => verify::census_csv(&p, &gp),
                Format::Json => verify::census_json(&p, &gp),
            };
            output::emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            source,
            l_max,
            l_trunc,
            t,
            eigen_tol,
            budget_vertices,
            budget_length,
            budget_steps,
            out,
        } => {
            let (name, g) = source.resolve()?;
            let settings = VerifySettings {
                l_max,
                l_trunc,
                t_values: t,
                eigen_tol,
                budget: Budget {
                    max_vertices: budget_vertices,
                    max_length: budget_length,
                    max_steps: budget_steps,
                },
            };
            let mut report = verify::run_verification(&g, &settings);
            report.config = serde_json::json!({
                "graph": name,
                "vertex_count": g.vertex_count(),
                "degree": g.degree(),
                "l_max": l_max,
                "l_trunc": l_trunc,
                "t": settings.t_values,
                "eigen_tol": eigen_tol,
                "budget_vertices": budget_vertices,
                "budget_length": budget_length,
                "budget_steps": budget_steps,
            });
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            output::emit(out.as_deref(), &text)?;
            if report.pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Density {
            source,
            l_trunc,
            grid,
            format,
            out,
        } => {
            let (_, g) = source.resolve()?;
            let table = density_table(&g, l_trunc, grid)?;
            let text = match format {
                Format::Csv => output::density_csv(&table),
                Format::Json => output::density_json(&table),
            };
            output::emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Series {
            q,
            order,
            series,
            out,
        } => {
            if q == 0 {
                bail!("--q must be at least 1");
            }
            let coeffs = match series {
                SeriesKind::PTree => tree_walk_counts(q, order).p_tree,
                SeriesKind::PTilde => tree_walk_counts(q, order).p_tilde,
                SeriesKind::PHat => prohibited_direction_counts(q, order),
            };
            output::emit(out.as_deref(), &output::series_csv(&coeffs))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
