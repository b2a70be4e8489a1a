//! `dimsolve`: minimum-weight dominating induced matchings from the command line.
//!
//! Exit codes: 0 a DIM exists, 1 no DIM exists, 2 input error, 3 internal
//! contract violation.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use dim_core::bench::run_bench;
use dim_core::domset::BranchTrace;
use dim_core::generate::{gen_instance, Family, GenParams, WeightSpec};
use dim_core::graph::{preprocess, render_dim};
use dim_core::{count, select_algorithm, solve, Algorithm, Graph, SolveError, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "dimsolve", version, about = "Exact minimum-weight dominating induced matching solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find a minimum-weight DIM.
    Solve {
        #[arg(long, default_value = "auto")]
        algo: Algorithm,
        /// Graph file; stdin when omitted or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the domset branch tree as Graphviz, e.g. `dot:tree.dot`.
        #[arg(long)]
        trace: Option<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Print solver statistics to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Count DIMs and minimum-weight DIMs.
    Count {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate an instance.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `unit` or `uniform:lo:hi`.
        #[arg(long, default_value = "unit")]
        weights: WeightSpec,
        /// Edge probability for the random families.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run both exact solvers over every graph file in a directory.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn read_input(path: Option<&Path>) -> anyhow::Result<Vec<u8>> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read(p).with_context(|| format!("reading {}", p.display())),
    }
}

fn read_stdin() -> anyhow::Result<Vec<u8>> {
    let mut buf = Vec::new();
    io::stdin().read_to_end(&mut buf).context("reading stdin")?;
    Ok(buf)
}

fn load_graph(path: Option<&Path>) -> anyhow::Result<Graph> {
    let bytes = read_input(path)?;
    Graph::parse(&bytes).map_err(|e| match path {
        Some(p) => anyhow!("{}: {e}", p.display()),
        None => anyhow!("stdin: {e}"),
    })
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        _ => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Solve { algo, input, output, trace, threads, stats } => {
            let g = load_graph(input.as_deref())?;
            let trace_path = match trace.as_deref() {
                None => None,
                Some(spec) => match spec.strip_prefix("dot:") {
                    Some(p) if !p.is_empty() => Some(PathBuf::from(p)),
                    _ => return Err(Failure::Input(anyhow!("--trace expects `dot:<file>`, got `{spec}`"))),
                },
            };
            let algorithm = match algo {
                Algorithm::Auto => {
                    let chosen = select_algorithm(&preprocess(&g).residual);
                    eprintln!("c auto selected {chosen}");
                    chosen
                }
                other => other,
            };
            let mut tracer = BranchTrace::new();
            let opts =
                SolveOptions { algorithm: Some(algorithm), threads, trace: trace_path.as_ref().map(|_| &mut tracer) };
            let sol = solve(&g, opts).map_err(|e| match e {
                SolveError::TooLarge(_) => Failure::Input(e.into()),
                SolveError::Domset(dim_core::domset::DomsetError::TooLarge(_)) => Failure::Input(e.into()),
                _ => Failure::Internal(e.into()),
            })?;
            if stats {
                if let Some(s) = &sol.domset_stats {
                    eprintln!(
                        "c domset |D|={} roots={} leaves={} max_q={}",
                        s.dominating_set_size,
                        s.roots_explored,
                        s.total_leaves(),
                        s.q_per_root.iter().max().unwrap_or(&0)
                    );
                }
                if let Some(mu) = sol.mis_count {
                    eprintln!("c mis count={mu}");
                }
            }
            if let Some(p) = trace_path {
                if algorithm != Algorithm::Domset {
                    eprintln!("c trace is only recorded by the domset solver");
                }
                fs::write(&p, tracer.to_dot()).with_context(|| format!("writing {}", p.display()))?;
            }
            write_output(output.as_deref(), &render_dim(&g, sol.dim.as_ref()))?;
            Ok(if sol.dim.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Count { input, output } => {
            let g = load_graph(input.as_deref())?;
            let c = count(&g);
            write_output(output.as_deref(), &c.render())?;
            Ok(if c.total > 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gen { family, n, seed, weights, p, output } => {
            let g = gen_instance(&GenParams { family, n, seed, weights, p }).map_err(anyhow::Error::from)?;
            write_output(output.as_deref(), &g.to_text())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { corpus, report } => {
            let mut files: Vec<PathBuf> = fs::read_dir(&corpus)
                .with_context(|| format!("reading {}", corpus.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            files.sort();
            let mut graphs = Vec::new();
            for f in &files {
                let name = f.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                graphs.push((name, load_graph(Some(f))?));
            }
            let rep = run_bench(graphs.iter().map(|(name, g)| (name.as_str(), g)));
            write_output(report.as_deref(), &rep.render())?;
            if rep.violations() > 0 {
                return Err(Failure::Internal(anyhow!("{} bound violations", rep.violations())));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
    }
}
