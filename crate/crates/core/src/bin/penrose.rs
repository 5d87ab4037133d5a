use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use penrose_kite::data::DataSet;
use penrose_kite::error::PipelineError;
use penrose_kite::graph::{map_t, trace, LatticePoint};
use penrose_kite::pipeline::{exit_code, Pipeline, PipelineConfig, Stage};
use penrose_kite::render::{self, RenderKind};

/// Exact verification of the arithmetic graph of the Penrose kite.
/// Data files come from $PENROSE_DATA when set, otherwise the built-in copy.
#[derive(Parser)]
#[command(name = "penrose", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one stage, or `all`, and print a summary per stage.
    Verify {
        stage: String,
        #[arg(long)]
        window: Option<i64>,
        /// Pinwheel samples per family.
        #[arg(long)]
        samples: Option<usize>,
        /// Subdivision rounds for the torus sweep.
        #[arg(long)]
        rounds: Option<u32>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for CSV and text reports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the strand through the origin as CSV.
    Trace {
        #[arg(long, default_value_t = 1024)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Direction::Fwd)]
        direction: Direction,
    },
    /// Write an SVG figure.
    Render {
        /// graph-window, torus-partition, dynpoly-overlay or gene-shadow
        kind: String,
        /// Gene shown by gene-shadow.
        #[arg(long, default_value_t = 0)]
        gene: usize,
        #[arg(long)]
        window: Option<i64>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Fwd,
    Bwd,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("penrose: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<i32, PipelineError> {
    let data = DataSet::from_env()?;
    match cli.command {
        Command::Verify { stage, window, samples, rounds, jobs, out } => {
            let mut config = PipelineConfig { out, ..Default::default() };
            config.window = window.unwrap_or(config.window);
            config.samples = samples.unwrap_or(config.samples);
            config.rounds = rounds.unwrap_or(config.rounds);
            let stages: Vec<Stage> = if stage == "all" { Stage::ALL.to_vec() } else { vec![stage.parse()?] };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build().expect("thread pool");
            let pipeline = Pipeline::new(data, config);
            pool.install(|| {
                let mut reports = Vec::new();
                for s in stages {
                    let r = pipeline.run(s)?;
                    println!("{} ({:.1}s)", r.headline(), r.wall.as_secs_f64());
                    for line in &r.summary {
                        println!("  {line}");
                    }
                    for f in r.failures.iter().take(10) {
                        println!("  failure {}: {}", f.id, f.detail);
                    }
                    reports.push(r);
                }
                let code = exit_code(&reports);
                println!("{}", if code == 0 { "ALL STAGES PASS" } else { "SOME STAGES FAIL" });
                Ok(code)
            })
        }
        Command::Trace { steps, direction } => {
            let partition = penrose_kite::graph::Partition::new(data.partition);
            let column = match direction {
                Direction::Fwd => 1,
                Direction::Bwd => 0,
            };
            let t = trace(&partition, LatticePoint::new(0, 0), column, steps)?;
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["step", "x", "y", "type", "T"])?;
            for (i, (v, k)) in t.vertices.iter().zip(&t.types).enumerate() {
                w.write_record([
                    i.to_string(),
                    v.x.to_string(),
                    v.y.to_string(),
                    k.to_string(),
                    map_t(*v).to_string(),
                ])?;
            }
            w.flush().map_err(|source| PipelineError::Io { file: "stdout".into(), source })?;
            Ok(0)
        }
        Command::Render { kind, gene, window, out } => {
            let kind: RenderKind = kind.parse()?;
            let config = PipelineConfig { window: window.unwrap_or(20), forward_depth: 10, ..Default::default() };
            let pipeline = Pipeline::new(data, config);
            let svg = match kind {
                RenderKind::GraphWindow => {
                    let back = trace(&pipeline.partition, LatticePoint::new(0, 0), 0, 4096)?;
                    let mut strand = back.clone();
                    strand.vertices.reverse();
                    strand.vertices.extend(pipeline.forward()?.vertices.iter().skip(1));
                    render::graph_window(pipeline.graph()?, Some(&strand), 16.0)
                }
                RenderKind::TorusPartition => render::torus_partition(&pipeline.partition, 800.0),
                RenderKind::DynpolyOverlay => {
                    render::dynpoly_overlay(&pipeline.partition, &pipeline.data.dynamical, 800.0)
                }
                RenderKind::GeneShadow => {
                    let recs = pipeline.records()?;
                    let rec = recs.get(gene).ok_or_else(|| PipelineError::UnknownRender(format!("gene {gene}")))?;
                    render::gene_shadow(rec, 24.0)
                }
            };
            match out {
                Some(path) => std::fs::write(&path, svg)
                    .map_err(|source| PipelineError::Io { file: path.display().to_string(), source })?,
                None => print!("{svg}"),
            }
            Ok(0)
        }
    }
}
