//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 IO or parse failure, 3 numeric failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{bucketize, run_corpus, write_reports, Algorithm, BenchConfig};
use crate::error::{Error, Result};
use crate::graph::{
    gen_heawood, gen_queen, gen_random_connected, gen_scale_free, gen_scale_free_target_m,
    gen_wagner, parse_graph, write_edge_list, write_graphml, Graph,
};
use crate::metrics::{evaluate, METRICS_CSV_HEADER};
use crate::render::{read_coords_csv, render_svg, write_coords_csv, write_curve_csv, write_trajectory_csv, SvgOptions};
use crate::run::RunOptions;
use crate::snb::{snb_run_with, total_magnitude_curve};
use crate::fr::fr_run_with;

/// Default output directory for `layout` and `bench`.
pub const OUT_DIR_ENV: &str = "SYNCBURST_OUT_DIR";

/// Names accepted by `generate`.
pub const GENERATORS: [&str; 5] = ["queen", "wagner", "heawood", "scale-free", "random"];

#[derive(Debug, Parser)]
#[command(name = "syncburst", version, about = "Sync-and-Burst graph layout")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgArg {
    Snb,
    Fr,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Snb => Algorithm::Snb,
            AlgArg::Fr => Algorithm::Fr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutFormat {
    Svg,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFileFormat {
    Edgelist,
    Graphml,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Iterations are this multiple of n.
    #[arg(long, default_value_t = 20)]
    pub iterations_multiplier: u32,
    /// Fixed sync parameter s instead of the betweenness rule.
    #[arg(long)]
    pub sync_param: Option<f64>,
}

impl RunArgs {
    fn config(&self) -> BenchConfig {
        BenchConfig {
            total_multiplier: self.iterations_multiplier,
            sync_param: self.sync_param,
            base_seed: self.seed,
            single_threaded: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.iterations_multiplier == 0 {
            return Err(Error::InvalidParameter("--iterations-multiplier must be positive".into()));
        }
        if let Some(s) = self.sync_param {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::InvalidParameter(format!("--sync-param must be positive, got {s}")));
            }
            if s >= f64::from(self.iterations_multiplier) - s {
                return Err(Error::InvalidParameter(format!(
                    "--sync-param {s} leaves no longer burst phase within {}n iterations",
                    self.iterations_multiplier
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lay out a graph and write `<stem>.<alg>.svg` and `<stem>.<alg>.csv`.
    Layout {
        input: PathBuf,
        #[arg(long = "alg", value_enum, default_value = "snb")]
        algorithm: AlgArg,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, env = OUT_DIR_ENV, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "svg,csv")]
        formats: Vec<LayoutFormat>,
        /// Draw vertex labels in the SVG.
        #[arg(long)]
        labels: bool,
        /// Also write `<stem>.<alg>.trajectory.csv`, sampling every k iterations.
        #[arg(long, value_name = "K")]
        trajectory_every: Option<usize>,
    },
    /// Score a layout CSV (`vertex,x,y`) against its graph.
    Metrics {
        graph: PathBuf,
        layout: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        /// Defaults to standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run both algorithms over a directory of graphs; writes records.csv and buckets.csv.
    Bench {
        dir: PathBuf,
        #[arg(long = "alg", value_enum, value_delimiter = ',', default_value = "snb,fr")]
        algorithms: Vec<AlgArg>,
        #[arg(long, default_value_t = 1)]
        seeds: usize,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, env = OUT_DIR_ENV, default_value = ".")]
        out_dir: PathBuf,
        /// One graph at a time, for clean timings.
        #[arg(long)]
        single_threaded: bool,
    },
    /// Write the total magnitude curve `t,Ma,Mr,f`.
    Curve {
        graph: PathBuf,
        /// Last iteration; defaults to the full run length.
        #[arg(long)]
        t_max: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write a named or random graph.
    ///
    /// queen ROWS COLS | wagner | heawood | scale-free N | random N M
    Generate {
        name: String,
        params: Vec<usize>,
        /// scale-free: exact edge count instead of --edges-per-step.
        #[arg(long)]
        target_m: Option<usize>,
        /// scale-free: edges added with each new vertex.
        #[arg(long, default_value_t = 1)]
        edges_per_step: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: GraphFileFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_graph(&text, None)?.graph)
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into())
}

fn generate(name: &str, params: &[usize], target_m: Option<usize>, k: usize, seed: u64) -> Result<Graph> {
    let want = |count: usize, usage: &str| -> Result<()> {
        if params.len() == count {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("usage: generate {usage}")))
        }
    };
    match name {
        "queen" => {
            want(2, "queen ROWS COLS")?;
            gen_queen(params[0], params[1])
        }
        "wagner" => {
            want(0, "wagner")?;
            Ok(gen_wagner())
        }
        "heawood" => {
            want(0, "heawood")?;
            Ok(gen_heawood())
        }
        "scale-free" => {
            want(1, "scale-free N [--target-m M | --edges-per-step K]")?;
            match target_m {
                Some(m) => gen_scale_free_target_m(params[0], m, seed),
                None => gen_scale_free(params[0], k, seed),
            }
        }
        "random" => {
            want(2, "random N M")?;
            gen_random_connected(params[0], params[1], seed)
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown generator {other:?}; available: {}",
            GENERATORS.join(", ")
        ))),
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Layout {
            input,
            algorithm,
            run,
            out_dir,
            formats,
            labels,
            trajectory_every,
        } => {
            run.validate()?;
            let g = load_graph(&input)?;
            let alg = Algorithm::from(algorithm);
            let config = run.config();
            let opts = RunOptions { trajectory_every };
            let result = match alg {
                Algorithm::Snb => snb_run_with(&g, &config.snb_params(&g, run.seed)?, &opts)?,
                Algorithm::Fr => fr_run_with(&g, &config.fr_params(&g, run.seed), &opts)?,
            };
            std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
            let name = |suffix: &str| out_dir.join(format!("{}.{alg}.{suffix}", stem(&input)));
            if formats.contains(&LayoutFormat::Svg) {
                let svg = render_svg(&g, &result.layout, &SvgOptions { labels })?;
                let p = name("svg");
                emit(Some(&p), svg.as_bytes())?;
                log::info!("wrote {}", p.display());
            }
            if formats.contains(&LayoutFormat::Csv) {
                let mut buf = Vec::new();
                write_coords_csv(&mut buf, &result.layout)?;
                let p = name("csv");
                emit(Some(&p), &buf)?;
                log::info!("wrote {}", p.display());
            }
            if trajectory_every.is_some() {
                let mut buf = Vec::new();
                write_trajectory_csv(&mut buf, &result.trajectory)?;
                emit(Some(&name("trajectory.csv")), &buf)?;
            }
            log::info!(
                "{} iterations in {:.3}s",
                result.iterations,
                result.total_time.as_secs_f64()
            );
            Ok(())
        }
        Command::Metrics {
            graph,
            layout,
            format,
            output,
        } => {
            let g = load_graph(&graph)?;
            let file = std::fs::File::open(&layout).map_err(|e| Error::io(&layout, e))?;
            let l = read_coords_csv(file)?;
            let report = evaluate(&g, &l)?;
            let bytes = match format {
                ReportFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report)?;
                    s.push('\n');
                    s.into_bytes()
                }
                ReportFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(METRICS_CSV_HEADER)?;
                    w.write_record(report.csv_record())?;
                    w.into_inner().map_err(|e| Error::io("<csv>", e.into_error()))?
                }
            };
            emit(output.as_deref(), &bytes)
        }
        Command::Bench {
            dir,
            algorithms,
            seeds,
            run,
            out_dir,
            single_threaded,
        } => {
            run.validate()?;
            let algs: Vec<Algorithm> = algorithms.into_iter().map(Algorithm::from).collect();
            let config = BenchConfig {
                single_threaded,
                ..run.config()
            };
            let corpus = run_corpus(&dir, &algs, seeds, &config)?;
            for w in &corpus.warnings {
                eprintln!("warning: {w}");
            }
            let (rec, buck) = write_reports(&out_dir, &corpus.records)?;
            eprintln!(
                "{} runs in {} buckets: {}, {}",
                corpus.records.len(),
                bucketize(&corpus.records).len(),
                rec.display(),
                buck.display()
            );
            Ok(())
        }
        Command::Curve {
            graph,
            t_max,
            run,
            output,
        } => {
            run.validate()?;
            let g = load_graph(&graph)?;
            let p = run.config().snb_params(&g, run.seed)?;
            let t_max = t_max.unwrap_or_else(|| p.total_iterations(g.vertex_count()));
            let curve = total_magnitude_curve(&g, &p, t_max)?;
            let mut buf = Vec::new();
            write_curve_csv(&mut buf, &curve)?;
            emit(output.as_deref(), &buf)
        }
        Command::Generate {
            name,
            params,
            target_m,
            edges_per_step,
            seed,
            format,
            output,
        } => {
            let g = generate(&name, &params, target_m, edges_per_step, seed)?;
            let text = match format {
                GraphFileFormat::Edgelist => write_edge_list(&g),
                GraphFileFormat::Graphml => write_graphml(&g),
            };
            emit(output.as_deref(), text.as_bytes())
        }
    }
}

/// Parses `std::env::args`, runs, and maps failures to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
