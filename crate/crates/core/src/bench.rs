//! Corpus runner and bucketed aggregation for SnB vs FR comparisons.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fr::{fr_run, FrParams};
use crate::graph::{parse_graph, Graph};
use crate::metrics::{evaluate, MetricsReport, METRICS_CSV_HEADER};
use crate::run::LayoutRun;
use crate::snb::{compute_sync_param, snb_run, SnbParams};

/// Width of a size bucket in vertices.
pub const BUCKET_WIDTH: usize = 5;

/// File extensions picked up by [`run_corpus`].
pub const GRAPH_EXTENSIONS: [&str; 7] = ["graphml", "xml", "gml", "txt", "edges", "el", "edgelist"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Snb,
    Fr,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Snb, Algorithm::Fr];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Snb => "snb",
            Algorithm::Fr => "fr",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "snb" | "sync-and-burst" => Ok(Algorithm::Snb),
            "fr" | "fruchterman-reingold" => Ok(Algorithm::Fr),
            _ => Err(Error::InvalidParameter(format!(
                "unknown algorithm {s:?} (expected snb or fr)"
            ))),
        }
    }
}

/// Settings shared by every run of a benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Both algorithms run `total_multiplier · n` iterations.
    pub total_multiplier: u32,
    /// Fixed `s` for SnB; `None` derives it from betweenness per graph.
    pub sync_param: Option<f64>,
    /// Seed of the first run per graph; run `k` uses `base_seed + k`.
    pub base_seed: u64,
    /// Run graphs one at a time, for clean timings.
    pub single_threaded: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            total_multiplier: 20,
            sync_param: None,
            base_seed: 0,
            single_threaded: false,
        }
    }
}

impl BenchConfig {
    pub fn snb_params(&self, g: &Graph, seed: u64) -> Result<SnbParams> {
        let sync_param = match self.sync_param {
            Some(s) => s,
            None => compute_sync_param(g)?,
        };
        let p = SnbParams {
            sync_param,
            total_multiplier: self.total_multiplier,
            seed,
            ..SnbParams::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn fr_params(&self, g: &Graph, seed: u64) -> FrParams {
        FrParams {
            iterations: Some(self.total_multiplier as usize * g.vertex_count()),
            seed,
            ..FrParams::default()
        }
    }

    /// Runs one algorithm; the returned layout is normalized.
    pub fn layout(&self, g: &Graph, alg: Algorithm, seed: u64) -> Result<LayoutRun> {
        match alg {
            Algorithm::Snb => snb_run(g, &self.snb_params(g, seed)?),
            Algorithm::Fr => fr_run(g, &self.fr_params(g, seed)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph_id: String,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub iterations: usize,
    /// Seconds spent in the iteration loop.
    pub wall_time_total: f64,
    pub wall_time_per_iteration: f64,
    pub metrics: MetricsReport,
}

/// Lays out `g` and scores the result. Only the iteration loop is timed.
pub fn run_one(graph_id: &str, g: &Graph, alg: Algorithm, seed: u64, config: &BenchConfig) -> Result<RunRecord> {
    let run = config.layout(g, alg, seed)?;
    let metrics = evaluate(g, &run.layout)?;
    Ok(RunRecord {
        graph_id: graph_id.to_owned(),
        algorithm: alg,
        seed,
        n: g.vertex_count(),
        m: g.edge_count(),
        iterations: run.iterations,
        wall_time_total: run.total_time.as_secs_f64(),
        wall_time_per_iteration: run.seconds_per_iteration(),
        metrics,
    })
}

#[derive(Debug, Clone, Default)]
pub struct CorpusRun {
    /// Sorted by `(graph_id, algorithm, seed)`.
    pub records: Vec<RunRecord>,
    /// One message per skipped file or failed run.
    pub warnings: Vec<String>,
}

fn is_graph_file(path: &Path) -> bool {
    path.is_file()
        && path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| GRAPH_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

/// Graph files in `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if is_graph_file(&path) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn load(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_graph(&text, None)?.graph)
}

/// Runs every `(graph, algorithm, seed)` combination over the graph files in `dir`.
///
/// Unreadable files and runs that fail are skipped with a warning.
pub fn run_corpus(
    dir: &Path,
    algorithms: &[Algorithm],
    seeds_per_graph: usize,
    config: &BenchConfig,
) -> Result<CorpusRun> {
    if algorithms.is_empty() || seeds_per_graph == 0 {
        return Err(Error::InvalidParameter(
            "need at least one algorithm and one seed per graph".into(),
        ));
    }
    let files = corpus_files(dir)?;
    if files.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no graph files in {}",
            dir.display()
        )));
    }

    let mut out = CorpusRun::default();
    let mut graphs = Vec::new();
    for path in &files {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        match load(path) {
            Ok(g) => graphs.push((id, g)),
            Err(e) => out.warnings.push(format!("skipping {}: {e}", path.display())),
        }
    }

    let jobs: Vec<(usize, Algorithm, u64)> = (0..graphs.len())
        .flat_map(|gi| {
            algorithms.iter().flat_map(move |&alg| {
                (0..seeds_per_graph as u64).map(move |k| (gi, alg, config.base_seed.wrapping_add(k)))
            })
        })
        .collect();
    let work = || -> Vec<Result<RunRecord, String>> {
        jobs.par_iter()
            .map(|&(gi, alg, seed)| {
                let (id, g) = &graphs[gi];
                run_one(id, g, alg, seed, config).map_err(|e| format!("{id} ({alg}, seed {seed}): {e}"))
            })
            .collect()
    };
    let results = if config.single_threaded {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(work)
    } else {
        work()
    };
    for r in results {
        match r {
            Ok(rec) => out.records.push(rec),
            Err(w) => out.warnings.push(w),
        }
    }
    for w in &out.warnings {
        log::warn!("{w}");
    }
    sort_records(&mut out.records);
    Ok(out)
}

pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by(|a, b| {
        (&a.graph_id, a.algorithm, a.seed).cmp(&(&b.graph_id, b.algorithm, b.seed))
    });
}

/// `⌊n/5⌋`.
pub fn bucket_index(n: usize) -> usize {
    n / BUCKET_WIDTH
}

/// Means of the plotted quantities over one algorithm's runs in a bucket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmMeans {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub crossings: f64,
    pub avg_crossing_angle: f64,
    /// Over runs that have adjacent edge pairs; `None` if none do.
    pub avg_adjacent_angle: Option<f64>,
    pub vertex_distribution: f64,
    pub min_pair_distance_scaled: f64,
    pub edge_length_stdev: f64,
    pub wall_time_per_iteration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketSummary {
    pub bucket_index: usize,
    /// Distinct graphs in the bucket.
    pub count: usize,
    pub per_algorithm: Vec<AlgorithmMeans>,
}

impl BucketSummary {
    pub fn means(&self, alg: Algorithm) -> Option<&AlgorithmMeans> {
        self.per_algorithm.iter().find(|a| a.algorithm == alg)
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, k) = xs.fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    (k > 0).then(|| sum / k as f64)
}

fn means_of(algorithm: Algorithm, rs: &[&RunRecord]) -> AlgorithmMeans {
    let avg = |f: fn(&RunRecord) -> f64| mean(rs.iter().map(|r| f(r))).unwrap_or(0.0);
    AlgorithmMeans {
        algorithm,
        runs: rs.len(),
        crossings: avg(|r| r.metrics.crossings as f64),
        avg_crossing_angle: avg(|r| r.metrics.avg_crossing_angle),
        avg_adjacent_angle: mean(rs.iter().filter_map(|r| r.metrics.avg_adjacent_angle)),
        vertex_distribution: avg(|r| r.metrics.vertex_distribution),
        min_pair_distance_scaled: avg(|r| r.metrics.min_pair_distance_scaled),
        edge_length_stdev: avg(|r| r.metrics.edge_length_stdev),
        wall_time_per_iteration: avg(|r| r.wall_time_per_iteration),
    }
}

/// Groups records by `⌊n/5⌋` and averages each metric per algorithm.
///
/// Records are summed in `(graph_id, algorithm, seed)` order, so the result
/// does not depend on the input order.
pub fn bucketize(records: &[RunRecord]) -> Vec<BucketSummary> {
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (&a.graph_id, a.algorithm, a.seed).cmp(&(&b.graph_id, b.algorithm, b.seed))
    });
    let mut buckets: BTreeMap<usize, BTreeMap<Algorithm, Vec<&RunRecord>>> = BTreeMap::new();
    for r in sorted {
        buckets
            .entry(bucket_index(r.n))
            .or_default()
            .entry(r.algorithm)
            .or_default()
            .push(r);
    }
    buckets
        .into_iter()
        .map(|(bucket_index, by_alg)| {
            let mut ids: Vec<&str> = by_alg.values().flatten().map(|r| r.graph_id.as_str()).collect();
            ids.sort_unstable();
            ids.dedup();
            BucketSummary {
                bucket_index,
                count: ids.len(),
                per_algorithm: by_alg.iter().map(|(&alg, rs)| means_of(alg, rs)).collect(),
            }
        })
        .collect()
}

pub const RECORDS_CSV_PREFIX: [&str; 8] = [
    "graph_id",
    "algorithm",
    "seed",
    "n",
    "m",
    "iterations",
    "wall_time_total",
    "wall_time_per_iteration",
];

/// One row per record: the fixed prefix then the metric columns.
pub fn write_records_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    // n and m appear once, in the prefix.
    let metric_cols = &METRICS_CSV_HEADER[2..];
    w.write_record(RECORDS_CSV_PREFIX.iter().chain(metric_cols))?;
    for r in records {
        let mut row = vec![
            r.graph_id.clone(),
            r.algorithm.to_string(),
            r.seed.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.iterations.to_string(),
            r.wall_time_total.to_string(),
            r.wall_time_per_iteration.to_string(),
        ];
        row.extend(r.metrics.csv_record().into_iter().skip(2));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub const BUCKETS_CSV_HEADER: [&str; 11] = [
    "bucket",
    "graphs",
    "algorithm",
    "runs",
    "crossings",
    "avg_crossing_angle",
    "avg_adjacent_angle",
    "vertex_distribution",
    "min_pair_distance_scaled",
    "edge_length_stdev",
    "wall_time_per_iteration",
];

/// One row per bucket and algorithm.
pub fn write_buckets_csv<W: Write>(out: W, buckets: &[BucketSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BUCKETS_CSV_HEADER)?;
    for b in buckets {
        for a in &b.per_algorithm {
            w.write_record([
                b.bucket_index.to_string(),
                b.count.to_string(),
                a.algorithm.to_string(),
                a.runs.to_string(),
                a.crossings.to_string(),
                a.avg_crossing_angle.to_string(),
                a.avg_adjacent_angle.map(|x| x.to_string()).unwrap_or_default(),
                a.vertex_distribution.to_string(),
                a.min_pair_distance_scaled.to_string(),
                a.edge_length_stdev.to_string(),
                a.wall_time_per_iteration.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Writes `records.csv` and `buckets.csv` into `dir`, returning their paths.
pub fn write_reports(dir: &Path, records: &[RunRecord]) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let rec = dir.join("records.csv");
    let buck = dir.join("buckets.csv");
    let f = std::fs::File::create(&rec).map_err(|e| Error::io(&rec, e))?;
    write_records_csv(f, records)?;
    let f = std::fs::File::create(&buck).map_err(|e| Error::io(&buck, e))?;
    write_buckets_csv(f, &bucketize(records))?;
    Ok((rec, buck))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_wagner, write_edge_list, write_graphml};

    fn fake(id: &str, alg: Algorithm, n: usize, d: f64) -> RunRecord {
        RunRecord {
            graph_id: id.into(),
            algorithm: alg,
            seed: 0,
            n,
            m: n,
            iterations: 20 * n,
            wall_time_total: 1.0,
            wall_time_per_iteration: 1.0 / (20 * n) as f64,
            metrics: MetricsReport {
                n,
                m: n,
                crossings: n,
                avg_crossing_angle: 90.0,
                avg_adjacent_angle: None,
                edge_length_stdev: d,
                min_pair_distance_scaled: d,
                vertex_distribution: d,
                drawing_area: 1.0,
                degenerate_area: false,
                per_vertex: Vec::new(),
            },
        }
    }

    #[test]
    fn bucket_floor() {
        assert_eq!(bucket_index(10), 2);
        assert_eq!(bucket_index(14), 2);
        assert_eq!(bucket_index(15), 3);
    }

    #[test]
    fn single_record_bucket() {
        let r = fake("a", Algorithm::Snb, 12, 0.3);
        let b = bucketize(std::slice::from_ref(&r));
        assert_eq!(b.len(), 1);
        let m = b[0].means(Algorithm::Snb).unwrap();
        assert_eq!((b[0].count, m.runs), (1, 1));
        assert_eq!(m.vertex_distribution, 0.3);
        assert_eq!(m.crossings, 12.0);
        assert_eq!(m.avg_adjacent_angle, None);
        assert!(b[0].means(Algorithm::Fr).is_none());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("kk".parse::<Algorithm>().is_err());
    }

    #[test]
    fn corpus_cardinality_and_skips() {
        let dir = tempfile::tempdir().unwrap();
        let w = gen_wagner();
        std::fs::write(dir.path().join("a.graphml"), write_graphml(&w)).unwrap();
        std::fs::write(dir.path().join("b.txt"), write_edge_list(&w)).unwrap();
        std::fs::write(dir.path().join("c.edges"), "0 1\n1 2\n2 3\n3 0\n").unwrap();
        std::fs::write(dir.path().join("broken.graphml"), "<graphml><graph>").unwrap();
        std::fs::write(dir.path().join("notes.md"), "ignored").unwrap();
        let cfg = BenchConfig {
            single_threaded: true,
            ..BenchConfig::default()
        };
        let run = run_corpus(dir.path(), &Algorithm::ALL, 2, &cfg).unwrap();
        assert_eq!(run.records.len(), 12);
        assert_eq!(run.warnings.len(), 1);
        assert!(run.warnings[0].contains("broken"));
        let keys: Vec<_> = run.records.iter().map(|r| (r.graph_id.as_str(), r.algorithm, r.seed)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for r in &run.records {
            assert_eq!(r.iterations, 20 * r.n);
            assert!((r.wall_time_per_iteration * r.iterations as f64 - r.wall_time_total).abs() < 1e-12);
        }

        let again = run_corpus(dir.path(), &Algorithm::ALL, 2, &BenchConfig::default()).unwrap();
        for (a, b) in run.records.iter().zip(&again.records) {
            assert_eq!(a.metrics, b.metrics);
        }

        let empty = tempfile::tempdir().unwrap();
        assert!(run_corpus(empty.path(), &Algorithm::ALL, 1, &cfg).is_err());
    }

    #[test]
    fn csv_shapes() {
        let recs = vec![fake("a", Algorithm::Snb, 12, 0.3), fake("a", Algorithm::Fr, 12, 0.1)];
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("graph_id,algorithm,seed,n,m,iterations"));
        let cols = lines[0].split(',').count();
        assert!(lines.iter().all(|l| l.split(',').count() == cols));

        let mut buf = Vec::new();
        write_buckets_csv(&mut buf, &bucketize(&recs)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(1).unwrap().starts_with("2,1,snb,1,"));
    }
}
