use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_syncburst"));
    c.env_remove("SYNCBURST_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let path_s = path.to_str().unwrap().to_owned();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--output", &path_s]);
    let o = run(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path_s
}

#[test]
fn generate_named_graphs() {
    let o = run(&["generate", "queen", "8", "8"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# n=64 m=728\n"));
    assert_eq!(text.lines().count(), 729);

    let o = run(&["generate", "heawood", "--format", "graphml"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.matches("<node ").count(), 14);
    assert_eq!(text.matches("<edge ").count(), 21);

    let o = run(&["generate", "scale-free", "130", "--target-m", "190", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("# n=130 m=190"));

    let o = run(&["generate", "petersen"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("queen") && err.contains("heawood") && err.contains("scale-free"));
}

#[test]
fn layout_writes_svg_and_csv_per_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate(dir.path(), "queen8.gml", &["queen", "8", "8", "--format", "graphml"]);
    let out = dir.path().to_str().unwrap();
    for alg in ["snb", "fr"] {
        let o = run(&["layout", "--alg", alg, "--seed", "7", "--out-dir", out, &graph]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let svg = std::fs::read_to_string(dir.path().join(format!("queen8.{alg}.svg"))).unwrap();
        assert_eq!(svg.matches("<circle").count(), 64);
        assert_eq!(svg.matches("<line").count(), 728);
        let csv = std::fs::read_to_string(dir.path().join(format!("queen8.{alg}.csv"))).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("vertex,x,y"));
        let mut rows = 0;
        for line in lines {
            let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            assert!((0.0..=1.0).contains(&f[1]) && (0.0..=1.0).contains(&f[2]));
            rows += 1;
        }
        assert_eq!(rows, 64);
    }
    let a = std::fs::read(dir.path().join("queen8.snb.csv")).unwrap();
    let b = std::fs::read(dir.path().join("queen8.fr.csv")).unwrap();
    assert_ne!(a, b);
}

#[test]
fn out_dir_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate(dir.path(), "w.txt", &["wagner"]);
    let out = dir.path().join("env-out");
    let o = bin()
        .env("SYNCBURST_OUT_DIR", &out)
        .args(["layout", "--formats", "csv", "--trajectory-every", "40", &graph])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("w.snb.csv").exists());
    assert!(!out.join("w.snb.svg").exists());
    let traj = std::fs::read_to_string(out.join("w.snb.trajectory.csv")).unwrap();
    assert_eq!(traj.lines().next(), Some("t,vertex,x,y"));
    // t = 0, 40, 80, 120, 160
    assert_eq!(traj.lines().count(), 1 + 5 * 8);
}

#[test]
fn layout_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let graph = generate(dir.path(), "h.txt", &["heawood"]);
    let read = |sub: &str| {
        let out = dir.path().join(sub);
        let o = run(&["layout", "--seed", "3", "--out-dir", out.to_str().unwrap(), &graph]);
        assert_eq!(code(&o), 0);
        std::fs::read(out.join("h.snb.csv")).unwrap()
    };
    assert_eq!(read("a"), read("b"));
}

#[test]
fn missing_input_names_the_path() {
    let o = run(&["layout", "/nonexistent/graph.graphml"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("/nonexistent/graph.graphml"));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["layout", "--alg", "kk", "x"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n1 two\n").unwrap();
    let o = run(&["layout", "--out-dir", dir.path().to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));
    let g = generate(dir.path(), "k.txt", &["wagner"]);
    let o = run(&["layout", "--sync-param", "12", "--out-dir", dir.path().to_str().unwrap(), &g]);
    assert_eq!(code(&o), 1);
}

#[test]
fn edgeless_graph_is_a_numeric_failure() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("iso.graphml");
    std::fs::write(
        &g,
        "<graphml><graph><node id=\"a\"/><node id=\"b\"/></graph></graphml>",
    )
    .unwrap();
    let o = run(&["layout", "--out-dir", dir.path().to_str().unwrap(), g.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn metrics_on_k4_square() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.txt");
    std::fs::write(&g, "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let l = dir.path().join("k4.csv");
    std::fs::write(&l, "vertex,x,y\n0,0,0\n1,1,0\n2,1,1\n3,0,1\n").unwrap();
    let o = run(&["metrics", g.to_str().unwrap(), l.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["crossings"], 1);
    assert_eq!(v["n"], 4);
    for key in [
        "avg_crossing_angle",
        "avg_adjacent_angle",
        "edge_length_stdev",
        "min_pair_distance_scaled",
        "vertex_distribution",
        "drawing_area",
        "degenerate_area",
        "per_vertex",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let o = run(&["metrics", "--format", "csv", g.to_str().unwrap(), l.to_str().unwrap()]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("n,m,crossings,"));
    assert_eq!(text.lines().count(), 2);

    // Planar square: the path 0-1-2-3.
    let p = dir.path().join("path.txt");
    std::fs::write(&p, "0 1\n1 2\n2 3\n").unwrap();
    let o = run(&["metrics", p.to_str().unwrap(), l.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["crossings"], 0);
    assert_eq!(v["avg_crossing_angle"], 90.0);

    let short = dir.path().join("short.csv");
    std::fs::write(&short, "vertex,x,y\n0,0,0\n1,1,0\n").unwrap();
    let o = run(&["metrics", g.to_str().unwrap(), short.to_str().unwrap()]);
    assert_ne!(code(&o), 0);
}

#[test]
fn curve_for_four_vertices_and_four_edges() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c4.txt");
    std::fs::write(&g, "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let o = run(&["curve", g.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,Ma,Mr,f"));
    let f: Vec<f64> = lines.map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(f.len(), 80);
    let changes = f.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
    assert_eq!(changes, 1);
    assert!(f[0] > 0.0 && *f.last().unwrap() < 0.0);

    let o = run(&["curve", "--t-max", "1", g.to_str().unwrap()]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
}

#[test]
fn bench_writes_both_reports() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    generate(&corpus, "wagner.txt", &["wagner"]);
    generate(&corpus, "heawood.graphml", &["heawood", "--format", "graphml"]);
    generate(&corpus, "r12.txt", &["random", "12", "15", "--seed", "4"]);
    std::fs::write(corpus.join("broken.graphml"), "<graphml>").unwrap();
    let out = dir.path().join("reports");
    let o = run(&[
        "bench",
        corpus.to_str().unwrap(),
        "--seeds",
        "2",
        "--single-threaded",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stderr).unwrap().contains("broken"));
    let records = std::fs::read_to_string(out.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 1 + 3 * 2 * 2);
    let buckets = std::fs::read_to_string(out.join("buckets.csv")).unwrap();
    assert!(buckets.starts_with("bucket,graphs,algorithm,runs,"));
    // Wagner in bucket 1, the 12- and 14-vertex graphs in bucket 2; two algorithms each.
    assert_eq!(buckets.lines().count(), 1 + 2 * 2);
}
