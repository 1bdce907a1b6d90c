use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use evocolor::graph::parse_dimacs;
use evocolor::{verify_coloring, Coloring};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn evocolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evocolor")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = evocolor(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    evocolor(args).status.code().unwrap()
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

fn out_dir(tmp: &tempfile::TempDir, name: &str) -> PathBuf {
    tmp.path().join(name)
}

/// Colors in a coloring file, checked against the graph it came from.
fn colors_in(dir: &Path, graph: &evocolor::Graph) -> usize {
    let col = Coloring::parse_dimacs(&read(&dir.join("coloring.txt")), graph.n()).unwrap();
    let report = verify_coloring(graph, &col).unwrap();
    assert!(report.proper);
    report.colors
}

/// Rows of a convergence CSV after the header, split on commas.
fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let text = read(path);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "generation,best_fitness,best_colors,mean_fitness,best_so_far");
    lines.map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn color_ao_on_k5_uses_five_colors() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "k5");
    ok(&["color-ao", "--graph", "complete:5", "--generations", "10", "--seed", "4", "-o", dir.to_str().unwrap()]);
    assert_eq!(colors_in(&dir, &evocolor::Graph::complete(5)), 5);
    assert_eq!(csv_rows(&dir.join("convergence.csv")).len(), 10);
}

#[test]
fn color_ao_on_c6_finds_two_colors_within_fifty_generations() {
    let tmp = tempfile::tempdir().unwrap();
    for seed in 0..3 {
        let dir = out_dir(&tmp, &format!("c6_{seed}"));
        let s = seed.to_string();
        ok(&["color-ao", "--graph", "cycle:6", "--generations", "50", "--seed", &s, "-o", dir.to_str().unwrap()]);
        assert_eq!(colors_in(&dir, &evocolor::Graph::cycle(6)), 2);
    }
}

#[test]
fn color_ao_best_colors_never_increase_with_elitism() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "gnp");
    ok(&["color-ao", "--graph", "gnp:125:0.5:7", "--generations", "40", "--seed", "1", "-o", dir.to_str().unwrap()]);
    let best: Vec<usize> = csv_rows(&dir.join("convergence.csv")).iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(best.windows(2).all(|w| w[1] <= w[0]), "{best:?}");
    let g = evocolor::gen_gnp(125, 0.5, 7);
    assert_eq!(colors_in(&dir, &g), *best.last().unwrap());
}

#[test]
fn multi_run_writes_per_seed_directories_and_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "multi");
    ok(&["color-ao", "--graph", "petersen", "--generations", "5", "--seed", "10", "--runs", "3", "-o", dir.to_str().unwrap()]);
    for seed in 10..13 {
        let run = dir.join(format!("run_{seed}"));
        assert!(colors_in(&run, &evocolor::Graph::petersen()) >= 3);
    }
    let summary = read(&dir.join("summary.csv"));
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "seed,colors,best_generation");
    assert_eq!(lines.len(), 6);
    let counts: Vec<f64> = lines[1..4].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    let mean = counts.iter().sum::<f64>() / 3.0;
    let min = counts.iter().copied().fold(f64::INFINITY, f64::min);
    assert_eq!(lines[4], format!("mean,{mean},"));
    assert_eq!(lines[5], format!("min,{min},"));
}

#[test]
fn replaying_a_manifest_reproduces_every_file() {
    let tmp = tempfile::tempdir().unwrap();
    let first = out_dir(&tmp, "first");
    ok(&[
        "color-ao", "--graph", "gnp:60:0.3:2", "--generations", "30", "--parallel", "--runs", "2", "-o",
        first.to_str().unwrap(),
    ]);
    let second = out_dir(&tmp, "second");
    ok(&["replay", first.join("manifest.txt").to_str().unwrap(), "-o", second.to_str().unwrap()]);
    for file in ["manifest.txt", "summary.csv", "run_0/convergence.csv", "run_1/coloring.txt"] {
        assert_eq!(read(&first.join(file)), read(&second.join(file)), "{file}");
    }

    // a serial run writes the same convergence data as the parallel one
    let serial = out_dir(&tmp, "serial");
    ok(&[
        "color-ao", "--graph", "gnp:60:0.3:2", "--generations", "30", "--runs", "2", "-o",
        serial.to_str().unwrap(),
    ]);
    for file in ["run_0/convergence.csv", "run_1/convergence.csv", "summary.csv"] {
        assert_eq!(read(&first.join(file)), read(&serial.join(file)), "{file}");
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.cfg");
    fs::write(&cfg, "# small run\ngraph=cycle:5\ngenerations=3\nseed=8\npopulation_size=10\n").unwrap();
    let dir = out_dir(&tmp, "cfg");
    ok(&["color-ao", "--config", cfg.to_str().unwrap(), "--generations", "4", "--set", "elite_fraction=0.5", "-o", dir.to_str().unwrap()]);
    let manifest = read(&dir.join("manifest.txt"));
    for line in ["generations=4", "seed=8", "population_size=10", "elite_fraction=0.5", "graph=cycle:5"] {
        assert!(manifest.lines().any(|l| l == line), "{line} missing from\n{manifest}");
    }
    assert_eq!(csv_rows(&dir.join("convergence.csv")).len(), 4);
}

#[test]
fn evolve_program_on_triangles_uses_three_colors() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "k3");
    ok(&[
        "evolve-program", "--class-n", "3", "--p-lo", "1", "--p-hi", "1", "--training-size", "2", "--generations", "5",
        "-o", dir.to_str().unwrap(),
    ]);
    let eval = read(&dir.join("evaluation.csv"));
    assert_eq!(eval.lines().nth(1).unwrap(), "train_1,3,3");
    let program = read(&dir.join("program.txt"));
    let mut idx: Vec<usize> = program.split_whitespace().map(|t| t.parse().unwrap()).collect();
    idx.sort();
    assert_eq!(idx, vec![1, 2, 3]);
}

#[test]
fn evolve_program_on_edgeless_class_is_flat() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "edgeless");
    ok(&[
        "evolve-program", "--class-n", "20", "--p-lo", "0", "--p-hi", "0", "--training-size", "3", "--generations", "8",
        "-o", dir.to_str().unwrap(),
    ]);
    for row in csv_rows(&dir.join("convergence.csv")) {
        assert_eq!(&row[1..], ["19", "1", "19", "19"]);
    }
    assert!(read(&dir.join("training.txt")).starts_with("source=sampled\nn=20\n"));
}

#[test]
fn evolved_program_beats_identity_on_its_training_set() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "class60");
    ok(&["evolve-program", "--seed", "3", "--parallel", "-o", dir.to_str().unwrap()]);
    let eval = read(&dir.join("evaluation.csv"));
    let last: Vec<f64> = eval.lines().last().unwrap().split(',').skip(1).map(|x| x.parse().unwrap()).collect();
    assert!(last[0] <= last[1], "evolved {} vs identity {}", last[0], last[1]);
    assert_eq!(eval.lines().count(), 22);
}

#[test]
fn evolve_program_rejects_evaluation_graph_of_wrong_size() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "bad");
    let files = format!("eval_files={}", fixture("myciel3.col"));
    assert_eq!(code(&["evolve-program", "--class-n", "12", "--generations", "2", "--set", &files, "-o", dir.to_str().unwrap()]), 2);
}

#[test]
fn evolve_program_reads_training_files() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "files");
    let a = tmp.path().join("a.col");
    let b = tmp.path().join("b.col");
    ok(&["gen", "gnp:15:0.5:1", "-o", a.to_str().unwrap()]);
    ok(&["gen", "gnp:15:0.5:2", "-o", b.to_str().unwrap()]);
    let files = format!("training_files={},{}", a.display(), b.display());
    ok(&["evolve-program", "--class-n", "15", "--generations", "5", "--set", &files, "-o", dir.to_str().unwrap()]);
    assert_eq!(read(&dir.join("training.txt")), format!("source=files\nfiles={},{}\n", a.display(), b.display()));
    assert_eq!(read(&dir.join("evaluation.csv")).lines().count(), 4);
}

#[test]
fn baselines_match_hand_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 4] = [
        (&["--graph", "complete:4"], "dsatur: 4 colors"),
        (&["--graph", "cycle:6"], "dsatur: 2 colors"),
        (&["--algorithm", "greedy", "--graph", &fixture("crown3.col")], "greedy: 3 colors"),
        (&["--algorithm", "greedy", "--graph", &fixture("crown3.col"), "--order", "random:0"], "greedy:"),
    ];
    for (i, (extra, expect)) in cases.iter().enumerate() {
        let dir = out_dir(&tmp, &format!("b{i}"));
        let mut args = vec!["baseline"];
        args.extend_from_slice(extra);
        args.extend(["-o", dir.to_str().unwrap()]);
        let stdout = ok(&args);
        assert!(stdout.starts_with(expect), "{stdout}");
        assert!(dir.join("coloring.txt").exists());
    }
}

#[test]
fn greedy_follows_an_order_file() {
    let tmp = tempfile::tempdir().unwrap();
    let order = tmp.path().join("order.txt");
    fs::write(&order, "1 3 5 2 4 6\n").unwrap();
    let dir = out_dir(&tmp, "grouped");
    let stdout = ok(&[
        "baseline", "--algorithm", "greedy", "--graph", &fixture("crown3.col"), "--order", order.to_str().unwrap(), "-o",
        dir.to_str().unwrap(),
    ]);
    assert!(stdout.starts_with("greedy: 2 colors"));
    fs::write(&order, "1 3 5 2 4\n").unwrap();
    let order_arg = order.to_str().unwrap();
    assert_eq!(code(&["baseline", "--algorithm", "greedy", "--graph", &fixture("crown3.col"), "--order", order_arg, "-o", dir.to_str().unwrap()]), 3);
}

#[test]
fn oracle_reports_small_graphs() {
    let tmp = tempfile::tempdir().unwrap();
    for (graph, chi, omega) in [("complete:3", 3, 6), ("cycle:4", 2, 14)] {
        let dir = out_dir(&tmp, graph.replace(':', "_").as_str());
        ok(&["oracle", "--graph", graph, "-o", dir.to_str().unwrap()]);
        let report = read(&dir.join("report.txt"));
        assert!(report.contains(&format!("chromatic_number={chi}\n")));
        assert!(report.contains(&format!("acyclic_orientations={omega}\n")));
        assert!(report.contains("stanley=pass\n"));
        assert!(report.contains("min_longest_path_equals_chi=pass\n"));
    }
    let dir = out_dir(&tmp, "random");
    ok(&["oracle", "--graph", "gnp:6:0.5:21", "-o", dir.to_str().unwrap()]);
    assert!(!read(&dir.join("report.txt")).contains("FAIL"));
}

#[test]
fn dimacs_fixtures_load() {
    let g = parse_dimacs(&read(Path::new(&fixture("pentagon_crlf.col")))).unwrap();
    assert_eq!((g.n(), g.m()), (5, 5));
    let tmp = tempfile::tempdir().unwrap();
    let out = evocolor(&["baseline", "--graph", &fixture("pentagon_crlf.col"), "-o", out_dir(&tmp, "p").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn gen_writes_dimacs_and_complements() {
    let stdout = ok(&["gen", "cycle:4"]);
    assert_eq!(stdout, "p edge 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n");
    let stdout = ok(&["gen", "cycle:4", "--complement"]);
    assert_eq!(stdout, "p edge 4 2\ne 1 3\ne 2 4\n");
    let again = ok(&["gen", "geometric:20:0.4:9"]);
    assert_eq!(again, ok(&["gen", "geometric:20:0.4:9"]));
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = out_dir(&tmp, "x");
    let d = dir.to_str().unwrap();
    // invalid configuration
    assert_eq!(code(&["color-ao", "-o", d]), 2);
    assert_eq!(code(&["color-ao", "--graph", "cycle:5", "--set", "mutation_prob=2", "-o", d]), 2);
    assert_eq!(code(&["color-ao", "--graph", "cycle:5", "--set", "colour=3", "-o", d]), 2);
    assert_eq!(code(&["color-ao", "--graph", "gnp:5:1.5:1", "-o", d]), 2);
    assert_eq!(code(&["oracle", "--graph", &fixture("myciel3.col"), "-o", d]), 2);
    assert_eq!(code(&["baseline", "--graph", "cycle:5", "--ties", "sometimes", "-o", d]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    // unreadable or malformed input
    assert_eq!(code(&["baseline", "--graph", "no/such/file.col", "-o", d]), 3);
    let bad = tmp.path().join("bad.col");
    fs::write(&bad, "p edge 3 1\ne 1 9\n").unwrap();
    assert_eq!(code(&["baseline", "--graph", bad.to_str().unwrap(), "-o", d]), 3);
    assert_eq!(code(&["replay", "missing.txt", "-o", d]), 3);
}
