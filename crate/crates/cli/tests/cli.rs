use std::fs;
use std::path::Path;

use nucifera_cli::{EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use nucifera_core::BitGraph;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["nucifera"];
    argv.extend_from_slice(args);
    let code = nucifera_cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn cycle(n: usize) -> BitGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    BitGraph::from_edges(n, &edges)
}

/// The quaternion group: index `2u + s` is `(-1)^s` times unit `u` of
/// `1, i, j, k`.
fn q8_table() -> String {
    // unit product as (sign, unit)
    let units = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut s = String::from("8\n");
    for a in 0..8 {
        let row: Vec<String> = (0..8)
            .map(|b| {
                let (sign, unit) = units[a / 2][b / 2];
                (2 * unit + (sign + a % 2 + b % 2) % 2).to_string()
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[test]
fn help_and_bad_usage() {
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
    assert_eq!(cli(&[]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn verify_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write(dir.path(), "k2.adj", "0 1\n1 0\n");
    let out = cli(&["verify", &k2, "--inverse"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("det: -1"));
    assert!(out.stdout.contains("verdict: nuciferous"));
    assert!(out.stdout.contains("inverse:\n0 1\n1 0\n"));

    let c4 = write(dir.path(), "c4.g6", &cycle(4).to_graph6());
    let out = cli(&["verify", &c4]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stdout.contains("verdict: singular"), "{}", out.stdout);

    let c5 = write(dir.path(), "c5.g6", &cycle(5).to_graph6());
    let out = cli(&["verify", &c5, "--format", "json"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["nuciferous"], false);
    assert_eq!(v["certificate"]["det"], "2");
}

#[test]
fn verify_fixture() {
    let out = cli(&["verify"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("det: 1750329"));
    assert!(out.stdout.contains("576/576 entries agree"));
    assert!(out.stdout.contains("nullity 1 at all 24 vertices"));
    let out = cli(&["verify", "--format", "graph6"]);
    assert_eq!(
        BitGraph::from_graph6(out.stdout.lines().next().unwrap())
            .unwrap()
            .n(),
        24
    );
}

#[test]
fn verify_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cli(&["verify", "/nonexistent/graph.g6"]).code, EXIT_USAGE);
    let bad = write(dir.path(), "bad.adj", "0 1\n0 0\n");
    let out = cli(&["verify", &bad]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("symmetric"), "{}", out.stderr);
    let k2 = write(dir.path(), "k2.adj", "0 1\n1 0\n");
    assert_eq!(cli(&["verify", &k2, "--format", "csv"]).code, EXIT_USAGE);
}

#[test]
fn search_without_hits() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = cli(&["search", "-g", "C(12)", "--out", out_dir]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "order,group,degree,count\ntotal:0\n");
    assert_eq!(
        fs::read_to_string(dir.path().join("totals.txt")).unwrap(),
        "total:0\n"
    );
    assert!(dir.path().join("groups/c12/report.json").exists());
    assert!(dir.path().join("groups/c12/group.table").exists());
    let out = cli(&[
        "search", "-g", "C(12)", "--out", out_dir, "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["total"], 0);
}

#[test]
fn search_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = cli(&["search", "-g", "D(7)", "--out", out_dir]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("dihedral"));
    assert_eq!(
        cli(&["search", "-g", "C(6)", "--out", out_dir, "--jobs", "0"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        cli(&[
            "search",
            "-g",
            "C(6)",
            "--out",
            out_dir,
            "--degree-min",
            "4",
            "--degree-max",
            "2"
        ])
        .code,
        EXIT_USAGE
    );
    assert_eq!(
        cli(&[
            "search",
            "-g",
            "C(6)",
            "--out",
            out_dir,
            "--degree-max",
            "6"
        ])
        .code,
        EXIT_USAGE
    );
    assert_eq!(
        cli(&["search", "-g", "S(5)", "--out", out_dir]).code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["search", "--out", out_dir]).code, EXIT_USAGE);
}

#[test]
fn search_then_report_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("res");
    let root_s = root.to_str().unwrap();
    let out = cli(&["search", "-g", "S(4)", "--out", root_s, "--jobs", "2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "order,group,degree,count\n24,\"S(4)\",7,2\n24,\"S(4)\",15,1\n24:3 total:3\n"
    );

    let out = cli(&["report", root_s]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stderr.contains("re-certified 48 hits"));

    // A corrupted graph is caught and named.
    let mut g6: Vec<_> = walk(&root)
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "g6"))
        .collect();
    g6.sort();
    let victim = &g6[0];
    let original = fs::read_to_string(victim).unwrap();
    let mut g = BitGraph::from_graph6(original.trim()).unwrap();
    let (u, v) = (0..24)
        .flat_map(|j| (j + 1..24).map(move |k| (j, k)))
        .find(|&(j, k)| !g.has_edge(j, k))
        .unwrap();
    g.add_edge(u, v);
    fs::write(victim, g.to_graph6() + "\n").unwrap();
    let out = cli(&["report", root_s]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(
        out.stderr
            .contains(victim.file_name().unwrap().to_str().unwrap()),
        "{}",
        out.stderr
    );

    fs::write(victim, "not graph6 at all\n").unwrap();
    assert_eq!(cli(&["report", root_s]).code, EXIT_NEGATIVE);
    fs::write(victim, &original).unwrap();
    assert_eq!(cli(&["report", root_s]).code, EXIT_OK);

    // A stale summary is caught too.
    let summary = root.join("summary.csv");
    fs::write(&summary, "order,group,degree,count\n").unwrap();
    let out = cli(&["report", root_s]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stderr.contains("summary.csv"));
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn search_resume_gives_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_str().unwrap();
    let args = [
        "search",
        "-g",
        "S(3) x C(4)",
        "--out",
        root,
        "--block-size",
        "1024",
    ];
    assert_eq!(cli(&args).code, EXIT_OK);
    let report = dir.path().join("groups/s3_x_c4/report.json");
    let first = fs::read_to_string(&report).unwrap();
    let mut resumed = args.to_vec();
    resumed.push("--resume");
    let out = cli(&resumed);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(fs::read_to_string(&report).unwrap(), first);
    // A different block size does not match the stored resume file.
    let out = cli(&[
        "search",
        "-g",
        "S(3) x C(4)",
        "--out",
        root,
        "--block-size",
        "512",
        "--resume",
    ]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("resume"));
}

#[test]
fn report_on_empty_and_missing_dirs() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["report", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "order,group,degree,count\ntotal:0\n");
    assert_eq!(cli(&["report", "/nonexistent/results"]).code, EXIT_USAGE);
}

#[test]
fn iso_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write(dir.path(), "c6.g6", &cycle(6).to_graph6());
    let two_k3 = write(
        dir.path(),
        "2k3.g6",
        &BitGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).to_graph6(),
    );
    let out = cli(&["iso", &c6, &two_k3]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert_eq!(out.stdout, "not isomorphic\n");

    let out = cli(&["iso", &c6, &c6, "--seed", "7", "--witness"]);
    assert_eq!(out.code, EXIT_OK);
    let line = out.stdout.lines().nth(1).unwrap();
    let map: Vec<usize> = line
        .strip_prefix("witness: ")
        .unwrap()
        .split(' ')
        .map(|p| p.split_once(':').unwrap().1.parse().unwrap())
        .collect();
    let shuffled = nucifera_cli::commands::iso::shuffled(&cycle(6), 7);
    assert_eq!(cycle(6).relabeled(&map), shuffled);

    let out = cli(&["iso", &c6, &c6, "--format", "json", "--witness"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn groups_list_validate_import() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["groups", "list"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("D(n)"));

    let q8 = write(dir.path(), "q8.table", &q8_table());
    let out = cli(&["groups", "validate", &q8]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "valid group of order 8: 1 involutions, 3 inverse pairs\n"
    );

    let root = dir.path().join("res");
    let out = cli(&["groups", "import", &q8, "--out", root.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert!(root.join("tables/q8.table").exists());

    // Imported tables feed the search.
    let spec = format!("@{q8}");
    let out = cli(&["search", "-g", &spec, "--out", root.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(root.join("groups/q8/report.json").exists());

    // Swapping two entries of a row breaks the Latin property.
    let mut rows: Vec<Vec<String>> = q8_table()
        .lines()
        .skip(1)
        .map(|l| l.split(' ').map(String::from).collect())
        .collect();
    rows[2][3] = rows[2][4].clone();
    let text = format!(
        "8\n{}\n",
        rows.iter()
            .map(|r| r.join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    );
    let bad = write(dir.path(), "bad.table", &text);
    let out = cli(&["groups", "validate", &bad]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stdout.contains("Latin"), "{}", out.stdout);
    assert_eq!(
        cli(&["groups", "import", &bad, "--out", root.to_str().unwrap()]).code,
        EXIT_NEGATIVE
    );

    let malformed = write(dir.path(), "m.table", "3\n0 1 2\n1 2\n");
    assert_eq!(cli(&["groups", "validate", &malformed]).code, EXIT_USAGE);
    let spec = format!("@{malformed}");
    assert_eq!(
        cli(&["search", "-g", &spec, "--out", root.to_str().unwrap()]).code,
        EXIT_USAGE
    );
}
