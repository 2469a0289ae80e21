use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kneserlab"))
        .args(args)
        .env_remove("KNESERLAB_BUDGET")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn counts(args: &[&str]) -> (usize, usize) {
    let out = run(&[&["build"], args].concat());
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    (
        json["vertices"].as_array().unwrap().len(),
        json["edges"].as_array().unwrap().len(),
    )
}

#[test]
fn build_sizes() {
    assert_eq!(counts(&["--n", "6", "--k", "2", "--s", "3"]), (6, 7));
    assert_eq!(counts(&["--n", "4", "--k", "2", "--s", "2", "--mode", "cycle"]), (2, 1));
    assert_eq!(counts(&["--n", "3", "--k", "1", "--r", "3", "--s", "3"]), (3, 1));
    assert_eq!(
        counts(&["--n", "3", "--k", "1", "--r", "3", "--s", "3", "--mode", "cycle"]),
        (3, 1)
    );
}

#[test]
fn build_file_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    let f = file.to_str().unwrap();
    assert_eq!(
        code(&run(&[
            "build", "--n", "8", "--k", "2", "--r", "3", "--s", "2", "--out", f
        ])),
        0
    );
    let first = std::fs::read(&file).unwrap();
    let stdout_copy = run(&["build", "--n", "8", "--k", "2", "--r", "3", "--s", "2"]);
    assert_eq!(stdout_copy.stdout.trim_ascii_end(), first.trim_ascii_end());
    let text = std::str::from_utf8(&first).unwrap().trim_end();
    let loaded = kneserlab::KneserHypergraph::from_json_str(text).unwrap();
    assert_eq!(loaded.to_json_string().unwrap(), text);
}

#[test]
fn chi_line_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let out = run(&[
        "chi",
        "--n",
        "6",
        "--k",
        "2",
        "--s",
        "3",
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        "chi=3 lb_defect=0 lb_topo=3 ub=3 status=proved-equal"
    );
    let g = dir.path().join("g.json");
    assert_eq!(
        code(&run(&[
            "build",
            "--n",
            "6",
            "--k",
            "2",
            "--s",
            "3",
            "--out",
            g.to_str().unwrap()
        ])),
        0
    );
    let check = run(&[
        "verify",
        "coloring",
        "--graph",
        g.to_str().unwrap(),
        "--coloring",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code(&check), 0, "{}", stdout(&check));
}

#[test]
fn chi_cycle_hypergraph() {
    let out = run(&["chi", "--n", "7", "--k", "2", "--r", "3", "--s", "2", "--mode", "cycle"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("chi=2 "), "{}", stdout(&out));
}

#[test]
fn verify_subcommands_pass() {
    for args in [
        &[
            "verify",
            "colorful",
            "--n",
            "7",
            "--k",
            "2",
            "--s",
            "3",
            "--colorings",
            "20",
            "--seed",
            "7",
        ][..],
        &[
            "verify", "defect", "--n-max", "9", "--k-max", "3", "--r", "2", "--s", "2",
        ],
        &["verify", "tucker", "--n", "6", "--k", "2", "--s", "3", "--p", "2"],
        &["verify", "fan", "--n", "7", "--k", "2", "--s", "3"],
        &["verify", "lift", "--n", "6", "--k", "2", "--s", "3", "--r1", "3"],
        &["verify", "coloring", "--n", "9", "--k", "3", "--r", "3", "--s", "3"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stdout(&out));
        assert!(stdout(&out).starts_with("PASS"), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["chi", "--k", "2"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    // hypothesis n >= sk fails
    assert_eq!(code(&run(&["chi", "--n", "5", "--k", "2", "--s", "3"])), 2);
    // p must be prime
    assert_eq!(
        code(&run(&[
            "verify", "tucker", "--n", "6", "--k", "2", "--s", "3", "--p", "4"
        ])),
        2
    );

    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let c = dir.path().join("c.json");
    assert_eq!(
        code(&run(&[
            "build",
            "--n",
            "6",
            "--k",
            "2",
            "--s",
            "3",
            "--out",
            g.to_str().unwrap()
        ])),
        0
    );
    std::fs::write(&c, "[1,1,1,1,1,1]").unwrap();
    let out = run(&[
        "verify",
        "coloring",
        "--graph",
        g.to_str().unwrap(),
        "--coloring",
        c.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("FAIL monochromatic"));

    let tiny = Command::new(env!("CARGO_BIN_EXE_kneserlab"))
        .args(["chi", "--n", "12", "--k", "3", "--s", "2", "--mode", "cycle"])
        .env("KNESERLAB_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&tiny), 3);
    assert_eq!(
        code(&run(&[
            "--budget", "1000", "chi", "--n", "12", "--k", "3", "--s", "2", "--mode", "cycle"
        ])),
        3
    );
}

fn write_config(dir: &Path) -> std::path::PathBuf {
    let cfg = dir.join("sweep.conf");
    std::fs::write(
        &cfg,
        "cache = cache.jsonl\ncsv = table.csv\n\n[grid]\nn = 6..9\nk = 2\nr = 2..3\ns = 2..3\nmode = both\n",
    )
    .unwrap();
    cfg
}

#[test]
fn scan_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let args = ["scan", "--config", cfg.to_str().unwrap(), "--no-timing"];
    assert_eq!(code(&run(&args)), 0);
    let table = std::fs::read_to_string(dir.path().join("table.csv")).unwrap();
    let cache = std::fs::read_to_string(dir.path().join("cache.jsonl")).unwrap();
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,k,r,s,mode,vertices,edges,lb_defect,lb_topo,ub,exact,status,nodes,millis"
    );
    // n=6 s=3 r=2 path
    assert!(
        table.lines().any(|l| l == "6,2,2,3,path,6,7,0,3,3,3,proved-equal,0,0"),
        "{table}"
    );
    let rows = table.lines().count() - 1;
    assert_eq!(rows, cache.lines().count());

    assert_eq!(code(&run(&args)), 0);
    assert_eq!(std::fs::read_to_string(dir.path().join("table.csv")).unwrap(), table);
    assert_eq!(std::fs::read_to_string(dir.path().join("cache.jsonl")).unwrap(), cache);

    let fresh = tempfile::tempdir().unwrap();
    let cfg2 = write_config(fresh.path());
    assert_eq!(
        code(&run(&["scan", "--config", cfg2.to_str().unwrap(), "--no-timing"])),
        0
    );
    assert_eq!(std::fs::read_to_string(fresh.path().join("table.csv")).unwrap(), table);
}

#[test]
fn scan_reports_indeterminate_cells() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hard.conf");
    std::fs::write(
        &cfg,
        "budget = 100\n[grid]\nn = 12\nk = 3\nr = 2\ns = 2\nmode = cycle\n",
    )
    .unwrap();
    let out = run(&["scan", "--config", cfg.to_str().unwrap(), "--no-timing"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains(",indeterminate,"), "{}", stdout(&out));
}
