use std::path::Path;
use std::process::{Command, Output};

use cachenet_core::fixtures::Fixture;
use cachenet_core::ndt::fmt_rational;
use cachenet_core::scalar::parse_rational;
use cachenet_core::Rational;

fn cachenet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cachenet"))
        .args(args)
        .env_remove("CACHENET_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Rows of a sweep CSV as header-keyed maps.
fn sweep_rows(csv: &str) -> Vec<std::collections::BTreeMap<String, String>> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(String::from)).collect())
        .collect()
}

/// Exact value of a `p/q (decimal)` cell.
fn exact(cell: &str) -> Rational {
    parse_rational::<i128>(cell.split_whitespace().next().unwrap()).unwrap()
}

#[test]
fn mdsia_example_run() {
    let o = cachenet(&["run", "--h", "5", "--r", "2", "--mu-r", "1/4", "--scheme", "mdsia"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("mdsia  3/(4ρ) + 9/8"));
    assert!(out.contains("  UE1: f[n|1|{1}] f[n|2|{1}]"));
    assert!(out.contains("  X[3|{1,2}] = f[2|3|{2}] + f[5|3|{1}]  (fronthaul)"));
    assert!(out.contains("  UE1: X[1|{2,3}] X[2|{2,3}] | X[1|{2,4}] X[2|{2,4}] | X[1|{3,4}] X[2|{3,4}]"));
    assert!(out.contains("alignment certified at all 10 UEs"));
    assert!(out.contains("verification: ok"));
}

#[test]
fn soft_example_run() {
    let o = cachenet(&["run", "--h", "4", "--r", "2", "--mu-r", "1/3", "--scheme", "soft"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("t_U = 2, F = 120 bits, 10 steps"));
    assert!(out.contains("soft   1/ρ + 2/3"));
    assert!(out.contains("structural  1/ρ + 2/3"));
}

#[test]
fn all_schemes_at_a_zero_forcing_point() {
    let o = cachenet(&["run", "--h", "4", "--r", "2", "--mu-r", "2/3", "--mu-t", "1/2", "--rho", "1/10", "--no-tables"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    for s in ["  mdsia ", "  soft ", "  zf "] {
        assert!(out.contains(s), "missing {s:?} in {out}");
    }
    assert!(out.contains("  argmin zf"));
    assert_eq!(out.matches("verification: ok").count(), 3, "{out}");
    assert!(!out.contains("FAILED"));
}

#[test]
fn memory_shared_point_runs_both_brackets() {
    let o = cachenet(&["run", "--h", "5", "--r", "2", "--mu-r", "3/8", "--scheme", "mdsia", "--no-tables"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("alpha = 1/2 between mu_R = 1/2 and 1/4"));
    assert!(out.contains("== mdsia at mu_R = 1/2 ==") && out.contains("== mdsia at mu_R = 1/4 =="));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["run", "--h", "2", "--r", "2", "--mu-r", "1/2"],
        vec!["run", "--h", "5", "--r", "2", "--mu-r", "one"],
        vec!["run", "--h", "5", "--r", "2", "--mu-r", "1/4", "--demand", "1,2"],
        vec!["run", "--h", "5", "--r", "2", "--mu-r", "1/2", "--mu-t", "1/10", "--scheme", "zf"],
        vec!["run", "--h", "5", "--r", "2", "--mu-r", "1/4", "--scheme", "mdsia", "--file-size-bits", "24"],
        vec!["sweep", "--h", "5", "--r", "2", "--rho", "1", "--mu-r-step", "0"],
    ] {
        let o = cachenet(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn failed_delivery_exits_one() {
    // Zero-forcing on this network cannot reach UE 6 at t_R = 0: every
    // null vector vanishes on both of its ENs.
    let o = cachenet(&["run", "--h", "5", "--r", "2", "--mu-r", "7/10", "--mu-t", "3/10", "--scheme", "zf"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("verification: FAILED"));
}

#[test]
fn seed_from_environment_wins() {
    let o = Command::new(env!("CARGO_BIN_EXE_cachenet"))
        .args(["run", "--h", "3", "--r", "2", "--mu-r", "1/3", "--scheme", "soft", "--seed", "1", "--no-tables"])
        .env("CACHENET_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("seed = 7"));
    let bad = Command::new(env!("CARGO_BIN_EXE_cachenet"))
        .args(["run", "--h", "3", "--r", "2", "--mu-r", "1/3"])
        .env("CACHENET_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn empty_sweep_is_header_only() {
    let o = cachenet(&["sweep", "--h", "5", "--r", "2", "--rho"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "h,r,mu_r,mu_t,rho,scheme,ndt_total,ndt_fronthaul,ndt_edge,alpha,bracket_lo,bracket_hi,is_argmin\n"
    );
}

#[test]
fn threshold_sweep_orders_schemes() {
    let o = cachenet(&["sweep", "--h", "5", "--r", "2", "--mu-t", "3/10", "--rho", "0.05"]);
    assert_eq!(code(&o), 0);
    let rows = sweep_rows(&stdout(&o));
    assert_eq!(rows.len(), 21 * 3);
    for r in rows.iter().filter(|r| r["is_argmin"] == "true") {
        let mu = exact(&r["mu_r"]);
        let want = if mu < Rational::new(7, 10) { "mdsia" } else { "zf" };
        assert_eq!(r["scheme"], want, "mu_R = {mu}");
    }
}

#[test]
fn connectivity_sweep() {
    let o = cachenet(&["sweep", "--h", "7", "--r", "2,5", "--rho", "1", "--scheme", "mdsia"]);
    assert_eq!(code(&o), 0);
    let rows = sweep_rows(&stdout(&o));
    let total = |r: &str, mu: &str| {
        rows.iter()
            .find(|x| x["r"] == r && x["mu_r"] == mu)
            .and_then(|x| (x["ndt_total"] != "NA").then(|| exact(&x["ndt_total"])))
    };
    let mut compared = 0;
    for x in rows.iter().filter(|x| x["r"] == "5") {
        if let (Some(a), Some(b)) = (total("5", &x["mu_r"]), total("2", &x["mu_r"])) {
            assert!(a <= b);
            compared += 1;
        }
    }
    assert!(compared >= 2);
}

#[test]
fn sweep_csv_round_trips() {
    let o = cachenet(&["sweep", "--h", "4", "--r", "2,3", "--mu-t", "1/4", "--rho", "1/3,3", "--mu-r-step", "1/6"]);
    let text = stdout(&o);
    for line in text.lines().skip(1) {
        let rerendered: Vec<String> = line
            .split(',')
            .map(|c| if c.contains('(') { fmt_rational(&exact(c)) } else { c.to_string() })
            .collect();
        assert_eq!(rerendered.join(","), line);
    }
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn fixtures_are_deterministic_and_match_goldens() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = cachenet(&["fixtures", "--out", d.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let first = read_dir_sorted(a.path());
    assert_eq!(first, read_dir_sorted(b.path()));
    assert_eq!(first.len(), 9);

    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures");
    for (name, bytes) in &first {
        let text = String::from_utf8(bytes.clone()).unwrap();
        let stem = name.trim_end_matches(".csv");
        let ours = Fixture::parse(stem, &text).unwrap();
        assert_eq!(ours.to_string(), text, "{name} does not round-trip");
        let theirs = Fixture::parse(stem, &std::fs::read_to_string(golden.join(name)).unwrap()).unwrap();
        assert_eq!(ours.canonical(), theirs.canonical(), "{name}");
    }
    let table1 = String::from_utf8(first.iter().find(|(n, _)| n == "table1.csv").unwrap().1.clone()).unwrap();
    assert!(table1.starts_with("UE,1,cache,f[n|1|{1}],f[n|2|{1}]\n"));
    let a_matrix = String::from_utf8(first.iter().find(|(n, _)| n == "matrix_a.csv").unwrap().1.clone()).unwrap();
    assert!(a_matrix.starts_with("h[1,1],h[1,2],h[4,1],h[4,5],h[7,2],h[7,5]\n"));
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let target = blocker.join("sub");
    let o = cachenet(&["fixtures", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let o = cachenet(&["sweep", "--h", "5", "--r", "2", "--rho", "1", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}
