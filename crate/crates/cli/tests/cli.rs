use std::io::Write;
use std::process::{Command, Stdio};

use bracket_cli::report::{BoundsReport, BracketReport, ExtremesReport, FgraphReport, RealizeReport, SkeletonReport};
use bracket_core::fixtures::ROLFSEN_NONALTERNATING;
use bracket_core::table::TableEntry;

const RIGHT_TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bracket(args: &[&str], stdin: &str) -> Run {
    bracket_env(args, stdin, &[])
}

fn bracket_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bracket"));
    cmd.args(args)
        .env_remove("BRACKET_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// The named records of the shipped corpus, joined.
fn records(names: &[&str]) -> String {
    let mut out = String::new();
    for block in ROLFSEN_NONALTERNATING.split("\nname ").skip(1) {
        let name = block.split_whitespace().next().unwrap();
        if names.contains(&name) {
            out.push_str("name ");
            out.push_str(block.trim_end());
            out.push('\n');
        }
    }
    out
}

#[test]
fn extremes_on_trefoil() {
    let r = bracket(&["extremes", "-", "--json", "--with-oracle"], RIGHT_TREFOIL);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let reports: Vec<ExtremesReport> = serde_json::from_str(&r.stdout).unwrap();
    let sides = &reports[0].sides;
    assert_eq!((sides[0].circle_count, sides[1].circle_count), (2, 3));
    assert!(sides.iter().all(|s| s.adequate));
    assert_eq!((sides[0].signed_coefficient, sides[1].signed_coefficient), (-1, 1));
    assert_eq!(sides[0].oracle_coefficient.as_deref(), Some("-1"));
    assert_eq!(sides[0].chords.len(), 3);

    let text = bracket(&["extremes", "-", "--side", "b"], RIGHT_TREFOIL);
    assert!(text.stdout.contains("s_B circles: 3"));
    assert!(!text.stdout.contains("s_A"));
}

#[test]
fn json_round_trips() {
    let r = bracket(&["extremes", "-", "--json"], &records(&["8_19", "10_157"]));
    let parsed: Vec<ExtremesReport> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", r.stdout);

    let r = bracket(&["bracket", "-", "--json"], RIGHT_TREFOIL);
    let parsed: Vec<BracketReport> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(parsed[0].bracket.to_string(), "-A^5 - A^-3 + A^-7");
    assert_eq!(parsed[0].jones_spread, Some(3));
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", r.stdout);
}

#[test]
fn bounds_on_8_19() {
    let r = bracket(&["bounds", "-", "--json"], &records(&["8_19"]));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let b: Vec<BoundsReport> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(b[0].beta_hat, 6);
    assert_eq!(b[0].refined.jones_spread_bound, 5);
    let sk = b[0].skeleton.unwrap();
    assert!(sk.extreme_states_bound <= sk.thistlethwaite_bound);
    let text = bracket(&["bounds", "-"], &records(&["8_19"]));
    assert!(text.stdout.contains("beta_hat: 6"));
}

#[test]
fn skeleton_report() {
    let r = bracket(&["skeleton", "-", "--json"], &records(&["8_19"]));
    let s: Vec<SkeletonReport> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(s[0].bounds.e, s[0].bounds.v);
    assert!(s[0].rotations.iter().all(|v| v.rotation.len() == 2));
    let text = bracket(&["skeleton", "-"], &records(&["8_19"]));
    assert!(text.stdout.contains("|G_A|: "));
}

#[test]
fn fgraph_sources() {
    let f = |args: &[&str]| -> FgraphReport {
        let mut all = vec!["fgraph", "--json"];
        all.extend_from_slice(args);
        let r = bracket(&all, "");
        assert_eq!(r.code, 0, "{}", r.stderr);
        serde_json::from_str(&r.stdout).unwrap()
    };
    assert_eq!(f(&["--complete", "5"]).f, -4);
    assert_eq!(f(&["--bipartite", "2", "3"]).f, -1);
    assert_eq!(f(&["--path", "2"]).f_bruteforce, Some(-1));
    assert_eq!(f(&["--edges", "3; 0 1; 1 2"]).f, -1);
    assert_eq!(f(&["--word", "abab"]).graph, "2|0-1");
    let r = bracket(&["fgraph", "--file", "-"], "4\n0 1\n2 3\n");
    assert!(r.stdout.contains("f: 1"));
    assert_eq!(bracket(&["fgraph", "--complete", "3", "--path", "2"], "").code, 2);
}

#[test]
fn realize_word_and_search() {
    let r = bracket(&["realize", "--word", "abab", "--inside", "a", "--json"], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rep: RealizeReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(rep.f_value, -1);
    assert_eq!(rep.signed_coefficient_a, -1);
    assert_eq!(rep.oracle_coefficient_a.as_deref(), Some("-1"));

    let r = bracket(&["realize", "--target-f", "2", "--search", "--max-chords", "6", "--json"], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rep: RealizeReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(rep.f_value, 2);
    assert_eq!(rep.oracle_coefficient_a, Some(rep.signed_coefficient_a.to_string()));

    let r = bracket(&["realize", "--word", "abab", "--inside", "a,b"], "");
    assert_eq!(r.code, 3);
}

#[test]
fn table_rows_and_determinism() {
    let corpus = records(&["8_19", "8_20", "8_21", "10_155"]);
    let r = bracket(&["table", "-", "--with-oracle"], &corpus);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "name\tbeta_hat\ta_hat_sB\tchords_B_summary\ta_hat_sA\tchords_A_summary\tbeta_actual\tplus_adequate\tminus_adequate"
    );
    let cols = |i: usize| lines[i].split('\t').collect::<Vec<_>>();
    assert_eq!(&cols(1)[..3], ["8_19", "6", "0"]);
    assert_eq!(cols(1)[4], "1");
    assert_eq!(cols(1)[6], "5");
    assert_eq!((cols(3)[2], cols(3)[4]), ("2", "1"));
    assert_eq!((cols(4)[1], cols(4)[2], cols(4)[4], cols(4)[6]), ("9", "1", "0", "8"));
    assert_eq!(bracket(&["table", "-", "--with-oracle"], &corpus).stdout, r.stdout);

    let j = bracket(&["table", "-", "--json"], &corpus);
    let rows: Vec<TableEntry> = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|e| e.row.as_ref().unwrap().beta_actual.is_none()));
    assert_eq!(serde_json::to_string_pretty(&rows).unwrap() + "\n", j.stdout);
}

#[test]
fn table_reports_bad_rows_inline() {
    let r = bracket(&["table", "-"], "name ok\nX(1,5,2,4) X(3,1,4,6) X(5,3,6,2)\nname broken\nX(1,2,3,4)\n");
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().nth(2).unwrap().starts_with("broken\terror: "));
    assert!(r.stderr.contains("broken"));
}

#[test]
fn exit_codes() {
    assert_eq!(bracket(&["bracket", "-"], "X(1,2,3)").code, 3);
    assert_eq!(bracket(&["bracket", "-"], "X(1,3,2,4) X(2,4,1,3)").code, 4);
    let capped = bracket(&["bracket", "-", "--cap", "2"], RIGHT_TREFOIL);
    assert_eq!(capped.code, 5);
    assert!(capped.stderr.contains("cap of 2"));
    assert_eq!(bracket_env(&["bracket", "-"], RIGHT_TREFOIL, &[("BRACKET_CAP", "2")]).code, 5);
    assert_eq!(bracket(&["skeleton", "-"], "X(1,1,2,2)").code, 6);
    let miss = bracket(&["realize", "--target-f", "7", "--search", "--max-chords", "3"], "");
    assert_eq!(miss.code, 7);
    assert_eq!(bracket(&["bracket", "/nonexistent/file.pd"], "").code, 8);
    assert_eq!(bracket(&["nonsense"], "").code, 2);
}
