//! End-to-end tests of the `tlcat` binary: argument handling, exit
//! codes, and output stability.

use std::process::{Command, Output};

fn tlcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlcat"))
        .args(args)
        .env_remove("TLCAT_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn gram_det_prints_the_generic_polynomial() {
    let out = tlcat(&["gram", "--n", "3", "--r", "1", "--det"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "δ^2 - 1");
}

#[test]
fn gram_radical_at_one_reports_the_known_corank() {
    let out = tlcat(&["gram", "--n", "3", "--r", "1", "--radical", "--delta", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("radical dimension 1"));
}

#[test]
fn repeated_json_invocations_are_byte_identical() {
    for args in [
        vec!["gram", "--n", "4", "--r", "2", "--json"],
        vec!["g0", "product", "--m", "3", "--p", "1", "--n", "3", "--q", "1", "--json"],
        vec!["tower", "axioms", "--max-n", "4", "--json"],
        vec!["verify", "--max-n", "3", "--json"],
    ] {
        let a = tlcat(&args);
        let b = tlcat(&args);
        assert!(a.status.success(), "{args:?} should succeed: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?} output drifted between runs");
        // and it must actually be JSON
        serde_json::from_slice::<serde_json::Value>(&a.stdout).expect("valid json");
    }
}

#[test]
fn enumerate_counts_the_single_cap_into_two_points() {
    let out = tlcat(&["diagrams", "enumerate", "--bot", "0", "--top", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("1 diagram(s)"));
}

#[test]
fn series_lists_all_five_layers_in_filtration_order() {
    let out = tlcat(&["g0", "series", "--m", "4", "--n", "3", "--r", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let order: Vec<usize> = ["(0, 2, 0)", "(0, 1, 1)", "(1, 1, 0)", "(1, 0, 1)", "(2, 0, 0)"]
        .iter()
        .map(|needle| text.find(needle).unwrap_or_else(|| panic!("missing layer {needle}")))
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "layers out of order");
    assert!(text.contains("cumulative 14"));
}

#[test]
fn mackey_reports_the_single_class_difference() {
    let out = tlcat(&["g0", "mackey", "--n", "6", "--p", "2"]);
    assert!(out.status.success(), "inequality is the expected finding, not an error");
    let text = stdout(&out);
    assert!(text.contains("equal = false"));
    assert!(text.contains("difference (right - left) = [Δ_6(2)]"));
}

#[test]
fn cross_checked_product_succeeds_on_a_known_case() {
    let out = tlcat(&[
        "g0", "product", "--m", "4", "--p", "1", "--n", "3", "--q", "1", "--method", "all",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hom_checked"], serde_json::Value::Bool(true));
    assert_eq!(v["product"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn hom_accepts_the_module_mini_language() {
    let out = tlcat(&[
        "hom",
        "--source",
        "tensor(cell:4:1,cell:3:1)",
        "--target",
        "res(cell:7:2,4,3)",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 1"));
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["gram", "--n", "3", "--r", "1", "--radical"], // radical without --delta
        vec!["gram", "--n", "3", "--r", "2", "--det"],     // 2r > n
        vec!["hom", "--source", "cell:3:1", "--target", "cell:4:1"], // parity mismatch
        vec!["hom", "--source", "what:3", "--target", "cell:4:1"], // parse failure
        vec!["gram", "--n", "3", "--r", "1", "--det", "--delta", "2", "--generic"], // mode clash
        vec!["g0", "product", "--m", "5", "--p", "1", "--n", "5", "--q", "1", "--method", "hom"],
        vec!["no-such-command"],
    ];
    for args in cases {
        let out = tlcat(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn environment_bound_rejects_large_requests() {
    let out = Command::new(env!("CARGO_BIN_EXE_tlcat"))
        .args(["gram", "--n", "6", "--r", "1", "--det"])
        .env("TLCAT_MAX_N", "5")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("TLCAT_MAX_N"));
}

#[test]
fn verify_passes_at_desk_scale_and_prints_one_line_per_suite() {
    let out = tlcat(&["verify", "--max-n", "4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let ok_lines = text.lines().filter(|l| l.starts_with("[ok]")).count();
    assert_eq!(ok_lines, 15);
    assert!(!text.contains("FAIL"));
}

#[test]
fn closing_the_output_pipe_early_is_not_an_error() {
    use std::io::Read;
    use std::process::Stdio;
    // Enough output to overflow the pipe buffer, so the write hits the
    // closed end for sure.
    let mut child = Command::new(env!("CARGO_BIN_EXE_tlcat"))
        .args(["diagrams", "enumerate", "--bot", "7", "--top", "7", "--render"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    let mut first = [0u8; 16];
    child
        .stdout
        .take()
        .expect("piped stdout")
        .read_exact(&mut first)
        .expect("some output arrives");
    // Dropping the handle above closed the read end; the binary must
    // finish quietly instead of panicking about a broken pipe.
    let out = child.wait_with_output().expect("child finishes");
    assert!(out.status.success(), "exit: {:?}", out.status);
    assert!(
        out.stderr.is_empty(),
        "stderr not empty: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn delta_specialization_changes_the_determinant() {
    let generic = tlcat(&["gram", "--n", "3", "--r", "1", "--det"]);
    let at_two = tlcat(&["gram", "--n", "3", "--r", "1", "--det", "--delta", "2"]);
    assert_eq!(stdout(&generic).trim(), "δ^2 - 1");
    assert_eq!(stdout(&at_two).trim(), "3");
}
