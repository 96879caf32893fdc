//! End-to-end tests that drive the command-line interface in process and
//! pin its text, JSON, and exit-code contract with golden outputs.

use knotperm_cli::report::ClassifyReport;
use knotperm_cli::run;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["knotperm"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("stdout is utf-8"),
        String::from_utf8(err).expect("stderr is utf-8"),
    )
}

fn joined(parts: &[&str]) -> String {
    let mut s = parts.join("\n");
    s.push('\n');
    s
}

#[test]
fn classify_reports_an_unknotted_cycle_with_tree_and_tb() {
    let (code, out, err) = run_cli(&["classify", "864275193"]);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert_eq!(
        out,
        joined(&[
            "unknot",
            "input: 864275193",
            "n: 9",
            "crossings: 3",
            "ur-indices: 4 6 7 9",
            "writhe: -3",
            "tb: -1",
            "tree: (+(-(. +(+(-(. +(. .)) -(. .)) .)) .) .)",
        ])
    );
}

#[test]
fn classify_reports_an_unlink_with_component_count() {
    let (code, out, _) = run_cli(&["classify", "732541698"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "unlink(4)",
            "input: 732541698",
            "n: 9",
            "components: 4",
            "crossings: 0",
            "ur-indices: 3 5 7 9",
            "writhe: 0",
            "tb: -4",
        ])
    );
}

#[test]
fn classify_reports_a_linked_witness_pair() {
    let (code, out, _) = run_cli(&["classify", "3412"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "linked",
            "input: 3412",
            "n: 4",
            "components: 2",
            "crossings: 2",
            "ur-indices: 3 4",
            "writhe: -2",
            "tb: 0",
            "witness: cycles (1 3) and (2 4) cross at (1, 2)",
        ])
    );
}

#[test]
fn classify_handles_the_smallest_cycle() {
    let (code, out, _) = run_cli(&["classify", "21"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "unknot",
            "input: 21",
            "n: 2",
            "crossings: 0",
            "ur-indices: 2",
            "writhe: 0",
            "tb: -1",
            "tree: (. .)",
        ])
    );
}

#[test]
fn classify_routes_non_cycles_through_the_link_decider() {
    // The identity has no derangement data: no tb line, empty ur list.
    let (code, out, _) = run_cli(&["classify", "123"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "unlink(3)",
            "input: 123",
            "n: 3",
            "components: 3",
            "crossings: 0",
            "ur-indices:",
            "writhe: 0",
        ])
    );
}

#[test]
fn classify_json_lines_match_and_round_trip() {
    let cases: &[(&str, &str)] = &[
        (
            "864275193",
            r#"{"crossings":3,"input":"864275193","n":9,"status":"unknot","tb":-1,"tree":"(+(-(. +(+(-(. +(. .)) -(. .)) .)) .) .)","ur_indices":[4,6,7,9],"writhe":-3}"#,
        ),
        (
            "732541698",
            r#"{"components":4,"crossings":0,"input":"732541698","n":9,"status":"unlink","tb":-4,"ur_indices":[3,5,7,9],"writhe":0}"#,
        ),
        (
            "3412",
            r#"{"components":2,"crossings":2,"input":"3412","n":4,"status":"linked","tb":0,"ur_indices":[3,4],"witness":{"cycle_a":[1,3],"cycle_b":[2,4],"kind":"crossing-pair","pair":[1,2]},"writhe":-2}"#,
        ),
    ];
    for (input, expected) in cases {
        let (code, out, _) = run_cli(&["classify", input, "--json"]);
        assert_eq!(code, 0, "classify {input}");
        assert_eq!(out, format!("{expected}\n"), "classify {input}");

        // parse then re-serialize: byte-identical
        let report: ClassifyReport = serde_json::from_str(expected).expect("report parses");
        assert_eq!(serde_json::to_string(&report).expect("report prints"), *expected);
    }
}

#[test]
fn tree_to_cycle_prints_the_image_list() {
    let (code, out, _) = run_cli(&["tree", "to-cycle", "(+(+(. .) -(. .)) -(. .))"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2,4,6,3,1,5\n");
}

#[test]
fn tree_to_cycle_trace_lists_every_growth_step() {
    let (code, out, _) = run_cli(&["tree", "to-cycle", "(+(+(. .) -(. .)) -(. .))", "--trace"]);
    assert_eq!(code, 0);
    assert_eq!(out, joined(&["21", "231", "2341", "24531", "246315"]));
}

#[test]
fn tree_from_cycle_recovers_the_canonical_form() {
    let (code, out, _) = run_cli(&["tree", "from-cycle", "246315"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(+(+(. .) -(. .)) -(. .))\n");
}

#[test]
fn tree_from_cycle_rejects_knotted_cycles_with_exit_one() {
    let (code, out, err) = run_cli(&["tree", "from-cycle", "34512"]);
    assert_eq!(code, 1);
    assert_eq!(out, "knotted\n");
    assert!(err.is_empty());
}

#[test]
fn tree_from_cycle_rejects_non_cycles_with_usage_error() {
    let (code, out, err) = run_cli(&["tree", "from-cycle", "345612"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "stderr: {err}");
}

#[test]
fn count_unknotted_cycles_matches_the_small_schroder_numbers() {
    let (code, out, _) = run_cli(&["count", "unknotted-cycles", "2..9", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "n\tcount",
            "2\t1",
            "3\t2",
            "4\t6",
            "5\t22",
            "6\t90",
            "7\t394",
            "8\t1806",
            "9\t8558",
            "check: ok",
        ])
    );
}

#[test]
fn count_unlinked_by_components_prints_the_strata_table() {
    let (code, out, _) = run_cli(&["count", "unlinked", "2..8", "--by-components"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "n\ttotal\tk=1\tk=2\tk=3\tk=4",
            "2\t1\t1\t0\t0\t0",
            "3\t2\t2\t0\t0\t0",
            "4\t8\t6\t2\t0\t0",
            "5\t32\t22\t10\t0\t0",
            "6\t143\t90\t48\t5\t0",
            "7\t674\t394\t238\t42\t0",
            "8\t3316\t1806\t1216\t280\t14",
        ])
    );
}

#[test]
fn count_with_fixed_points_allowed_matches_the_frozen_row() {
    let (code, out, _) = run_cli(&["count", "unlinked-with-fixed", "1..8", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "n\ttotal",
            "1\t1",
            "2\t2",
            "3\t6",
            "4\t23",
            "5\t103",
            "6\t511",
            "7\t2719",
            "8\t15205",
            "check: ok",
        ])
    );
}

#[test]
fn count_past_the_default_cap_is_a_usage_error() {
    let (code, out, err) = run_cli(&["count", "unlinked-with-fixed", "9"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("cap"), "stderr: {err}");
}

#[test]
fn empty_ranges_are_usage_errors() {
    let (code, _, err) = run_cli(&["count", "unknotted-cycles", "5..2"]);
    assert_eq!(code, 2);
    assert!(err.contains("empty range"), "stderr: {err}");
}

#[test]
fn render_ascii_draws_the_two_cycle_box() {
    let (code, out, _) = run_cli(&["render", "21"]);
    assert_eq!(code, 0);
    assert_eq!(out, joined(&["+-+", "| |", "+-+"]));
}

#[test]
fn render_ascii_marks_crossings_on_the_vertical_strand() {
    let (code, out, _) = run_cli(&["render", "3412"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "  +---+",
            "  |   |",
            "+-^-+ |",
            "| | | |",
            "| +-^-+",
            "|   |",
            "+---+",
        ])
    );
}

#[test]
fn render_ascii_seifert_footer_counts_circles() {
    let (code, out, _) = run_cli(&["render", "132", "--seifert"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&["  +-+", "  | |", "  +-+", "", ".", "seifert circles: 1"])
    );
}

#[test]
fn render_svg_is_deterministic_and_lists_every_dot() {
    let (code, first, _) = run_cli(&["render", "467513298", "--svg"]);
    assert_eq!(code, 0);
    let (_, second, _) = run_cli(&["render", "467513298", "--svg"]);
    assert_eq!(first, second);
    assert!(first.starts_with("<svg"), "svg prefix");
    assert_eq!(first.matches("<circle").count(), 9);

    let (_, decorated, _) = run_cli(&["render", "864275193", "--svg", "--seifert"]);
    assert_eq!(decorated.matches("class=\"seifert\"").count(), 4);
}

#[test]
fn render_out_writes_the_same_bytes_to_a_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("diagram.svg");
    let path_str = path.to_str().expect("utf-8 path");

    let (code, out, _) = run_cli(&["render", "3412", "--svg", "--out", path_str]);
    assert_eq!(code, 0);
    assert!(out.is_empty(), "file output silences stdout");

    let written = std::fs::read_to_string(&path).expect("written file");
    let (_, direct, _) = run_cli(&["render", "3412", "--svg"]);
    assert_eq!(written, direct);
}

#[test]
fn render_svg_cell_size_below_four_is_a_usage_error() {
    let (code, _, err) = run_cli(&["render", "21", "--svg", "--cell-size", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("cell size"), "stderr: {err}");
}

#[test]
fn verify_past_the_cycle_cap_is_a_usage_error() {
    // Regression: the suite size argument must not leak into the cap override.
    let (code, out, err) = run_cli(&["verify", "99"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("cap 11"), "stderr: {err}");
}

#[test]
fn verify_cap_override_applies_wherever_the_flag_sits() {
    let (before, out_before, _) = run_cli(&["--max-n", "99", "verify", "5"]);
    assert_eq!(before, 0);
    assert!(out_before.ends_with("verify: all checks passed\n"));

    let (after, out_after, _) = run_cli(&["verify", "5", "--max-n", "99"]);
    assert_eq!(after, 0);
    assert!(out_after.ends_with("verify: all checks passed\n"));
}

#[test]
fn verify_small_sizes_pass_and_name_each_suite() {
    let (code, out, _) = run_cli(&["verify", "3"]);
    assert_eq!(code, 0);
    for suite in ["bijection/", "topology/", "series/", "dg/"] {
        assert!(out.contains(suite), "missing {suite} in:\n{out}");
    }
    assert!(out.ends_with("verify: all checks passed\n"));
}

#[test]
fn prob_unknot_prints_exact_reduced_fractions() {
    let (code, out, _) = run_cli(&["prob-unknot", "9"]);
    assert_eq!(code, 0);
    assert_eq!(out, "4279/20160\n");

    let (code, out, _) = run_cli(&["prob-unknot", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1/1\n");

    let (code, _, err) = run_cli(&["prob-unknot", "1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "stderr: {err}");
}

#[test]
fn dg_experiment_reports_coinciding_sets() {
    let (code, out, _) = run_cli(&["dg-experiment", "1..5"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        joined(&[
            "n=1: zero-gap 1, unlinked 1, both 1 -> sets coincide",
            "n=2: zero-gap 2, unlinked 2, both 2 -> sets coincide",
            "n=3: zero-gap 6, unlinked 6, both 6 -> sets coincide",
            "n=4: zero-gap 23, unlinked 23, both 23 -> sets coincide",
            "n=5: zero-gap 103, unlinked 103, both 103 -> sets coincide",
        ])
    );
}

#[test]
fn thread_flag_controls_the_worker_pool() {
    let (code, out, _) = run_cli(&["--threads", "2", "count", "unknotted-cycles", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out, joined(&["n\tcount", "8\t1806"]));
}

#[test]
fn help_and_version_exit_cleanly() {
    let (code, out, err) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert!(out.contains("Usage"), "help text:\n{out}");

    let (code, out, _) = run_cli(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("knotperm"), "version line: {out}");
}

#[test]
fn malformed_permutations_are_usage_errors() {
    for bad in ["not-a-perm", "8642751", "120", "1,2,2"] {
        let (code, out, err) = run_cli(&["classify", bad]);
        assert_eq!(code, 2, "input {bad}");
        assert!(out.is_empty(), "input {bad}");
        assert!(err.starts_with("error:"), "input {bad}, stderr: {err}");
    }
}
