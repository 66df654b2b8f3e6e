//! End-to-end tests driving the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

use waldschmidt::{
    bipyramid_ideal, BipyramidSpec, Monomial, SimplicialComplex, SquarefreeMonomialIdeal,
};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_waldschmidt"))
        .args(args)
        .env_remove("WALDSCHMIDT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn alpha_on_b6() {
    let output = run(&["alpha", "--bipyramid", "6", "-m", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("alpha: 3"), "{text}");
    // Witness round-trips through the membership machinery.
    let witness_line = text.lines().find(|l| l.starts_with("witness: ")).unwrap();
    let witness = Monomial::parse(witness_line.strip_prefix("witness: ").unwrap(), 8).unwrap();
    let ideal = bipyramid_ideal(BipyramidSpec::new(6).unwrap());
    assert_eq!(witness.degree(), 3);
    assert!(ideal.symbolic_membership(&witness, 2).unwrap());
}

#[test]
fn alpha_csv_format() {
    let output = run(&["alpha", "--bipyramid", "6", "-m", "2", "--format", "csv"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,alpha,witness"));
    assert!(lines.next().unwrap().starts_with("2,3,"));
}

#[test]
fn gamma_closed_form_line() {
    let output = run(&["gamma", "--bipyramid", "8"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "4/3 (closed form 4/3, consistent)\n");
}

#[test]
fn gamma_on_triangle_base() {
    let output = run(&["gamma", "--bipyramid", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(
        text.starts_with("2 (closed form n/(n-2) not applicable for n = 3"),
        "{text}"
    );
}

#[test]
fn gamma_with_sequence() {
    let output = run(&["gamma", "--bipyramid", "6", "-m", "4", "--jobs", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("gamma_lp: 3/2"), "{text}");
    assert!(text.contains("m=4 alpha=6 ratio=3/2"), "{text}");

    let csv = run(&["gamma", "--bipyramid", "6", "-m", "4", "--format", "csv"]);
    let text = stdout(&csv);
    assert!(text.starts_with("m,alpha,ratio\n1,2,2\n"), "{text}");
}

#[test]
fn membership_weight_boundary() {
    let args = [
        "membership",
        "--bipyramid",
        "9",
        "--monomial",
        "0:3 3:2 5:1 7:2 10:1",
    ];
    let at_four = run(&[&args[..], &["-m", "4"]].concat());
    assert!(at_four.status.success());
    assert!(stdout(&at_four).contains("true"));

    let at_five = run(&[&args[..], &["-m", "5"]].concat());
    assert!(at_five.status.success());
    let text = stdout(&at_five);
    assert!(text.contains("false"), "{text}");
    assert!(text.contains("violated prime: "), "{text}");
    assert!(text.contains("(weight 4 < m 5)"), "{text}");
}

#[test]
fn complex_output_parses_back() {
    let output = run(&["complex", "--bipyramid", "4"]);
    assert!(output.status.success());
    let complex = SimplicialComplex::from_text(&stdout(&output)).unwrap();
    assert_eq!(complex.num_vertices(), 6);
    assert_eq!(complex.facets().len(), 8);
}

#[test]
fn ideal_output_feeds_back_as_input() {
    let output = run(&["ideal", "--bipyramid", "5", "--primes"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("# minimal primes (10):"), "{text}");
    let parsed = SquarefreeMonomialIdeal::from_text(&text).unwrap();
    assert_eq!(parsed, bipyramid_ideal(BipyramidSpec::new(5).unwrap()));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let alpha = run(&["alpha", "--ideal", path, "-m", "3"]);
    assert!(alpha.status.success());
    assert!(stdout(&alpha).contains("alpha: 5"), "{}", stdout(&alpha));
}

#[test]
fn verify_passes_on_small_range() {
    let output = run(&["verify", "--n-max", "6", "--s-max", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(text.matches(": PASS").count(), 9, "{text}");
    assert!(text.contains("9 passed, 0 failed"), "{text}");
}

#[test]
fn verify_rejects_zero_s_max() {
    let output = run(&["verify", "--s-max", "0"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_guards_triangle_only_range() {
    let output = run(&["verify", "--n-max", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(
        text.contains("triangle base exclusion (gamma(B_3) = 2): PASS"),
        "{text}"
    );
    assert!(text.contains("SKIPPED (requires n >= 4"), "{text}");
}

#[test]
fn verify_reports_budget_exhaustion() {
    let output = Command::new(env!("CARGO_BIN_EXE_waldschmidt"))
        .args(["verify", "--n-max", "8"])
        .env("WALDSCHMIDT_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("SKIPPED (budget exhausted)"));
}

#[test]
fn table_csv_shape() {
    let output = run(&[
        "table", "--n-max", "5", "-m", "2", "--format", "csv", "--jobs", "2",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,m,alpha,witness,closed_form_prediction,match");
    assert_eq!(lines.len(), 5, "{text}");
    assert!(lines[1].starts_with("4,1,2,"));
    assert!(lines[1].ends_with(",2,true"));
    // B_5 at m = 2 sits off every closed form: empty prediction and match.
    assert!(lines[4].starts_with("5,2,4,"));
    assert!(lines[4].ends_with(",,"), "{text}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["table", "--n-max", "6", "-m", "3", "--format", "records"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["alpha", "--bipyramid", "6"]).status.code(), Some(2));
    assert_eq!(run(&["alpha", "-m", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["alpha", "--bipyramid", "2", "-m", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["alpha", "--bipyramid", "6", "-m", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "membership",
            "--bipyramid",
            "5",
            "--monomial",
            "9:1",
            "-m",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "membership",
            "--bipyramid",
            "5",
            "--monomial",
            "1:1",
            "-m",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["gamma", "--ideal", "/no/such/file"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["gamma", "--bipyramid", "6", "-m", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["table", "--n-max", "3"]).status.code(), Some(2));
    assert_eq!(run(&["table", "-m", "0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn debug_lp_dumps_tableaus_to_stderr() {
    let output = run(&["gamma", "--bipyramid", "4", "--debug-lp"]);
    assert!(output.status.success());
    let err = String::from_utf8(output.stderr.clone()).unwrap();
    assert!(err.contains("phase"), "{err}");
    // stdout stays clean for scripting.
    assert_eq!(stdout(&output), "2 (closed form 2, consistent)\n");
}
