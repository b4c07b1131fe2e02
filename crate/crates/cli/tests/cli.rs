use std::path::PathBuf;

use gmlw_cli::{paper_report, run, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn gmlw(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("gmlw").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gmlw-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const REMARK: &str = "model {
  worlds: v, w
  edge v w = 1/2
  val w { x = 1, y = 1/2 }
}
";

#[test]
fn bound_of_a_small_formula() {
    assert_eq!(gmlw(&["bound", "--formula", "[]x & <>y"]), (EXIT_OK, "3\n".into(), String::new()));
    let (_, out, _) = gmlw(&["--porcelain", "bound", "--formula", "[]<>x"]);
    assert_eq!(out, "bound = 3\n");
}

#[test]
fn eval_reads_model_files() {
    let path = scratch("remark.gk");
    std::fs::write(&path, REMARK).unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = gmlw(&["eval", "--model", p, "--world", "v", "--formula", "<>x -> <>y"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "e(v, <>x -> <>y) = 1\n  <>x = 1/2 attained at w\n  <>y = 1/2 attained at w\n");
    let (_, out, _) = gmlw(&["--porcelain", "eval", "--model", p, "--world", "v", "--formula", "~<>y | <>(x -> y)"]);
    assert!(out.starts_with("value = 1/2\n"), "{out}");
}

#[test]
fn parse_errors_carry_positions() {
    let path = scratch("broken.gk");
    std::fs::write(&path, "model {\n  worlds: a\n  edge a b = 1\n}\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, err) = gmlw(&["eval", "--model", p, "--world", "a", "--formula", "x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert_eq!(err, format!("error: {p}:3:10: unknown world `b`\n"));

    let (code, _, err) = gmlw(&["bound", "--formula", "[](x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("at position"), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(gmlw(&["eval", "--model", "builtin:lemma1"]).0, EXIT_USAGE);
    assert_eq!(gmlw(&["paper", "lemma9"]).0, EXIT_USAGE);
    assert_eq!(gmlw(&["eval", "--model", "builtin:nope", "--world", "u", "--formula", "x"]).0, EXIT_USAGE);
    assert_eq!(gmlw(&["eval", "--model", "/nonexistent/m.gk", "--world", "u", "--formula", "x"]).0, EXIT_USAGE);
    assert_eq!(gmlw(&["search", "--formula", "x", "--class", "fuzzy"]).0, EXIT_USAGE);
    assert_eq!(gmlw(&["dnf", "--formula", "[]x"]).0, EXIT_USAGE);
    assert_eq!(gmlw(&["--help"]).0, EXIT_OK);
}

#[test]
fn paper_sections_pass() {
    for section in ["lemma1", "lemma2", "remark", "table1"] {
        let (code, out, _) = gmlw(&["paper", section]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.lines().last().unwrap().starts_with("0 of "), "{out}");
    }
    let (code, out, _) = gmlw(&["--porcelain", "paper", "lemma1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("lemma1.box_x = 1/2 unattained\nlemma1.box_x.status = pass\n"));
    assert!(out.ends_with("failed = 0\n"));
}

#[test]
fn paper_table_prints_every_row() {
    let (_, out, _) = gmlw(&["paper", "table1"]);
    assert!(out.contains("   (z -> y) -> y    1/3    1/2 - 1/(i+5)          same as y\n"), "{out}");
    let rows = out.lines().filter(|l| l.starts_with("   ") && !l.contains("note")).count();
    assert_eq!(rows, 21);
}

#[test]
fn paper_all_without_search_reports_skips() {
    let (code, out, _) = gmlw(&["paper", "all", "--no-search"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("SKIP Cr over valued models: skipped"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn paper_axioms_sweep() {
    let (code, out, _) = gmlw(&["paper", "axioms", "--jobs", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("PASS Cr over valued models: countermodel"));
    assert_eq!(out.matches("exhausted").count(), 19);
}

#[test]
fn search_verdicts_and_dot() {
    let dot = scratch("cr.dot");
    let args = [
        "search",
        "--formula",
        "[](x | y) -> ([]x | <>y)",
        "--class",
        "valued",
        "--chain",
        "3",
        "--dot",
        dot.to_str().unwrap(),
    ];
    let (code, out, _) = gmlw(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "VERDICT countermodel\nmodel {\n  worlds: w0, w1\n  edge w0 w1 = 1/2\n  val w1 { y = 1/2 }\n}\nvalue = 1/2 at w0\n"
    );
    let graph = std::fs::read_to_string(&dot).unwrap();
    assert!(graph.contains("\"w0\" -> \"w1\" [label=\"1/2\"];"));

    let (_, out, _) = gmlw(&["search", "--formula", "[](x -> y) -> ([]x -> []y)", "--jobs", "3"]);
    assert!(out.starts_with("VERDICT exhausted\nbounds = depth 1, branching 2, chain "), "{out}");
}

#[test]
fn search_respects_premises() {
    let (_, out, _) = gmlw(&["--porcelain", "search", "--formula", "[]y", "--premises", "[]x; []y -> x"]);
    assert!(out.starts_with("verdict = countermodel\n"), "{out}");
    let (_, out, _) = gmlw(&["--porcelain", "search", "--formula", "[]x", "--premises", "[]x"]);
    assert!(out.starts_with("verdict = exhausted\n"), "{out}");
}

#[test]
fn output_is_byte_stable() {
    let args = ["search", "--formula", "<>(x -> y) -> ([]x -> <>y)", "--class", "valued", "--chain", "4"];
    let first = gmlw(&args);
    let again = gmlw(&args);
    let parallel = gmlw(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(first, again);
    assert_eq!(first, parallel);
}

#[test]
fn dnf_and_terms() {
    assert_eq!(gmlw(&["dnf", "--formula", "x & (x -> y)"]).1, "x & y\n");
    let (_, out, _) = gmlw(&["terms", "--vars", "x,y,z"]);
    assert_eq!(out.lines().count(), 21);
    let (_, out, _) = gmlw(&["terms", "--vars", "x,y", "--model", "builtin:lemma2"]);
    assert!(out.starts_with("term | u | v1 | v\n"), "{out}");
    assert!(out.contains("\nx -> y | 1 | 1 | 1/2 - 1/(i+5)\n"), "{out}");
}

#[test]
fn consequence_and_witness() {
    let (_, out, _) = gmlw(&["consequence", "--model", "builtin:remark", "--premises", "<>x -> <>y", "--formula", "<>(x -> y)"]);
    assert_eq!(out, "holds = false\nfailing_world = v\n");
    let (_, out, _) = gmlw(&["consequence", "--model", "builtin:remark", "--premises", "x", "--formula", "x | y"]);
    assert_eq!(out, "holds = true\n");
    let (_, out, _) = gmlw(&["--porcelain", "witness", "--model", "builtin:lemma1", "--formula", "[]x"]);
    assert_eq!(
        out,
        "witnessed = false\ndiamond_witnessed = true\ndiamond_one_witnessed = true\nbox_zero_witnessed = true\nunwitnessed.0 = u: []x\n"
    );
}

#[test]
fn mismatches_exit_with_one() {
    use gmlw_cli::paper::{run_section, PaperModels, SuiteConfig};
    use gmlw_core::algebra::{EventualExpr, Rational};
    let mut models = PaperModels::builtin();
    let expr = EventualExpr::hyper(Rational::new(1, 2), Rational::from_integer(-1), 4).unwrap();
    models.lemma2.families[0].set("y", expr);
    let config = SuiteConfig { search: false, jobs: 1 };
    let sections: Vec<_> = ["lemma2", "table1"]
        .iter()
        .map(|n| run_section(n, &models, &config).unwrap())
        .collect();
    let (report, code) = paper_report(&sections);
    assert_eq!(code, EXIT_MISMATCH);
    let text = report.render(false);
    assert!(text.contains("FAIL differences from the stored table: got "), "{text}");
    assert!(text.contains("diff: y on v: got 1/2 - 1/(i+4), want 1/2 - 1/(i+5)"), "{text}");
}
