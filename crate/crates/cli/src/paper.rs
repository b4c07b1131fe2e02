//! Stored expectations for the worked examples: the two fan countermodels,
//! the two-world valued model, the basic-term table and the bounded
//! validity sweep. Every expectation is an exact value.

use std::fmt;

use gmlw_core::algebra::{EventualExpr, Piecewise, Rational, TruthValue};
use gmlw_core::checker::{evaluate_fan, evaluate_family, witnessing_report, Witness};
use gmlw_core::formula::{enumerate_basic_terms, Formula};
use gmlw_core::kripke::{builtin_paper_model, FanModel};
use gmlw_core::search::{find_countermodel, scheme, ModelClass, SearchBounds, SearchOptions, Verdict, SCHEME_NAMES};

use crate::report::Report;

pub const SECTIONS: [&str; 5] = ["lemma1", "lemma2", "remark", "table1", "axioms"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub label: String,
    pub got: String,
    pub want: String,
    pub status: Status,
}

#[derive(Clone, Debug, Default)]
pub struct Section {
    pub name: String,
    /// Free-form lines printed before the checks.
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Section {
    fn new(name: &str) -> Self {
        Section {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn expect(&mut self, id: &str, label: impl Into<String>, got: impl ToString, want: impl ToString) {
        let (got, want) = (got.to_string(), want.to_string());
        let status = if got == want { Status::Pass } else { Status::Fail };
        self.checks.push(Check {
            id: id.to_string(),
            label: label.into(),
            got,
            want,
            status,
        });
    }

    fn skip(&mut self, id: &str, label: impl Into<String>, want: impl ToString) {
        self.checks.push(Check {
            id: id.to_string(),
            label: label.into(),
            got: "skipped".to_string(),
            want: want.to_string(),
            status: Status::Skipped,
        });
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn write(&self, r: &mut Report) {
        r.line(format!("== {}", self.name));
        for n in &self.notes {
            r.line(format!("   {n}"));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            if c.status == Status::Fail {
                r.line(format!("{tag} {}: got {}, want {}", c.label, c.got, c.want));
            } else {
                r.line(format!("{tag} {}: {}", c.label, c.got));
            }
            let key = format!("{}.{}", self.name, c.id);
            r.pair(key.clone(), &c.got);
            r.pair(format!("{key}.status"), c.status);
        }
    }
}

/// The models the suite runs on; tests substitute perturbed copies.
#[derive(Clone, Debug)]
pub struct PaperModels {
    pub lemma1: FanModel,
    pub lemma2: FanModel,
    pub remark: FanModel,
}

impl PaperModels {
    pub fn builtin() -> Self {
        let get = |id| builtin_paper_model(id).expect("builtin model");
        PaperModels {
            lemma1: get("lemma1"),
            lemma2: get("lemma2"),
            remark: get("remark"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    /// Run the bounded validity sweep; when false it is reported as skipped.
    pub search: bool,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { search: true, jobs: 1 }
    }
}

fn f(s: &str) -> Formula {
    s.parse().expect("stored formula")
}

fn value(m: &FanModel, world: &str, g: &Formula) -> TruthValue {
    evaluate_fan(m, world, g).expect("stored world").value
}

/// Value with its attainment, e.g. `1/2 unattained`.
fn modal(m: &FanModel, world: &str, s: &str) -> String {
    let g = f(s);
    let r = evaluate_fan(m, world, &g).expect("stored world");
    let o = &r.modal[&g];
    let kind = if o.witness == Witness::Limit { "unattained" } else { "attained" };
    format!("{} {kind}", o.value)
}

fn lemma1(m: &FanModel) -> Section {
    let mut s = Section::new("lemma1");
    let w_box = scheme("W_box").expect("catalog");
    s.expect("box_x", "e(u, []x)", modal(m, "u", "[]x"), "1/2 unattained");
    s.expect("box_y", "e(u, []y)", value(m, "u", &f("[]y")), "1/2");
    s.expect(
        "premise",
        "e(u, [](((x -> y) -> y) & (y -> x)))",
        value(m, "u", &f("[](((x -> y) -> y) & (y -> x))")),
        "1",
    );
    s.expect("w_box", "Lemma 3.1 formula (W_box) at u", value(m, "u", &w_box), "1/2");
    s.expect("uw_box", "UW_box at u", value(m, "u", &scheme("UW_box").expect("catalog")), "1");
    let report = witnessing_report(m, &w_box);
    s.expect("witnessed", "witnessed for W_box", report.witnessed, false);
    s.expect("box_zero_witnessed", "<[],0>-witnessed for W_box", report.box_zero_witnessed, true);
    s
}

fn lemma2(m: &FanModel) -> Section {
    let mut s = Section::new("lemma2");
    let w_dia = scheme("W_dia").expect("catalog");
    s.expect("dia_x", "e(u, <>x)", modal(m, "u", "<>x"), "1/2 attained");
    s.expect("dia_y", "e(u, <>y)", modal(m, "u", "<>y"), "1/2 unattained");
    s.expect("dia_z", "e(u, <>z)", value(m, "u", &f("<>z")), "1/3");
    s.expect(
        "premise",
        "e(u, (<>x -> <>y) & ((<>y -> <>z) -> <>z))",
        value(m, "u", &f("(<>x -> <>y) & ((<>y -> <>z) -> <>z)")),
        "1",
    );
    s.expect(
        "conclusion",
        "e(u, <>z | <>((x -> y) & ((y -> z) -> z)))",
        value(m, "u", &f("<>z | <>((x -> y) & ((y -> z) -> z))")),
        "1/2",
    );
    s.expect("w_dia", "Lemma 3.2 formula (W_dia) at u", value(m, "u", &w_dia), "1/2");
    s.expect("uw_dia", "UW_dia at u", value(m, "u", &scheme("UW_dia").expect("catalog")), "1");
    let report = witnessing_report(m, &w_dia);
    s.expect("diamond_witnessed", "<>-witnessed for W_dia", report.diamond_witnessed, false);
    s.expect("diamond_one_witnessed", "<<>,1>-witnessed for W_dia", report.diamond_one_witnessed, true);
    s
}

fn remark(m: &FanModel) -> Section {
    let mut s = Section::new("remark");
    let cases = [
        ("uw_dia", "UW_dia", "<>x -> <>y", "~<>y | <>(x -> y)"),
        (
            "w_dia",
            "W_dia",
            "(<>x -> <>y) & ((<>y -> <>z) -> <>z)",
            "<>z | <>((x -> y) & ((y -> z) -> z))",
        ),
    ];
    for (id, name, premise, conclusion) in cases {
        s.expect(&format!("{id}.premise"), format!("{name} premise at v"), value(m, "v", &f(premise)), "1");
        s.expect(
            &format!("{id}.conclusion"),
            format!("{name} conclusion at v"),
            value(m, "v", &f(conclusion)),
            "1/2",
        );
        let whole = scheme(name).expect("catalog");
        s.expect(&format!("{id}.value"), format!("{name} at v"), value(m, "v", &whole), "1/2");
    }
    s
}

/// Term, value at `v1`, family sequence from `i = 2`, and the term it
/// coincides with on the model, if any.
pub const TABLE1: [(&str, &str, &str, Option<&str>); 21] = [
    ("y", "1/3", "1/2 - 1/(i+5)", None),
    ("~~y", "1", "1", Some("1")),
    ("x", "1/3", "1/2", None),
    ("~~x", "1", "1", Some("1")),
    ("z", "1/3", "1/3", None),
    ("y -> z", "1", "1/3", None),
    ("x -> z", "1", "1/3", Some("y -> z")),
    ("x -> y", "1", "1/2 - 1/(i+5)", None),
    ("(x -> y) -> y", "1/3", "1", None),
    ("(x -> z) -> z", "1/3", "1", Some("(x -> y) -> y")),
    ("(z -> y) -> y", "1/3", "1/2 - 1/(i+5)", Some("y")),
    ("~y", "0", "0", Some("0")),
    ("y -> x", "1", "1", Some("1")),
    ("~x", "0", "0", Some("0")),
    ("~~z", "1", "1", Some("1")),
    ("~z", "0", "0", Some("0")),
    ("z -> y", "1", "1", Some("1")),
    ("z -> x", "1", "1", Some("1")),
    ("(y -> x) -> x", "1/3", "1/2", Some("x")),
    ("(z -> x) -> x", "1/3", "1/2", Some("x")),
    ("(y -> z) -> z", "1/3", "1", Some("(x -> y) -> y")),
];

fn stored_sequence(s: &str) -> EventualExpr {
    if let Some((c, rest)) = s.split_once(" - 1/(i+") {
        let offset = rest.trim_end_matches(')').parse().expect("stored offset");
        EventualExpr::hyper(c.parse().expect("stored limit"), Rational::from_integer(-1), offset).expect("stored sequence")
    } else {
        EventualExpr::Const(s.parse().expect("stored constant"))
    }
}

fn table1(m: &FanModel) -> Section {
    let mut s = Section::new("table1");
    let Some(family) = m.families.first() else {
        s.expect("family", "fan family present", "none", "v");
        return s;
    };
    let profile = |g: &Formula| -> (TruthValue, Piecewise) {
        (
            value(m, "v1", g),
            evaluate_family(m, &family.name, g).expect("stored family"),
        )
    };
    let inventory: Vec<Formula> = enumerate_basic_terms(["x", "y", "z"])
        .expect("nonempty")
        .iter()
        .map(|t| t.to_formula())
        .collect();
    let mut stored: Vec<Formula> = TABLE1.iter().map(|r| f(r.0)).collect();
    let mut listed = inventory.clone();
    stored.sort();
    listed.sort();
    s.expect("rows", "rows are the 21 basic terms over {x,y,z}", stored == listed, true);
    s.notes.push(format!("{:<16} {:<6} {:<22} note", "term", "v1", family.name));
    let mut diffs = Vec::new();
    for (term, v1, seq, equiv) in TABLE1 {
        let g = f(term);
        let (got_v1, got_seq) = profile(&g);
        let note = equiv.map_or(String::new(), |e| format!("same as {e}"));
        s.notes.push(format!("{term:<16} {:<6} {:<22} {note}", got_v1.to_string(), got_seq.to_string()).trim_end().to_string());
        let want_seq = Piecewise::from_expr(stored_sequence(seq), family.start);
        if got_v1.to_string() != v1 {
            diffs.push(format!("{term} at v1: got {got_v1}, want {v1}"));
        }
        if got_seq != want_seq {
            diffs.push(format!("{term} on {}: got {got_seq}, want {seq}", family.name));
        }
        if let Some(e) = equiv {
            if profile(&g) != profile(&f(e)) {
                diffs.push(format!("{term} differs from {e}"));
            }
        }
    }
    for d in &diffs {
        s.notes.push(format!("diff: {d}"));
    }
    s.expect("diffs", "differences from the stored table", diffs.len(), 0);
    s
}

fn axioms(config: &SuiteConfig) -> Section {
    let mut s = Section::new("axioms");
    let opts = SearchOptions {
        jobs: config.jobs,
        prune: true,
    };
    let bounds = |g: &Formula, class| {
        SearchBounds::for_formula(g)
            .with_depth(1)
            .with_branching(3)
            .with_chain(4)
            .with_class(class)
    };
    s.notes.push("bounds: depth 1, branching 3, chain 4".to_string());
    let run = |s: &mut Section, name: &str, class: ModelClass, expect_refuted: bool| {
        let id = format!("{class}.{name}");
        let label = format!("{name} over {class} models");
        let want = if expect_refuted { "countermodel" } else { "exhausted" };
        if !config.search {
            s.skip(&id, label, want);
            return;
        }
        let g = scheme(name).expect("catalog");
        let verdict = find_countermodel(&g, &[], &bounds(&g, class), &opts).expect("bounded search");
        let got = match &verdict {
            Verdict::Countermodel { model, value, .. } => {
                s.notes.push(format!("{name} ({class}): countermodel with {} worlds, value {value}", model.len()));
                "countermodel"
            }
            Verdict::Exhausted { .. } => "exhausted",
        };
        s.expect(&id, label, got, want);
    };
    for name in SCHEME_NAMES {
        run(&mut s, name, ModelClass::Crisp, false);
    }
    for name in ["K_box", "Z_box", "K_dia", "Z_dia", "F_dia", "FS1", "FS2"] {
        run(&mut s, name, ModelClass::Valued, false);
    }
    run(&mut s, "Cr", ModelClass::Valued, true);
    s
}

/// Runs one named section, or `None` for an unknown name.
pub fn run_section(name: &str, models: &PaperModels, config: &SuiteConfig) -> Option<Section> {
    Some(match name {
        "lemma1" => lemma1(&models.lemma1),
        "lemma2" => lemma2(&models.lemma2),
        "remark" => remark(&models.remark),
        "table1" => table1(&models.lemma2),
        "axioms" => axioms(config),
        _ => return None,
    })
}

pub fn paper_suite(models: &PaperModels, config: &SuiteConfig) -> Vec<Section> {
    SECTIONS
        .iter()
        .map(|n| run_section(n, models, config).expect("listed section"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_models_pass() {
        let models = PaperModels::builtin();
        let config = SuiteConfig { search: false, jobs: 1 };
        for s in paper_suite(&models, &config) {
            assert_eq!(s.failures(), 0, "{s:?}");
        }
    }

    #[test]
    fn disabled_search_is_skipped() {
        let s = run_section("axioms", &PaperModels::builtin(), &SuiteConfig { search: false, jobs: 1 }).unwrap();
        assert!(s.checks.iter().all(|c| c.status == Status::Skipped));
        assert_eq!(s.failures(), 0);
    }

    #[test]
    fn perturbed_offset_breaks_the_table() {
        let mut models = PaperModels::builtin();
        let y = EventualExpr::hyper(Rational::new(1, 2), Rational::from_integer(-1), 4).unwrap();
        models.lemma2.families[0].set("y", y);
        let s = run_section("table1", &models, &SuiteConfig::default()).unwrap();
        assert_eq!(s.failures(), 1);
        assert!(s.notes.iter().any(|n| n.starts_with("diff: y on v")));
    }

    #[test]
    fn stored_sequences_parse() {
        assert_eq!(stored_sequence("1/2 - 1/(i+5)").to_string(), "1/2 - 1/(i+5)");
        assert_eq!(stored_sequence("1/3"), EventualExpr::Const(TruthValue::new(1, 3).unwrap()));
    }
}
