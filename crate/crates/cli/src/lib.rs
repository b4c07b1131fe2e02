//! Command-line front end for `gmlw-core`. [`run`] takes the arguments and
//! output streams and returns the process exit code, so it can be driven from
//! tests without spawning a process.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gmlw_core::checker::{evaluate_fan, local_consequence_on_model, witnessing_report, Witness};
use gmlw_core::formula::{enumerate_basic_terms, to_dnf, Formula};
use gmlw_core::kripke::{builtin_paper_model, parse_model, FanModel, BUILTIN_MODELS};
use gmlw_core::search::{find_countermodel, size_bound, ModelClass, SearchBounds, SearchOptions, Verdict};

pub mod dot;
pub mod paper;
pub mod report;

use paper::{PaperModels, SuiteConfig};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gmlw", version, about = "Modal Gödel logic over finite and fan-shaped Kripke models")]
struct Cli {
    /// Print one `key = value` pair per line.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArg {
    /// Model file, or `builtin:NAME` for lemma1, lemma2 or remark.
    #[arg(long)]
    model: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value of a formula at a world, with the witnesses of its modal subformulas.
    Eval {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
    },
    /// Which witnessing conditions a model meets for the subformulas of a formula.
    Witness {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        formula: String,
    },
    /// Whether premises at value 1 force the formula to 1 at every world.
    Consequence {
        #[command(flatten)]
        model: ModelArg,
        /// Premises separated by `;`.
        #[arg(long, default_value = "")]
        premises: String,
        #[arg(long)]
        formula: String,
    },
    /// Bounded search for a tree countermodel.
    Search {
        #[arg(long)]
        formula: String,
        /// Premises separated by `;`; they must take value 1 at the root.
        #[arg(long, default_value = "")]
        premises: String,
        #[arg(long, default_value = "crisp")]
        class: ModelClass,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        branching: Option<usize>,
        /// Number of truth values, including 0 and 1.
        #[arg(long)]
        chain: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Disable the symmetry and relevance reductions.
        #[arg(long)]
        no_prune: bool,
        /// Write a found countermodel as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Disjunctive normal form over basic terms.
    Dnf {
        #[arg(long)]
        formula: String,
    },
    /// Upper bound on the size of a countermodel.
    Bound {
        #[arg(long)]
        formula: String,
    },
    /// Basic terms over the given variables, optionally evaluated on a model.
    Terms {
        /// Comma-separated variable names.
        #[arg(long)]
        vars: String,
        #[arg(long)]
        model: Option<String>,
    },
    /// Reproduce the worked examples and compare with stored values.
    Paper {
        /// lemma1, lemma2, remark, table1, axioms or all.
        section: String,
        /// Skip the bounded validity sweep.
        #[arg(long)]
        no_search: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// A failure reported on standard error with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<(Report, i32), UsageError>;

fn formula(s: &str) -> Result<Formula, UsageError> {
    s.parse().map_err(|e| UsageError(format!("formula `{s}`: {e}")))
}

fn formulas(list: &str) -> Result<Vec<Formula>, UsageError> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(formula)
        .collect()
}

fn load_model(spec: &str) -> Result<FanModel, UsageError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin_paper_model(name).map_err(|_| {
            UsageError(format!(
                "unknown builtin model `{name}` (expected one of {})",
                BUILTIN_MODELS.join(", ")
            ))
        });
    }
    let text = std::fs::read_to_string(Path::new(spec)).map_err(|e| UsageError(format!("{spec}: {e}")))?;
    parse_model(&text).map_err(|e| UsageError(format!("{spec}:{e}")))
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Limit => "unattained".to_string(),
        other => format!("attained at {other}"),
    }
}

fn eval(model: &str, world: &str, text: &str) -> Outcome {
    let m = load_model(model)?;
    let g = formula(text)?;
    let res = evaluate_fan(&m, world, &g)?;
    let mut r = Report::new();
    r.line(format!("e({world}, {g}) = {}", res.value));
    r.pair("value", res.value);
    for (i, (sub, o)) in res.modal.iter().enumerate() {
        r.line(format!("  {sub} = {} {}", o.value, witness_text(&o.witness)));
        r.pair(format!("modal.{i}.formula"), sub);
        r.pair(format!("modal.{i}.value"), o.value);
        r.pair(format!("modal.{i}.witness"), &o.witness);
    }
    Ok((r, EXIT_OK))
}

fn witness(model: &str, text: &str) -> Outcome {
    let m = load_model(model)?;
    let g = formula(text)?;
    let rep = witnessing_report(&m, &g);
    let mut r = Report::new();
    r.fact("witnessed", rep.witnessed);
    r.fact("diamond_witnessed", rep.diamond_witnessed);
    r.fact("diamond_one_witnessed", rep.diamond_one_witnessed);
    r.fact("box_zero_witnessed", rep.box_zero_witnessed);
    for (i, e) in rep.unwitnessed().enumerate() {
        if i == 0 {
            r.line("unwitnessed:");
        }
        r.line(format!("  {}: {} = {}", e.world, e.formula, e.outcome.value));
        r.pair(format!("unwitnessed.{i}"), format!("{}: {}", e.world, e.formula));
    }
    Ok((r, EXIT_OK))
}

fn consequence(model: &str, premises: &str, text: &str) -> Outcome {
    let m = load_model(model)?;
    let ps = formulas(premises)?;
    let g = formula(text)?;
    let c = local_consequence_on_model(&m, &ps, &g);
    let mut r = Report::new();
    r.fact("holds", c.holds);
    if let Some(w) = c.failing_world {
        r.fact("failing_world", w);
    }
    Ok((r, EXIT_OK))
}

#[allow(clippy::too_many_arguments)]
fn search(
    text: &str,
    premises: &str,
    class: ModelClass,
    depth: Option<usize>,
    branching: Option<usize>,
    chain: Option<usize>,
    opts: SearchOptions,
    dot_path: Option<&Path>,
) -> Outcome {
    let g = formula(text)?;
    let ps = formulas(premises)?;
    let mut bounds = SearchBounds::for_problem(&g, &ps).with_class(class);
    if let Some(d) = depth {
        bounds = bounds.with_depth(d);
    }
    if let Some(b) = branching {
        bounds = bounds.with_branching(b);
    }
    if let Some(c) = chain {
        bounds = bounds.with_chain(c);
    }
    let verdict = find_countermodel(&g, &ps, &bounds, &opts)?;
    let mut r = Report::new();
    r.text(verdict.to_string());
    match &verdict {
        Verdict::Countermodel { model, world, value } => {
            r.pair("verdict", "countermodel");
            r.pair("world", world);
            r.pair("value", value);
            r.pair("worlds", model.len());
            r.pair("model", model);
            if let Some(p) = dot_path {
                std::fs::write(p, dot::to_dot(model)).map_err(|e| UsageError(format!("{}: {e}", p.display())))?;
            }
        }
        Verdict::Exhausted { bounds, models_checked } => {
            r.pair("verdict", "exhausted");
            r.pair("bounds", bounds);
            r.pair("checked", models_checked);
        }
    }
    Ok((r, EXIT_OK))
}

fn dnf(text: &str) -> Outcome {
    let g = formula(text)?;
    let d = to_dnf(&g)?;
    let mut r = Report::new();
    let out = d.to_formula();
    r.line(out.to_string());
    r.pair("dnf", out);
    r.pair("disjuncts", d.disjuncts().len());
    Ok((r, EXIT_OK))
}

fn bound(text: &str) -> Outcome {
    let g = formula(text)?;
    let b = size_bound(&g);
    let mut r = Report::new();
    r.line(b.to_string());
    r.pair("bound", b);
    Ok((r, EXIT_OK))
}

fn terms(vars: &str, model: Option<&str>) -> Outcome {
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
    let list = enumerate_basic_terms(names)?;
    let m = model.map(load_model).transpose()?;
    let mut r = Report::new();
    let Some(m) = m else {
        for (i, t) in list.iter().enumerate() {
            r.line(t.to_string());
            r.pair(format!("term.{i}"), t);
        }
        return Ok((r, EXIT_OK));
    };
    let mut columns: Vec<String> = m.base.worlds().to_vec();
    columns.extend(m.families.iter().map(|fam| fam.name.clone()));
    r.line(format!("term | {}", columns.join(" | ")));
    for (i, t) in list.iter().enumerate() {
        let g = t.to_formula();
        let mut cells = BTreeMap::new();
        for w in m.base.worlds() {
            cells.insert(w.clone(), evaluate_fan(&m, w, &g)?.value.to_string());
        }
        for fam in &m.families {
            cells.insert(fam.name.clone(), gmlw_core::checker::evaluate_family(&m, &fam.name, &g)?.to_string());
        }
        let row: Vec<&str> = columns.iter().map(|c| cells[c].as_str()).collect();
        r.line(format!("{t} | {}", row.join(" | ")));
        r.pair(format!("term.{i}"), t);
        for c in &columns {
            r.pair(format!("term.{i}.{c}"), &cells[c]);
        }
    }
    Ok((r, EXIT_OK))
}

fn paper_command(section: &str, config: SuiteConfig) -> Outcome {
    let models = PaperModels::builtin();
    let sections = if section == "all" {
        paper::paper_suite(&models, &config)
    } else {
        vec![paper::run_section(section, &models, &config).ok_or_else(|| {
            UsageError(format!(
                "unknown section `{section}` (expected {} or all)",
                paper::SECTIONS.join(", ")
            ))
        })?]
    };
    let (r, code) = paper_report(&sections);
    Ok((r, code))
}

/// Report for finished sections and the exit code: 1 if any check failed.
pub fn paper_report(sections: &[paper::Section]) -> (Report, i32) {
    let mut r = Report::new();
    let mut failed = 0;
    for s in sections {
        s.write(&mut r);
        failed += s.failures();
    }
    let checks: usize = sections.iter().map(|s| s.checks.len()).sum();
    r.line(format!("{failed} of {checks} checks failed"));
    r.pair("failed", failed);
    let code = if failed == 0 { EXIT_OK } else { EXIT_MISMATCH };
    (r, code)
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Eval { model, world, formula } => eval(&model.model, &world, &formula),
        Command::Witness { model, formula } => witness(&model.model, &formula),
        Command::Consequence {
            model,
            premises,
            formula,
        } => consequence(&model.model, &premises, &formula),
        Command::Search {
            formula,
            premises,
            class,
            depth,
            branching,
            chain,
            jobs,
            no_prune,
            dot,
        } => search(
            &formula,
            &premises,
            class,
            depth,
            branching,
            chain,
            SearchOptions {
                jobs: jobs.max(1),
                prune: !no_prune,
            },
            dot.as_deref(),
        ),
        Command::Dnf { formula } => dnf(&formula),
        Command::Bound { formula } => bound(&formula),
        Command::Terms { vars, model } => terms(&vars, model.as_deref()),
        Command::Paper {
            section,
            no_search,
            jobs,
        } => paper_command(
            &section,
            SuiteConfig {
                search: !no_search,
                jobs: jobs.max(1),
            },
        ),
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code: 0 on success, 1 when `paper` finds a mismatch, 2 on usage,
/// input or parse errors.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((report, code)) => {
            let _ = out.write_all(report.render(cli.porcelain).as_bytes());
            code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
