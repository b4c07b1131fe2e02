//! Bounded countermodel search over finite tree-shaped models.
//!
//! Local consequence over Gödel-Kripke models is already decided by trees
//! whose depth is the modal depth of the formulas involved. The search lists
//! such trees level by level: every subtree below the root is materialised
//! once together with the values of all subformulas at its root, and the
//! root's successor lists are walked lazily. Truth values come from a finite
//! chain. Only their relative order matters, so a countermodel over any chain
//! is a genuine countermodel over `[0, 1]`.
//!
//! Pruning is sound:
//!
//! * siblings are listed as multisets, since permuting them yields an
//!   isomorphic model;
//! * a world at tree depth `k` only varies the variables that occur under
//!   exactly `k` modalities, the only ones read there;
//! * subtrees with identical subformula values are interchangeable and only
//!   the first is kept.
//!
//! Every countermodel is re-evaluated by [`crate::checker::evaluate`] before
//! it is returned.

mod bound;
mod catalog;
mod compile;
mod enumerate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::algebra::{AlgebraError, TruthValue};
use crate::checker;
use crate::formula::Formula;
use crate::kripke::FiniteModel;

pub use bound::size_bound;
pub use catalog::{scheme, scheme_catalog, SCHEME_NAMES};
pub use enumerate::enumerate_models;

use compile::Compiled;
use enumerate::{Sequences, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Chain(AlgebraError),
    #[error("variable `{0}` is outside the search budget")]
    VariableOutsideBudget(String),
    #[error("too many subtree types at height {height}; lower the bounds")]
    TooLarge { height: usize },
    #[error("unknown model class `{0}` (expected crisp or valued)")]
    UnknownClass(String),
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelClass {
    /// Edge weights `1` only.
    Crisp,
    /// Edge weights from the nonzero chain elements.
    Valued,
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelClass::Crisp => "crisp",
            ModelClass::Valued => "valued",
        })
    }
}

impl FromStr for ModelClass {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "crisp" => Ok(ModelClass::Crisp),
            "valued" => Ok(ModelClass::Valued),
            other => Err(SearchError::UnknownClass(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Tree depth below the root.
    pub depth: usize,
    /// Maximum successors per world.
    pub branching: usize,
    /// Size of the truth-value chain.
    pub chain: usize,
    pub class: ModelClass,
    pub variables: BTreeSet<String>,
}

impl SearchBounds {
    /// Defaults for refuting `f` from `premises`: depth the largest modal
    /// depth, branching 2, chain `|subformulas| + 2`, crisp models.
    pub fn for_problem(f: &Formula, premises: &[Formula]) -> Self {
        let all = std::iter::once(f).chain(premises);
        let mut subformulas = BTreeSet::new();
        let mut variables = BTreeSet::new();
        let mut depth = 0;
        for g in all {
            subformulas.extend(g.subformulas());
            variables.extend(g.variables());
            depth = depth.max(g.modal_depth());
        }
        SearchBounds {
            depth,
            branching: 2,
            chain: subformulas.len() + 2,
            class: ModelClass::Crisp,
            variables,
        }
    }

    pub fn for_formula(f: &Formula) -> Self {
        Self::for_problem(f, &[])
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_branching(mut self, branching: usize) -> Self {
        self.branching = branching;
        self
    }

    pub fn with_chain(mut self, chain: usize) -> Self {
        self.chain = chain;
        self
    }

    pub fn with_class(mut self, class: ModelClass) -> Self {
        self.class = class;
        self
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        write!(
            f,
            "depth {}, branching {}, chain {}, class {}, variables {{{}}}",
            self.depth,
            self.branching,
            self.chain,
            self.class,
            vars.join(", ")
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; the verdict does not depend on it.
    pub jobs: usize,
    /// Use the sound reductions described in the module docs.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { jobs: 1, prune: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Countermodel {
        model: FiniteModel,
        world: String,
        value: TruthValue,
    },
    Exhausted {
        bounds: SearchBounds,
        models_checked: u64,
    },
}

impl Verdict {
    pub fn is_countermodel(&self) -> bool {
        matches!(self, Verdict::Countermodel { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Countermodel { model, world, value } => {
                writeln!(f, "VERDICT countermodel")?;
                write!(f, "{model}")?;
                writeln!(f, "value = {value} at {world}")
            }
            Verdict::Exhausted {
                bounds,
                models_checked,
            } => {
                writeln!(f, "VERDICT exhausted")?;
                writeln!(f, "bounds = {bounds}")?;
                writeln!(f, "checked = {models_checked} models")
            }
        }
    }
}

/// Variables occurring under exactly `k` modalities, for `k = 0..=depth`.
fn variables_by_nesting(f: &Formula, k: usize, out: &mut Vec<BTreeSet<String>>) {
    if out.len() <= k {
        out.resize(k + 1, BTreeSet::new());
    }
    match f {
        Formula::Var(v) => {
            out[k].insert(v.clone());
        }
        Formula::Box(a) | Formula::Diamond(a) => variables_by_nesting(a, k + 1, out),
        other => {
            for c in other.children() {
                variables_by_nesting(c, k, out);
            }
        }
    }
}

/// A root configuration block: one root valuation, one successor count and,
/// for nonempty lists, the first successor slot.
#[derive(Clone, Copy)]
struct Task {
    valuation: usize,
    len: usize,
    first: usize,
}

struct Problem<'a> {
    shape: Shape,
    compiled: Compiled,
    target: usize,
    premises: Vec<usize>,
    vars: &'a [String],
}

impl Problem<'_> {
    /// Scans one block; returns the first refuting successor list and the
    /// number of configurations examined.
    fn run(&self, task: Task) -> (Option<(Vec<usize>, u8)>, u64) {
        let d = self.shape.depth;
        let assign = self.shape.assignment(0, task.valuation);
        let prefix: &[usize] = if task.len == 0 { &[] } else { std::slice::from_ref(&task.first) };
        let mut seqs = Sequences::with_prefix(self.shape.slot_count(d), task.len, prefix, self.shape.nondecreasing);
        let mut buf = Vec::with_capacity(self.compiled.len());
        let mut checked = 0;
        let top = self.shape.top;
        while let Some(seq) = seqs.advance() {
            checked += 1;
            let children = if d == 0 {
                None
            } else {
                Some(self.shape.children(d, seq))
            };
            match children {
                Some(ch) => self.compiled.eval_into(&assign, ch, top, &mut buf),
                None => self.compiled.eval_into(&assign, std::iter::empty(), top, &mut buf),
            }
            if buf[self.target] < top && self.premises.iter().all(|&p| buf[p] == top) {
                return (Some((seq.to_vec(), buf[self.target])), checked);
            }
        }
        (None, checked)
    }
}

/// Looks for a tree model within `bounds` whose root gives every premise the
/// value `1` and `f` a smaller value. The first such model in enumeration
/// order is returned, whatever the number of jobs.
pub fn find_countermodel(
    f: &Formula,
    premises: &[Formula],
    bounds: &SearchBounds,
    opts: &SearchOptions,
) -> Result<Verdict, SearchError> {
    let mut used = f.variables();
    for p in premises {
        used.extend(p.variables());
    }
    if let Some(v) = used.iter().find(|v| !bounds.variables.contains(*v)) {
        return Err(SearchError::VariableOutsideBudget(v.clone()));
    }
    let vars: Vec<String> = bounds.variables.iter().cloned().collect();
    let vars_at: Vec<Vec<usize>> = if opts.prune {
        let mut nested = Vec::new();
        variables_by_nesting(f, 0, &mut nested);
        for p in premises {
            variables_by_nesting(p, 0, &mut nested);
        }
        nested.resize(bounds.depth + 1, BTreeSet::new());
        nested
            .iter()
            .take(bounds.depth + 1)
            .map(|set| (0..vars.len()).filter(|&i| set.contains(&vars[i])).collect())
            .collect()
    } else {
        vec![(0..vars.len()).collect(); bounds.depth + 1]
    };
    let formulas: Vec<&Formula> = std::iter::once(f).chain(premises).collect();
    let compiled = Compiled::new(&formulas, &vars);
    let shape = Shape::build(bounds, vars.len(), vars_at, opts.prune, Some(&compiled), opts.prune)?;
    let problem = Problem {
        target: compiled.node(f),
        premises: premises.iter().map(|p| compiled.node(p)).collect(),
        shape,
        compiled,
        vars: &vars,
    };

    let d = bounds.depth;
    let mut tasks = Vec::new();
    for valuation in 0..problem.shape.valuation_count(0) {
        for len in problem.shape.lengths(d) {
            if len == 0 {
                tasks.push(Task { valuation, len, first: 0 });
            } else {
                for first in 0..problem.shape.slot_count(d) {
                    tasks.push(Task { valuation, len, first });
                }
            }
        }
    }

    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let checked = AtomicU64::new(0);
    let found: Mutex<BTreeMap<usize, (Vec<usize>, u8)>> = Mutex::new(BTreeMap::new());
    let worker = || loop {
        let t = next.fetch_add(1, Ordering::Relaxed);
        if t >= tasks.len() || t > best.load(Ordering::Relaxed) {
            break;
        }
        let (hit, n) = problem.run(tasks[t]);
        checked.fetch_add(n, Ordering::Relaxed);
        if let Some(hit) = hit {
            best.fetch_min(t, Ordering::Relaxed);
            found.lock().expect("no poisoned workers").insert(t, hit);
        }
    };
    let jobs = opts.jobs.max(1);
    if jobs == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(worker);
            }
        });
    }

    let found = found.into_inner().expect("no poisoned workers");
    let Some((&t, (seq, value))) = found.iter().next() else {
        return Ok(Verdict::Exhausted {
            bounds: bounds.clone(),
            models_checked: checked.into_inner(),
        });
    };
    let assign = problem.shape.assignment(0, tasks[t].valuation);
    let model = problem.shape.materialize(&assign, seq, problem.vars);
    let value = problem.shape.chain.element(*value as usize);
    certify(&model, f, premises, value);
    Ok(Verdict::Countermodel {
        model,
        world: "w0".to_string(),
        value,
    })
}

fn certify(model: &FiniteModel, f: &Formula, premises: &[Formula], value: TruthValue) {
    let eval = |g: &Formula| checker::evaluate(model, "w0", g).expect("root exists").value;
    assert_eq!(eval(f), value, "countermodel does not re-evaluate to its value");
    for p in premises {
        assert!(eval(p).is_one(), "countermodel premise {p} is not 1");
    }
}
