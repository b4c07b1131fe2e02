//! Disjunctive normal forms over basic Gödel terms.
//!
//! A propositional Gödel formula in `n` variables is determined by its values
//! on the chain with `n + 2` elements: every ordering of the variables
//! relative to each other and to `0` and `1` occurs there, and truth values
//! only depend on that ordering. The normal form is synthesised from this
//! table. For each point `p` with `f(p) > 0` the conjunction of all basic
//! terms whose value at `p` is at least `f(p)` equals `f` at `p` and lies
//! below `f` everywhere; the disjunction of these conjunctions is `f`. Each
//! conjunction is then shrunk greedily (Peirce terms first, atoms last) while
//! it stays below `f`, and disjuncts dominated by another are dropped.
//! Every step is checked on the full table, and so is the result.

use std::collections::BTreeMap;

use thiserror::Error;

use super::terms::{enumerate_basic_terms, BasicTerm};
use super::Formula;

/// Largest variable count accepted by [`to_dnf`]; the table has `(n+2)^n` rows.
pub const MAX_DNF_VARIABLES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DnfError {
    #[error("normal forms are only defined for propositional formulas, got `{0}`")]
    Modal(Formula),
    #[error("{0} variables exceed the supported maximum of {MAX_DNF_VARIABLES}")]
    TooManyVariables(usize),
    #[error("synthesised normal form failed its equivalence check")]
    Uncertified,
}

/// A disjunction of conjunctions of basic terms. No disjuncts is `⊥`; an
/// empty conjunction is `⊤`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dnf {
    disjuncts: Vec<Vec<BasicTerm>>,
}

impl Dnf {
    pub fn disjuncts(&self) -> &[Vec<BasicTerm>] {
        &self.disjuncts
    }

    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(
            self.disjuncts
                .iter()
                .map(|c| Formula::conjunction(c.iter().map(BasicTerm::to_formula))),
        )
    }
}

/// Chain-index evaluation of a propositional formula; `top` is the index of `1`.
fn eval_index(f: &Formula, index: &BTreeMap<&str, usize>, point: &[u8], top: u8) -> u8 {
    match f {
        Formula::Bottom => 0,
        Formula::Var(v) => point[index[v.as_str()]],
        Formula::And(l, r) => eval_index(l, index, point, top).min(eval_index(r, index, point, top)),
        Formula::Or(l, r) => eval_index(l, index, point, top).max(eval_index(r, index, point, top)),
        Formula::Impl(l, r) => {
            let (a, b) = (eval_index(l, index, point, top), eval_index(r, index, point, top));
            if a <= b {
                top
            } else {
                b
            }
        }
        Formula::Box(_) | Formula::Diamond(_) => unreachable!("checked propositional"),
    }
}

struct Table {
    top: u8,
    target: Vec<u8>,
    /// `terms[t][p]`: value of term `t` at point `p`.
    terms: Vec<Vec<u8>>,
}

impl Table {
    fn meet_at(&self, conj: &[usize], p: usize) -> u8 {
        conj.iter().map(|&t| self.terms[t][p]).min().unwrap_or(self.top)
    }

    fn below_target(&self, conj: &[usize]) -> bool {
        (0..self.target.len()).all(|p| self.meet_at(conj, p) <= self.target[p])
    }

    fn dominated_by(&self, a: &[usize], b: &[usize]) -> bool {
        (0..self.target.len()).all(|p| self.meet_at(a, p) <= self.meet_at(b, p))
    }
}

/// Normal form of a propositional formula with at most [`MAX_DNF_VARIABLES`]
/// variables.
pub fn to_dnf(f: &Formula) -> Result<Dnf, DnfError> {
    if !f.is_propositional() {
        return Err(DnfError::Modal(f.clone()));
    }
    let vars: Vec<String> = f.variables().into_iter().collect();
    let n = vars.len();
    if n > MAX_DNF_VARIABLES {
        return Err(DnfError::TooManyVariables(n));
    }
    let top = (n + 1) as u8;
    let index: BTreeMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let points: Vec<Vec<u8>> = product(n, top + 1);
    if n == 0 {
        let value = eval_index(f, &index, &[], top);
        let disjuncts = if value == top { vec![vec![]] } else { vec![] };
        return Ok(Dnf { disjuncts });
    }

    let inventory = enumerate_basic_terms(vars.iter().cloned()).expect("nonempty");
    let table = Table {
        top,
        target: points.iter().map(|p| eval_index(f, &index, p, top)).collect(),
        terms: inventory
            .iter()
            .map(|t| {
                let tf = t.to_formula();
                points.iter().map(|p| eval_index(&tf, &index, p, top)).collect()
            })
            .collect(),
    };

    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for p in 0..points.len() {
        let want = table.target[p];
        if want == 0 {
            continue;
        }
        let conj: Vec<usize> = (0..inventory.len())
            .filter(|&t| table.terms[t][p] >= want)
            .collect();
        if table.meet_at(&conj, p) != want || !table.below_target(&conj) {
            return Err(DnfError::Uncertified);
        }
        if !candidates.contains(&conj) {
            candidates.push(conj);
        }
    }

    let mut shrunk: Vec<Vec<usize>> = Vec::new();
    for mut conj in candidates {
        // inventory order is atoms, arrows, Peirce terms; drop from the back
        for t in conj.clone().into_iter().rev() {
            let trial: Vec<usize> = conj.iter().copied().filter(|&u| u != t).collect();
            if table.below_target(&trial) {
                conj = trial;
            }
        }
        if !shrunk.contains(&conj) {
            shrunk.push(conj);
        }
    }
    shrunk.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut kept: Vec<Vec<usize>> = Vec::new();
    for (i, conj) in shrunk.iter().enumerate() {
        let redundant = shrunk.iter().enumerate().any(|(j, other)| {
            j != i
                && table.dominated_by(conj, other)
                && (j < i || !table.dominated_by(other, conj))
        });
        if !redundant {
            kept.push(conj.clone());
        }
    }

    let covers = (0..points.len()).all(|p| {
        kept.iter().map(|c| table.meet_at(c, p)).max().unwrap_or(0) == table.target[p]
    });
    if !covers {
        return Err(DnfError::Uncertified);
    }
    Ok(Dnf {
        disjuncts: kept
            .into_iter()
            .map(|c| c.into_iter().map(|t| inventory[t].clone()).collect())
            .collect(),
    })
}

/// All length-`n` vectors over `0..base`, in lexicographic order.
fn product(n: usize, base: u8) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..base).map(move |k| {
                    let mut next = prefix.clone();
                    next.push(k);
                    next
                })
            })
            .collect();
    }
    out
}
