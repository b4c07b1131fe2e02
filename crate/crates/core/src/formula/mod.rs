//! Bi-modal Gödel formulas: syntax tree, parser, syntactic closures,
//! substitution and propositional normal forms.
//!
//! Negation and `⊤` are not constructors. `~φ` is stored as `φ → ⊥` and `1`
//! as `⊥ → ⊥`, so two spellings of the same formula give identical trees and
//! evaluators only handle the six primitive connectives.

mod dnf;
mod parse;
mod terms;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

pub use dnf::{to_dnf, Dnf, DnfError, MAX_DNF_VARIABLES};
pub use parse::{parse_formula, ParseError, ParseErrorKind};
pub use terms::{enumerate_basic_terms, BasicTerm, Consequent, TermsError};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Var(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn top() -> Formula {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Impl(Box::new(l), Box::new(r))
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Formula {
        Formula::Diamond(Box::new(f))
    }

    /// Conjunction of `items`, `⊤` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Disjunction of `items`, `⊥` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Impl(l, r) if **l == Formula::Bottom && **r == Formula::Bottom)
    }

    pub fn is_modal(&self) -> bool {
        matches!(self, Formula::Box(_) | Formula::Diamond(_))
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Bottom | Formula::Var(_) => vec![],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => vec![l, r],
            Formula::Box(a) | Formula::Diamond(a) => vec![a],
        }
    }

    pub fn is_propositional(&self) -> bool {
        !self.is_modal() && self.children().into_iter().all(Formula::is_propositional)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        if let Formula::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_variables(out);
        }
    }

    /// All subtrees, including `self`.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            for c in self.children() {
                c.collect_subformulas(out);
            }
        }
    }

    /// Subformulas whose main connective is `□` or `◇`.
    pub fn modal_subformulas(&self) -> BTreeSet<Formula> {
        self.subformulas().into_iter().filter(Formula::is_modal).collect()
    }

    /// Modal subformulas not nested under another modality: the ones whose
    /// value is computed at the world `self` is evaluated at.
    pub fn outermost_modal_subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_outermost_modal(&mut out);
        out
    }

    fn collect_outermost_modal(&self, out: &mut BTreeSet<Formula>) {
        if self.is_modal() {
            out.insert(self.clone());
        } else {
            for c in self.children() {
                c.collect_outermost_modal(out);
            }
        }
    }

    pub fn modal_depth(&self) -> usize {
        let below = self
            .children()
            .into_iter()
            .map(Formula::modal_depth)
            .max()
            .unwrap_or(0);
        below + usize::from(self.is_modal())
    }

    /// Strips one layer of outermost modalities: `{ψ}` for `⋆ψ`, the union over
    /// children for a propositional connective, `∅` for variables and `⊥`.
    pub fn psfm(&self) -> BTreeSet<Formula> {
        match self {
            Formula::Box(a) | Formula::Diamond(a) => BTreeSet::from([(**a).clone()]),
            _ => {
                let mut out = BTreeSet::new();
                for c in self.children() {
                    out.extend(c.psfm());
                }
                out
            }
        }
    }

    /// `[φ⁰, φ¹, …]` with `φ⁰ = psfm(self)` and `φᵏ⁺¹ = psfm(⋀φᵏ)`, ending at the
    /// first empty set.
    pub fn psfm_closure(&self) -> Vec<BTreeSet<Formula>> {
        let mut layers = vec![self.psfm()];
        while let Some(last) = layers.last() {
            if last.is_empty() {
                break;
            }
            // psfm distributes over the conjunction
            let next: BTreeSet<Formula> = last.iter().flat_map(Formula::psfm).collect();
            layers.push(next);
        }
        layers
    }

    /// Simultaneous substitution of variables; unmapped variables stay put.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::And(l, r) => Formula::and(l.substitute(map), r.substitute(map)),
            Formula::Or(l, r) => Formula::or(l.substitute(map), r.substitute(map)),
            Formula::Impl(l, r) => Formula::implies(l.substitute(map), r.substitute(map)),
            Formula::Box(a) => Formula::boxed(a.substitute(map)),
            Formula::Diamond(a) => Formula::diamond(a.substitute(map)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Impl(..) if self.is_top() => 4,
            Formula::Impl(_, r) if **r == Formula::Bottom => 4,
            Formula::Impl(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            f.write_str("(")?;
            self.fmt_at(0, f)?;
            return f.write_str(")");
        }
        match self {
            Formula::Bottom => f.write_str("0"),
            Formula::Var(v) => f.write_str(v),
            _ if self.is_top() => f.write_str("1"),
            Formula::Impl(l, r) if **r == Formula::Bottom => {
                f.write_str("~")?;
                l.fmt_at(4, f)
            }
            Formula::Impl(l, r) => {
                l.fmt_at(2, f)?;
                f.write_str(" -> ")?;
                r.fmt_at(1, f)
            }
            Formula::Or(l, r) => {
                l.fmt_at(2, f)?;
                f.write_str(" | ")?;
                r.fmt_at(3, f)
            }
            Formula::And(l, r) => {
                l.fmt_at(3, f)?;
                f.write_str(" & ")?;
                r.fmt_at(4, f)
            }
            Formula::Box(a) => {
                f.write_str("[]")?;
                a.fmt_at(4, f)
            }
            Formula::Diamond(a) => {
                f.write_str("<>")?;
                a.fmt_at(4, f)
            }
        }
    }
}

/// ASCII rendering in the input grammar with minimal parentheses.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(0, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}
