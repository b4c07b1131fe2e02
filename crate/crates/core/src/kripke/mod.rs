//! Finite Gödel-Kripke models and fan models.
//!
//! A [`FiniteModel`] has a finite ordered world list, a `[0,1]`-valued
//! accessibility relation and a valuation. Absent edges have weight `0` and
//! absent variables value `0`; storing a zero removes the entry, so two models
//! that agree as functions are equal as values.
//!
//! A [`FanModel`] adds [`FanFamily`] leaves: countably many successors
//! `name{i}`, `i ≥ start`, of an anchor world, all reached with weight `1`,
//! whose variables follow closed-form [`EventualExpr`] sequences.

mod builtin;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{EventualExpr, Rational, TruthValue};

pub use builtin::{builtin_paper_model, truncate_fan, BUILTIN_MODELS};
pub use text::{parse_model, unparse_model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("invalid model: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown builtin model `{0}` (expected one of lemma1, lemma2, remark)")]
    UnknownBuiltin(String),
}

/// A broken model invariant, named by the item at fault.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge {from} -> {to} has weight {} outside [0,1]", show(.weight))]
    EdgeOutOfRange {
        from: String,
        to: String,
        weight: Rational,
    },
    #[error("value of {var} at {world} is {} outside [0,1]", show(.value))]
    ValueOutOfRange {
        world: String,
        var: String,
        value: Rational,
    },
    #[error("family {family}: {var} has limit {} outside [0,1]", show(.limit))]
    LimitOutOfRange {
        family: String,
        var: String,
        limit: Rational,
    },
    #[error("family {family}: {var} takes value {} outside [0,1] at i={index}", show(.value))]
    FamilyOutOfRange {
        family: String,
        var: String,
        index: u64,
        value: Rational,
    },
    #[error("family {family} starts at index 0; member indices start at 1")]
    ZeroStart { family: String },
    #[error("family {family} is anchored at unknown world {anchor}")]
    UnknownAnchor { family: String, anchor: String },
    #[error("family name {0} is used twice or clashes with a world")]
    DuplicateFamily(String),
    #[error("invalid variable name `{0}`")]
    BadVariable(String),
}

fn show(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9'))
}

/// A finite Gödel-Kripke model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteModel {
    worlds: Vec<String>,
    edges: BTreeMap<(usize, usize), TruthValue>,
    valuation: Vec<BTreeMap<String, TruthValue>>,
}

impl FiniteModel {
    pub fn new<I, S>(worlds: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut m = FiniteModel {
            worlds: Vec::new(),
            edges: BTreeMap::new(),
            valuation: Vec::new(),
        };
        for w in worlds {
            m.add_world(w)?;
        }
        if m.worlds.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        Ok(m)
    }

    /// Appends a world and returns its index.
    pub fn add_world(&mut self, name: impl Into<String>) -> Result<usize, ModelError> {
        let name = name.into();
        if self.world_index(&name).is_some() {
            return Err(ModelError::DuplicateWorld(name));
        }
        self.worlds.push(name);
        self.valuation.push(BTreeMap::new());
        Ok(self.worlds.len() - 1)
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn world_name(&self, i: usize) -> &str {
        &self.worlds[i]
    }

    pub fn set_edge(&mut self, from: usize, to: usize, weight: TruthValue) {
        if weight.is_zero() {
            self.edges.remove(&(from, to));
        } else {
            self.edges.insert((from, to), weight);
        }
    }

    pub fn weight(&self, from: usize, to: usize) -> TruthValue {
        self.edges.get(&(from, to)).copied().unwrap_or(TruthValue::ZERO)
    }

    /// Nonzero edges keyed by `(from, to)` world indices.
    pub fn edges(&self) -> &BTreeMap<(usize, usize), TruthValue> {
        &self.edges
    }

    /// Worlds reached from `from` with positive weight, in world order.
    pub fn successors(&self, from: usize) -> impl Iterator<Item = (usize, TruthValue)> + '_ {
        self.edges
            .range((from, 0)..(from + 1, 0))
            .map(|(&(_, to), &w)| (to, w))
    }

    pub fn set_value(&mut self, world: usize, var: impl Into<String>, value: TruthValue) {
        let var = var.into();
        if value.is_zero() {
            self.valuation[world].remove(&var);
        } else {
            self.valuation[world].insert(var, value);
        }
    }

    pub fn value(&self, world: usize, var: &str) -> TruthValue {
        self.valuation[world].get(var).copied().unwrap_or(TruthValue::ZERO)
    }

    /// Nonzero variable values at `world`.
    pub fn valuation(&self, world: usize) -> &BTreeMap<String, TruthValue> {
        &self.valuation[world]
    }

    /// Every edge weight is `0` or `1`.
    pub fn is_crisp(&self) -> bool {
        self.edges.values().all(|w| w.is_one())
    }

    /// Applies `g` to every edge weight and variable value.
    pub fn map_values(&self, g: impl Fn(TruthValue) -> TruthValue) -> FiniteModel {
        let mut out = FiniteModel {
            worlds: self.worlds.clone(),
            edges: BTreeMap::new(),
            valuation: vec![BTreeMap::new(); self.worlds.len()],
        };
        for (&(a, b), &w) in &self.edges {
            out.set_edge(a, b, g(w));
        }
        for (i, vals) in self.valuation.iter().enumerate() {
            for (v, &x) in vals {
                out.set_value(i, v.clone(), g(x));
            }
        }
        out
    }
}

/// Countably many leaf successors of `anchor`, indexed from `start`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FanFamily {
    pub name: String,
    pub anchor: String,
    pub start: u64,
    /// Sequences for the valued variables; others are constantly `0`.
    pub valuation: BTreeMap<String, EventualExpr>,
}

impl FanFamily {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, start: u64) -> Self {
        FanFamily {
            name: name.into(),
            anchor: anchor.into(),
            start,
            valuation: BTreeMap::new(),
        }
    }

    pub fn with(mut self, var: impl Into<String>, expr: EventualExpr) -> Self {
        self.set(var, expr);
        self
    }

    pub fn set(&mut self, var: impl Into<String>, expr: EventualExpr) {
        let var = var.into();
        if expr == EventualExpr::Const(TruthValue::ZERO) {
            self.valuation.remove(&var);
        } else {
            self.valuation.insert(var, expr);
        }
    }

    pub fn expr(&self, var: &str) -> EventualExpr {
        self.valuation
            .get(var)
            .copied()
            .unwrap_or(EventualExpr::Const(TruthValue::ZERO))
    }
}

/// A finite base model with fan families attached to some of its worlds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FanModel {
    pub base: FiniteModel,
    pub families: Vec<FanFamily>,
}

impl FanModel {
    pub fn new(base: FiniteModel, families: Vec<FanFamily>) -> Self {
        FanModel { base, families }
    }

    /// Families anchored at base world `world`, in declaration order.
    pub fn families_at(&self, world: &str) -> impl Iterator<Item = &FanFamily> + '_ {
        let world = world.to_string();
        self.families.iter().filter(move |f| f.anchor == world)
    }

    pub fn family(&self, name: &str) -> Option<&FanFamily> {
        self.families.iter().find(|f| f.name == name)
    }

    pub fn has_families(&self) -> bool {
        !self.families.is_empty()
    }
}

impl From<FiniteModel> for FanModel {
    fn from(base: FiniteModel) -> Self {
        FanModel {
            base,
            families: Vec::new(),
        }
    }
}

impl fmt::Display for FanModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&unparse_model(self))
    }
}

impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::unparse_finite(self))
    }
}

/// Every broken invariant of `m`; empty iff the model is well formed.
///
/// Typed models cannot hold out-of-range weights or values, so for them only
/// family-level problems can show up here. The parser reports range problems
/// of the raw text through the same type.
pub fn validate_model(m: &FanModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut names: Vec<&str> = m.base.worlds().iter().map(String::as_str).collect();
    for fam in &m.families {
        if names.contains(&fam.name.as_str()) {
            out.push(Violation::DuplicateFamily(fam.name.clone()));
        }
        names.push(&fam.name);
        if m.base.world_index(&fam.anchor).is_none() {
            out.push(Violation::UnknownAnchor {
                family: fam.name.clone(),
                anchor: fam.anchor.clone(),
            });
        }
        if fam.start == 0 {
            out.push(Violation::ZeroStart {
                family: fam.name.clone(),
            });
            continue;
        }
        for (var, expr) in &fam.valuation {
            if !is_variable_name(var) {
                out.push(Violation::BadVariable(var.clone()));
            }
            if let Err((index, value)) = expr.check_range(fam.start) {
                out.push(Violation::FamilyOutOfRange {
                    family: fam.name.clone(),
                    var: var.clone(),
                    index,
                    value,
                });
            }
        }
    }
    for w in 0..m.base.len() {
        for var in m.base.valuation(w).keys() {
            if !is_variable_name(var) {
                out.push(Violation::BadVariable(var.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(n: i64, d: i64) -> TruthValue {
        TruthValue::new(n, d).unwrap()
    }

    #[test]
    fn zero_entries_are_absent() {
        let mut m = FiniteModel::new(["a", "b"]).unwrap();
        m.set_edge(0, 1, tv(1, 2));
        m.set_value(1, "x", tv(1, 3));
        assert_eq!(m.weight(0, 1), tv(1, 2));
        assert_eq!(m.weight(1, 0), TruthValue::ZERO);
        assert_eq!(m.value(0, "x"), TruthValue::ZERO);
        assert!(!m.is_crisp());
        m.set_edge(0, 1, TruthValue::ZERO);
        m.set_value(1, "x", TruthValue::ZERO);
        assert_eq!(m, FiniteModel::new(["a", "b"]).unwrap());
        assert!(m.is_crisp());
    }

    #[test]
    fn world_names_are_unique_and_nonempty() {
        assert_eq!(FiniteModel::new(["a", "a"]), Err(ModelError::DuplicateWorld("a".into())));
        assert_eq!(FiniteModel::new(Vec::<String>::new()), Err(ModelError::NoWorlds));
    }

    #[test]
    fn successors_in_world_order() {
        let mut m = FiniteModel::new(["a", "b", "c"]).unwrap();
        m.set_edge(0, 2, TruthValue::ONE);
        m.set_edge(0, 1, tv(1, 3));
        m.set_edge(1, 0, TruthValue::ONE);
        let succ: Vec<_> = m.successors(0).collect();
        assert_eq!(succ, vec![(1, tv(1, 3)), (2, TruthValue::ONE)]);
    }

    #[test]
    fn family_range_violation_at_start() {
        let base = FiniteModel::new(["u"]).unwrap();
        let expr = EventualExpr::hyper(Rational::new(1, 2), Rational::new(1, 1), 0).unwrap();
        let fam = FanFamily::new("v", "u", 1).with("x", expr);
        let violations = validate_model(&FanModel::new(base.clone(), vec![fam]));
        assert_eq!(
            violations,
            vec![Violation::FamilyOutOfRange {
                family: "v".into(),
                var: "x".into(),
                index: 1,
                value: Rational::new(3, 2),
            }]
        );
        assert_eq!(
            violations[0].to_string(),
            "family v: x takes value 3/2 outside [0,1] at i=1"
        );
        let fine = FanFamily::new("v", "u", 2).with("x", expr);
        assert!(validate_model(&FanModel::new(base, vec![fine])).is_empty());
    }

    #[test]
    fn family_structure_violations() {
        let base = FiniteModel::new(["u"]).unwrap();
        let fams = vec![
            FanFamily::new("u", "u", 1),
            FanFamily::new("f", "nowhere", 0),
        ];
        let violations = validate_model(&FanModel::new(base, fams));
        assert_eq!(
            violations,
            vec![
                Violation::DuplicateFamily("u".into()),
                Violation::UnknownAnchor {
                    family: "f".into(),
                    anchor: "nowhere".into()
                },
                Violation::ZeroStart { family: "f".into() },
            ]
        );
    }
}
