//! Exact evaluation of formulas in finite and fan models.
//!
//! `e(v, □φ)` is the infimum of `R(v,w) → e(w,φ)` and `e(v, ◇φ)` the supremum
//! of `R(v,w) ∧ e(w,φ)` over every world `w`. Over a fan family the argument
//! is reduced to a propositional formula (members are leaves, so `□ψ` is `1`
//! and `◇ψ` is `0` there), evaluated as a [`Piecewise`] sequence and its
//! extremum taken in closed form.

mod witness;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Direction, Piecewise, PointwiseOp, TruthValue};
use crate::formula::Formula;
use crate::kripke::{FanFamily, FanModel, FiniteModel};

pub use witness::{
    local_consequence_on_model, witnessing_report, Consequence, WitnessEntry, WitnessingReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown fan family `{0}`")]
    UnknownFamily(String),
}

/// Where a modal extremum is reached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    World(String),
    Member { family: String, index: u64 },
    /// Only approached in the limit by a fan family.
    Limit,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::World(w) => f.write_str(w),
            Witness::Member { family, index } => write!(f, "{family}[{index}]"),
            Witness::Limit => f.write_str("limit"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModalOutcome {
    pub value: TruthValue,
    pub witness: Witness,
}

impl ModalOutcome {
    pub fn attained(&self) -> bool {
        self.witness != Witness::Limit
    }
}

/// The value of a formula at a world, with the outcome of each outermost
/// modal subformula evaluated at that world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub value: TruthValue,
    pub modal: BTreeMap<Formula, ModalOutcome>,
}

struct Evaluator<'a> {
    base: &'a FiniteModel,
    families: &'a [FanFamily],
}

impl Evaluator<'_> {
    fn value(&self, w: usize, f: &Formula) -> TruthValue {
        match f {
            Formula::Bottom => TruthValue::ZERO,
            Formula::Var(v) => self.base.value(w, v),
            Formula::And(l, r) => self.value(w, l).meet(self.value(w, r)),
            Formula::Or(l, r) => self.value(w, l).join(self.value(w, r)),
            Formula::Impl(l, r) => self.value(w, l).implies(self.value(w, r)),
            Formula::Box(_) | Formula::Diamond(_) => self.modal(w, f).value,
        }
    }

    fn modal(&self, v: usize, f: &Formula) -> ModalOutcome {
        let (arg, dir) = match f {
            Formula::Box(a) => (&**a, Direction::Inf),
            Formula::Diamond(a) => (&**a, Direction::Sup),
            _ => unreachable!("modal() on a non-modal formula"),
        };
        let better = |a: TruthValue, b: TruthValue| match dir {
            Direction::Inf => a < b,
            Direction::Sup => a > b,
        };
        let mut best: Option<(TruthValue, Witness)> = None;
        for w in 0..self.base.len() {
            let r = self.base.weight(v, w);
            let term = match dir {
                Direction::Inf if r.is_zero() => TruthValue::ONE,
                Direction::Sup if r.is_zero() => TruthValue::ZERO,
                Direction::Inf => r.implies(self.value(w, arg)),
                Direction::Sup => r.meet(self.value(w, arg)),
            };
            if best.as_ref().is_none_or(|(b, _)| better(term, *b)) {
                best = Some((term, Witness::World(self.base.world_name(w).to_string())));
            }
        }
        let anchor = self.base.world_name(v);
        for fam in self.families.iter().filter(|fam| fam.anchor == anchor) {
            let ext = family_value(fam, arg).extremum(dir);
            let witness = match ext.witness {
                Some(index) => Witness::Member {
                    family: fam.name.clone(),
                    index,
                },
                None => Witness::Limit,
            };
            match &best {
                Some((b, w)) if *b == ext.value && *w == Witness::Limit && ext.attained => {
                    best = Some((ext.value, witness));
                }
                Some((b, _)) if !better(ext.value, *b) => {}
                _ => best = Some((ext.value, witness)),
            }
        }
        let (value, witness) = best.expect("models have at least one world");
        ModalOutcome { value, witness }
    }

    fn result(&self, v: usize, f: &Formula) -> EvalResult {
        let modal = f
            .outermost_modal_subformulas()
            .into_iter()
            .map(|g| {
                let outcome = self.modal(v, &g);
                (g, outcome)
            })
            .collect();
        EvalResult {
            value: self.value(v, f),
            modal,
        }
    }
}

fn family_value(fam: &FanFamily, f: &Formula) -> Piecewise {
    let konst = |v| Piecewise::constant(v, fam.start);
    let bin = |op, l: &Formula, r: &Formula| {
        Piecewise::apply(op, &family_value(fam, l), &family_value(fam, r))
    };
    match f {
        Formula::Bottom | Formula::Diamond(_) => konst(TruthValue::ZERO),
        Formula::Box(_) => konst(TruthValue::ONE),
        Formula::Var(v) => Piecewise::from_expr(fam.expr(v), fam.start),
        Formula::And(l, r) => bin(PointwiseOp::Min, l, r),
        Formula::Or(l, r) => bin(PointwiseOp::Max, l, r),
        Formula::Impl(l, r) => bin(PointwiseOp::Impl, l, r),
    }
}

/// Evaluates `f` at `world` of a finite model. Witnesses are the first world in
/// model order reaching the extremum.
pub fn evaluate(m: &FiniteModel, world: &str, f: &Formula) -> Result<EvalResult, CheckError> {
    let v = m
        .world_index(world)
        .ok_or_else(|| CheckError::UnknownWorld(world.to_string()))?;
    Ok(Evaluator { base: m, families: &[] }.result(v, f))
}

/// Evaluates `f` at base world `world` of a fan model. Ties prefer base
/// worlds in model order, then families in declaration order at their lowest
/// attaining index.
pub fn evaluate_fan(m: &FanModel, world: &str, f: &Formula) -> Result<EvalResult, CheckError> {
    let v = m
        .base
        .world_index(world)
        .ok_or_else(|| CheckError::UnknownWorld(world.to_string()))?;
    Ok(Evaluator {
        base: &m.base,
        families: &m.families,
    }
    .result(v, f))
}

/// The value of `f` across the members of `family`.
pub fn evaluate_family(m: &FanModel, family: &str, f: &Formula) -> Result<Piecewise, CheckError> {
    let fam = m
        .family(family)
        .ok_or_else(|| CheckError::UnknownFamily(family.to_string()))?;
    Ok(family_value(fam, f))
}

pub(crate) fn modal_outcome(m: &FanModel, v: usize, f: &Formula) -> ModalOutcome {
    Evaluator {
        base: &m.base,
        families: &m.families,
    }
    .modal(v, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::EventualExpr;
    use crate::kripke::{builtin_paper_model, truncate_fan};

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn tv(n: i64, d: i64) -> TruthValue {
        TruthValue::new(n, d).unwrap()
    }

    #[test]
    fn remark_diamond() {
        let m = builtin_paper_model("remark").unwrap().base;
        let r = evaluate(&m, "v", &f("<>x")).unwrap();
        assert_eq!(r.value, tv(1, 2));
        assert_eq!(r.modal[&f("<>x")].witness, Witness::World("w".into()));
    }

    #[test]
    fn empty_successor_sets() {
        let m = FiniteModel::new(["u"]).unwrap();
        assert_eq!(evaluate(&m, "u", &f("[]0")).unwrap().value, TruthValue::ONE);
        assert_eq!(evaluate(&m, "u", &f("<>1")).unwrap().value, TruthValue::ZERO);
        assert_eq!(
            evaluate(&m, "nowhere", &f("x")),
            Err(CheckError::UnknownWorld("nowhere".into()))
        );
    }

    #[test]
    fn lemma1_box_is_an_unattained_infimum() {
        let m = builtin_paper_model("lemma1").unwrap();
        let r = evaluate_fan(&m, "u", &f("[]x")).unwrap();
        assert_eq!(r.value, tv(1, 2));
        assert_eq!(r.modal[&f("[]x")].witness, Witness::Limit);
        let r = evaluate_fan(&m, "u", &f("[]y")).unwrap();
        assert_eq!(r.modal[&f("[]y")].witness, Witness::Member { family: "v".into(), index: 2 });
    }

    #[test]
    fn lemma1_truncation_at_ten() {
        let m = truncate_fan(&builtin_paper_model("lemma1").unwrap(), 10);
        let r = evaluate(&m, "u", &f("[]x")).unwrap();
        assert_eq!(r.value, tv(13, 22));
        assert_eq!(r.modal[&f("[]x")].witness, Witness::World("v11".into()));
    }

    #[test]
    fn lemma2_truncation_at_one() {
        let m = truncate_fan(&builtin_paper_model("lemma2").unwrap(), 1);
        assert_eq!(evaluate(&m, "u", &f("<>y")).unwrap().value, tv(5, 14));
    }

    #[test]
    fn family_members_are_leaves() {
        let m = builtin_paper_model("lemma1").unwrap();
        let pw = evaluate_family(&m, "v", &f("[]0 & <>1 -> x")).unwrap();
        assert_eq!(*pw.tail(), EventualExpr::Const(TruthValue::ONE));
        let pw = evaluate_family(&m, "v", &f("[]0 -> x")).unwrap();
        assert_eq!(pw.tail().to_string(), "1/2 + 1/(i+0)");
        assert!(matches!(evaluate_family(&m, "w", &f("x")), Err(CheckError::UnknownFamily(_))));
    }

    #[test]
    fn base_world_wins_ties_with_family_members() {
        let mut base = FiniteModel::new(["u", "a"]).unwrap();
        base.set_edge(0, 1, TruthValue::ONE);
        base.set_value(1, "x", tv(1, 3));
        let fam = crate::kripke::FanFamily::new("f", "u", 1).with("x", EventualExpr::Const(tv(1, 3)));
        let m = FanModel::new(base, vec![fam]);
        let r = evaluate_fan(&m, "u", &f("<>x")).unwrap();
        assert_eq!(r.modal[&f("<>x")].witness, Witness::World("a".into()));
    }

    #[test]
    fn attained_family_value_replaces_equal_limit() {
        // the first family only approaches 1/2, the second reaches it
        let base = FiniteModel::new(["u"]).unwrap();
        let up = EventualExpr::hyper(crate::algebra::Rational::new(1, 2), (-1).into(), 5).unwrap();
        let fams = vec![
            crate::kripke::FanFamily::new("f", "u", 2).with("x", up),
            crate::kripke::FanFamily::new("g", "u", 3).with("x", EventualExpr::Const(tv(1, 2))),
        ];
        let m = FanModel::new(base, fams);
        let r = evaluate_fan(&m, "u", &f("<>x")).unwrap();
        assert_eq!(r.value, tv(1, 2));
        assert_eq!(r.modal[&f("<>x")].witness, Witness::Member { family: "g".into(), index: 3 });
    }
}
