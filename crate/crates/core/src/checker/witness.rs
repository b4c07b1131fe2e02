use crate::algebra::TruthValue;
use crate::formula::Formula;
use crate::kripke::FanModel;

use super::{modal_outcome, Evaluator, ModalOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub world: String,
    pub formula: Formula,
    pub outcome: ModalOutcome,
}

/// Attainment of every modal subformula of a formula at every base world.
///
/// Fan members have no successors, so their extrema are trivially attained
/// and they contribute no entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessingReport {
    pub entries: Vec<WitnessEntry>,
    /// Every extremum is attained.
    pub witnessed: bool,
    /// Every `◇` supremum is attained.
    pub diamond_witnessed: bool,
    /// Every `◇` supremum equal to `1` is attained.
    pub diamond_one_witnessed: bool,
    /// Every `□` infimum equal to `0` is attained at a world `w` with
    /// `R(v,w) > 0` and value `0`.
    pub box_zero_witnessed: bool,
}

impl WitnessingReport {
    pub fn entry(&self, world: &str, formula: &Formula) -> Option<&WitnessEntry> {
        self.entries
            .iter()
            .find(|e| e.world == world && e.formula == *formula)
    }

    pub fn unwitnessed(&self) -> impl Iterator<Item = &WitnessEntry> {
        self.entries.iter().filter(|e| !e.outcome.attained())
    }
}

pub fn witnessing_report(m: &FanModel, f: &Formula) -> WitnessingReport {
    let modal = f.modal_subformulas();
    let mut entries = Vec::new();
    for v in 0..m.base.len() {
        for g in &modal {
            entries.push(WitnessEntry {
                world: m.base.world_name(v).to_string(),
                formula: g.clone(),
                outcome: modal_outcome(m, v, g),
            });
        }
    }
    let is_diamond = |e: &&WitnessEntry| matches!(e.formula, Formula::Diamond(_));
    let is_box = |e: &&WitnessEntry| matches!(e.formula, Formula::Box(_));
    let box_zero_witnessed = entries
        .iter()
        .filter(is_box)
        .filter(|e| e.outcome.value.is_zero())
        .all(|e| box_zero_witness(m, e));
    WitnessingReport {
        witnessed: entries.iter().all(|e| e.outcome.attained()),
        diamond_witnessed: entries.iter().filter(is_diamond).all(|e| e.outcome.attained()),
        diamond_one_witnessed: entries
            .iter()
            .filter(is_diamond)
            .filter(|e| e.outcome.value.is_one())
            .all(|e| e.outcome.attained()),
        box_zero_witnessed,
        entries,
    }
}

fn box_zero_witness(m: &FanModel, e: &WitnessEntry) -> bool {
    let Formula::Box(arg) = &e.formula else {
        return false;
    };
    let v = m.base.world_index(&e.world).expect("entry world");
    let ev = Evaluator {
        base: &m.base,
        families: &m.families,
    };
    let base_hit = m
        .base
        .successors(v)
        .any(|(w, _)| ev.value(w, arg) == TruthValue::ZERO);
    let family_hit = m.families_at(&e.world).any(|fam| {
        let ext = super::family_value(fam, arg).extremum(crate::algebra::Direction::Inf);
        ext.attained && ext.value.is_zero()
    });
    base_hit || family_hit
}

/// Outcome of checking `Γ ⊩ φ` on one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consequence {
    pub holds: bool,
    /// The first base world where every premise is `1` but `f` is not.
    pub failing_world: Option<String>,
}

pub fn local_consequence_on_model(m: &FanModel, premises: &[Formula], f: &Formula) -> Consequence {
    let ev = Evaluator {
        base: &m.base,
        families: &m.families,
    };
    let failing = (0..m.base.len()).find(|&v| {
        premises.iter().all(|p| ev.value(v, p).is_one()) && !ev.value(v, f).is_one()
    });
    Consequence {
        holds: failing.is_none(),
        failing_world: failing.map(|v| m.base.world_name(v).to_string()),
    }
}
