//! Test-only oracles: a direct evaluator over plain rationals and seeded
//! generators for formulas and models.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gmlw_core::algebra::{Chain, Rational, TruthValue};
use gmlw_core::formula::Formula;
use gmlw_core::kripke::FiniteModel;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn g_impl(a: Rational, b: Rational) -> Rational {
    if a <= b {
        Rational::from_integer(1)
    } else {
        b
    }
}

/// Straightforward recursive semantics, independent of the checker.
pub fn oracle(m: &FiniteModel, w: usize, f: &Formula) -> Rational {
    let one = Rational::from_integer(1);
    let zero = Rational::from_integer(0);
    match f {
        Formula::Bottom => zero,
        Formula::Var(v) => m.value(w, v).rational(),
        Formula::And(l, r) => oracle(m, w, l).min(oracle(m, w, r)),
        Formula::Or(l, r) => oracle(m, w, l).max(oracle(m, w, r)),
        Formula::Impl(l, r) => g_impl(oracle(m, w, l), oracle(m, w, r)),
        Formula::Box(a) => (0..m.len())
            .map(|u| g_impl(m.weight(w, u).rational(), oracle(m, u, a)))
            .fold(one, Rational::min),
        Formula::Diamond(a) => (0..m.len())
            .map(|u| m.weight(w, u).rational().min(oracle(m, u, a)))
            .fold(zero, Rational::max),
    }
}

/// Plain min/max over crisp successors, for crisp models only.
pub fn crisp_oracle(m: &FiniteModel, w: usize, f: &Formula) -> Rational {
    let succ: Vec<usize> = (0..m.len()).filter(|&u| m.weight(w, u).is_one()).collect();
    match f {
        Formula::Box(a) => succ
            .iter()
            .map(|&u| crisp_oracle(m, u, a))
            .min()
            .unwrap_or(Rational::from_integer(1)),
        Formula::Diamond(a) => succ
            .iter()
            .map(|&u| crisp_oracle(m, u, a))
            .max()
            .unwrap_or(Rational::from_integer(0)),
        Formula::Bottom => Rational::from_integer(0),
        Formula::Var(v) => m.value(w, v).rational(),
        Formula::And(l, r) => crisp_oracle(m, w, l).min(crisp_oracle(m, w, r)),
        Formula::Or(l, r) => crisp_oracle(m, w, l).max(crisp_oracle(m, w, r)),
        Formula::Impl(l, r) => g_impl(crisp_oracle(m, w, l), crisp_oracle(m, w, r)),
    }
}

pub fn random_formula(rng: &mut TestRng, vars: &[&str], depth: usize, modal: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.12) {
            Formula::Bottom
        } else {
            Formula::var(*vars.choose(rng).unwrap())
        };
    }
    let kinds = if modal { 5 } else { 3 };
    let sub = |rng: &mut TestRng| random_formula(rng, vars, depth - 1, modal);
    match rng.gen_range(0..kinds) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::implies(sub(rng), sub(rng)),
        3 => Formula::boxed(sub(rng)),
        _ => Formula::diamond(sub(rng)),
    }
}

/// A random model over `chain` with up to `max_worlds` worlds.
pub fn random_model(rng: &mut TestRng, chain: &Chain, max_worlds: usize, vars: &[&str], crisp: bool) -> FiniteModel {
    let n = rng.gen_range(1..=max_worlds);
    let mut m = FiniteModel::new((0..n).map(|i| format!("w{i}"))).unwrap();
    let pick = |rng: &mut TestRng| chain.element(rng.gen_range(0..chain.size()));
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(0.4) {
                let w = if crisp { TruthValue::ONE } else { pick(rng) };
                m.set_edge(a, b, w);
            }
        }
        for v in vars {
            let x = pick(rng);
            m.set_value(a, *v, x);
        }
    }
    m
}

/// A strictly increasing map of the chain into itself fixing `0` and `1`,
/// given as a table over element indices. The source chain has `size`
/// elements and the target chain `target` ≥ `size` elements.
pub fn random_embedding(rng: &mut TestRng, size: usize, target: usize) -> Vec<usize> {
    let mut inner: Vec<usize> = (1..target - 1).collect();
    inner.shuffle(rng);
    let mut chosen: Vec<usize> = inner.into_iter().take(size - 2).collect();
    chosen.sort_unstable();
    let mut table = vec![0];
    table.extend(chosen);
    table.push(target - 1);
    table
}

pub fn all_assignments(vars: &[String], chain: &Chain) -> Vec<Vec<TruthValue>> {
    let mut out: Vec<Vec<TruthValue>> = vec![Vec::new()];
    for _ in vars {
        out = out
            .into_iter()
            .flat_map(|p| {
                chain.elements().into_iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Value of a propositional formula under an assignment to `vars`.
pub fn prop_value(f: &Formula, vars: &[String], point: &[TruthValue]) -> Rational {
    let mut m = FiniteModel::new(["p"]).unwrap();
    for (v, &x) in vars.iter().zip(point) {
        m.set_value(0, v.clone(), x);
    }
    oracle(&m, 0, f)
}

pub fn vars_of(fs: &[&Formula]) -> Vec<String> {
    let mut s = BTreeSet::new();
    for f in fs {
        s.extend(f.variables());
    }
    s.into_iter().collect()
}
