use super::{FanFamily, FanModel, FiniteModel, ModelError};
use crate::algebra::{EventualExpr, Rational, TruthValue};

/// Identifiers accepted by [`builtin_paper_model`].
pub const BUILTIN_MODELS: [&str; 3] = ["lemma1", "lemma2", "remark"];

fn tv(n: i64, d: i64) -> TruthValue {
    TruthValue::new(n, d).expect("literal in range")
}

fn konst(n: i64, d: i64) -> EventualExpr {
    EventualExpr::Const(tv(n, d))
}

fn hyper(c: (i64, i64), d: i64, a: u64) -> EventualExpr {
    EventualExpr::hyper(Rational::new(c.0, c.1), Rational::from_integer(d), a).expect("literal in range")
}

/// The countermodels used for the unwitnessing formulas:
///
/// * `lemma1`: root `u` with a fan `v` from `i = 2`, `x = 1/2 + 1/i`, `y = 1/2`;
/// * `lemma2`: root `u`, a leaf `v1` with `x = y = z = 1/3`, and a fan `v` from
///   `i = 2` with `x = 1/2`, `y = 1/2 - 1/(i+5)`, `z = 1/3`;
/// * `remark`: worlds `v`, `w`, one edge `v → w` of weight `1/2`, and at `w`
///   `x = 1`, `y = 1/2`, `z = 0`.
pub fn builtin_paper_model(id: &str) -> Result<FanModel, ModelError> {
    match id {
        "lemma1" => {
            let base = FiniteModel::new(["u"])?;
            let fan = FanFamily::new("v", "u", 2)
                .with("x", hyper((1, 2), 1, 0))
                .with("y", konst(1, 2));
            Ok(FanModel::new(base, vec![fan]))
        }
        "lemma2" => {
            let mut base = FiniteModel::new(["u", "v1"])?;
            base.set_edge(0, 1, TruthValue::ONE);
            for var in ["x", "y", "z"] {
                base.set_value(1, var, tv(1, 3));
            }
            let fan = FanFamily::new("v", "u", 2)
                .with("x", konst(1, 2))
                .with("y", hyper((1, 2), -1, 5))
                .with("z", konst(1, 3));
            Ok(FanModel::new(base, vec![fan]))
        }
        "remark" => {
            let mut base = FiniteModel::new(["v", "w"])?;
            base.set_edge(0, 1, tv(1, 2));
            base.set_value(1, "x", TruthValue::ONE);
            base.set_value(1, "y", tv(1, 2));
            Ok(base.into())
        }
        other => Err(ModelError::UnknownBuiltin(other.to_string())),
    }
}

/// Replaces every family by its first `n` members `name{i}`, `i = start ..
/// start + n - 1`, as explicit leaves reached with weight `1`.
///
/// A member name that is already taken gets `_` appended until it is free.
pub fn truncate_fan(m: &FanModel, n: u64) -> FiniteModel {
    let mut out = m.base.clone();
    for fam in &m.families {
        let anchor = out.world_index(&fam.anchor).expect("validated anchor");
        for i in fam.start..fam.start + n {
            let mut name = format!("{}{}", fam.name, i);
            while out.world_index(&name).is_some() {
                name.push('_');
            }
            let w = out.add_world(name).expect("fresh name");
            out.set_edge(anchor, w, TruthValue::ONE);
            for (var, expr) in &fam.valuation {
                out.set_value(w, var.clone(), expr.truth_at(i));
            }
        }
    }
    out
}
