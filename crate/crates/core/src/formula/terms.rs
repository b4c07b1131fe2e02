use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::Formula;

/// Right-hand slot of an arrow or Peirce term: a variable or `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Consequent {
    Var(String),
    Bottom,
}

impl Consequent {
    fn to_formula(&self) -> Formula {
        match self {
            Consequent::Var(v) => Formula::var(v.clone()),
            Consequent::Bottom => Formula::Bottom,
        }
    }
}

/// A basic Gödel term: `a`, `a → b` or `(a → b) → b`, with `a` a variable and
/// `b` a different variable or `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicTerm {
    Atom(String),
    Arrow(String, Consequent),
    Peirce(String, Consequent),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermsError {
    #[error("basic terms need at least one variable")]
    NoVariables,
}

impl BasicTerm {
    pub fn to_formula(&self) -> Formula {
        match self {
            BasicTerm::Atom(a) => Formula::var(a.clone()),
            BasicTerm::Arrow(a, b) => Formula::implies(Formula::var(a.clone()), b.to_formula()),
            BasicTerm::Peirce(a, b) => Formula::implies(
                Formula::implies(Formula::var(a.clone()), b.to_formula()),
                b.to_formula(),
            ),
        }
    }
}

impl fmt::Display for BasicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// The full inventory of basic terms over `vars`, in the order: atoms, arrows,
/// Peirce terms; within each kind by antecedent, then consequent with `⊥` last.
/// Over `n` variables there are `n·(2n + 1)` of them.
pub fn enumerate_basic_terms<I, S>(vars: I) -> Result<Vec<BasicTerm>, TermsError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let vars: BTreeSet<String> = vars.into_iter().map(Into::into).collect();
    if vars.is_empty() {
        return Err(TermsError::NoVariables);
    }
    let consequents = |a: &String| -> Vec<Consequent> {
        vars.iter()
            .filter(|b| *b != a)
            .map(|b| Consequent::Var(b.clone()))
            .chain(std::iter::once(Consequent::Bottom))
            .collect()
    };
    let mut out: Vec<BasicTerm> = vars.iter().cloned().map(BasicTerm::Atom).collect();
    for a in &vars {
        out.extend(consequents(a).into_iter().map(|b| BasicTerm::Arrow(a.clone(), b)));
    }
    for a in &vars {
        out.extend(consequents(a).into_iter().map(|b| BasicTerm::Peirce(a.clone(), b)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_inventory() {
        let terms = enumerate_basic_terms(["x"]).unwrap();
        let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["x", "~x", "~~x"]);
    }

    #[test]
    fn inventory_sizes() {
        for vars in [vec!["x"], vec!["x", "y"], vec!["x", "y", "z"], vec!["a", "b", "c", "d"]] {
            let n = vars.len();
            assert_eq!(enumerate_basic_terms(vars).unwrap().len(), n * (2 * n + 1));
        }
        assert_eq!(enumerate_basic_terms(["x", "y"]).unwrap().len(), 10);
        assert_eq!(enumerate_basic_terms(["z", "y", "x"]).unwrap().len(), 21);
    }

    #[test]
    fn antecedent_never_equals_consequent() {
        for t in enumerate_basic_terms(["x", "y", "z"]).unwrap() {
            if let BasicTerm::Arrow(a, Consequent::Var(b)) | BasicTerm::Peirce(a, Consequent::Var(b)) = &t {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn empty_variable_set_is_rejected() {
        assert_eq!(
            enumerate_basic_terms(Vec::<String>::new()),
            Err(TermsError::NoVariables)
        );
    }
}
