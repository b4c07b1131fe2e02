use std::collections::BTreeMap;

use crate::formula::Formula;

#[derive(Clone, Copy, Debug)]
enum Node {
    Bottom,
    Var(usize),
    And(usize, usize),
    Or(usize, usize),
    Impl(usize, usize),
    Box(usize),
    Diamond(usize),
}

/// Formulas flattened into a shared node list, children before parents,
/// evaluated over chain indices (`0` is the bottom, `top` is `1`).
pub(crate) struct Compiled {
    nodes: Vec<Node>,
    index: BTreeMap<Formula, usize>,
}

impl Compiled {
    pub(crate) fn new(formulas: &[&Formula], vars: &[String]) -> Self {
        let mut c = Compiled {
            nodes: Vec::new(),
            index: BTreeMap::new(),
        };
        for f in formulas {
            c.intern(f, vars);
        }
        c
    }

    fn intern(&mut self, f: &Formula, vars: &[String]) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        let node = match f {
            Formula::Bottom => Node::Bottom,
            Formula::Var(v) => Node::Var(vars.iter().position(|x| x == v).expect("variable in budget")),
            Formula::And(l, r) => Node::And(self.intern(l, vars), self.intern(r, vars)),
            Formula::Or(l, r) => Node::Or(self.intern(l, vars), self.intern(r, vars)),
            Formula::Impl(l, r) => Node::Impl(self.intern(l, vars), self.intern(r, vars)),
            Formula::Box(a) => Node::Box(self.intern(a, vars)),
            Formula::Diamond(a) => Node::Diamond(self.intern(a, vars)),
        };
        self.nodes.push(node);
        self.index.insert(f.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub(crate) fn node(&self, f: &Formula) -> usize {
        self.index[f]
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Values of every node at a world with variable assignment `assign` and
    /// successors `children` given as `(weight, child node values)`.
    pub(crate) fn eval_into<'c>(
        &self,
        assign: &[u8],
        children: impl Iterator<Item = (u8, &'c [u8])> + Clone,
        top: u8,
        out: &mut Vec<u8>,
    ) {
        out.clear();
        for node in &self.nodes {
            let v = match *node {
                Node::Bottom => 0,
                Node::Var(k) => assign[k],
                Node::And(a, b) => out[a].min(out[b]),
                Node::Or(a, b) => out[a].max(out[b]),
                Node::Impl(a, b) => {
                    if out[a] <= out[b] {
                        top
                    } else {
                        out[b]
                    }
                }
                Node::Box(a) => children
                    .clone()
                    .map(|(w, vals)| if w <= vals[a] { top } else { vals[a] })
                    .min()
                    .unwrap_or(top),
                Node::Diamond(a) => children
                    .clone()
                    .map(|(w, vals)| w.min(vals[a]))
                    .max()
                    .unwrap_or(0),
            };
            out.push(v);
        }
    }
}
