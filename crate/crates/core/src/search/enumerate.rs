use std::collections::HashSet;
use std::sync::Arc;

use super::compile::Compiled;
use super::{ModelClass, SearchBounds, SearchError};
use crate::algebra::Chain;
use crate::kripke::FiniteModel;

/// Upper limit on materialised subtree types per level.
const MAX_TYPES_PER_LEVEL: usize = 20_000_000;

/// Fixed-length index sequences over `0..n` in lexicographic order, either
/// all of them or only the non-decreasing ones. The first `fixed` entries are
/// held at their initial values.
pub(crate) struct Sequences {
    n: usize,
    cur: Vec<usize>,
    fixed: usize,
    nondecreasing: bool,
    state: SeqState,
}

#[derive(PartialEq, Eq)]
enum SeqState {
    Fresh,
    Running,
    Done,
}

impl Sequences {
    pub(crate) fn new(n: usize, len: usize, nondecreasing: bool) -> Self {
        Self::with_prefix(n, len, &[], nondecreasing)
    }

    pub(crate) fn with_prefix(n: usize, len: usize, prefix: &[usize], nondecreasing: bool) -> Self {
        let mut cur = prefix.to_vec();
        let fill = if nondecreasing { prefix.last().copied().unwrap_or(0) } else { 0 };
        cur.resize(len, fill);
        let empty = len > prefix.len() && fill >= n;
        Sequences {
            n,
            cur,
            fixed: prefix.len(),
            nondecreasing,
            state: if empty { SeqState::Done } else { SeqState::Fresh },
        }
    }

    pub(crate) fn advance(&mut self) -> Option<&[usize]> {
        match self.state {
            SeqState::Done => return None,
            SeqState::Fresh => {
                self.state = SeqState::Running;
                return Some(&self.cur);
            }
            SeqState::Running => {}
        }
        let mut i = self.cur.len();
        while i > self.fixed {
            i -= 1;
            if self.cur[i] + 1 < self.n {
                self.cur[i] += 1;
                let fill = if self.nondecreasing { self.cur[i] } else { 0 };
                for x in &mut self.cur[i + 1..] {
                    *x = fill;
                }
                return Some(&self.cur);
            }
        }
        self.state = SeqState::Done;
        None
    }
}

impl Iterator for Sequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}

/// A subtree of fixed height: the assignment at its root, its children as
/// slot indices into the level below, and the node values at its root.
pub(crate) struct NodeType {
    assign: Vec<u8>,
    children: Vec<usize>,
    pub(crate) values: Vec<u8>,
}

/// A slot is a child subtree type reached with a given weight.
#[derive(Clone, Copy)]
pub(crate) struct Slot {
    pub(crate) weight: u8,
    pub(crate) child: usize,
}

/// Tree-shaped models up to the bounds, with every level below the root
/// materialised.
pub(crate) struct Shape {
    pub(crate) chain: Chain,
    pub(crate) top: u8,
    pub(crate) nvars: usize,
    pub(crate) depth: usize,
    pub(crate) branching: usize,
    pub(crate) nondecreasing: bool,
    weights: Vec<u8>,
    /// Variable positions enumerated at each tree depth.
    vars_at: Vec<Vec<usize>>,
    /// `levels[h]` holds the subtree types of height `h`, for `h < depth`.
    levels: Vec<Vec<NodeType>>,
    /// `slots[h]` lists the (weight, type) pairs available below height `h`.
    slots: Vec<Vec<Slot>>,
}

impl Shape {
    pub(crate) fn build(
        bounds: &SearchBounds,
        nvars: usize,
        vars_at: Vec<Vec<usize>>,
        nondecreasing: bool,
        compiled: Option<&Compiled>,
        dedupe: bool,
    ) -> Result<Shape, SearchError> {
        let chain = Chain::new(bounds.chain).map_err(SearchError::Chain)?;
        let top = (bounds.chain - 1) as u8;
        let weights = match bounds.class {
            ModelClass::Crisp => vec![top],
            ModelClass::Valued => (1..=top).collect(),
        };
        let mut shape = Shape {
            chain,
            top,
            nvars,
            depth: bounds.depth,
            branching: bounds.branching,
            nondecreasing,
            weights,
            vars_at,
            levels: Vec::new(),
            slots: vec![Vec::new()],
        };
        for h in 0..bounds.depth {
            let level = shape.build_level(h, compiled, dedupe)?;
            shape.levels.push(level);
            let slots = (0..shape.levels[h].len())
                .flat_map(|t| shape.weights.iter().map(move |&weight| Slot { weight, child: t }))
                .collect();
            shape.slots.push(slots);
        }
        Ok(shape)
    }

    fn build_level(&self, h: usize, compiled: Option<&Compiled>, dedupe: bool) -> Result<Vec<NodeType>, SearchError> {
        let k = self.depth - h;
        let mut types = Vec::new();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut buf = Vec::new();
        for v in 0..self.valuation_count(k) {
            let assign = self.assignment(k, v);
            for len in self.lengths(h) {
                let mut seqs = Sequences::new(self.slots[h].len(), len, self.nondecreasing);
                while let Some(seq) = seqs.advance() {
                    let values = match compiled {
                        Some(c) => {
                            c.eval_into(&assign, self.children(h, seq), self.top, &mut buf);
                            if dedupe && !seen.insert(buf.clone()) {
                                continue;
                            }
                            buf.clone()
                        }
                        None => Vec::new(),
                    };
                    types.push(NodeType {
                        assign: assign.clone(),
                        children: seq.to_vec(),
                        values,
                    });
                    if types.len() > MAX_TYPES_PER_LEVEL {
                        return Err(SearchError::TooLarge { height: h });
                    }
                }
            }
        }
        Ok(types)
    }

    /// Child counts allowed at a world of height `h`.
    pub(crate) fn lengths(&self, h: usize) -> std::ops::RangeInclusive<usize> {
        0..=if h == 0 { 0 } else { self.branching }
    }

    pub(crate) fn slot_count(&self, h: usize) -> usize {
        self.slots[h].len()
    }

    pub(crate) fn children<'a>(
        &'a self,
        h: usize,
        seq: &'a [usize],
    ) -> impl Iterator<Item = (u8, &'a [u8])> + Clone + 'a {
        seq.iter().map(move |&s| {
            let slot = self.slots[h][s];
            (slot.weight, self.levels[h - 1][slot.child].values.as_slice())
        })
    }

    /// Valuations at tree depth `k`.
    pub(crate) fn valuation_count(&self, k: usize) -> usize {
        (self.top as usize + 1).pow(self.vars_at[k].len() as u32)
    }

    /// The `v`-th assignment at tree depth `k`, lexicographic over the
    /// enumerated variables; other variables are `0`.
    pub(crate) fn assignment(&self, k: usize, mut v: usize) -> Vec<u8> {
        let base = self.top as usize + 1;
        let mut assign = vec![0u8; self.nvars];
        for &pos in self.vars_at[k].iter().rev() {
            assign[pos] = (v % base) as u8;
            v /= base;
        }
        assign
    }

    /// Builds the model for a root with assignment `assign` and child slots `seq`.
    pub(crate) fn materialize(&self, assign: &[u8], seq: &[usize], vars: &[String]) -> FiniteModel {
        let mut m = FiniteModel::new(["w0"]).expect("one world");
        self.set_values(&mut m, 0, assign, vars);
        self.attach(&mut m, 0, self.depth, seq, vars);
        m
    }

    fn set_values(&self, m: &mut FiniteModel, w: usize, assign: &[u8], vars: &[String]) {
        for (k, &x) in assign.iter().enumerate() {
            m.set_value(w, vars[k].clone(), self.chain.element(x as usize));
        }
    }

    fn attach(&self, m: &mut FiniteModel, parent: usize, h: usize, seq: &[usize], vars: &[String]) {
        for &s in seq {
            let slot = self.slots[h][s];
            let ty = &self.levels[h - 1][slot.child];
            let w = m.add_world(format!("w{}", m.len())).expect("fresh name");
            m.set_edge(parent, w, self.chain.element(slot.weight as usize));
            self.set_values(m, w, &ty.assign, vars);
            self.attach(m, w, h - 1, &ty.children, vars);
        }
    }
}

/// All tree-shaped models within `bounds`, over every variable of the budget
/// at every world. With `prune`, sibling subtrees are listed in
/// non-decreasing enumeration order, so permuting siblings gives no
/// duplicates. Worlds are named `w0` (the root), `w1`, … in preorder.
pub fn enumerate_models(
    bounds: &SearchBounds,
    prune: bool,
) -> Result<impl Iterator<Item = FiniteModel>, SearchError> {
    let vars: Arc<Vec<String>> = Arc::new(bounds.variables.iter().cloned().collect());
    let all: Vec<usize> = (0..vars.len()).collect();
    let shape = Arc::new(Shape::build(
        bounds,
        vars.len(),
        vec![all; bounds.depth + 1],
        prune,
        None,
        false,
    )?);
    let depth = bounds.depth;
    let s1 = Arc::clone(&shape);
    Ok((0..shape.valuation_count(0)).flat_map(move |v| {
        let s2 = Arc::clone(&s1);
        let vars = Arc::clone(&vars);
        s1.lengths(depth).flat_map(move |len| {
            let s3 = Arc::clone(&s2);
            let vars = Arc::clone(&vars);
            let assign = s2.assignment(0, v);
            Sequences::new(s2.slot_count(depth), len, s2.nondecreasing)
                .map(move |seq| s3.materialize(&assign, &seq, &vars))
        })
    }))
}
