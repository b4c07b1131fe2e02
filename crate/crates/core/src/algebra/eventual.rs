//! Closed-form valuation sequences `i ↦ c + d/(i + a)` and their pointwise
//! Gödel combinations.
//!
//! A fan family assigns each variable one of these sequences over the member
//! indices `i ≥ i₀`. Combining two sequences with `min`, `max` or `→` agrees
//! with one of the inputs (or the constant `1`) from some index on, so every
//! propositional formula evaluates on a family to a [`Piecewise`] value: a
//! finite list of exceptional indices followed by a closed-form tail. The
//! index where a comparison stabilises is found by solving the rational
//! inequality exactly.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::truth::fmt_rational;
use super::{AlgebraError, Rational, TruthValue};

type Wide = Ratio<i128>;

/// A member-indexed sequence of truth values.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventualExpr {
    Const(TruthValue),
    /// `i ↦ limit + dev / (i + offset)`; `dev` is never zero.
    Hyper {
        limit: Rational,
        dev: Rational,
        offset: u64,
    },
}

/// Which extremum a modality takes over a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Sup,
    Inf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointwiseOp {
    Min,
    Max,
    Impl,
}

impl PointwiseOp {
    pub fn apply(self, a: TruthValue, b: TruthValue) -> TruthValue {
        match self {
            PointwiseOp::Min => a.meet(b),
            PointwiseOp::Max => a.join(b),
            PointwiseOp::Impl => a.implies(b),
        }
    }
}

/// Supremum or infimum of a family, with the least member index attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub value: TruthValue,
    pub attained: bool,
    pub witness: Option<u64>,
}

impl EventualExpr {
    pub fn constant(v: TruthValue) -> Self {
        EventualExpr::Const(v)
    }

    /// `limit + dev/(i + offset)`. A zero deviation collapses to a constant.
    pub fn hyper(limit: Rational, dev: Rational, offset: u64) -> Result<Self, AlgebraError> {
        let limit_tv = TruthValue::from_rational(limit)?;
        if dev.is_zero() {
            Ok(EventualExpr::Const(limit_tv))
        } else {
            Ok(EventualExpr::Hyper { limit, dev, offset })
        }
    }

    /// `(c, d, a)`, with constants as `(c, 0, 0)`.
    pub fn params(&self) -> (Rational, Rational, u64) {
        match *self {
            EventualExpr::Const(c) => (c.rational(), Rational::zero(), 0),
            EventualExpr::Hyper { limit, dev, offset } => (limit, dev, offset),
        }
    }

    pub fn limit(&self) -> Rational {
        self.params().0
    }

    pub fn value_at(&self, i: u64) -> Rational {
        let (c, d, a) = self.params();
        if d.is_zero() {
            return c;
        }
        c + d / Rational::from_integer((i + a) as i64)
    }

    /// The value at `i` as a truth value; panics if the sequence leaves `[0, 1]`,
    /// which [`EventualExpr::check_range`] rules out for validated families.
    pub fn truth_at(&self, i: u64) -> TruthValue {
        TruthValue::from_rational(self.value_at(i))
            .unwrap_or_else(|_| panic!("sequence {self} leaves [0,1] at i={i}"))
    }

    /// Checks every value from `start` on lies in `[0, 1]`. The sequence is
    /// monotone with a limit in range, so only the first value can fail.
    pub fn check_range(&self, start: u64) -> Result<(), (u64, Rational)> {
        let first = self.value_at(start);
        if first < Rational::zero() || first > Rational::one() {
            return Err((start, first));
        }
        Ok(())
    }

    /// Eventual order of `self` against `other` and the least index `t ≥ start`
    /// from which the order holds at every index.
    pub fn compare(&self, other: &EventualExpr, start: u64) -> (Ordering, u64) {
        let (c1, d1, a1) = widen(self.params());
        let (c2, d2, a2) = widen(other.params());
        // sign(self(i) - other(i)) = sign(P(i)) with P(i) multiplied through by
        // (i + a1)(i + a2) > 0.
        let dc = c1 - c2;
        let quad = dc;
        let lin = dc * (a1 + a2) + d1 - d2;
        let cst = dc * a1 * a2 + d1 * a2 - d2 * a1;
        let coeffs = [cst, lin, quad];
        let lead = coeffs.iter().rev().find(|c| !c.is_zero());
        let Some(lead) = lead else {
            return (Ordering::Equal, start);
        };
        let sign = if lead.is_positive() { Wide::one() } else { -Wide::one() };
        let q = Quadratic {
            c0: coeffs[0] * sign,
            c1: coeffs[1] * sign,
            c2: coeffs[2] * sign,
        };
        let order = if sign.is_positive() { Ordering::Greater } else { Ordering::Less };
        (order, q.positive_from(start))
    }

    /// Extremum over the members `i ≥ start`.
    pub fn extremum(&self, start: u64, dir: Direction) -> Extremum {
        Piecewise::from_expr(*self, start).extremum(dir)
    }
}

fn widen((c, d, a): (Rational, Rational, u64)) -> (Wide, Wide, Wide) {
    let w = |r: Rational| Wide::new(*r.numer() as i128, *r.denom() as i128);
    (w(c), w(d), Wide::from_integer(a as i128))
}

/// `c0 + c1·i + c2·i²` with a positive leading coefficient.
struct Quadratic {
    c0: Wide,
    c1: Wide,
    c2: Wide,
}

impl Quadratic {
    fn at(&self, i: i128) -> Wide {
        let x = Wide::from_integer(i);
        self.c0 + self.c1 * x + self.c2 * x * x
    }

    /// Least `t ≥ start` with `Q(i) > 0` for all `i ≥ t`.
    fn positive_from(&self, start: u64) -> u64 {
        let last_bad = if !self.c2.is_zero() {
            self.last_nonpositive_quadratic()
        } else if !self.c1.is_zero() {
            // Q(i) > 0 iff i > -c0/c1
            let root = -self.c0 / self.c1;
            Some(root.floor().to_integer())
        } else {
            None
        };
        match last_bad {
            Some(k) if k >= start as i128 => (k + 1) as u64,
            _ => start,
        }
    }

    fn last_nonpositive_quadratic(&self) -> Option<i128> {
        let vertex = -self.c1 / (Wide::from_integer(2) * self.c2);
        if self.at_rational(vertex).is_positive() {
            return None;
        }
        // Q is increasing right of the vertex: find the last non-positive integer there.
        let lo = vertex.ceil().to_integer();
        if !self.at(lo).is_positive() {
            let mut step: i128 = 1;
            while !self.at(lo + step).is_positive() {
                step *= 2;
            }
            // Q(lo + step/2) <= 0 < Q(lo + step)
            let (mut good, mut bad) = (lo + step / 2, lo + step);
            while bad - good > 1 {
                let mid = good + (bad - good) / 2;
                if self.at(mid).is_positive() {
                    bad = mid;
                } else {
                    good = mid;
                }
            }
            return Some(good);
        }
        // Otherwise the only candidate left of the vertex is its floor.
        let fl = vertex.floor().to_integer();
        (!self.at(fl).is_positive()).then_some(fl)
    }

    fn at_rational(&self, x: Wide) -> Wide {
        self.c0 + self.c1 * x + self.c2 * x * x
    }
}

impl fmt::Display for EventualExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventualExpr::Const(c) => write!(f, "{c}"),
            EventualExpr::Hyper { limit, dev, offset } => {
                fmt_rational(limit, f)?;
                f.write_str(if dev.is_positive() { " + " } else { " - " })?;
                fmt_rational(&dev.abs(), f)?;
                write!(f, "/(i+{offset})")
            }
        }
    }
}

impl fmt::Debug for EventualExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `i=2: 1, i=3: 1/2, then 1/2 - 1/(i+5)`; just the tail when there are no exceptions.
impl fmt::Display for Piecewise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in &self.exceptions {
            write!(f, "i={i}: {v}, ")?;
        }
        if !self.exceptions.is_empty() {
            f.write_str("then ")?;
        }
        write!(f, "{}", self.tail)
    }
}

/// A family-indexed value: explicit exceptions below `stable_from`, then `tail`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piecewise {
    start: u64,
    stable_from: u64,
    exceptions: Vec<(u64, TruthValue)>,
    tail: EventualExpr,
}

impl Piecewise {
    pub fn constant(v: TruthValue, start: u64) -> Self {
        Self::from_expr(EventualExpr::Const(v), start)
    }

    pub fn from_expr(tail: EventualExpr, start: u64) -> Self {
        Piecewise {
            start,
            stable_from: start,
            exceptions: Vec::new(),
            tail,
        }
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// First index from which the value follows `tail` with no exceptions.
    pub fn stable_from(&self) -> u64 {
        self.stable_from
    }

    pub fn exceptions(&self) -> &[(u64, TruthValue)] {
        &self.exceptions
    }

    pub fn tail(&self) -> &EventualExpr {
        &self.tail
    }

    pub fn value_at(&self, i: u64) -> TruthValue {
        assert!(i >= self.start, "index {i} below family start {}", self.start);
        match self.exceptions.binary_search_by_key(&i, |&(k, _)| k) {
            Ok(pos) => self.exceptions[pos].1,
            Err(_) => self.tail.truth_at(i),
        }
    }

    /// Pointwise `op(lhs, rhs)`. Both sides must share the start index.
    pub fn apply(op: PointwiseOp, lhs: &Piecewise, rhs: &Piecewise) -> Piecewise {
        assert_eq!(lhs.start, rhs.start, "piecewise values over different families");
        let start = lhs.start;
        let (order, settle) = lhs.tail.compare(&rhs.tail, start);
        let tail = match (op, order) {
            (PointwiseOp::Min, Ordering::Greater) => rhs.tail,
            (PointwiseOp::Min, _) => lhs.tail,
            (PointwiseOp::Max, Ordering::Less) => rhs.tail,
            (PointwiseOp::Max, _) => lhs.tail,
            (PointwiseOp::Impl, Ordering::Greater) => rhs.tail,
            (PointwiseOp::Impl, _) => EventualExpr::Const(TruthValue::ONE),
        };
        let horizon = settle.max(lhs.stable_from).max(rhs.stable_from);
        let exceptions: Vec<(u64, TruthValue)> = (start..horizon)
            .filter_map(|i| {
                let v = op.apply(lhs.value_at(i), rhs.value_at(i));
                (v != tail.truth_at(i)).then_some((i, v))
            })
            .collect();
        let stable_from = exceptions.last().map_or(start, |&(i, _)| i + 1);
        Piecewise {
            start,
            stable_from,
            exceptions,
            tail,
        }
    }

    /// Supremum or infimum over all members, with the least attaining index.
    pub fn extremum(&self, dir: Direction) -> Extremum {
        let better = |a: TruthValue, b: TruthValue| match dir {
            Direction::Sup => a > b,
            Direction::Inf => a < b,
        };
        // Smallest member index whose value comes from the tail.
        let mut first_tail = self.start;
        for &(i, _) in &self.exceptions {
            if i == first_tail {
                first_tail += 1;
            } else {
                break;
            }
        }
        let (tail_value, tail_witness) = match self.tail {
            EventualExpr::Const(c) => (c, Some(first_tail)),
            EventualExpr::Hyper { limit, dev, .. } => {
                let decreasing = dev.is_positive();
                let attained_side = matches!(
                    (dir, decreasing),
                    (Direction::Sup, true) | (Direction::Inf, false)
                );
                if attained_side {
                    (self.tail.truth_at(first_tail), Some(first_tail))
                } else {
                    let lim = TruthValue::from_rational(limit).expect("validated limit");
                    (lim, None)
                }
            }
        };
        let mut best = tail_value;
        for &(_, v) in &self.exceptions {
            if better(v, best) {
                best = v;
            }
        }
        let mut witness = self
            .exceptions
            .iter()
            .find(|&&(_, v)| v == best)
            .map(|&(i, _)| i);
        if best == tail_value {
            if let Some(t) = tail_witness {
                witness = Some(witness.map_or(t, |w| w.min(t)));
            }
        }
        Extremum {
            value: best,
            attained: witness.is_some(),
            witness,
        }
    }
}
