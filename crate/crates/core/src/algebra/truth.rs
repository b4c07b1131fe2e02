use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::AlgebraError;

/// Exact rational used for truth values, limits and deviations.
pub type Rational = Ratio<i64>;

/// A truth value of the standard Gödel algebra: an exact rational in `[0, 1]`.
///
/// The ordering is the numeric one, so `min`/`max` from [`Ord`] are the
/// lattice meet and join.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthValue(Rational);

impl TruthValue {
    pub const ZERO: TruthValue = TruthValue(Ratio::new_raw(0, 1));
    pub const ONE: TruthValue = TruthValue(Ratio::new_raw(1, 1));

    /// Builds `num/den`, rejecting zero denominators and values outside `[0, 1]`.
    pub fn new(num: i64, den: i64) -> Result<Self, AlgebraError> {
        if den == 0 {
            return Err(AlgebraError::ZeroDenominator);
        }
        Self::from_rational(Ratio::new(num, den))
    }

    pub fn from_rational(r: Rational) -> Result<Self, AlgebraError> {
        if r < Rational::zero() || r > Rational::one() {
            Err(AlgebraError::OutOfRange(r))
        } else {
            Ok(TruthValue(r))
        }
    }

    pub fn rational(self) -> Rational {
        self.0
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Gödel residuum: `1` if `self <= rhs`, otherwise `rhs`.
    pub fn implies(self, rhs: TruthValue) -> TruthValue {
        if self <= rhs {
            Self::ONE
        } else {
            rhs
        }
    }

    pub fn meet(self, rhs: TruthValue) -> TruthValue {
        self.min(rhs)
    }

    pub fn join(self, rhs: TruthValue) -> TruthValue {
        self.max(rhs)
    }

    /// `self -> 0`: `1` on zero, `0` elsewhere.
    pub fn neg(self) -> TruthValue {
        self.implies(Self::ZERO)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.0, f)
    }
}

impl fmt::Debug for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::Syntax(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(AlgebraError::ZeroDenominator);
    }
    Ok(Ratio::new(num, den))
}

impl FromStr for TruthValue {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_rational(parse_rational(s)?)
    }
}

impl TryFrom<Rational> for TruthValue {
    type Error = AlgebraError;

    fn try_from(r: Rational) -> Result<Self, Self::Error> {
        Self::from_rational(r)
    }
}

impl From<TruthValue> for Rational {
    fn from(v: TruthValue) -> Rational {
        v.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(s: &str) -> TruthValue {
        s.parse().unwrap()
    }

    #[test]
    fn implication_cases() {
        assert_eq!(tv("1/3").implies(tv("1/2")), TruthValue::ONE);
        assert_eq!(tv("1/2").implies(tv("1/3")), tv("1/3"));
        // (a -> b) -> b is 1 iff b < a or b = 1, else b
        let peirce = |a: TruthValue, b: TruthValue| a.implies(b).implies(b);
        assert_eq!(peirce(tv("1/3"), tv("1/2")), tv("1/2"));
        assert_eq!(peirce(tv("1/2"), tv("1/3")), TruthValue::ONE);
    }

    #[test]
    fn lattice_and_negation() {
        assert_eq!(tv("1/2").meet(TruthValue::ONE), tv("1/2"));
        assert_eq!(tv("1/3").join(tv("1/2")), tv("1/2"));
        assert_eq!(TruthValue::ZERO.neg(), TruthValue::ONE);
        assert_eq!(tv("1/5").neg(), TruthValue::ZERO);
    }

    #[test]
    fn parsing_and_range() {
        assert_eq!(tv("2/4"), tv("1/2"));
        assert_eq!(tv("0").to_string(), "0");
        assert_eq!(tv("3/6").to_string(), "1/2");
        assert!("3/2".parse::<TruthValue>().is_err());
        assert!("-1/2".parse::<TruthValue>().is_err());
        assert!("1/0".parse::<TruthValue>().is_err());
        assert!("x".parse::<TruthValue>().is_err());
    }
}
