use super::{AlgebraError, TruthValue};

/// The finite Gödel chain `{0, 1/(m-1), ..., 1}` with `m` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    size: usize,
}

impl Chain {
    pub fn new(size: usize) -> Result<Self, AlgebraError> {
        if size < 2 {
            return Err(AlgebraError::ChainTooSmall(size));
        }
        if size > i64::MAX as usize || size > u8::MAX as usize + 1 {
            return Err(AlgebraError::ChainTooLarge(size));
        }
        Ok(Chain { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The `k`-th element, `k / (m - 1)`.
    pub fn element(&self, k: usize) -> TruthValue {
        assert!(k < self.size, "chain index {k} out of range");
        TruthValue::new(k as i64, (self.size - 1) as i64).expect("chain element in range")
    }

    pub fn elements(&self) -> Vec<TruthValue> {
        (0..self.size).map(|k| self.element(k)).collect()
    }

    pub fn index_of(&self, v: TruthValue) -> Option<usize> {
        let scaled = v.rational() * num_rational::Ratio::from_integer((self.size - 1) as i64);
        scaled.is_integer().then(|| *scaled.numer() as usize)
    }

    pub fn contains(&self, v: TruthValue) -> bool {
        self.index_of(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_are_evenly_spaced() {
        let c = Chain::new(4).unwrap();
        let shown: Vec<String> = c.elements().iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["0", "1/3", "2/3", "1"]);
        assert_eq!(c.index_of("2/3".parse().unwrap()), Some(2));
        assert_eq!(c.index_of("1/2".parse().unwrap()), None);
    }

    #[test]
    fn closed_under_operations() {
        for m in 2..=6 {
            let c = Chain::new(m).unwrap();
            for a in c.elements() {
                for b in c.elements() {
                    assert!(c.contains(a.implies(b)));
                    assert!(c.contains(a.meet(b)));
                    assert!(c.contains(a.join(b)));
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(Chain::new(1).is_err());
        assert!(Chain::new(0).is_err());
    }
}
