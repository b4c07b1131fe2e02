use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::formula::Formula;

/// Worlds needed by a countermodel to `f`:
/// `1 + Σ_{i=0..n} Π_{j≤i} |φʲ|` with `n` the modal depth, `φ⁰ = PSFm(f)` and
/// `φᵏ⁺¹ = PSFm(⋀φᵏ)`.
pub fn size_bound(f: &Formula) -> BigUint {
    let closure = f.psfm_closure();
    let size = |j: usize| BigUint::from(closure.get(j).map_or(0, |s| s.len()));
    let mut total = BigUint::one();
    let mut product = BigUint::one();
    for i in 0..=f.modal_depth() {
        product *= size(i);
        if product.is_zero() {
            break;
        }
        total += &product;
    }
    total
}
