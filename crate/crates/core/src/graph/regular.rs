//! Closed forms for iterated line graphs of regular graphs and stars.

use alloc::format;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Degree of every vertex of `L^k(G)` when `G` is `d`-regular:
/// `2^k d - 2^(k+1) + 2`.
pub fn regular_line_degree(d: u64, k: u32) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::Constraint(format!("regular degree d = {d} must be >= 2")));
    }
    // 2^k (d - 2) + 2, which is the same quantity without a subtraction.
    Ok((BigUint::from(d - 2) << k) + 2u32)
}

/// `|V(L^k(K_{1,d}))|`.
///
/// `L(K_{1,d}) = K_d` is `(d-1)`-regular, so after that each step multiplies
/// the size by half the current degree.
pub fn star_lk_size(d: u64, k: u32) -> Result<BigUint> {
    if d < 1 {
        return Err(Error::Constraint(format!("star degree d = {d} must be >= 1")));
    }
    if k == 0 {
        return Ok(BigUint::from(d + 1));
    }
    let mut size = BigInt::from(d);
    for j in 1..k {
        if size.is_zero() {
            break;
        }
        // Degree of L^(j-1)(K_d): 2^(j-1) (d-1) - 2^j + 2. It is negative only
        // for d = 1, where the size has already dropped to zero.
        let degree: BigInt = (BigInt::from(d - 1) << (j - 1)) - (BigInt::one() << j) + 2;
        let product: BigInt = &size * degree;
        let (half, rem) = product.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return Err(Error::Verification(format!(
                "odd degree sum in star recurrence at d = {d}, j = {j}"
            )));
        }
        size = half;
    }
    size.to_biguint()
        .ok_or_else(|| Error::Verification(format!("negative star size at d = {d}, k = {k}")))
}

/// The product `d * prod_{j=1}^{k-1} (2^(j-1)(d-3) + 1)`, valid as an upper
/// bound on [`star_lk_size`] for `d >= 3`, `k >= 1`.
///
/// The exact count has `2^(j-2)` in place of `2^(j-1)`.
pub fn star_lk_product_bound(d: u64, k: u32) -> Result<BigUint> {
    if d < 3 || k < 1 {
        return Err(Error::Constraint(format!(
            "product bound needs d >= 3 and k >= 1 (got d = {d}, k = {k})"
        )));
    }
    let mut acc = BigUint::from(d);
    for j in 1..k {
        acc *= (BigUint::from(d - 3) << (j - 1)) + 1u32;
    }
    Ok(acc)
}

/// Whether `size < base^k * 2^(k^2/2)`, decided exactly by squaring.
pub fn star_lk_size_below_power_bound(size: &BigUint, base: u64, k: u32) -> bool {
    let lhs = size * size;
    let rhs = num_traits::pow(BigUint::from(base), 2 * k as usize) << (k as usize * k as usize);
    lhs < rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn regular_degree_examples() {
        assert_eq!(regular_line_degree(3, 1).unwrap(), n(4));
        assert_eq!(regular_line_degree(7, 0).unwrap(), n(7));
        assert_eq!(regular_line_degree(4, 2).unwrap(), n(10));
        assert!(regular_line_degree(1, 3).is_err());
    }

    #[test]
    fn star_size_examples() {
        assert_eq!(star_lk_size(4, 2).unwrap(), n(6));
        assert_eq!(star_lk_size(3, 5).unwrap(), n(3));
        assert_eq!(star_lk_size(4, 3).unwrap(), n(12));
        assert_eq!(star_lk_size(5, 0).unwrap(), n(6));
        assert_eq!(star_lk_size(1, 1).unwrap(), n(1));
        assert_eq!(star_lk_size(1, 4).unwrap(), n(0));
        assert_eq!(star_lk_size(2, 2).unwrap(), n(1));
        assert_eq!(star_lk_size(2, 3).unwrap(), n(0));
    }

    #[test]
    fn product_is_loose_at_d4_k2() {
        assert_eq!(star_lk_product_bound(4, 2).unwrap(), n(8));
        assert!(star_lk_product_bound(4, 2).unwrap() > star_lk_size(4, 2).unwrap());
    }

    #[test]
    fn power_bound_is_exact_comparison() {
        // 4^1 * 2^(1/2) ~ 5.66
        assert!(star_lk_size_below_power_bound(&n(5), 4, 1));
        assert!(!star_lk_size_below_power_bound(&n(6), 4, 1));
    }
}
