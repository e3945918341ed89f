//! Differences of polynomial sums over shifted Thue-Morse halves, and the
//! thresholds used to nest such differences.

use alloc::format;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Polynomial;
use crate::pte::{leading_defect, pte_split};
use crate::{Error, Result};

/// An upper rational approximation of `e`, rounded up in the 17th decimal.
pub fn e_upper() -> BigRational {
    BigRational::new(
        BigInt::from(271_828_182_845_904_524u64),
        BigInt::from(100_000_000_000_000_000u64),
    )
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e as usize
}

fn degree_of(f: &Polynomial) -> Result<u64> {
    f.degree()
        .map(|d| d as u64)
        .ok_or_else(|| Error::Constraint("the zero polynomial has no degree".into()))
}

/// `g(t) = f(T_k + t) - f(T̄_k + t)`, expanded symbolically.
///
/// Checks that `g` has degree `deg f - k`, that its leading coefficient is
/// `(-1)^(k+1) C C(d,k) k! 2^C(k,2)` for leading coefficient `C` of `f`,
/// and that it agrees with direct evaluation at `t = 0..=5`.
pub fn g_poly(f: &Polynomial, k: u32) -> Result<Polynomial> {
    let d = degree_of(f)?;
    if k == 0 || k as u64 > d {
        return Err(Error::Constraint(format!("g needs 1 <= k <= deg f = {d}, got k = {k}")));
    }
    let pair = pte_split(k)?;
    let sum_shifts = |xs: &[u64]| {
        xs.iter().fold(Polynomial::zero(), |acc, &x| {
            &acc + &f.shift(&BigRational::from_integer(BigInt::from(x)))
        })
    };
    let g = &sum_shifts(&pair.t_set) - &sum_shifts(&pair.t_bar);

    if g.degree() != Some((d - k as u64) as usize) {
        return Err(Error::Verification(format!(
            "g has degree {:?}, expected {}",
            g.degree(),
            d - k as u64
        )));
    }
    let expected_lead = f.leading().expect("nonzero")
        * BigRational::from_integer(binomial(d, k as u64) * leading_defect(k));
    if g.leading() != Some(&expected_lead) {
        return Err(Error::Verification(format!(
            "g has leading coefficient {:?}, expected {expected_lead}",
            g.leading()
        )));
    }
    for t in 0..=5i64 {
        let direct: BigRational = pair
            .t_set
            .iter()
            .map(|&x| f.eval_int(&BigInt::from(x as i64 + t)))
            .sum::<BigRational>()
            - pair
                .t_bar
                .iter()
                .map(|&x| f.eval_int(&BigInt::from(x as i64 + t)))
                .sum::<BigRational>();
        if g.eval_int(&BigInt::from(t)) != direct {
            return Err(Error::Verification(format!("g disagrees with direct sums at t = {t}")));
        }
    }
    Ok(g)
}

/// The non-leading part of `g` against its bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestBound {
    /// Sum of the magnitudes of the non-leading coefficients of `g`.
    pub rest: BigRational,
    /// `C' e d^2 d! 2^C(d+1,2)` with `C'` the largest coefficient magnitude
    /// of `f` and `e` rounded up.
    pub bound: BigRational,
}

impl RestBound {
    pub fn holds(&self) -> bool {
        self.rest <= self.bound
    }
}

pub fn g_rest_bound(f: &Polynomial, k: u32) -> Result<RestBound> {
    let g = g_poly(f, k)?;
    let d = degree_of(f)?;
    let n = g.coeffs().len() - 1;
    let rest = g.coeffs()[..n].iter().map(Signed::abs).sum();
    let factor = BigInt::from(d * d) * factorial(d) * pow2(d * (d + 1) / 2);
    let bound = f.max_abs_coeff() * e_upper() * BigRational::from_integer(factor);
    Ok(RestBound { rest, bound })
}

/// `R_k = ceil(C' 4e d^2 2^(C(d+1,2) - C(k+2,2)) (d-k-1)! / C)` for
/// `0 <= k <= d - 1`, with `C` the leading coefficient magnitude and `C'`
/// the largest coefficient magnitude of `f`.
pub fn r_threshold(f: &Polynomial, k: u32) -> Result<BigUint> {
    let d = degree_of(f)?;
    let k = k as u64;
    if d == 0 || k > d - 1 {
        return Err(Error::Constraint(format!("R_k needs k <= deg f - 1 = {}", d.saturating_sub(1))));
    }
    let lead = f.leading().expect("nonzero").abs();
    let exponent = d * (d + 1) / 2 - (k + 2) * (k + 1) / 2;
    let value = f.max_abs_coeff()
        * BigRational::from_integer(BigInt::from(4 * d * d) * pow2(exponent) * factorial(d - k - 1))
        * e_upper()
        / lead;
    let ceil = value.ceil().to_integer();
    Ok(ceil.to_biguint().expect("positive"))
}

/// `ceil(C' / C)`.
pub fn coefficient_ratio_ceiling(f: &Polynomial) -> Result<BigUint> {
    degree_of(f)?;
    let ratio = f.max_abs_coeff() / f.leading().expect("nonzero").abs();
    Ok(ratio.ceil().to_integer().to_biguint().expect("positive"))
}

/// `floor(sqrt(2^twice_exp * x))`, where `twice_exp` may be negative.
pub(crate) fn floor_sqrt_scaled(x: &BigUint, twice_exp: i64) -> BigUint {
    let scaled = if twice_exp >= 0 {
        x << twice_exp as usize
    } else {
        x >> (-twice_exp) as usize
    };
    scaled.sqrt()
}

/// Whether `R_{k-1} >= 2^k (d - k) R_k`.
pub fn r_ratio_holds(f: &Polynomial, k: u32) -> Result<bool> {
    let d = degree_of(f)?;
    if k == 0 {
        return Err(Error::Constraint("ratio check needs k >= 1".into()));
    }
    let prev = r_threshold(f, k - 1)?;
    let cur = r_threshold(f, k)?;
    Ok(prev >= (cur * BigUint::from(d - k as u64)) << k as usize)
}
