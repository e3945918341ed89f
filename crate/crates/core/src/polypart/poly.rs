use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A univariate polynomial with exact rational coefficients.
///
/// Coefficients are stored lowest degree first with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c x^degree`
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// `x`
    pub fn x() -> Self {
        Polynomial::monomial(BigRational::one(), 1)
    }

    /// From coefficients, lowest degree first.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// From integer coefficients, highest degree first.
    pub fn from_integers_high_first(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().rev().map(|&c| rat(c)).collect())
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Largest magnitude among the coefficients below the leading one.
    pub fn max_abs_nonleading(&self) -> BigRational {
        let n = self.coeffs.len().saturating_sub(1);
        self.coeffs[..n]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(x.clone()))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x -> f(x + c)`
    pub fn shift(&self, c: &BigRational) -> Polynomial {
        // Horner in the ring: f(x + c) = (..(a_d (x+c) + a_{d-1})(x+c) + ..)
        let x_plus_c = Polynomial::from_coeffs(vec![c.clone(), BigRational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, a| &(&acc * &x_plus_c) + &Polynomial::constant(a.clone()))
    }

    /// The unique polynomial of degree below `points.len()` through `points`.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<Polynomial> {
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::DuplicateAbscissa);
            }
        }
        // Newton divided differences, then expand the Newton form.
        let n = points.len();
        let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &table[i] - &table[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                table[i] = num / den;
            }
        }
        let mut result = Polynomial::zero();
        let mut basis = Polynomial::constant(BigRational::one());
        for (i, coeff) in table.iter().enumerate() {
            result = &result + &basis.scale(coeff);
            let factor = Polynomial::from_coeffs(vec![-points[i].0.clone(), BigRational::one()]);
            basis = &basis * &factor;
        }
        Ok(result)
    }

    /// `C(x, t) = x (x-1) .. (x-t+1) / t!`
    pub fn binomial(t: usize) -> Polynomial {
        let mut p = Polynomial::constant(BigRational::one());
        for i in 0..t {
            p = &p * &Polynomial::from_coeffs(vec![rat(-(i as i64)), BigRational::one()]);
        }
        let fact: BigInt = (1..=t as u64).map(BigInt::from).product();
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    /// Lowest common denominator of the coefficients.
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Human-readable form such as `1/2*x^2 + 3/2*x + 5/2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn interpolation_recovers_f2() {
        let p = Polynomial::interpolate(&[(q(0, 1), q(5, 2)), (q(1, 1), q(9, 2)), (q(2, 1), q(15, 2))])
            .unwrap();
        assert_eq!(p.coeffs(), &[q(5, 2), q(3, 2), q(1, 2)]);
        assert_eq!(p.to_string(), "1/2*x^2 + 3/2*x + 5/2");
    }

    #[test]
    fn interpolation_rejects_duplicates() {
        assert_eq!(
            Polynomial::interpolate(&[(q(1, 1), q(0, 1)), (q(1, 1), q(2, 1))]),
            Err(Error::DuplicateAbscissa)
        );
    }

    #[test]
    fn shift_expands_binomially() {
        let cube = Polynomial::monomial(q(1, 1), 3);
        assert_eq!(
            cube.shift(&q(1, 1)),
            Polynomial::from_integers_high_first(&[1, 3, 3, 1])
        );
    }

    #[test]
    fn evaluation() {
        let p = Polynomial::from_integers_high_first(&[1, 0, 1]);
        assert_eq!(p.eval_int(&BigInt::from(10)), q(101, 1));
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn binomial_polynomial_values() {
        let c3 = Polynomial::binomial(3);
        assert_eq!(c3.eval_int(&BigInt::from(7)), q(35, 1));
        assert_eq!(c3.eval_int(&BigInt::from(2)), q(0, 1));
        assert_eq!(c3.leading(), Some(&q(1, 6)));
    }

    #[test]
    fn display_signs() {
        let p = Polynomial::from_integers_high_first(&[-12, -18]);
        assert_eq!(p.to_string(), "-12*x - 18");
        assert_eq!(Polynomial::x().to_string(), "x");
    }
}
