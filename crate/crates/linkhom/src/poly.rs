//! Dense integer polynomials in one variable `t`, with exact division and the
//! palindromic families `Q_n` and `R_k` that package Betti-number runs.
//!
//! `Q_{2m} = (t^{m+1}-1)^2 / (t-1)^2` and
//! `Q_{2m+1} = (t^{m+2}-1)(t^{m+1}-1) / (t-1)^2`, extended by `Q_n = 0` for
//! `n < 0`; `R_k = 1 + t + ... + t^k`, zero for `k < 0`. The quotient
//! definitions are exercised in tests through [`IntPolynomial::exact_div`];
//! the constructors here build the coefficient form directly.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// Integer-coefficient polynomial, stored densely by degree with trailing
/// zeros trimmed. The zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// `c * t^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntPolynomial { coeffs }
    }

    /// Builds a polynomial from coefficients indexed by degree, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Substitutes `t -> t^k`, `k >= 1`.
    pub fn compose_t_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution exponent must be >= 1");
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    /// `self * t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs }
    }

    /// `1 + t^step + t^{2 step} + ... + t^{(terms-1) step}`, the expanded form
    /// of `(t^{step * terms} - 1) / (t^step - 1)`. Empty runs give zero.
    pub fn geometric(step: usize, terms: i64) -> Self {
        assert!(step >= 1);
        if terms <= 0 {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (terms as usize - 1) * step + 1];
        for i in 0..terms as usize {
            coeffs[i * step] = BigInt::one();
        }
        IntPolynomial { coeffs }
    }

    /// Exact quotient `self / q`; errors with the nonzero remainder if `q`
    /// does not divide `self` over the integers.
    pub fn exact_div(&self, q: &IntPolynomial) -> Result<IntPolynomial, Error> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let qd = q.coeffs.len() - 1;
        let q_lead = &q.coeffs[qd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len()];
        while rem.len() > qd || (rem.len() == qd + 1 && qd == 0) {
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() <= qd {
                break;
            }
            let rd = rem.len() - 1;
            let lead = rem[rd].clone();
            if (&lead % q_lead) != BigInt::zero() {
                return Err(Error::InexactDivision {
                    remainder: IntPolynomial::from_coeffs(rem).to_string(),
                });
            }
            let factor = &lead / q_lead;
            let offset = rd - qd;
            quot[offset] = factor.clone();
            for (i, qc) in q.coeffs.iter().enumerate() {
                rem[offset + i] -= &factor * qc;
            }
        }
        let remainder = IntPolynomial::from_coeffs(rem);
        if remainder.is_zero() {
            Ok(IntPolynomial::from_coeffs(quot))
        } else {
            Err(Error::InexactDivision {
                remainder: remainder.to_string(),
            })
        }
    }

    /// Evaluates at an integer point, exactly.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluation at `t = -1`; for a Poincaré polynomial this is the Euler
    /// characteristic.
    pub fn eval_minus_one(&self) -> BigInt {
        self.eval(&BigInt::from(-1))
    }

    /// Sum of all coefficients (evaluation at `t = 1`), the total rank.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// True if the coefficient list reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for IntPolynomial {
    /// Plain rendering, e.g. `1 + 2*t^9 + t^13`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::plain(self))
    }
}

/// `R_k(t) = 1 + t + ... + t^k`, with `R_k = 0` for `k < 0`.
pub fn r_poly(k: i64) -> IntPolynomial {
    IntPolynomial::geometric(1, k + 1)
}

/// The palindromic polynomial `Q_n(t)`, with `Q_n = 0` for `n < 0`.
///
/// Coefficients rise `1, 2, ..., m+1` and fall back symmetrically; for odd
/// `n = 2m+1` the peak value `m+1` occurs twice.
pub fn q_poly(n: i64) -> IntPolynomial {
    if n < 0 {
        return IntPolynomial::zero();
    }
    let n = n as usize;
    let m = n / 2;
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let up = i.min(n - i);
        coeffs.push(BigInt::from(up.min(m) as u64 + 1));
    }
    IntPolynomial::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(coeffs)
    }

    #[test]
    fn ring_ops() {
        // (1+t)(1-t) = 1 - t^2
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), IntPolynomial::zero());
    }

    #[test]
    fn compose_t_power() {
        assert_eq!(p(&[1, 1]).compose_t_power(4), p(&[1, 0, 0, 0, 1]));
        // Q_2(t^2) = 1 + 2t^2 + t^4
        assert_eq!(q_poly(2).compose_t_power(2), p(&[1, 0, 2, 0, 1]));
    }

    #[test]
    fn exact_div_basics() {
        // (t^3 - 1) / (t - 1) = 1 + t + t^2
        let q = p(&[-1, 0, 0, 1]).exact_div(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        // (t^2 - 1) / (t + 2) leaves a remainder
        let err = p(&[-1, 0, 1]).exact_div(&p(&[2, 1]));
        assert!(matches!(err, Err(Error::InexactDivision { .. })));
        assert!(matches!(
            p(&[1]).exact_div(&IntPolynomial::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn q_poly_small_values() {
        assert_eq!(q_poly(-3), IntPolynomial::zero());
        assert_eq!(q_poly(0), p(&[1]));
        assert_eq!(q_poly(1), p(&[1, 1]));
        assert_eq!(q_poly(3), p(&[1, 2, 2, 1]));
        assert_eq!(q_poly(4), p(&[1, 2, 3, 2, 1]));
    }

    #[test]
    fn r_poly_small_values() {
        assert_eq!(r_poly(-2), IntPolynomial::zero());
        assert_eq!(r_poly(0), p(&[1]));
        assert_eq!(r_poly(3), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn q_matches_quotient_definition() {
        // Q_{2m} = (t^{m+1}-1)^2/(t-1)^2, Q_{2m+1} = (t^{m+2}-1)(t^{m+1}-1)/(t-1)^2
        let tm = |e: usize| {
            let mut c = vec![BigInt::from(-1)];
            c.extend(std::iter::repeat_with(BigInt::zero).take(e - 1));
            c.push(BigInt::one());
            IntPolynomial::from_coeffs(c)
        };
        let denom = &tm(1) * &tm(1);
        for m in 0..20i64 {
            let e = m as usize;
            let even = (&tm(e + 1) * &tm(e + 1)).exact_div(&denom).unwrap();
            assert_eq!(even, q_poly(2 * m));
            let odd = (&tm(e + 2) * &tm(e + 1)).exact_div(&denom).unwrap();
            assert_eq!(odd, q_poly(2 * m + 1));
        }
    }

    #[test]
    fn q_degree_and_symmetry() {
        for n in 0..=60i64 {
            let q = q_poly(n);
            assert_eq!(q.degree(), Some(n as usize));
            assert!(q.is_palindromic());
        }
    }

    #[test]
    fn geometric_runs() {
        assert_eq!(IntPolynomial::geometric(2, 3), p(&[1, 0, 1, 0, 1]));
        assert_eq!(IntPolynomial::geometric(4, 0), IntPolynomial::zero());
        assert_eq!(IntPolynomial::geometric(4, -1), IntPolynomial::zero());
    }

    #[test]
    fn eval_points() {
        let q = p(&[1, 0, 2, 1]);
        assert_eq!(q.eval(&BigInt::from(2)), BigInt::from(1 + 8 + 8));
        assert_eq!(q.eval_minus_one(), BigInt::from(1 + 2 - 1));
        assert_eq!(q.eval_one(), BigInt::from(4));
    }
}
