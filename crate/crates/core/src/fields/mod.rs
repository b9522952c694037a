//! Coefficient fields.
//!
//! Every higher module is generic over a single [`Field`] per computation:
//! exact rationals ([`Rational`]), reduced univariate rational functions
//! ([`RatFunc`]) and double-precision complex numbers ([`Approx`]) for
//! numeric spot checks. Mixing two fields is a type error.

mod approx;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

pub use approx::{set_zero_tolerance, zero_tolerance, Approx};
pub use poly::UniPoly;
pub use ratfunc::RatFunc;
pub use rational::{random_generic_qt, random_generic_rational, random_rational, rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at a pole: denominator {denominator} vanishes at {point}")]
    Pole { denominator: String, point: String },
}

/// A commutative field of coefficients.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// `true` when equality is decidable exactly.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn try_inv(&self) -> Result<Self, FieldError>;

    fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.clone() * other.try_inv()?)
    }

    /// Integer power; negative exponents invert.
    fn try_powi(&self, exp: i64) -> Result<Self, FieldError> {
        let base = if exp < 0 { self.try_inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Ok(acc)
    }

    /// Equality up to the field's notion of noise; exact fields compare exactly.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// `true` if the element is zero relative to `scale` (exact fields ignore `scale`).
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    /// Complex value when the element is a number, `None` for rational functions.
    fn to_complex(&self) -> Option<Complex64>;
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer<F: Field>(a: &F, n: u32) -> F {
    (0..n).fold(F::one(), |acc, i| acc * (a.clone() + F::from_i64(i as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pochhammer_values() {
        let a = rational(7, 3);
        assert_eq!(pochhammer(&a, 0), rational(1, 1));
        assert_eq!(pochhammer(&rational(1, 1), 4), rational(24, 1));
        let kappa = RatFunc::var();
        let lhs = pochhammer(&(RatFunc::one() + &kappa), 2);
        let rhs = (RatFunc::one() + &kappa) * (RatFunc::from_i64(2) + &kappa);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_powers() {
        let x = rational(2, 3);
        assert_eq!(x.try_powi(3).unwrap(), rational(8, 27));
        assert_eq!(x.try_powi(-2).unwrap(), rational(9, 4));
        assert_eq!(x.try_powi(0).unwrap(), rational(1, 1));
        assert_eq!(
            Rational::zero().try_powi(-1),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn telescoping_product() {
        // prod_{i=a}^{b} g(i+1) g(i-1) / g(i)^2 = g(a-1) g(b+1) / (g(a) g(b))
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a: i64 = rand::Rng::gen_range(&mut rng, -6..6);
            let b: i64 = a + rand::Rng::gen_range(&mut rng, 0..8);
            let vals: Vec<Rational> = (a - 1..=b + 1)
                .map(|_| loop {
                    let r = random_rational(&mut rng, 1000);
                    if !Field::is_zero(&r) {
                        break r;
                    }
                })
                .collect();
            let g = |i: i64| vals[(i - (a - 1)) as usize].clone();
            let mut lhs = Rational::one();
            for i in a..=b {
                lhs = lhs * g(i + 1) * g(i - 1) / (g(i) * g(i));
            }
            let rhs = g(a - 1) * g(b + 1) / (g(a) * g(b));
            assert_eq!(lhs, rhs);
        }
    }
}
