use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::{Field, FieldError};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = BigRational;

/// Shorthand constructor, `rational(2, 4) == 1/2`.
pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random rational with numerator and denominator bounded by `height`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Rational {
    let num = rng.gen_range(-height..=height);
    let den = rng.gen_range(1..=height);
    rational(num, den)
}

/// Random rational whose reduced denominator is a prime above 1000, so no
/// small integer multiple of it is an integer.
pub fn random_generic_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    const PRIMES: [i64; 6] = [1009, 1013, 1019, 1021, 1031, 1033];
    let den = PRIMES[rng.gen_range(0..PRIMES.len())];
    loop {
        let num = rng.gen_range(-50 * den..=50 * den);
        if num % den != 0 {
            return rational(num, den);
        }
    }
}

/// `(p1/p2, p3/p4)` for four distinct small primes. Unique factorization makes `q^a t^b = 1`
/// only for `a = b = 0`, so the pair is generic at every size while keeping heights small.
pub fn random_generic_qt<R: Rng + ?Sized>(rng: &mut R) -> (Rational, Rational) {
    let mut primes = vec![2i64, 3, 5, 7, 11, 13, 17];
    let mut pick = || primes.swap_remove(rng.gen_range(0..primes.len()));
    let (a, b, c, d) = (pick(), pick(), pick(), pick());
    (rational(a, b), rational(c, d))
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Result<Self, FieldError> {
        if Zero::is_zero(self) {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn to_complex(&self) -> Option<Complex64> {
        Some(Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rational(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rational(0, 5), rational(0, 1));
    }

    #[test]
    fn inverse_of_zero_rejected() {
        assert_eq!(rational(0, 1).try_inv(), Err(FieldError::DivisionByZero));
        assert_eq!(rational(-2, 3).try_inv().unwrap(), rational(-3, 2));
    }
}
