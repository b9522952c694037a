use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Field, FieldError};

static ZERO_TOL_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Relative tolerance used by [`Approx`] comparisons.
pub fn zero_tolerance() -> f64 {
    f64::from_bits(ZERO_TOL_BITS.load(Ordering::Relaxed))
}

pub fn set_zero_tolerance(tol: f64) {
    ZERO_TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

/// Double-precision complex number, used only for numeric spot checks.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Approx(pub Complex64);

impl Approx {
    pub fn new(re: f64, im: f64) -> Self {
        Approx(Complex64::new(re, im))
    }

    /// `exp(2 pi i k / m)`.
    pub fn root_of_unity(k: i64, m: i64) -> Self {
        Approx(Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * k as f64 / m as f64,
        ))
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12e}{:+.12e}i", self.0.re, self.0.im)
    }
}

impl Field for Approx {
    const EXACT: bool = false;

    fn zero() -> Self {
        Approx::default()
    }

    fn one() -> Self {
        Approx::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn from_i64(n: i64) -> Self {
        Approx::new(n as f64, 0.0)
    }

    fn from_rational(r: &BigRational) -> Self {
        Approx::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn try_inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(Approx(self.0.inv()))
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.0.norm().max(other.0.norm()).max(1.0);
        (self.0 - other.0).norm() <= zero_tolerance() * scale
    }

    fn negligible(&self, scale: f64) -> bool {
        self.0.norm() <= zero_tolerance() * scale.max(f64::MIN_POSITIVE)
    }

    fn to_complex(&self) -> Option<Complex64> {
        Some(self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt) => {
        impl $tr for Approx {
            type Output = Approx;
            fn $m(self, rhs: Approx) -> Approx {
                Approx(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Approx> for Approx {
            type Output = Approx;
            fn $m(self, rhs: &'a Approx) -> Approx {
                Approx(self.0 $op rhs.0)
            }
        }
        impl<'a> $atr<&'a Approx> for Approx {
            fn $am(&mut self, rhs: &'a Approx) {
                self.0 = self.0 $op rhs.0;
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign, +);
forward_binop!(Sub, sub, SubAssign, sub_assign, -);
forward_binop!(Mul, mul, MulAssign, mul_assign, *);

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_tolerance_is_1e9() {
        assert_eq!(zero_tolerance(), 1e-9);
    }

    #[test]
    fn roots_of_unity() {
        let w = Approx::root_of_unity(3, 8);
        assert!(w.try_powi(8).unwrap().approx_eq(&Approx::one()));
        assert!(!w.try_powi(4).unwrap().approx_eq(&Approx::one()));
        let expected = Approx(Complex64::from_polar(1.0, 3.0 * std::f64::consts::PI / 4.0));
        assert!(w.approx_eq(&expected));
    }
}
