use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, FieldError, UniPoly};

/// Reduced univariate rational function over the rationals.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Builds the reduced fraction `num / den`.
    pub fn normalize(num: UniPoly, den: UniPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(UniPoly::zero()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Ok(Self::monic_den(num, den))
    }

    fn monic_den(num: UniPoly, den: UniPoly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(num: UniPoly) -> Self {
        RatFunc {
            num,
            den: UniPoly::one(),
        }
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::monomial(1))
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Substitutes an exact rational for the variable.
    pub fn evaluate(&self, point: &BigRational) -> Result<BigRational, FieldError> {
        let d = self.den.eval(point);
        if Zero::is_zero(&d) {
            return Err(FieldError::Pole {
                denominator: self.den.display_with("x"),
                point: point.to_string(),
            });
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitutes a complex number; a denominator below `1e-300` in modulus is a pole.
    pub fn evaluate_complex(&self, point: Complex64) -> Result<Complex64, FieldError> {
        let d = self.den.eval_complex(point);
        if d.norm() < 1e-300 {
            return Err(FieldError::Pole {
                denominator: self.den.display_with("x"),
                point: point.to_string(),
            });
        }
        Ok(self.num.eval_complex(point) / d)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.display_with(var);
        }
        let wrap = |p: &UniPoly| {
            let s = p.display_with(var);
            if p.coeffs().iter().filter(|c| !Zero::is_zero(*c)).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return Self::normalize(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc {
                num,
                den: &self.den * &rhs.den,
            };
        }
        let b1 = self.den.exact_div(&g);
        let d1 = rhs.den.exact_div(&g);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        let h = num.gcd(&g);
        let den = &b1 * &rhs.den;
        if h.is_one() {
            Self::monic_den(num, den)
        } else {
            Self::monic_den(num.exact_div(&h), den.exact_div(&h))
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        let reduce = |a: &UniPoly, b: &UniPoly| -> (UniPoly, UniPoly) {
            if a.degree() == Some(0) || b.is_one() {
                return (a.clone(), b.clone());
            }
            let g = a.gcd(b);
            if g.is_one() {
                (a.clone(), b.clone())
            } else {
                (a.exact_div(&g), b.exact_div(&g))
            }
        };
        let (a, d) = reduce(&self.num, &rhs.den);
        let (c, b) = reduce(&rhs.num, &self.den);
        Self::monic_den(&a * &c, &b * &d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl Field for RatFunc {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_poly(UniPoly::from_i64s(&[n]))
    }

    fn from_rational(r: &BigRational) -> Self {
        Self::from_poly(UniPoly::constant(r.clone()))
    }

    fn try_inv(&self) -> Result<Self, FieldError> {
        if self.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::monic_den(self.den.clone(), self.num.clone()))
    }

    fn to_complex(&self) -> Option<Complex64> {
        None
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_ref(rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&-rhs)
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_ref(&-rhs.clone())
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        self.mul_ref(rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl<'a> AddAssign<&'a RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &'a RatFunc) {
        *self = self.add_ref(rhs);
    }
}

impl<'a> SubAssign<&'a RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &'a RatFunc) {
        *self = self.add_ref(&-rhs.clone());
    }
}

impl<'a> MulAssign<&'a RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &'a RatFunc) {
        *self = self.mul_ref(rhs);
    }
}
