//! Scalar fields: exact rationals and Gaussian rationals.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for the fraction `p/q`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Returns `Some(integer)` when the rational is an integer.
pub fn as_integer(v: &Rational) -> Option<BigInt> {
    if v.denom().is_one() {
        Some(v.numer().clone())
    } else {
        None
    }
}

/// The operations a scalar must support for exact linear algebra.
///
/// Implemented for [`Rational`] and [`GaussianRational`]. Division by zero
/// panics; callers guard on [`Field::is_zero`] first.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
}

/// Element of the field Q(i), stored as an explicit pair of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Field::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: Field::zero(),
            im: Field::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`, the multiplicative norm.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sq();
        let c = rhs.conj();
        let prod = self * c;
        GaussianRational {
            re: prod.re / &n,
            im: prod.im / &n,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{} i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: Field::zero(),
            im: Field::zero(),
        }
    }
    fn one() -> Self {
        GaussianRational {
            re: Field::one(),
            im: Field::zero(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn div(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn from_i64(v: i64) -> Self {
        GaussianRational::from_real(rat(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_ops() {
        let a = GaussianRational::new(rat(1), rat(2));
        let b = GaussianRational::new(rat(3), rat(-1));
        let prod = a.clone() * b.clone();
        assert_eq!(prod, GaussianRational::new(rat(5), rat(5)));
        let back = prod / b;
        assert_eq!(back, a);
    }

    #[test]
    fn conjugation_is_involution() {
        let a = GaussianRational::new(frac(2, 3), frac(-5, 7));
        assert_eq!(a.conj().conj(), a);
        assert_eq!((a.clone() * a.conj()).re, a.norm_sq());
    }

    #[test]
    fn display_forms() {
        use alloc::string::ToString;
        assert_eq!(GaussianRational::new(rat(1), rat(-3)).to_string(), "1-3 i");
        assert_eq!(GaussianRational::new(rat(0), frac(1, 2)).to_string(), "1/2 i");
        assert_eq!(GaussianRational::from_real(frac(-3, 4)).to_string(), "-3/4");
    }
}
