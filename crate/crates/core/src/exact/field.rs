use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

/// An exact field usable as the coefficient domain of matrices, forms and
/// polynomials.
///
/// The by-reference helpers exist so generic elimination loops do not pay for
/// clones of heap-backed values; the defaults are correct for any `Copy`-like
/// type and are overridden where it matters.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }

    fn neg_ref(&self) -> Self {
        -self.clone()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_ref(&a.mul_ref(b));
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.sub_ref(&a.mul_ref(b));
    }

    fn div_ref(&self, o: &Self) -> Self {
        self.mul_ref(&o.inv().expect("division by zero"))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }

    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

/// A field embedded in the reals that contains the rationals.
pub trait RealField: Field {
    fn to_f64(&self) -> f64;

    fn from_rational(r: &Rational) -> Self;
}

impl RealField for Rational {
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}
