//! The quadratic field Q(sqrt 3).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, RealField};
use super::rational::Rational;
use crate::error::ParseError;

/// `a + b·√3` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt3 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn int(v: i64) -> Self {
        QSqrt3::new(Rational::from_integer(v), Rational::zero())
    }

    pub fn frac(n: i64, d: i64) -> Self {
        QSqrt3::new(Rational::new(n, d), Rational::zero())
    }

    pub fn rational(r: Rational) -> Self {
        QSqrt3::new(r, Rational::zero())
    }

    pub fn sqrt3() -> Self {
        QSqrt3::new(Rational::zero(), Rational::one())
    }

    /// `(n/d)·√3`
    pub fn sqrt3_frac(n: i64, d: i64) -> Self {
        QSqrt3::new(Rational::zero(), Rational::new(n, d))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate `a − b√3`.
    pub fn conj(&self) -> Self {
        QSqrt3::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(3) * &self.b * &self.b
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 3f64.sqrt()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSqrt3::new(&self.a * r, &self.b * r)
    }

    /// Sign of the real number `a + b√3`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with 3b²
        let a2 = &self.a * &self.a;
        let b2 = Rational::from_integer(3) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl Zero for QSqrt3 {
    fn zero() -> Self {
        QSqrt3::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        QSqrt3::int(1)
    }
}

impl From<Rational> for QSqrt3 {
    fn from(r: Rational) -> Self {
        QSqrt3::rational(r)
    }
}

impl From<i64> for QSqrt3 {
    fn from(v: i64) -> Self {
        QSqrt3::int(v)
    }
}

fn mul(x: &QSqrt3, y: &QSqrt3) -> QSqrt3 {
    if x.b.is_zero() {
        if y.b.is_zero() {
            return QSqrt3::rational(&x.a * &y.a);
        }
        return y.scale(&x.a);
    }
    if y.b.is_zero() {
        return x.scale(&y.a);
    }
    let three = Rational::from_integer(3);
    QSqrt3::new(
        &x.a * &y.a + three * &x.b * &y.b,
        &x.a * &y.b + &x.b * &y.a,
    )
}

fn add(x: &QSqrt3, y: &QSqrt3) -> QSqrt3 {
    QSqrt3::new(&x.a + &y.a, &x.b + &y.b)
}

fn sub(x: &QSqrt3, y: &QSqrt3) -> QSqrt3 {
    QSqrt3::new(&x.a - &y.a, &x.b - &y.b)
}

fn div(x: &QSqrt3, y: &QSqrt3) -> QSqrt3 {
    mul(x, &y.inv().expect("division by zero scalar"))
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $m(self, o: QSqrt3) -> QSqrt3 {
                $f(&self, &o)
            }
        }
        impl<'a> $tr<&'a QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $m(self, o: &'a QSqrt3) -> QSqrt3 {
                $f(&self, o)
            }
        }
        impl<'a> $tr<QSqrt3> for &'a QSqrt3 {
            type Output = QSqrt3;
            fn $m(self, o: QSqrt3) -> QSqrt3 {
                $f(self, &o)
            }
        }
        impl<'a, 'b> $tr<&'b QSqrt3> for &'a QSqrt3 {
            type Output = QSqrt3;
            fn $m(self, o: &'b QSqrt3) -> QSqrt3 {
                $f(self, o)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-self.a, -self.b)
    }
}

impl Neg for &QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-&self.a, -&self.b)
    }
}

impl AddAssign<&QSqrt3> for QSqrt3 {
    fn add_assign(&mut self, o: &QSqrt3) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&QSqrt3> for QSqrt3 {
    fn sub_assign(&mut self, o: &QSqrt3) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&QSqrt3> for QSqrt3 {
    fn mul_assign(&mut self, o: &QSqrt3) {
        *self = mul(self, o);
    }
}

impl Field for QSqrt3 {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(QSqrt3::rational(self.a.recip()?));
        }
        let n = self.norm().recip()?;
        Some(self.conj().scale(&n))
    }

    fn from_i64(v: i64) -> Self {
        QSqrt3::int(v)
    }

    fn add_ref(&self, o: &Self) -> Self {
        add(self, o)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        sub(self, o)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        mul(self, o)
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_mul(&mut self, x: &Self, y: &Self) {
        if x.is_zero() || y.is_zero() {
            return;
        }
        let p = mul(x, y);
        *self += &p;
    }

    fn sub_mul(&mut self, x: &Self, y: &Self) {
        if x.is_zero() || y.is_zero() {
            return;
        }
        let p = mul(x, y);
        *self -= &p;
    }
}

impl RealField for QSqrt3 {
    fn to_f64(&self) -> f64 {
        QSqrt3::to_f64(self)
    }

    fn from_rational(r: &Rational) -> Self {
        QSqrt3::rational(r.clone())
    }
}

/// Canonical text: `p/q` or `p/q+r/s*sqrt3`; integers omit `/1` and signs
/// live on the numerators.
impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*sqrt3", self.a, self.b)
        }
    }
}

impl fmt::Debug for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QSqrt3 {
    type Err = ParseError;

    /// Accepts the canonical form plus a few hand-written conveniences:
    /// `sqrt3`, `-sqrt3`, `r*sqrt3`, `a-r*sqrt3`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseError::Scalar(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        let Some(stripped) = t.strip_suffix("sqrt3") else {
            return t.parse::<Rational>().map(QSqrt3::rational).map_err(|_| bad());
        };
        let head = stripped.strip_suffix('*').unwrap_or(stripped);
        // split the rational part from the sqrt3 coefficient at the last
        // top-level sign that is not the leading one and not after '/'
        let bytes = head.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'+' {
                split = Some(i);
                break;
            }
        }
        let (a_txt, b_txt) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let a: Rational = a_txt.parse().map_err(|_| bad())?;
        let b_txt = b_txt.strip_prefix('+').unwrap_or(b_txt);
        let b: Rational = match b_txt {
            "" => Rational::one(),
            "-" => -Rational::one(),
            other => other.parse().map_err(|_| bad())?,
        };
        Ok(QSqrt3::new(a, b))
    }
}

impl Serialize for QSqrt3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QSqrt3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> QSqrt3 {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        assert_eq!(QSqrt3::frac(-3, 4).to_string(), "-3/4");
        assert_eq!((QSqrt3::int(1) - QSqrt3::sqrt3()).to_string(), "1+-1*sqrt3");
        assert_eq!(QSqrt3::sqrt3_frac(1, 2).to_string(), "0+1/2*sqrt3");
        for s in ["0", "-7/2", "1+-1*sqrt3", "2/3+5/7*sqrt3", "0+-1/2*sqrt3"] {
            assert_eq!(sc(s).to_string(), s);
        }
    }

    #[test]
    fn lenient_parse() {
        assert_eq!(sc("sqrt3"), QSqrt3::sqrt3());
        assert_eq!(sc("-sqrt3"), -QSqrt3::sqrt3());
        assert_eq!(sc("1/2*sqrt3"), QSqrt3::sqrt3_frac(1, 2));
        assert_eq!(sc("1-2*sqrt3"), QSqrt3::int(1) - QSqrt3::sqrt3_frac(2, 1));
        assert_eq!(sc("-1/3+-2/5*sqrt3"), QSqrt3::frac(-1, 3) + QSqrt3::sqrt3_frac(-2, 5));
        assert!("1+".parse::<QSqrt3>().is_err());
        assert!("sqrt2".parse::<QSqrt3>().is_err());
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let r = QSqrt3::sqrt3();
        assert_eq!(&r * &r, QSqrt3::int(3));
    }

    #[test]
    fn inverse() {
        let x = sc("2+1*sqrt3");
        assert_eq!(x.inv().unwrap(), sc("2+-1*sqrt3"));
        assert!(QSqrt3::zero().inv().is_none());
    }

    #[test]
    fn signum_matches_float() {
        for s in ["1+-1*sqrt3", "2+-1*sqrt3", "-2+1*sqrt3", "0", "-5/3"] {
            let x = sc(s);
            assert_eq!(x.signum(), (x.to_f64().signum() as i32) * (!x.is_zero()) as i32, "{s}");
        }
    }
}
