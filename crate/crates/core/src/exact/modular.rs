//! Prime-field arithmetic and probabilistic ranks.
//!
//! Both built-in moduli are 63-bit primes congruent to 11 mod 12, so 3 is a
//! quadratic residue and `3^((p+1)/4)` is a square root of 3. Reducing an
//! element of Q(√3) modulo p is then a ring homomorphism.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::field::Field;
use super::matrix::DenseMatrix;
use super::rational::Rational;
use super::scalar::QSqrt3;
use crate::error::{GeomError, Result};

pub const P1: u64 = 9_223_372_036_854_775_643;
pub const P2: u64 = 9_223_372_036_854_775_259;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    if s >= p as u128 {
        (s - p as u128) as u64
    } else {
        s as u64
    }
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    (!a.is_multiple_of(p)).then(|| powmod(a, p - 2, p))
}

/// Square root of 3 modulo a prime `p ≡ 11 (mod 12)`.
pub fn sqrt3_mod(p: u64) -> Result<u64> {
    if p % 12 != 11 {
        return Err(GeomError::InvalidStructure(format!(
            "prime {p} is not 11 mod 12; no square root of 3 available"
        )));
    }
    let r = powmod(3, (p + 1) / 4, p);
    if mulmod(r, r, p) != 3 % p {
        return Err(GeomError::InvalidStructure(format!("3 is not a square mod {p}")));
    }
    Ok(r)
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.to_u64().expect("reduced value fits")
}

/// Image of a rational in Z/p.
pub fn reduce_rational(r: &Rational, p: u64) -> Result<u64> {
    let (n, d) = match r.as_small() {
        Some((n, d)) => {
            let n = (n as i128).rem_euclid(p as i128) as u64;
            let d = (d as i128).rem_euclid(p as i128) as u64;
            (n, d)
        }
        None => (reduce_bigint(&r.numer(), p), reduce_bigint(&r.denom(), p)),
    };
    let di = invmod(d, p).ok_or(GeomError::NotReducible)?;
    Ok(mulmod(n, di, p))
}

/// Image of `a + b√3` in Z/p, with √3 sent to `sqrt3`.
pub fn reduce_scalar(s: &QSqrt3, p: u64, sqrt3: u64) -> Result<u64> {
    let a = reduce_rational(&s.a, p)?;
    if s.b.is_zero() {
        return Ok(a);
    }
    let b = reduce_rational(&s.b, p)?;
    Ok(addmod(a, mulmod(b, sqrt3, p), p))
}

/// Element of the prime field Z/P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        reduce_rational(r, P).map(Fp)
    }

    pub fn from_scalar(s: &QSqrt3) -> Result<Self> {
        reduce_scalar(s, P, sqrt3_mod(P)?).map(Fp)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(addmod(self.0, o.0, P))
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(submod(self.0, o.0, P))
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(mulmod(self.0, o.0, P))
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(submod(0, self.0, P))
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        invmod(self.0, P).map(Fp)
    }

    fn from_i64(v: i64) -> Self {
        Fp((v as i128).rem_euclid(P as i128) as u64)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = *self - *a * *b;
    }
}

pub type Fp1 = Fp<P1>;
pub type Fp2 = Fp<P2>;

/// Reduces a scalar matrix entrywise into `Fp<P>`.
pub fn reduce_matrix<const P: u64>(m: &DenseMatrix<QSqrt3>) -> Result<DenseMatrix<Fp<P>>> {
    let s3 = sqrt3_mod(P)?;
    let mut out = DenseMatrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !v.is_zero() {
                out.set(r, c, Fp(reduce_scalar(v, P, s3)?));
            }
        }
    }
    Ok(out)
}

/// Rank of a row-major `u64` matrix over Z/p by plain elimination.
pub fn rank_u64(rows: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = invmod(rows[rank][c], p).expect("nonzero pivot");
        for x in rows[rank][c..].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                if prow[j] != 0 {
                    row[j] = submod(row[j], mulmod(f, prow[j], p), p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of `m` reduced modulo `prime`, which must be ≡ 11 (mod 12) so that
/// √3 has an image. Never exceeds the exact rank.
pub fn rank_mod_p(m: &DenseMatrix<QSqrt3>, prime: u64) -> Result<usize> {
    if prime <= 3 || !is_probable_prime(prime) {
        return Err(GeomError::InvalidStructure(format!("{prime} is not a usable prime")));
    }
    let s3 = sqrt3_mod(prime)?;
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            row.push(reduce_scalar(m.get(r, c), prime, s3)?);
        }
        rows.push(row);
    }
    Ok(rank_u64(&mut rows, prime))
}

/// Rank computed independently modulo `P1` and `P2`; disagreement is an
/// error rather than a guess.
pub fn rank_two_primes(m: &DenseMatrix<QSqrt3>) -> Result<usize> {
    let a = rank_mod_p(m, P1)?;
    let b = rank_mod_p(m, P2)?;
    if a != b {
        return Err(GeomError::ModularDisagreement(a, b));
    }
    Ok(a)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_primes_are_usable() {
        for p in [P1, P2, 1_000_000_007] {
            assert!(is_probable_prime(p));
            let r = sqrt3_mod(p).unwrap();
            assert_eq!(mulmod(r, r, p), 3);
        }
        assert!(sqrt3_mod(13).is_err());
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let x: QSqrt3 = "2/3+-5/7*sqrt3".parse().unwrap();
        let y: QSqrt3 = "-1/4+1*sqrt3".parse().unwrap();
        let fx = Fp1::from_scalar(&x).unwrap();
        let fy = Fp1::from_scalar(&y).unwrap();
        assert_eq!(Fp1::from_scalar(&(&x * &y)).unwrap(), fx * fy);
        assert_eq!(Fp1::from_scalar(&(&x + &y)).unwrap(), fx + fy);
        assert_eq!(fx * fx.inv().unwrap(), Fp1::one());
    }

    #[test]
    fn bad_denominator_rejected() {
        let r = Rational::new(1, 1_000_000_007);
        assert!(reduce_rational(&r, 1_000_000_007).is_err());
    }

    #[test]
    fn small_ranks() {
        let id = DenseMatrix::<QSqrt3>::identity(4);
        assert_eq!(rank_mod_p(&id, 1_000_000_007).unwrap(), 4);
        let mut outer = DenseMatrix::<QSqrt3>::zeros(3, 3);
        let u = [1, 2, 3];
        let v = [4, -1, 7];
        for i in 0..3 {
            for j in 0..3 {
                outer.set(i, j, QSqrt3::int(u[i] * v[j]) * QSqrt3::sqrt3());
            }
        }
        assert_eq!(rank_mod_p(&outer, P1).unwrap(), 1);
        assert_eq!(rank_two_primes(&outer).unwrap(), 1);
    }
}
