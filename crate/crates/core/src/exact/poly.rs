//! Sparse multivariate polynomials.
//!
//! Monomials are packed into a `u128` with four bits per variable, so a
//! polynomial supports at most 32 variables and total degree at most 15.
//! Every polynomial in this crate (cubics and sextics, their gradients and
//! squares, characteristic polynomials up to degree 7) fits comfortably, and
//! packed keys make multiplication an integer addition.

use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;

pub const MAX_VARS: usize = 32;
pub const MAX_DEGREE: u32 = 15;

type Key = u128;

#[inline]
fn exp_of(key: Key, var: usize) -> u32 {
    ((key >> (4 * var)) & 0xf) as u32
}

#[inline]
fn unit(var: usize) -> Key {
    1u128 << (4 * var)
}

fn key_degree(key: Key) -> u32 {
    let mut d = 0;
    let mut k = key;
    while k != 0 {
        d += (k & 0xf) as u32;
        k >>= 4;
    }
    d
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Key, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, &[(i, 1)], F::one())
    }

    /// `c · Π x_i^e` from `(i, e)` pairs.
    pub fn monomial(nvars: usize, powers: &[(usize, u32)], c: F) -> Self {
        let mut key: Key = 0;
        let mut deg = 0;
        for &(i, e) in powers {
            assert!(i < nvars, "variable index out of range");
            deg += e;
            key += unit(i) * e as u128;
        }
        assert!(deg <= MAX_DEGREE, "degree limit exceeded");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(key, c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(nvars: usize, coeffs: &[(usize, F)]) -> Self {
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs {
            p.add_term(unit(*i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: Key, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Terms as `(exponent vector, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &F)> + '_ {
        self.terms
            .iter()
            .map(move |(k, c)| ((0..self.nvars).map(|i| exp_of(*k, i)).collect(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        assert_eq!(exps.len(), self.nvars);
        let key = exps.iter().enumerate().fold(0u128, |k, (i, e)| k + unit(i) * *e as u128);
        self.terms.get(&key).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| key_degree(*k)).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|k| key_degree(*k) == d)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.neg_ref());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (*k, c.mul_ref(s))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        let d = self.total_degree().unwrap_or(0) + o.total_degree().unwrap_or(0);
        assert!(d <= MAX_DEGREE, "degree limit exceeded");
        let mut acc: std::collections::HashMap<Key, F> =
            std::collections::HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                acc.entry(ka + kb).or_insert_with(F::zero).add_mul(ca, cb);
            }
        }
        Polynomial { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(self.nvars, F::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut r = Self::zero(self.nvars);
        for (k, c) in &self.terms {
            let e = exp_of(*k, var);
            if e > 0 {
                r.add_term(k - unit(var), c.mul_ref(&F::from_i64(e as i64)));
            }
        }
        r
    }

    /// `Σ_{i ∈ vars} ∂²/∂x_i²`
    pub fn laplacian(&self, vars: std::ops::Range<usize>) -> Self {
        vars.fold(Self::zero(self.nvars), |acc, i| acc.add(&self.partial(i).partial(i)))
    }

    /// `Σ_{i ∈ vars} (∂p/∂x_i)²`
    pub fn gradient_norm_sq(&self, vars: std::ops::Range<usize>) -> Self {
        vars.fold(Self::zero(self.nvars), |acc, i| {
            let d = self.partial(i);
            acc.add(&d.mul(&d))
        })
    }

    /// `Σ_{i ∈ vars} x_i ∂p/∂x_i`
    pub fn euler(&self, vars: std::ops::Range<usize>) -> Self {
        vars.fold(Self::zero(self.nvars), |acc, i| acc.add(&Self::var(self.nvars, i).mul(&self.partial(i))))
    }

    /// Part of `self` of exact degree `power` in `var`, with `var` removed.
    pub fn coefficient_of(&self, var: usize, power: u32) -> Self {
        let mut r = Self::zero(self.nvars);
        for (k, c) in &self.terms {
            if exp_of(*k, var) == power {
                r.add_term(k - unit(var) * power as u128, c.clone());
            }
        }
        r
    }

    pub fn eval(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.nvars);
        let mut total = F::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (i, xi) in x.iter().enumerate() {
                let e = exp_of(*k, i);
                if e > 0 {
                    t = t.mul_ref(&xi.pow(e));
                }
            }
            total = total.add_ref(&t);
        }
        total
    }

    /// `Σ_{i ∈ vars} x_i²`
    pub fn sum_of_squares(nvars: usize, vars: std::ops::Range<usize>) -> Self {
        let mut p = Self::zero(nvars);
        for i in vars {
            p.add_term(unit(i) * 2, F::one());
        }
        p
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::QSqrt3;

    type P = Polynomial<QSqrt3>;

    #[test]
    fn partial_examples() {
        let x1 = P::var(5, 0);
        let cube = x1.pow(3);
        assert_eq!(cube.partial(0), x1.pow(2).scale(&QSqrt3::int(3)));
        let x1x3 = P::var(5, 0).mul(&P::var(5, 2));
        assert!(x1x3.partial(1).is_zero());
    }

    #[test]
    fn laplacian_and_euler() {
        let f = P::var(3, 0).pow(3);
        assert_eq!(f.laplacian(0..3), P::var(3, 0).scale(&QSqrt3::int(6)));
        assert_eq!(f.euler(0..3), f.scale(&QSqrt3::int(3)));
        let g = P::sum_of_squares(3, 0..3);
        assert_eq!(g.gradient_norm_sq(0..3), g.scale(&QSqrt3::int(4)));
    }

    #[test]
    fn coefficient_extraction() {
        let lam = P::var(2, 1);
        let x = P::var(2, 0);
        let p = lam.pow(2).mul(&x).add(&x.pow(3).scale(&QSqrt3::sqrt3()));
        assert_eq!(p.coefficient_of(1, 2), x);
        assert_eq!(p.coefficient_of(1, 0), x.pow(3).scale(&QSqrt3::sqrt3()));
        assert_eq!(p.eval(&[QSqrt3::int(2), QSqrt3::int(1)]), QSqrt3::int(2) + QSqrt3::sqrt3_frac(8, 1));
    }
}
