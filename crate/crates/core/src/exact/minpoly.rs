//! Minimal polynomials by Krylov iteration and their rational roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, RealField};
use super::matrix::DenseMatrix;
use super::rational::Rational;
use super::sparse::SparseMatrix;

/// A square linear operator given by its action on vectors.
pub trait LinearOp<F> {
    fn dim(&self) -> usize;
    fn apply(&self, v: &[F]) -> Vec<F>;
}

impl<F: Field> LinearOp<F> for DenseMatrix<F> {
    fn dim(&self) -> usize {
        assert!(self.is_square());
        self.rows()
    }
    fn apply(&self, v: &[F]) -> Vec<F> {
        self.mul_vec(v)
    }
}

impl<F: Field> LinearOp<F> for SparseMatrix<F> {
    fn dim(&self) -> usize {
        assert_eq!(self.rows, self.cols);
        self.rows
    }
    fn apply(&self, v: &[F]) -> Vec<F> {
        self.mul_vec(v)
    }
}

/// Vector with independent entries `p/q`, `|p| ≤ 9`, `1 ≤ q ≤ 4`.
pub fn random_vector<F: RealField>(dim: usize, rng: &mut ChaCha8Rng) -> Vec<F> {
    (0..dim)
        .map(|_| {
            let p: i64 = rng.gen_range(-9..=9);
            let q: i64 = rng.gen_range(1..=4);
            F::from_rational(&Rational::new(p, q))
        })
        .collect()
}

/// Monic polynomial of least degree annihilating `v` under `op`,
/// coefficients listed from the constant term upward.
pub fn krylov_minpoly<F: Field>(op: &dyn LinearOp<F>, v: &[F]) -> Vec<F> {
    let n = op.dim();
    // echelon rows of reduced Krylov vectors, each with the combination of
    // raw Krylov vectors it equals
    let mut basis: Vec<(usize, Vec<F>, Vec<F>)> = Vec::new();
    let mut cur = v.to_vec();
    for k in 0..=n {
        let mut r = cur.clone();
        let mut comb = vec![F::zero(); k + 1];
        comb[k] = F::one();
        for (piv, brow, bcomb) in &basis {
            let f = r[*piv].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(brow) {
                x.sub_mul(&f, y);
            }
            for (x, y) in comb.iter_mut().zip(bcomb) {
                x.sub_mul(&f, y);
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => return comb,
            Some(piv) => {
                let inv = r[piv].inv().expect("nonzero");
                for x in r.iter_mut() {
                    *x = x.mul_ref(&inv);
                }
                for x in comb.iter_mut() {
                    *x = x.mul_ref(&inv);
                }
                basis.push((piv, r, comb));
            }
        }
        cur = op.apply(&cur);
    }
    unreachable!("Krylov sequence exceeds the dimension")
}

/// `p(op)·v` by Horner's scheme.
pub fn apply_poly<F: Field>(op: &dyn LinearOp<F>, coeffs: &[F], v: &[F]) -> Vec<F> {
    let mut acc = vec![F::zero(); v.len()];
    for c in coeffs.iter().rev() {
        acc = op.apply(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            a.add_mul(c, x);
        }
    }
    acc
}

/// Minimal polynomial of `op` (constant term first, monic), found from the
/// Krylov sequence of a random vector and then confirmed on every standard
/// basis vector; a failed confirmation retries with a fresh vector.
pub fn minimal_polynomial<F: RealField>(op: &dyn LinearOp<F>, rng: &mut ChaCha8Rng) -> Vec<F> {
    let n = op.dim();
    loop {
        let v = random_vector::<F>(n, rng);
        let p = krylov_minpoly(op, &v);
        let ok = (0..n).all(|j| {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            apply_poly(op, &p, &e).iter().all(|x| x.is_zero())
        });
        if ok {
            return p;
        }
    }
}

pub fn poly_eval<F: Field>(coeffs: &[F], x: &F) -> F {
    coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
}

/// Divides by `(x − r)`, assuming `r` is a root.
fn deflate<F: Field>(coeffs: &[F], r: &F) -> Vec<F> {
    let d = coeffs.len() - 1;
    let mut out = vec![F::zero(); d];
    let mut carry = F::zero();
    for i in (1..=d).rev() {
        carry = carry.mul_ref(r).add_ref(&coeffs[i]);
        out[i - 1] = carry.clone();
    }
    out
}

/// Complex roots by the Durand–Kerner iteration (numerical guidance only).
fn approximate_roots(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let c: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    let bound = 1.0 + c[..d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            (bound * ang.cos(), bound * ang.sin())
        })
        .collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..d {
            let mut num = (1.0, 0.0);
            for k in (0..d).rev() {
                num = mul(num, z[i]);
                num.0 += c[k];
            }
            let mut den = (1.0, 0.0);
            for j in 0..d {
                if j != i {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            if den.0 == 0.0 && den.1 == 0.0 {
                den = (1e-12, 0.0);
            }
            let step = div(num, den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            delta = delta.max(step.0.hypot(step.1));
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    z
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2.abs() > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::from(h2.clone()) / Rational::from(k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Rational roots of a polynomial (constant term first) with multiplicity,
/// plus the cofactor left after dividing them out.
pub fn rational_roots<F: RealField>(coeffs: &[F]) -> (Vec<Rational>, Vec<F>) {
    let mut p: Vec<F> = coeffs.to_vec();
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Rational::zero());
        p = deflate(&p, &F::zero());
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        let approx = approximate_roots(&p.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
        let mut found = None;
        'search: for (re, im) in approx {
            if im.abs() > 1e-6 * (1.0 + re.abs()) {
                continue;
            }
            for cand in convergents(re, 1_000_000) {
                let r = F::from_rational(&cand);
                if poly_eval(&p, &r).is_zero() {
                    found = Some((cand, r));
                    break 'search;
                }
            }
            let near = Rational::from(BigInt::from(re.round() as i64));
            let r = F::from_rational(&near);
            if poly_eval(&p, &r).is_zero() {
                found = Some((near, r));
                break 'search;
            }
        }
        match found {
            Some((cand, r)) => {
                roots.push(cand);
                p = deflate(&p, &r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, p)
}

/// Integer value of a rational, if it is one and fits `i64`.
pub fn as_i64(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.numer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::QSqrt3;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn identity_and_diagonal() {
        let id = DenseMatrix::<QSqrt3>::identity(3);
        let p = minimal_polynomial(&id, &mut rng());
        assert_eq!(p, vec![QSqrt3::int(-1), QSqrt3::int(1)]);
        let d = DenseMatrix::diagonal(&[QSqrt3::int(2), QSqrt3::int(2), QSqrt3::int(5)]);
        let p = minimal_polynomial(&d, &mut rng());
        assert_eq!(p, vec![QSqrt3::int(10), QSqrt3::int(-7), QSqrt3::int(1)]);
        let (roots, rest) = rational_roots(&p);
        assert_eq!(roots, vec![Rational::from(2), Rational::from(5)]);
        assert_eq!(rest.len(), 1);
    }

    #[test]
    fn roots_with_fractions_and_zero() {
        // x (x + 3/2)(x − 7)(x² + 1)
        let c: Vec<Rational> = [0, -21, -11, -19, -11, 2].iter().map(|&v| Rational::new(v, 2)).collect();
        let (roots, rest) = rational_roots(&c);
        assert_eq!(roots, vec![Rational::new(-3, 2), Rational::zero(), Rational::from(7)]);
        assert_eq!(rest.len(), 3);
    }

    #[test]
    fn non_diagonalizable_minpoly_has_repeated_root() {
        let j = DenseMatrix::from_rows(vec![
            vec![QSqrt3::int(3), QSqrt3::int(1)],
            vec![QSqrt3::int(0), QSqrt3::int(3)],
        ]);
        let p = minimal_polynomial(&j, &mut rng());
        assert_eq!(p.len(), 3);
        let (roots, _) = rational_roots(&p);
        assert_eq!(roots, vec![Rational::from(3), Rational::from(3)]);
    }
}
