//! The normed division algebras R ⊂ C ⊂ H ⊂ O inside one octonion table, and
//! the Hermitian 3×3 matrix built from a vector of R^(3k+2).
//!
//! Octonion units are `e0..e7` with `e0 = 1`, `e_μ² = −1`, and for each
//! μ ∈ 1..7 the triple `(e_μ, e_{μ+1}, e_{μ+3})` (indices reduced into 1..7)
//! multiplies cyclically: `e_μ e_{μ+1} = e_{μ+3}` and so on. The complex
//! numbers are span(e0, e1) and the quaternions span(e0, e1, e2, e4).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::exact::poly::Polynomial;
use crate::exact::Field;
use crate::Scalar;

/// Which division algebra; `k` is its real dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraTag {
    R,
    C,
    H,
    O,
}

impl AlgebraTag {
    pub fn from_k(k: u32) -> Result<Self> {
        match k {
            1 => Ok(AlgebraTag::R),
            2 => Ok(AlgebraTag::C),
            4 => Ok(AlgebraTag::H),
            8 => Ok(AlgebraTag::O),
            _ => Err(GeomError::UnsupportedK(k)),
        }
    }

    pub fn k(self) -> usize {
        match self {
            AlgebraTag::R => 1,
            AlgebraTag::C => 2,
            AlgebraTag::H => 4,
            AlgebraTag::O => 8,
        }
    }

    /// Dimension `n_k = 3k + 2` of the space carrying the cubic form.
    pub fn n(self) -> usize {
        3 * self.k() + 2
    }

    /// Octonion units spanning this subalgebra.
    pub fn units(self) -> &'static [usize] {
        match self {
            AlgebraTag::R => &[0],
            AlgebraTag::C => &[0, 1],
            AlgebraTag::H => &[0, 1, 2, 4],
            AlgebraTag::O => &[0, 1, 2, 3, 4, 5, 6, 7],
        }
    }

    pub fn contains_unit(self, e: usize) -> bool {
        self.units().contains(&e)
    }
}

/// The seven oriented Fano triples `(μ, μ+1, μ+3)`.
pub fn fano_triples() -> [(usize, usize, usize); 7] {
    let red = |i: usize| if i > 7 { i - 7 } else { i };
    let mut t = [(0, 0, 0); 7];
    for (m, slot) in (1..=7).zip(t.iter_mut()) {
        *slot = (m, red(m + 1), red(m + 3));
    }
    t
}

/// `e_i e_j = sign · e_k`, returned as `(sign, k)`.
pub fn unit_product(i: usize, j: usize) -> (i8, usize) {
    assert!(i < 8 && j < 8);
    if i == 0 {
        return (1, j);
    }
    if j == 0 {
        return (1, i);
    }
    if i == j {
        return (-1, 0);
    }
    for (a, b, c) in fano_triples() {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            if (i, j) == (x, y) {
                return (1, z);
            }
            if (i, j) == (y, x) {
                return (-1, z);
            }
        }
    }
    unreachable!("every pair of distinct imaginary units lies on one triple")
}

/// Coefficient ring for octonion entries: scalars or polynomials.
pub trait Coefficient: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn sub_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn scale_c(&self, s: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::default()
    }
    fn is_zero_coeff(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_c(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub_c(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul_c(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg_c(&self) -> Self {
        self.neg_ref()
    }
    fn scale_c(&self, s: &Scalar) -> Self {
        self.mul_ref(s)
    }
}

impl Coefficient for Polynomial<Scalar> {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_c(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_c(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_c(&self) -> Self {
        self.neg()
    }
    fn scale_c(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

/// `Σ c_i e_i` restricted to the subalgebra named by `tag`.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<C> {
    pub tag: AlgebraTag,
    pub coeffs: [C; 8],
}

impl<C: Coefficient> AlgebraElement<C> {
    /// Zero element; `proto` only fixes the shape of the coefficients.
    pub fn zero(tag: AlgebraTag, proto: &C) -> Self {
        let z = proto.zero_like();
        AlgebraElement { tag, coeffs: std::array::from_fn(|_| z.clone()) }
    }

    /// Builds an element, rejecting components outside the subalgebra.
    pub fn new(tag: AlgebraTag, coeffs: [C; 8]) -> Result<Self> {
        for (e, c) in coeffs.iter().enumerate() {
            if !tag.contains_unit(e) && !c.is_zero_coeff() {
                return Err(GeomError::InvalidStructure(format!(
                    "component e{e} is not in the {tag:?} subalgebra"
                )));
            }
        }
        Ok(AlgebraElement { tag, coeffs })
    }

    pub fn real(tag: AlgebraTag, c: C) -> Self {
        let mut a = Self::zero(tag, &c);
        a.coeffs[0] = c;
        a
    }

    pub fn multiply(&self, o: &Self) -> Result<Self> {
        if self.tag != o.tag {
            return Err(GeomError::InvalidStructure(format!(
                "cannot multiply {:?} by {:?} element",
                self.tag, o.tag
            )));
        }
        let mut out = Self::zero(self.tag, &self.coeffs[0]);
        for i in 0..8 {
            if self.coeffs[i].is_zero_coeff() {
                continue;
            }
            for j in 0..8 {
                if o.coeffs[j].is_zero_coeff() {
                    continue;
                }
                let (s, k) = unit_product(i, j);
                let p = self.coeffs[i].mul_c(&o.coeffs[j]);
                out.coeffs[k] = if s > 0 { out.coeffs[k].add_c(&p) } else { out.coeffs[k].sub_c(&p) };
            }
        }
        Ok(out)
    }

    pub fn conjugate(&self) -> Self {
        let mut c = self.clone();
        for x in c.coeffs.iter_mut().skip(1) {
            *x = x.neg_c();
        }
        c
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.clone();
        for (x, y) in c.coeffs.iter_mut().zip(&o.coeffs) {
            *x = x.add_c(y);
        }
        c
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut c = self.clone();
        for (x, y) in c.coeffs.iter_mut().zip(&o.coeffs) {
            *x = x.sub_c(y);
        }
        c
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut c = self.clone();
        for x in c.coeffs.iter_mut() {
            *x = x.scale_c(s);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_coeff())
    }

    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero_coeff())
    }

    /// The `e0` component, or an error if any imaginary part survives.
    pub fn real_part_checked(&self) -> Result<C> {
        if !self.is_real() {
            return Err(GeomError::InvalidStructure(
                "product has a nonzero imaginary component".into(),
            ));
        }
        Ok(self.coeffs[0].clone())
    }
}

impl AlgebraElement<Scalar> {
    pub fn unit(tag: AlgebraTag, e: usize) -> Result<Self> {
        let mut c: [Scalar; 8] = Default::default();
        c[e] = Scalar::int(1);
        Self::new(tag, c)
    }

    /// `Σ c_i²`
    pub fn norm(&self) -> Scalar {
        self.coeffs.iter().fold(Scalar::default(), |acc, c| acc.add_ref(&c.mul_ref(c)))
    }
}

impl<C: Coefficient + fmt::Debug> fmt::Debug for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.tag, self.coeffs)
    }
}

/// Octonion coordinates of `X¹, X², X³` in terms of the 1-based coordinates
/// of a vector in R^26, per unit `e0, e1, e2, e3, e4, e5, e6, e7`.
const EMBED: [[usize; 8]; 3] = [
    [1, 6, 9, 15, 10, 16, 17, 18],
    [2, 7, 11, 19, 12, 20, 21, 22],
    [3, 8, 13, 23, 14, 24, 25, 26],
];

/// The pieces `(X¹, X², X³, x⁴, x⁵)` of a vector in R^(3k+2).
#[derive(Clone, Debug)]
pub struct Embedded<C: Coefficient + fmt::Debug> {
    pub x: [AlgebraElement<C>; 3],
    pub x4: C,
    pub x5: C,
}

pub fn embed_vector<C: Coefficient + fmt::Debug>(x: &[C], k: u32) -> Result<Embedded<C>> {
    let tag = AlgebraTag::from_k(k)?;
    let n = tag.n();
    if x.len() != n {
        return Err(GeomError::DimensionMismatch { expected: n, found: x.len() });
    }
    let zero = x[0].zero_like();
    let build = |row: usize| {
        let coeffs: [C; 8] = std::array::from_fn(|e| {
            let coord = EMBED[row][e];
            if coord <= n {
                x[coord - 1].clone()
            } else {
                zero.clone()
            }
        });
        AlgebraElement::new(tag, coeffs)
    };
    Ok(Embedded { x: [build(0)?, build(1)?, build(2)?], x4: x[3].clone(), x5: x[4].clone() })
}

/// Hermitian 3×3 matrix over the algebra; `diag` are real entries, and the
/// lower triangle is the conjugate of the upper one.
#[derive(Clone, Debug)]
pub struct HermitianMatrix3<C: Coefficient + fmt::Debug> {
    pub diag: [C; 3],
    pub a12: AlgebraElement<C>,
    pub a13: AlgebraElement<C>,
    pub a23: AlgebraElement<C>,
}

impl<C: Coefficient + fmt::Debug> HermitianMatrix3<C> {
    /// Entry `(i, j)`, 0-based, as an algebra element.
    pub fn entry(&self, i: usize, j: usize) -> AlgebraElement<C> {
        let tag = self.a12.tag;
        match (i, j) {
            (a, b) if a == b => AlgebraElement::real(tag, self.diag[a].clone()),
            (0, 1) => self.a12.clone(),
            (0, 2) => self.a13.clone(),
            (1, 2) => self.a23.clone(),
            (1, 0) => self.a12.conjugate(),
            (2, 0) => self.a13.conjugate(),
            (2, 1) => self.a23.conjugate(),
            _ => panic!("index out of range"),
        }
    }
}

/// diag(x⁵−√3x⁴, x⁵+√3x⁴, −2x⁵), a₁₂ = √3X³, a₁₃ = √3X², a₂₃ = √3X¹.
pub fn hermitian_matrix<C: Coefficient + fmt::Debug>(e: &Embedded<C>) -> HermitianMatrix3<C> {
    let s3 = Scalar::sqrt3();
    let s3x4 = e.x4.scale_c(&s3);
    HermitianMatrix3 {
        diag: [e.x5.sub_c(&s3x4), e.x5.add_c(&s3x4), e.x5.scale_c(&Scalar::int(-2))],
        a12: e.x[2].scale(&s3),
        a13: e.x[1].scale(&s3),
        a23: e.x[0].scale(&s3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn unit(e: usize) -> AlgebraElement<Scalar> {
        AlgebraElement::unit(AlgebraTag::O, e).unwrap()
    }

    fn mul(a: &AlgebraElement<Scalar>, b: &AlgebraElement<Scalar>) -> AlgebraElement<Scalar> {
        a.multiply(b).unwrap()
    }

    #[test]
    fn table_examples() {
        assert_eq!(mul(&unit(0), &unit(5)), unit(5));
        assert_eq!(mul(&unit(1), &unit(2)), unit(4));
        assert_eq!(mul(&unit(2), &unit(1)), unit(4).scale(&Scalar::int(-1)));
        assert_eq!(
            fano_triples(),
            [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]
        );
    }

    #[test]
    fn table_is_antisymmetric_and_alternative() {
        for i in 1..8 {
            assert_eq!(unit_product(i, i), (-1, 0));
            for j in 1..8 {
                if i != j {
                    let (s, k) = unit_product(i, j);
                    assert_eq!(unit_product(j, i), (-s, k));
                }
                // a(ab) = (aa)b
                let a = unit(i);
                let b = unit(j);
                assert_eq!(mul(&a, &mul(&a, &b)), mul(&mul(&a, &a), &b));
            }
        }
    }

    #[test]
    fn subalgebras_close() {
        for tag in [AlgebraTag::C, AlgebraTag::H] {
            for &i in tag.units() {
                for &j in tag.units() {
                    assert!(tag.contains_unit(unit_product(i, j).1));
                }
            }
        }
        assert!(AlgebraElement::unit(AlgebraTag::H, 3).is_err());
    }

    #[test]
    fn embedding_examples() {
        let mut x = vec![Scalar::zero(); 26];
        x[25] = Scalar::int(1);
        let e = embed_vector(&x, 8).unwrap();
        assert_eq!(e.x[2], unit(7));
        assert!(e.x[0].is_zero() && e.x[1].is_zero());

        let mut x = vec![Scalar::zero(); 8];
        x[5] = Scalar::int(1);
        let e = embed_vector(&x, 2).unwrap();
        assert_eq!(e.x[0].coeffs[1], Scalar::int(1));

        let mut x = vec![Scalar::zero(); 5];
        x[4] = Scalar::int(1);
        let h = hermitian_matrix(&embed_vector(&x, 1).unwrap());
        assert_eq!(h.diag, [Scalar::int(1), Scalar::int(1), Scalar::int(-2)]);

        let mut x = vec![Scalar::zero(); 5];
        x[2] = Scalar::int(1);
        let h = hermitian_matrix(&embed_vector(&x, 1).unwrap());
        assert_eq!(h.a12.coeffs[0], Scalar::sqrt3());
        assert_eq!(h.entry(1, 0), h.entry(0, 1));
        assert!(embed_vector(&x, 3).is_err());
        assert!(embed_vector(&x, 2).is_err());
    }
}
