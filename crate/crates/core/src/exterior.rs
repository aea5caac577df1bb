//! Constant-coefficient exterior algebra on a coframe of at most 32 one-forms.
//!
//! A basis monomial `θ^{i₁}∧…∧θ^{i_k}` with `i₁ < … < i_k` is stored as the
//! bitmask with bits `i₁, …, i_k` set (indices are 0-based in code and
//! 1-based in text and JSON).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::exact::{DenseMatrix, Field};
use crate::tensor::SymmetricTensor;
use crate::Scalar;

pub const MAX_FORM_DIM: usize = 32;

/// Parity of the number of pairs `(i ∈ a, j ∈ b)` with `i > j`, i.e. the sign
/// of `θ^a ∧ θ^b` relative to the sorted monomial.
#[inline]
pub fn wedge_sign(a: u32, b: u32) -> i8 {
    let mut count = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        bb &= bb - 1;
        // elements of a above j
        count += (a >> j >> 1).count_ones();
    }
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn mask_of(idx: &[usize]) -> Option<u32> {
    let mut m = 0u32;
    for &i in idx {
        if i >= MAX_FORM_DIM || m & (1 << i) != 0 {
            return None;
        }
        m |= 1 << i;
    }
    Some(m)
}

pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// An alternating form of fixed degree on an `N`-dimensional coframe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form<F> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<u32, F>,
}

impl<F: Field> Form<F> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_FORM_DIM, "coframe too large");
        assert!(degree <= dim, "degree exceeds dimension");
        Form { dim, degree, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: F) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(0, c);
        f
    }

    /// `θ^i` (0-based).
    pub fn basis1(dim: usize, i: usize) -> Self {
        Self::monomial(dim, &[i], F::one())
    }

    /// `c · θ^{i₁}∧…∧θ^{i_k}` for any index order (the sign is absorbed);
    /// repeated indices give zero.
    pub fn monomial(dim: usize, idx: &[usize], c: F) -> Self {
        let mut f = Self::zero(dim, idx.len());
        assert!(idx.iter().all(|&i| i < dim), "index out of range");
        let Some(mask) = mask_of(idx) else {
            return f;
        };
        let mut sign = 1i8;
        let mut sorted = idx.to_vec();
        // bubble sort parity
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let c = if sign < 0 { c.neg_ref() } else { c };
        f.add_term(mask, c);
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mask: u32, c: F) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    /// Coefficient of the sorted monomial with the given (0-based) indices,
    /// adjusted by the sign of sorting them.
    pub fn coeff(&self, idx: &[usize]) -> F {
        if idx.len() != self.degree {
            return F::zero();
        }
        let unit = Self::monomial(self.dim, idx, F::one());
        match unit.terms.iter().next() {
            None => F::zero(),
            Some((m, s)) => self.terms.get(m).map_or_else(F::zero, |c| c.mul_ref(s)),
        }
    }

    pub fn coeff_mask(&self, mask: u32) -> F {
        self.terms.get(&mask).cloned().unwrap_or_else(F::zero)
    }

    /// `(mask, coefficient)` pairs in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &F)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Terms as (0-based index list, coefficient), sorted lexicographically
    /// by index list.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, F)> {
        let mut v: Vec<(Vec<usize>, F)> = self.terms.iter().map(|(m, c)| (indices_of(*m), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    fn check_same(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "coframe dimension mismatch");
        assert_eq!(self.degree, o.degree, "degree mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_same(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.neg_ref());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg_ref())
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut r = Self::zero(self.dim, self.degree);
        if s.is_zero() {
            return r;
        }
        for (m, c) in &self.terms {
            r.terms.insert(*m, c.mul_ref(s));
        }
        r
    }

    /// `self += s · o`
    pub fn add_scaled(&mut self, s: &F, o: &Self) {
        self.check_same(o);
        if s.is_zero() {
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(*m, c.mul_ref(s));
        }
    }

    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "coframe dimension mismatch");
        let mut r = Self::zero(self.dim, self.degree + o.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a & b != 0 {
                    continue;
                }
                let p = ca.mul_ref(cb);
                let p = if wedge_sign(*a, *b) < 0 { p.neg_ref() } else { p };
                r.add_term(a | b, p);
            }
        }
        r
    }

    /// True when every term only involves indices in `0..n`.
    pub fn lives_on(&self, n: usize) -> bool {
        let allowed: u32 = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
        self.terms.keys().all(|m| m & !allowed == 0)
    }

    /// Part of the form whose terms only involve indices in `0..n`.
    pub fn restrict_to(&self, n: usize) -> Self {
        let allowed: u32 = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut r = Self::zero(self.dim, self.degree);
        for (m, c) in &self.terms {
            if m & !allowed == 0 {
                r.terms.insert(*m, c.clone());
            }
        }
        r
    }

    /// Same coefficients viewed on a coframe of another dimension; every
    /// index must fit.
    pub fn reembed(&self, dim: usize) -> Self {
        assert!(self.lives_on(dim), "form does not fit the target coframe");
        Form { dim, degree: self.degree, terms: self.terms.clone() }
    }

    /// Euclidean Hodge star on the first `n` directions with orientation
    /// `θ¹∧…∧θⁿ`: `*θ^I = ε(I, Iᶜ) θ^{Iᶜ}`.
    pub fn hodge_star(&self, n: usize) -> Result<Self> {
        if !self.lives_on(n) {
            return Err(GeomError::InvalidStructure("Hodge star of a form with fiber directions".into()));
        }
        let full: u32 = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut r = Self::zero(self.dim, n - self.degree);
        for (m, c) in &self.terms {
            let comp = full & !m;
            let s = wedge_sign(*m, comp);
            r.add_term(comp, if s < 0 { c.neg_ref() } else { c.clone() });
        }
        Ok(r)
    }

    /// Derivation action `(X·a)(v₁,…) = −Σ a(…, X vᵢ, …)` of an `n×n` matrix
    /// on the first `n` directions.
    pub fn derivation_action(&self, x: &DenseMatrix<F>) -> Self {
        let n = x.rows();
        assert!(self.lives_on(n), "form has components outside the matrix block");
        let mut r = Self::zero(self.dim, self.degree);
        for (mask, c) in &self.terms {
            for j in indices_of(*mask) {
                let rest = mask & !(1u32 << j);
                for i in 0..n {
                    let xji = x.get(j, i);
                    if xji.is_zero() || (i != j && rest & (1 << i) != 0) {
                        continue;
                    }
                    // θ^j replaced by θ^i in place: sign from elements strictly between
                    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                    let between = if hi - lo > 1 { rest & (((1u32 << hi) - 1) & !((1u32 << (lo + 1)) - 1)) } else { 0 };
                    let mut v = c.mul_ref(xji).neg_ref();
                    if between.count_ones() % 2 == 1 {
                        v = v.neg_ref();
                    }
                    r.add_term(rest | (1 << i), v);
                }
            }
        }
        r
    }

    /// Coefficient vector in the basis of sorted `degree`-subsets of `0..n`
    /// (lexicographic order, see [`form_basis`]).
    pub fn to_vector(&self, basis: &FormBasis) -> Vec<F> {
        let mut v = vec![F::zero(); basis.len()];
        for (m, c) in &self.terms {
            let pos = basis.position(*m).expect("term outside basis");
            v[pos] = c.clone();
        }
        v
    }

    pub fn from_vector(dim: usize, basis: &FormBasis, v: &[F]) -> Self {
        let mut f = Self::zero(dim, basis.degree);
        for (i, c) in v.iter().enumerate() {
            f.add_term(basis.masks[i], c.clone());
        }
        f
    }
}

/// Lexicographically ordered basis of `Λᵏ` on the first `n` directions.
#[derive(Clone, Debug)]
pub struct FormBasis {
    pub n: usize,
    pub degree: usize,
    pub masks: Vec<u32>,
    index: std::collections::HashMap<u32, usize>,
}

impl FormBasis {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn position(&self, mask: u32) -> Option<usize> {
        self.index.get(&mask).copied()
    }
}

pub fn form_basis(n: usize, degree: usize) -> FormBasis {
    let mut masks = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<u32>) {
        if cur.len() == k {
            out.push(mask_of(cur).unwrap());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, degree, 0, &mut cur, &mut masks);
    let index = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    FormBasis { n, degree, masks, index }
}

/// Derivation action on a symmetric tensor:
/// `(X·Υ)_{i₁…i_p} = −Σ_j Σ_m X_{m i_j} Υ_{i₁…m…i_p}`.
pub fn derivation_action_sym<F: Field>(x: &DenseMatrix<F>, t: &SymmetricTensor<F>) -> SymmetricTensor<F> {
    let n = t.dim();
    assert_eq!(x.rows(), n);
    let p = t.rank();
    let mut out = SymmetricTensor::zero(n, p);
    for key in crate::tensor::sorted_tuples(n, p) {
        let idx: Vec<usize> = key.iter().map(|&i| i as usize).collect();
        let mut acc = F::zero();
        for j in 0..p {
            let mut moved = idx.clone();
            for m in 0..n {
                let xm = x.get(m, idx[j]);
                if xm.is_zero() {
                    continue;
                }
                moved[j] = m;
                let v = t.get(&moved);
                acc.sub_mul(xm, &v);
            }
        }
        out.set(&idx, acc);
    }
    out
}

/// Exterior derivative data: `dθ^I` for every coframe direction, with the
/// first `base` directions forming the θ-block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoframePresentation {
    pub base: usize,
    pub differentials: Vec<Form<Scalar>>,
}

impl CoframePresentation {
    pub fn new(base: usize, differentials: Vec<Form<Scalar>>) -> Result<Self> {
        let dim = differentials.len();
        for d in &differentials {
            if d.dim() != dim || d.degree() != 2 {
                return Err(GeomError::InvalidStructure("differentials must be 2-forms on the coframe".into()));
            }
        }
        Ok(CoframePresentation { base, differentials })
    }

    pub fn dim(&self) -> usize {
        self.differentials.len()
    }

    /// Leibniz extension: `d(θ^{i₁}∧…∧θ^{i_k}) = Σ_p (−1)^{p} θ^{i₁}∧…∧dθ^{i_p}∧…`.
    pub fn d(&self, a: &Form<Scalar>) -> Form<Scalar> {
        assert_eq!(a.dim(), self.dim());
        let mut r = Form::zero(self.dim(), a.degree() + 1);
        for (mask, c) in a.terms() {
            let idx = indices_of(mask);
            for (p, &i) in idx.iter().enumerate() {
                let before = mask_of(&idx[..p]).unwrap();
                let after = mask_of(&idx[p + 1..]).unwrap();
                let left = Form::from_mask(self.dim(), before, Scalar::from(1));
                let right = Form::from_mask(self.dim(), after, Scalar::from(1));
                let mut term = left.wedge(&self.differentials[i]).wedge(&right);
                let mut coef = c.clone();
                if p % 2 == 1 {
                    coef = coef.neg_ref();
                }
                term = term.scale(&coef);
                r = r.add(&term);
            }
        }
        r
    }

    /// Indices whose differential fails `d(dθ^I) = 0`.
    pub fn jacobi_failures(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.d(&self.differentials[i]).is_zero()).collect()
    }
}

impl<F: Field> Form<F> {
    /// Form with a single sorted monomial given by its mask.
    pub fn from_mask(dim: usize, mask: u32, c: F) -> Self {
        let mut f = Self::zero(dim, mask.count_ones() as usize);
        f.add_term(mask, c);
        f
    }
}

impl<F: Field> fmt::Debug for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(idx, c)| {
                let s: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                format!("({c})θ^{}", s.join("."))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<usize>,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    n: usize,
    degree: usize,
    terms: Vec<TermJson>,
}

/// JSON shape `{"n": N, "degree": k, "terms": [{"idx": [..], "c": ".."}]}`
/// with 1-based strictly increasing indices, terms in lexicographic order.
impl Serialize for Form<Scalar> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(idx, c)| TermJson { idx: idx.iter().map(|i| i + 1).collect(), c })
            .collect();
        FormJson { n: self.dim, degree: self.degree, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Form<Scalar> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let j = FormJson::deserialize(d)?;
        if j.n > MAX_FORM_DIM || j.degree > j.n {
            return Err(D::Error::custom("invalid form dimensions"));
        }
        let mut f = Form::zero(j.n, j.degree);
        for t in j.terms {
            if t.idx.len() != j.degree || t.idx.iter().any(|&i| i == 0 || i > j.n) {
                return Err(D::Error::custom("term index out of range"));
            }
            if !t.idx.windows(2).all(|w| w[0] < w[1]) {
                return Err(D::Error::custom("term indices must be strictly increasing"));
            }
            let idx: Vec<usize> = t.idx.iter().map(|i| i - 1).collect();
            f.add_term(mask_of(&idx).unwrap(), t.c);
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::KForm;

    fn th(n: usize, i: usize) -> KForm {
        KForm::basis1(n, i - 1)
    }

    #[test]
    fn wedge_basics() {
        let a = th(8, 1);
        assert!(a.wedge(&a).is_zero());
        let b = th(8, 2);
        assert!(a.wedge(&b).add(&b.wedge(&a)).is_zero());
        // τ₃ = θ¹² + 2θ⁴³
        let tau3 = KForm::monomial(8, &[0, 1], Scalar::from(1)).add(&KForm::monomial(8, &[3, 2], Scalar::from(2)));
        let w = tau3.wedge(&th(8, 8));
        let expected = KForm::monomial(8, &[0, 1, 7], Scalar::from(1)).add(&KForm::monomial(8, &[2, 3, 7], Scalar::from(-2)));
        assert_eq!(w, expected);
    }

    #[test]
    fn hodge_examples() {
        let s = th(8, 1).hodge_star(8).unwrap();
        assert_eq!(s, KForm::monomial(8, &[1, 2, 3, 4, 5, 6, 7], Scalar::from(1)));
        let s2 = KForm::monomial(8, &[0, 1], Scalar::from(1)).hodge_star(8).unwrap();
        assert_eq!(s2, KForm::monomial(8, &[2, 3, 4, 5, 6, 7], Scalar::from(1)));
        let w = KForm::monomial(8, &[0, 3, 6], Scalar::sqrt3()).add(&KForm::monomial(8, &[1, 2, 5], Scalar::from(2)));
        assert_eq!(w.hodge_star(8).unwrap().hodge_star(8).unwrap(), w.neg());
        assert!(th(10, 9).hodge_star(8).is_err());
    }

    #[test]
    fn derivation_matches_tensor_rule() {
        // antisymmetric X on θ¹∧θ²: X·θ^j = −Σ_i X_{ji} θ^i
        let mut x = crate::Mat::zeros(3, 3);
        x.set(0, 2, Scalar::from(1));
        x.set(2, 0, Scalar::from(-1));
        let a = KForm::monomial(3, &[0, 1], Scalar::from(1));
        // X·θ¹ = −θ³, X·θ² = 0 → −θ³∧θ² = θ²∧θ³
        assert_eq!(a.derivation_action(&x), KForm::monomial(3, &[1, 2], Scalar::from(1)));
        let g = SymmetricTensor::metric(3);
        assert!(derivation_action_sym(&x, &g).is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let w = KForm::monomial(8, &[0, 4, 5], Scalar::sqrt3()).add(&KForm::monomial(8, &[5, 6, 7], Scalar::from(1)));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":8,"degree":3,"terms":[{"idx":[1,5,6],"c":"0+1*sqrt3"},{"idx":[6,7,8],"c":"1"}]}"#);
        let back: KForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        let z = KForm::zero(8, 3);
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"{"n":8,"degree":3,"terms":[]}"#);
    }
}
