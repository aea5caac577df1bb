//! Totally symmetric covariant tensors on R^n.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::exact::poly::Polynomial;
use crate::exact::Field;
use crate::Scalar;

/// A symmetric rank-`p` tensor stored by sorted index tuples (0-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricTensor<F> {
    n: usize,
    rank: usize,
    entries: BTreeMap<Vec<u8>, F>,
}

/// Number of distinct orderings of a sorted multi-index.
pub fn multinomial_count(sorted: &[u8]) -> i64 {
    let mut fact = [1i64; 16];
    for i in 1..16 {
        fact[i] = fact[i - 1] * i as i64;
    }
    let mut count = fact[sorted.len()];
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        count /= fact[j - i];
        i = j;
    }
    count
}

/// All non-decreasing index tuples of length `rank` over `0..n`.
pub fn sorted_tuples(n: usize, rank: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(rank);
    fn rec(n: usize, rank: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == rank {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(n, rank, i, cur, out);
            cur.pop();
        }
    }
    rec(n, rank, 0, &mut cur, &mut out);
    out
}

impl<F: Field> SymmetricTensor<F> {
    pub fn zero(n: usize, rank: usize) -> Self {
        SymmetricTensor { n, rank, entries: BTreeMap::new() }
    }

    /// The Euclidean metric `δ_IJ`.
    pub fn metric(n: usize) -> Self {
        let mut g = Self::zero(n, 2);
        for i in 0..n {
            g.set(&[i, i], F::one());
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn key(&self, idx: &[usize]) -> Vec<u8> {
        assert_eq!(idx.len(), self.rank, "wrong number of indices");
        let mut k: Vec<u8> = idx
            .iter()
            .map(|&i| {
                assert!(i < self.n, "index out of range");
                i as u8
            })
            .collect();
        k.sort_unstable();
        k
    }

    /// Entry at any (unsorted) index tuple.
    pub fn get(&self, idx: &[usize]) -> F {
        self.entries.get(&self.key(idx)).cloned().unwrap_or_else(F::zero)
    }

    pub fn get_sorted(&self, key: &[u8]) -> Option<&F> {
        self.entries.get(key)
    }

    pub fn set(&mut self, idx: &[usize], v: F) {
        let k = self.key(idx);
        if v.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
    }

    /// Nonzero entries by sorted index tuple.
    pub fn entries(&self) -> impl Iterator<Item = (&[u8], &F)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut t = Self::zero(self.n, self.rank);
        for (k, v) in &self.entries {
            let w = v.mul_ref(s);
            if !w.is_zero() {
                t.entries.insert(k.clone(), w);
            }
        }
        t
    }

    /// Symmetric coefficients of a form homogeneous of degree `rank` in the
    /// first `n` variables of `p`: each monomial's coefficient divided by
    /// the number of index orderings producing it.
    pub fn from_polynomial(p: &Polynomial<F>, n: usize, rank: usize) -> Result<Self> {
        let mut t = Self::zero(n, rank);
        for (exps, c) in p.terms() {
            if exps.iter().skip(n).any(|&e| e != 0) || exps.iter().sum::<u32>() as usize != rank {
                return Err(GeomError::InvalidStructure(format!(
                    "polynomial is not a homogeneous form of degree {rank} in {n} variables"
                )));
            }
            let mut key = Vec::with_capacity(rank);
            for (i, &e) in exps.iter().enumerate().take(n) {
                key.extend(std::iter::repeat_n(i as u8, e as usize));
            }
            let m = F::from_i64(multinomial_count(&key));
            t.entries.insert(key, c.div_ref(&m));
        }
        Ok(t)
    }

    /// `T(x, …, x)` as a polynomial in `nvars ≥ n` variables.
    pub fn to_polynomial(&self, nvars: usize) -> Polynomial<F> {
        let mut p = Polynomial::zero(nvars);
        for (k, v) in &self.entries {
            let mut powers: Vec<(usize, u32)> = Vec::new();
            for &i in k {
                match powers.last_mut() {
                    Some((j, e)) if *j == i as usize => *e += 1,
                    _ => powers.push((i as usize, 1)),
                }
            }
            let c = v.mul_ref(&F::from_i64(multinomial_count(k)));
            p = p.add(&Polynomial::monomial(nvars, &powers, c));
        }
        p
    }

    /// Dense row-major array of all `n^rank` entries.
    pub fn to_dense(&self) -> Vec<F> {
        let total = self.n.pow(self.rank as u32);
        let mut out = vec![F::zero(); total];
        let mut idx = vec![0usize; self.rank];
        for (flat, slot) in out.iter_mut().enumerate() {
            let mut r = flat;
            for j in (0..self.rank).rev() {
                idx[j] = r % self.n;
                r /= self.n;
            }
            *slot = self.get(&idx);
        }
        out
    }

    /// Applies `D_I` to every index slot, for a diagonal `D = diag(d)`.
    pub fn diagonal_transform(&self, d: &[F]) -> Self {
        assert_eq!(d.len(), self.n);
        let mut t = Self::zero(self.n, self.rank);
        for (k, v) in &self.entries {
            let mut w = v.clone();
            for &i in k {
                w = w.mul_ref(&d[i as usize]);
            }
            if !w.is_zero() {
                t.entries.insert(k.clone(), w);
            }
        }
        t
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    idx: Vec<usize>,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: usize,
    rank: usize,
    entries: Vec<EntryJson>,
}

/// JSON shape `{"n": N, "rank": p, "entries": [{"idx": [..], "c": ".."}]}`
/// with 1-based non-decreasing indices in lexicographic order.
impl Serialize for SymmetricTensor<Scalar> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .entries
            .iter()
            .map(|(k, c)| EntryJson { idx: k.iter().map(|&i| i as usize + 1).collect(), c: c.clone() })
            .collect();
        TensorJson { n: self.n, rank: self.rank, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricTensor<Scalar> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let j = TensorJson::deserialize(d)?;
        if j.n == 0 || j.n > u8::MAX as usize {
            return Err(D::Error::custom("invalid tensor dimension"));
        }
        let mut t = SymmetricTensor::zero(j.n, j.rank);
        for e in j.entries {
            if e.idx.len() != j.rank || e.idx.iter().any(|&i| i == 0 || i > j.n) {
                return Err(D::Error::custom("entry index out of range"));
            }
            if !e.idx.windows(2).all(|w| w[0] <= w[1]) {
                return Err(D::Error::custom("entry indices must be non-decreasing"));
            }
            let idx: Vec<usize> = e.idx.iter().map(|i| i - 1).collect();
            t.set(&idx, e.c);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomials() {
        assert_eq!(multinomial_count(&[0, 1, 2]), 6);
        assert_eq!(multinomial_count(&[0, 0, 2]), 3);
        assert_eq!(multinomial_count(&[4, 4, 4]), 1);
        assert_eq!(multinomial_count(&[0, 0, 1, 1, 2, 3]), 180);
        assert_eq!(sorted_tuples(5, 3).len(), 35);
    }

    #[test]
    fn polynomial_roundtrip() {
        let mut t = SymmetricTensor::<Scalar>::zero(4, 3);
        t.set(&[2, 0, 1], Scalar::sqrt3());
        t.set(&[3, 3, 3], Scalar::int(-1));
        t.set(&[1, 3, 1], Scalar::frac(1, 2));
        let p = t.to_polynomial(5);
        assert_eq!(SymmetricTensor::from_polynomial(&p, 4, 3).unwrap(), t);
        assert_eq!(t.get(&[1, 0, 2]), Scalar::sqrt3());
    }

    #[test]
    fn json_roundtrip() {
        let mut t = SymmetricTensor::<Scalar>::zero(5, 2);
        for i in 0..5 {
            t.set(&[i, i], Scalar::int(1));
        }
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"n":5,"rank":2,"entries":[{"idx":[1,1],"c":"1"}"#));
        let back: SymmetricTensor<Scalar> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<SymmetricTensor<Scalar>>(r#"{"n":2,"rank":2,"entries":[{"idx":[2,1],"c":"1"}]}"#).is_err());
    }
}
