//! Matrix Lie algebras inside so(n): the built-in bases, stabilizers of
//! tensors and forms, and the invariant forms ψ on R⁸ and φ on R¹⁴.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{GeomError, Result};
use crate::exact::sparse::{compress, dense_to_sparse};
use crate::exact::{Field, SparseEchelon, SparseMatrix};
use crate::exterior::{form_basis, mask_of, Form};
use crate::{KForm, Mat, MultiPoly, Scalar, SymTensor};

const BASES_DATA: &str = include_str!("../data/lie_bases.txt");
const PHI14_DATA: &str = include_str!("../data/phi14.txt");
const PHI14_SHA256: &str = "cfd2877bbfd1461b71b6e5c740cf024f6f227513ee915d43e85430820cfe3e55";
pub const PHI14_TERMS: usize = 129;

pub const BUILTIN_NAMES: [&str; 6] = ["so3-in-5", "su3-in-8", "sp3-in-14", "su2su2-in-8", "su2-left-7", "su2-right-7"];

/// Index of `e_ab − e_ba` (`a < b`) in the lexicographic basis of so(n).
pub fn so_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

pub fn so_dim(n: usize) -> usize {
    n * (n - 1) / 2
}

/// `e_ab − e_ba` as an n×n matrix.
pub fn so_element(n: usize, a: usize, b: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m.set(a, b, Scalar::from(1));
    m.set(b, a, Scalar::from(-1));
    m
}

/// Upper-triangle coordinates of an antisymmetric matrix.
pub fn so_coords(m: &Mat) -> Vec<Scalar> {
    let n = m.rows();
    let mut v = Vec::with_capacity(so_dim(n));
    for a in 0..n {
        for b in a + 1..n {
            v.push(m.get(a, b).clone());
        }
    }
    v
}

pub fn so_from_coords(n: usize, v: &[Scalar]) -> Mat {
    let mut m = Mat::zeros(n, n);
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !num_traits::Zero::is_zero(&v[k]) {
                m.set(a, b, v[k].clone());
                m.set(b, a, v[k].neg_ref());
            }
            k += 1;
        }
    }
    m
}

/// An ordered basis of antisymmetric n×n matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBasis {
    pub name: String,
    pub n: usize,
    pub generators: Vec<Mat>,
}

/// Coordinates of vectors with respect to a linearly independent family.
struct Coordinates {
    dim: usize,
    len: usize,
    echelon: SparseEchelon<Scalar>,
}

impl Coordinates {
    fn new(vectors: &[Vec<Scalar>]) -> Result<Self> {
        let dim = vectors.len();
        let len = vectors.first().map_or(0, Vec::len);
        let mut echelon = SparseEchelon::new(len + dim);
        for (i, v) in vectors.iter().enumerate() {
            let mut row = dense_to_sparse(v);
            row.push(((len + i) as u32, Scalar::from(1)));
            echelon.insert(row);
            let last = echelon.pivot_columns().last().copied();
            if last.is_some_and(|c| c >= len) {
                return Err(GeomError::InvalidStructure("generators are linearly dependent".into()));
            }
        }
        Ok(Coordinates { dim, len, echelon })
    }

    fn solve(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let r = self.echelon.reduce(dense_to_sparse(v));
        if r.first().is_some_and(|(c, _)| (*c as usize) < self.len) {
            return None;
        }
        let mut out = vec![Scalar::default(); self.dim];
        for (c, x) in r {
            out[c as usize - self.len] = x.neg_ref();
        }
        Some(out)
    }
}

/// Structure constants `[E_α, E_β] = c^γ_{αβ} E_γ`, indexed `[α][β][γ]`.
pub type StructureConstants = Vec<Vec<Vec<Scalar>>>;

impl LieBasis {
    pub fn new(name: impl Into<String>, n: usize, generators: Vec<Mat>) -> Result<Self> {
        for g in &generators {
            if g.rows() != n || g.cols() != n {
                return Err(GeomError::DimensionMismatch { expected: n, found: g.rows() });
            }
            if !g.is_antisymmetric() {
                return Err(GeomError::InvalidStructure("generator is not antisymmetric".into()));
            }
        }
        Ok(LieBasis { name: name.into(), n, generators })
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn coordinate_vectors(&self) -> Vec<Vec<Scalar>> {
        self.generators.iter().map(so_coords).collect()
    }

    /// Structure constants, or `NotClosed(k)` for the first bracket (in
    /// lexicographic pair order) leaving the span.
    pub fn structure_constants(&self) -> Result<StructureConstants> {
        let d = self.dim();
        let coords = Coordinates::new(&self.coordinate_vectors())?;
        let sparse: Vec<SparseMatrix<Scalar>> = self.generators.iter().map(SparseMatrix::from_dense).collect();
        let mut c = vec![vec![vec![Scalar::default(); d]; d]; d];
        let mut pair = 0;
        for a in 0..d {
            for b in a + 1..d {
                let br = sparse[a].commutator(&sparse[b]).to_dense();
                let x = coords.solve(&so_coords(&br)).ok_or(GeomError::NotClosed(pair))?;
                for (g, v) in x.into_iter().enumerate() {
                    c[b][a][g] = v.neg_ref();
                    c[a][b][g] = v;
                }
                pair += 1;
            }
        }
        Ok(c)
    }

    pub fn is_closed(&self) -> bool {
        self.structure_constants().is_ok()
    }

    /// Jacobi identity on the structure constants.
    pub fn jacobi_holds(c: &StructureConstants) -> bool {
        let d = c.len();
        for a in 0..d {
            for b in a + 1..d {
                for g in b + 1..d {
                    for e in 0..d {
                        let mut s = Scalar::default();
                        for m in 0..d {
                            s.add_mul(&c[a][b][m], &c[m][g][e]);
                            s.add_mul(&c[b][g][m], &c[m][a][e]);
                            s.add_mul(&c[g][a][m], &c[m][b][e]);
                        }
                        if !num_traits::Zero::is_zero(&s) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Equality of spans inside so(n).
    pub fn same_span(&self, other: &LieBasis) -> bool {
        self.n == other.n && crate::exact::matrix::same_span(&self.coordinate_vectors(), &other.coordinate_vectors())
    }

    /// True when every generator of `other` lies in the span of `self`.
    pub fn contains_span(&self, other: &LieBasis) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut e = SparseEchelon::new(so_dim(self.n));
        for v in self.coordinate_vectors() {
            e.insert(dense_to_sparse(&v));
        }
        other.coordinate_vectors().iter().all(|v| e.contains(dense_to_sparse(v)))
    }

    /// `D E_α D` for a diagonal `D = diag(d)` with `d_i = ±1`.
    pub fn conjugate_by_diagonal(&self, d: &[Scalar]) -> LieBasis {
        let dm = Mat::diagonal(d);
        let generators = self.generators.iter().map(|g| dm.mul(g).mul(&dm)).collect();
        LieBasis { name: format!("{}-flipped", self.name), n: self.n, generators }
    }

    pub fn annihilates_form(&self, f: &KForm) -> bool {
        self.generators.iter().all(|g| f.derivation_action(g).is_zero())
    }

    pub fn annihilates_tensor(&self, t: &SymTensor) -> bool {
        let p = t.to_polynomial(t.dim());
        self.generators.iter().all(|g| polynomial_action(g, &p).is_zero())
    }

    pub fn export(&self) -> Result<LieBasisExport> {
        let c = self.structure_constants()?;
        let mut constants = Vec::new();
        for (a, ca) in c.iter().enumerate() {
            for (b, cab) in ca.iter().enumerate().skip(a + 1) {
                for (g, v) in cab.iter().enumerate() {
                    if !num_traits::Zero::is_zero(v) {
                        constants.push(StructureConstant { i: a + 1, j: b + 1, k: g + 1, c: v.clone() });
                    }
                }
            }
        }
        Ok(LieBasisExport {
            name: self.name.clone(),
            n: self.n,
            generators: self.generators.iter().map(|g| g.to_rows()).collect(),
            structure_constants: constants,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

/// JSON view of a basis: row-major generator matrices and the nonzero
/// `c^k_{ij}` with `i < j` (1-based).
#[derive(Clone, Debug, Serialize)]
pub struct LieBasisExport {
    pub name: String,
    pub n: usize,
    pub generators: Vec<Vec<Vec<Scalar>>>,
    pub structure_constants: Vec<StructureConstant>,
}

fn parse_bases() -> Result<BTreeMap<String, LieBasis>> {
    let bad = |line: &str| GeomError::DataIntegrity(format!("bad basis data line: {line}"));
    let mut out = BTreeMap::new();
    let mut current: Option<(String, usize, usize, Vec<Mat>)> = None;
    let finish = |cur: Option<(String, usize, usize, Vec<Mat>)>, out: &mut BTreeMap<String, LieBasis>| -> Result<()> {
        if let Some((name, n, count, gens)) = cur {
            if gens.len() != count {
                return Err(GeomError::DataIntegrity(format!("{name}: expected {count} generators")));
            }
            out.insert(name.clone(), LieBasis::new(name, n, gens)?);
        }
        Ok(())
    };
    for line in BASES_DATA.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["basis", name, n, count] => {
                finish(current.take(), &mut out)?;
                let n: usize = n.parse().map_err(|_| bad(line))?;
                let count: usize = count.parse().map_err(|_| bad(line))?;
                current = Some((name.to_string(), n, count, Vec::new()));
            }
            ["gen", _] => {
                let cur = current.as_mut().ok_or_else(|| bad(line))?;
                cur.3.push(Mat::zeros(cur.1, cur.1));
            }
            [r, c, v] => {
                let cur = current.as_mut().ok_or_else(|| bad(line))?;
                let n = cur.1;
                let m = cur.3.last_mut().ok_or_else(|| bad(line))?;
                let r: usize = r.parse().map_err(|_| bad(line))?;
                let c: usize = c.parse().map_err(|_| bad(line))?;
                if r == 0 || c == 0 || r > n || c > n {
                    return Err(bad(line));
                }
                m.set(r - 1, c - 1, v.parse::<Scalar>()?);
            }
            _ => return Err(bad(line)),
        }
    }
    finish(current, &mut out)?;
    Ok(out)
}

/// One of the built-in bases, read off the generic algebra elements.
pub fn builtin_basis(name: &str) -> Result<LieBasis> {
    parse_bases()?.remove(name).ok_or_else(|| GeomError::UnknownFamily(name.to_string()))
}

/// `(X·F)(x) = −Σ_m ∂_m F · (X x)^m`, the derivation action on a
/// homogeneous polynomial `F(x) = Υ(x, …, x)`.
pub fn polynomial_action(x: &Mat, f: &MultiPoly) -> MultiPoly {
    let n = x.rows();
    let mut out = MultiPoly::zero(f.nvars());
    for m in 0..n {
        let coeffs: Vec<(usize, Scalar)> =
            (0..n).filter(|&i| !num_traits::Zero::is_zero(x.get(m, i))).map(|i| (i, x.get(m, i).clone())).collect();
        if coeffs.is_empty() {
            continue;
        }
        let xm = MultiPoly::linear(f.nvars(), &coeffs);
        out = out.sub(&f.partial(m).mul(&xm));
    }
    out
}

/// Object whose stabilizer in so(n) is sought.
#[derive(Clone, Copy, Debug)]
pub enum TensorRef<'a> {
    Sym(&'a SymTensor),
    Form(&'a KForm),
}

impl TensorRef<'_> {
    fn dim(&self) -> usize {
        match self {
            TensorRef::Sym(t) => t.dim(),
            TensorRef::Form(f) => f.dim(),
        }
    }
}

/// Basis of `{X ∈ so(n) : X·t = 0}`, the canonical kernel of the linear
/// annihilation system in the coordinates of [`so_coords`].
pub fn stabilizer_of(t: TensorRef<'_>, n: usize) -> Result<LieBasis> {
    if t.dim() < n {
        return Err(GeomError::DimensionMismatch { expected: n, found: t.dim() });
    }
    let unknowns = so_dim(n);
    // equation key -> sparse row over the unknowns
    let mut rows: HashMap<u128, Vec<(u32, Scalar)>> = HashMap::new();
    match t {
        TensorRef::Sym(s) => {
            if s.dim() != n {
                return Err(GeomError::DimensionMismatch { expected: n, found: s.dim() });
            }
            let f = s.to_polynomial(n);
            let partials: Vec<MultiPoly> = (0..n).map(|i| f.partial(i)).collect();
            for a in 0..n {
                for b in a + 1..n {
                    // X = e_ab − e_ba: (Xx)^a = x^b, (Xx)^b = −x^a
                    let col = so_index(n, a, b) as u32;
                    let act = MultiPoly::var(n, a).mul(&partials[b]).sub(&MultiPoly::var(n, b).mul(&partials[a]));
                    for (exps, c) in act.terms() {
                        let key = exps.iter().enumerate().fold(0u128, |k, (i, e)| k | ((*e as u128) << (4 * i)));
                        rows.entry(key).or_default().push((col, c.clone()));
                    }
                }
            }
        }
        TensorRef::Form(f) => {
            if !f.lives_on(n) {
                return Err(GeomError::InvalidStructure("form has components outside R^n".into()));
            }
            for a in 0..n {
                for b in a + 1..n {
                    let col = so_index(n, a, b) as u32;
                    let act = f.derivation_action(&so_element(n, a, b));
                    for (mask, c) in act.terms() {
                        rows.entry(mask as u128).or_default().push((col, c.clone()));
                    }
                }
            }
        }
    }
    let mut keys: Vec<u128> = rows.keys().copied().collect();
    keys.sort_unstable();
    let mut ech = SparseEchelon::new(unknowns);
    for k in keys {
        if ech.is_full() {
            break;
        }
        ech.insert(compress(rows.remove(&k).unwrap_or_default()));
    }
    let generators = ech.kernel_basis().iter().map(|v| so_from_coords(n, v)).collect();
    LieBasis::new("stabilizer", n, generators)
}

/// Joint kernel of all generator actions on `Λᵏ R^n`: the trivial
/// isotypic component, as canonical kernel vectors.
pub fn invariant_line_in(basis: &LieBasis, degree: usize) -> Vec<KForm> {
    let n = basis.n;
    let fb = form_basis(n, degree);
    let mut ech = SparseEchelon::new(fb.len());
    for g in &basis.generators {
        // column j = action on the j-th basis monomial; equations keyed by output monomial
        let mut rows: BTreeMap<u32, Vec<(u32, Scalar)>> = BTreeMap::new();
        for (j, &m) in fb.masks.iter().enumerate() {
            let act = Form::from_mask(n, m, Scalar::from(1)).derivation_action(g);
            for (out, c) in act.terms() {
                rows.entry(out).or_default().push((j as u32, c.clone()));
            }
        }
        for (_, r) in rows {
            if ech.is_full() {
                break;
            }
            ech.insert(compress(r));
        }
    }
    ech.kernel_basis().iter().map(|v| KForm::from_vector(n, &fb, v)).collect()
}

/// A form together with the name of the algebra preserving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForm {
    pub form: KForm,
    pub algebra: &'static str,
}

fn wedge_all(n: usize, idx: &[usize], c: Scalar) -> KForm {
    KForm::monomial(n, &idx.iter().map(|i| i - 1).collect::<Vec<_>>(), c)
}

/// The 2-forms `τ₁, τ₂, τ₃` on R⁸.
pub fn taus() -> [KForm; 3] {
    let m = |idx: &[usize], c: Scalar| wedge_all(8, idx, c);
    let one = || Scalar::from(1);
    [
        m(&[1, 4], one()).add(&m(&[2, 3], one())).add(&m(&[1, 5], Scalar::sqrt3())),
        m(&[1, 3], one()).add(&m(&[4, 2], one())).add(&m(&[2, 5], Scalar::sqrt3())),
        m(&[1, 2], one()).add(&m(&[4, 3], Scalar::from(2))),
    ]
}

/// `ψ = τ₁∧θ⁶ + τ₂∧θ⁷ + τ₃∧θ⁸ + θ⁶∧θ⁷∧θ⁸` on R⁸.
pub fn build_psi() -> InvariantForm {
    let t = taus();
    let th = |i: usize| KForm::basis1(8, i - 1);
    let form = t[0]
        .wedge(&th(6))
        .add(&t[1].wedge(&th(7)))
        .add(&t[2].wedge(&th(8)))
        .add(&wedge_all(8, &[6, 7, 8], Scalar::from(1)));
    InvariantForm { form, algebra: "su3-in-8" }
}

/// The 129-term 5-form on R¹⁴ preserved by sp(3), read from the bundled
/// data file after a checksum and term-count check.
pub fn build_phi14() -> Result<InvariantForm> {
    let digest = Sha256::digest(PHI14_DATA.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != PHI14_SHA256 {
        return Err(GeomError::DataIntegrity("5-form data checksum mismatch".into()));
    }
    let mut form = KForm::zero(14, 5);
    let mut count = 0;
    for line in PHI14_DATA.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let c: Scalar = parts.next().ok_or_else(|| GeomError::DataIntegrity(line.into()))?.parse()?;
        let idx: Vec<usize> = parts
            .map(|p| p.parse::<usize>().ok().filter(|&i| (1..=14).contains(&i)).map(|i| i - 1))
            .collect::<Option<_>>()
            .ok_or_else(|| GeomError::DataIntegrity(line.into()))?;
        let mask = mask_of(&idx).filter(|_| idx.len() == 5 && idx.windows(2).all(|w| w[0] < w[1]));
        let mask = mask.ok_or_else(|| GeomError::DataIntegrity(line.into()))?;
        if !num_traits::Zero::is_zero(&form.coeff_mask(mask)) {
            return Err(GeomError::DataIntegrity(format!("repeated term {line}")));
        }
        form.add_term(mask, c);
        count += 1;
    }
    if count != PHI14_TERMS || form.num_terms() != PHI14_TERMS {
        return Err(GeomError::DataIntegrity(format!("expected {PHI14_TERMS} terms, found {count}")));
    }
    Ok(InvariantForm { form, algebra: "sp3-in-14" })
}

/// The Sp(3)-invariant 5-form on R¹⁴ computed as the joint kernel of the
/// built-in sp(3) generators on `Λ⁵R¹⁴`, scaled so the `θ¹²³⁴⁵` coefficient
/// is `120√3`.
pub fn sp3_invariant_5form() -> Result<InvariantForm> {
    let sp3 = builtin_basis("sp3-in-14")?;
    let line = invariant_line_in(&sp3, 5);
    if line.len() != 1 {
        return Err(GeomError::InvalidStructure(format!("expected an invariant line, found dimension {}", line.len())));
    }
    let lead = line[0].coeff_mask(0b11111);
    if num_traits::Zero::is_zero(&lead) {
        return Err(GeomError::InvalidStructure("invariant form has no θ¹²³⁴⁵ term".into()));
    }
    let target = Scalar::sqrt3() * Scalar::from(120);
    let s = target.div_ref(&lead);
    Ok(InvariantForm { form: line[0].scale(&s), algebra: "sp3-in-14" })
}

/// Basis of the stabilizer of `Υ¹` in dimension 26, derived by solving
/// the annihilation system.
pub fn f4_basis() -> Result<LieBasis> {
    let u = crate::ternary::build_upsilon(8, crate::ternary::Variant::One)?;
    let mut b = stabilizer_of(TensorRef::Sym(&u), 26)?;
    b.name = "f4-in-26".into();
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so_indexing() {
        let n = 5;
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                assert_eq!(so_index(n, a, b), k);
                k += 1;
            }
        }
        let m = so_element(5, 1, 3);
        assert_eq!(so_from_coords(5, &so_coords(&m)), m);
    }

    #[test]
    fn builtin_shapes() {
        for (name, n, d) in [
            ("so3-in-5", 5, 3),
            ("su3-in-8", 8, 8),
            ("sp3-in-14", 14, 21),
            ("su2su2-in-8", 8, 6),
            ("su2-left-7", 7, 3),
            ("su2-right-7", 7, 3),
        ] {
            let b = builtin_basis(name).unwrap();
            assert_eq!((b.n, b.dim()), (n, d), "{name}");
        }
        assert!(matches!(builtin_basis("g2-in-7"), Err(GeomError::UnknownFamily(_))));
    }

    #[test]
    fn psi_coefficients() {
        let psi = build_psi().form;
        assert_eq!(psi.coeff(&[5, 6, 7]), Scalar::from(1));
        assert_eq!(psi.coeff(&[0, 4, 5]), Scalar::sqrt3());
        // τ₂ contains θ⁴∧θ² = −θ²∧θ⁴
        assert_eq!(psi.coeff(&[1, 3, 6]), Scalar::from(-1));
    }

    #[test]
    fn phi_first_term() {
        let phi = build_phi14().unwrap().form;
        assert_eq!(phi.coeff(&[0, 1, 2, 3, 4]), Scalar::sqrt3() * Scalar::from(120));
        assert_eq!(phi.num_terms(), 129);
    }

    #[test]
    fn non_closed_family_detected() {
        let gens = vec![so_element(4, 0, 1), so_element(4, 1, 2)];
        let b = LieBasis::new("x", 4, gens).unwrap();
        assert!(matches!(b.structure_constants(), Err(GeomError::NotClosed(0))));
    }
}
