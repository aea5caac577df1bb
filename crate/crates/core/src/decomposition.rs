//! Invariant decompositions: the endomorphism Υ̂ of ⊗²ℝⁿ, its eigenspaces,
//! Casimir operators on forms, the map Υ′ and the classification of
//! 3-forms in dimension 8.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::exact::minpoly::{krylov_minpoly, minimal_polynomial, random_vector, rational_roots, LinearOp};
use crate::exact::modular::{Fp, P1, P2};
use crate::exact::sparse::{compress, dense_to_sparse, SparseEchelon, SparseMatrix};
use crate::exact::{Field, Rational};
use crate::exterior::{form_basis, FormBasis};
use crate::lie::{builtin_basis, f4_basis, so_index, LieBasis};
use crate::tensor::sorted_tuples;
use crate::{KForm, Mat, Scalar, SymTensor};

/// Index scheme of the space an [`Endo`] acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Labeling {
    /// `⊗²ℝⁿ`, coordinate `(I, K)` at `I·n + K`.
    TensorSquare { n: usize },
    /// `Λ²ℝⁿ`, basis `e_IK − e_KI` for `I < K` in lexicographic order.
    Lambda2 { n: usize },
    /// `⊙²ℝⁿ`, basis `e_IK + e_KI` (`I < K`) and `e_II`, pairs `I ≤ K` in
    /// lexicographic order.
    Sym2 { n: usize },
    /// `Λᵏℝⁿ`, sorted index sets in lexicographic order.
    Forms { n: usize, degree: usize },
}

impl Labeling {
    pub fn len(&self) -> usize {
        match *self {
            Labeling::TensorSquare { n } => n * n,
            Labeling::Lambda2 { n } => n * n.saturating_sub(1) / 2,
            Labeling::Sym2 { n } => n * (n + 1) / 2,
            Labeling::Forms { n, degree } => binomial(n, degree),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Labeling::TensorSquare { n } => write!(f, "pairs (I,K) of ⊗²R^{n}"),
            Labeling::Lambda2 { n } => write!(f, "pairs I<K of Λ²R^{n}"),
            Labeling::Sym2 { n } => write!(f, "pairs I≤K of ⊙²R^{n}"),
            Labeling::Forms { n, degree } => write!(f, "sorted {degree}-sets of Λ^{degree}R^{n}"),
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of `I ≤ K` among lexicographically ordered pairs with repetition.
fn sym_index(n: usize, i: usize, k: usize) -> usize {
    i * n - i * i.saturating_sub(1) / 2 + (k - i)
}

/// A square matrix together with the meaning of its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    pub labeling: Labeling,
    pub matrix: SparseMatrix<Scalar>,
}

impl Endo {
    pub fn new(labeling: Labeling, matrix: SparseMatrix<Scalar>) -> Result<Self> {
        if matrix.rows != matrix.cols {
            return Err(GeomError::DimensionMismatch { expected: matrix.rows, found: matrix.cols });
        }
        if labeling.len() != matrix.rows {
            return Err(GeomError::DimensionMismatch { expected: labeling.len(), found: matrix.rows });
        }
        Ok(Endo { labeling, matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for (r, row) in self.matrix.data.iter().enumerate() {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c as usize == r) {
                t += v;
            }
        }
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// `self − λ·id`.
    pub fn shifted(&self, lambda: &Scalar) -> SparseMatrix<Scalar> {
        let id = SparseMatrix::identity(self.dim());
        self.matrix.add_scaled(&lambda.neg_ref(), &id)
    }
}

impl LinearOp<Scalar> for Endo {
    fn dim(&self) -> usize {
        self.matrix.rows
    }
    fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }
}

/// Builds a sparse matrix from `(row, col, value)` triplets, summing repeats.
pub fn from_triplets(rows: usize, cols: usize, trip: Vec<(usize, usize, Scalar)>) -> SparseMatrix<Scalar> {
    let mut by_row: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); rows];
    for (r, c, v) in trip {
        by_row[r].push((c as u32, v));
    }
    SparseMatrix { rows, cols, data: by_row.into_iter().map(compress).collect() }
}

/// Υ̂ on `⊗²ℝⁿ` and its restrictions to `Λ²` and `⊙²`.
#[derive(Clone, Debug)]
pub struct UpsilonHat {
    pub n: usize,
    pub full: Endo,
    pub lambda2: Endo,
    pub sym2: Endo,
    /// Both `Λ²` and `⊙²` are mapped into themselves.
    pub blocks_preserved: bool,
}

/// `W^{IK} ↦ 4 Υ_IJM Υ_KLM W^{JL}` on `⊗²ℝⁿ`.
pub fn upsilon_hat(u: &SymTensor) -> Result<UpsilonHat> {
    if u.rank() != 3 {
        return Err(GeomError::InvalidStructure(format!("expected a rank 3 tensor, found rank {}", u.rank())));
    }
    let n = u.dim();
    let ud = u.to_dense();
    // Υ_IJ· as sparse lists over M
    let slices: Vec<Vec<(usize, Scalar)>> = (0..n * n)
        .map(|ij| (0..n).filter_map(|m| nonzero(&ud[ij * n + m]).map(|v| (m, v))).collect())
        .collect();
    let four = Scalar::from(4);
    let mut trip = Vec::new();
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                let a = &slices[i * n + j];
                if a.is_empty() {
                    continue;
                }
                for l in 0..n {
                    let b = &slices[k * n + l];
                    let mut s = Scalar::zero();
                    for (m, x) in a {
                        if let Some((_, y)) = b.iter().find(|(mm, _)| mm == m) {
                            s.add_mul(x, y);
                        }
                    }
                    if !s.is_zero() {
                        trip.push((i * n + k, j * n + l, s.mul_ref(&four)));
                    }
                }
            }
        }
    }
    let full = Endo::new(Labeling::TensorSquare { n }, from_triplets(n * n, n * n, trip))?;
    let cols = full.matrix.transpose();
    let column = |c: usize| sparse_to_map(&cols.data[c]);

    let mut preserved = true;
    let mut lam = Vec::new();
    let mut sym = Vec::new();
    for j in 0..n {
        for l in j..n {
            let a = column(j * n + l);
            let b = if j == l { HashMap::new() } else { column(l * n + j) };
            let plus = combine(&a, &b, false);
            if j < l {
                let minus = combine(&a, &b, true);
                let c = so_index(n, j, l);
                for (&idx, v) in &minus {
                    let (i, k) = (idx / n, idx % n);
                    let mirror = minus.get(&(k * n + i)).cloned().unwrap_or_default();
                    if mirror != v.neg_ref() {
                        preserved = false;
                    }
                    if i < k {
                        lam.push((so_index(n, i, k), c, v.clone()));
                    }
                }
            }
            let c = sym_index(n, j, l);
            for (&idx, v) in &plus {
                let (i, k) = (idx / n, idx % n);
                let mirror = plus.get(&(k * n + i)).cloned().unwrap_or_default();
                if mirror != *v {
                    preserved = false;
                }
                if i <= k {
                    sym.push((sym_index(n, i, k), c, v.clone()));
                }
            }
        }
    }
    let dl = n * (n - 1) / 2;
    let ds = n * (n + 1) / 2;
    Ok(UpsilonHat {
        n,
        lambda2: Endo::new(Labeling::Lambda2 { n }, from_triplets(dl, dl, lam))?,
        sym2: Endo::new(Labeling::Sym2 { n }, from_triplets(ds, ds, sym))?,
        full,
        blocks_preserved: preserved,
    })
}

fn nonzero(x: &Scalar) -> Option<Scalar> {
    (!x.is_zero()).then(|| x.clone())
}

fn sparse_to_map(r: &[(u32, Scalar)]) -> HashMap<usize, Scalar> {
    r.iter().map(|(c, v)| (*c as usize, v.clone())).collect()
}

fn combine(a: &HashMap<usize, Scalar>, b: &HashMap<usize, Scalar>, subtract: bool) -> HashMap<usize, Scalar> {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_default();
        if subtract {
            *e -= v;
        } else {
            *e += v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl UpsilonHat {
    /// Υ̂ applied to an `n×n` matrix `W`.
    pub fn apply_matrix(&self, w: &Mat) -> Mat {
        let n = self.n;
        let v: Vec<Scalar> = w.entries().to_vec();
        let out = self.full.apply(&v);
        Mat::from_rows(out.chunks(n).map(|c| c.to_vec()).collect())
    }
}

/// How kernel dimensions were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMethod {
    Exact,
    /// Independent eliminations modulo two 63-bit primes that agree.
    TwoPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenspace {
    pub eigenvalue: Scalar,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub labeling: Labeling,
    pub dimension: usize,
    /// Sorted by decreasing eigenvalue.
    pub eigenspaces: Vec<Eigenspace>,
    pub residual: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unfactored: Vec<Scalar>,
    pub method: KernelMethod,
}

impl DecompositionReport {
    /// `(eigenvalue, dimension)` pairs.
    pub fn spectrum(&self) -> Vec<(Scalar, usize)> {
        self.eigenspaces.iter().map(|e| (e.eigenvalue.clone(), e.dim)).collect()
    }

    pub fn dim_of(&self, lambda: &Scalar) -> Option<usize> {
        self.eigenspaces.iter().find(|e| &e.eigenvalue == lambda).map(|e| e.dim)
    }

    /// Eigenspace dimensions in decreasing order.
    pub fn dims_sorted(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.eigenspaces.iter().map(|e| e.dim).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_complete(&self) -> bool {
        self.residual == 0
    }

    pub fn without_bases(mut self) -> Self {
        for e in &mut self.eigenspaces {
            e.basis.clear();
        }
        self
    }

    /// Joins reports of complementary invariant subspaces.
    pub fn merge(labeling: Labeling, parts: &[DecompositionReport]) -> DecompositionReport {
        let mut spaces: Vec<Eigenspace> = Vec::new();
        for p in parts {
            for e in &p.eigenspaces {
                match spaces.iter_mut().find(|s| s.eigenvalue == e.eigenvalue) {
                    Some(s) => s.dim += e.dim,
                    None => spaces.push(Eigenspace { eigenvalue: e.eigenvalue.clone(), dim: e.dim, basis: Vec::new() }),
                }
            }
        }
        sort_spaces(&mut spaces);
        let method = if parts.iter().all(|p| p.method == KernelMethod::Exact) { KernelMethod::Exact } else { KernelMethod::TwoPrime };
        DecompositionReport {
            labeling,
            dimension: parts.iter().map(|p| p.dimension).sum(),
            eigenspaces: spaces,
            residual: parts.iter().map(|p| p.residual).sum(),
            unfactored: Vec::new(),
            method,
        }
    }
}

fn sort_spaces(spaces: &mut [Eigenspace]) {
    spaces.sort_by(|a, b| b.eigenvalue.to_f64().total_cmp(&a.eigenvalue.to_f64()));
}

fn distinct(mut roots: Vec<Rational>) -> Vec<Rational> {
    roots.sort();
    roots.dedup();
    roots.reverse();
    roots
}

/// Eigenvalues from the minimal polynomial and exact kernels of `e − λ·id`.
pub fn spectral_split(e: &Endo, seed: u64) -> DecompositionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mp = minimal_polynomial(e, &mut rng);
    let (roots, cofactor) = rational_roots(&mp);
    let mut spaces = Vec::new();
    for r in distinct(roots) {
        let lambda = Scalar::rational(r);
        let basis = e.shifted(&lambda).kernel_basis();
        spaces.push(Eigenspace { eigenvalue: lambda, dim: basis.len(), basis });
    }
    finish(e, spaces, cofactor, KernelMethod::Exact)
}

fn finish(e: &Endo, mut spaces: Vec<Eigenspace>, cofactor: Vec<Scalar>, method: KernelMethod) -> DecompositionReport {
    sort_spaces(&mut spaces);
    let found: usize = spaces.iter().map(|s| s.dim).sum();
    DecompositionReport {
        labeling: e.labeling,
        dimension: e.dim(),
        residual: e.dim().saturating_sub(found),
        eigenspaces: spaces,
        unfactored: if cofactor.len() > 1 { cofactor } else { Vec::new() },
        method,
    }
}

/// Like [`spectral_split`] for operators too large for exact elimination.
/// Eigenvalues come from the exact Krylov polynomial of one random vector;
/// each eigenspace dimension is a kernel dimension modulo two primes, which
/// must agree. Modular kernels can only be larger than exact ones, so a
/// dimension total equal to the space dimension pins them down.
pub fn spectral_split_modular(e: &Endo, seed: u64) -> Result<DecompositionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_vector::<Scalar>(e.dim(), &mut rng);
    let kp = krylov_minpoly(e, &v);
    let (roots, cofactor) = rational_roots(&kp);
    let m1 = e.matrix.try_map(Fp::<P1>::from_scalar)?;
    let m2 = e.matrix.try_map(Fp::<P2>::from_scalar)?;
    let mut spaces = Vec::new();
    for r in distinct(roots) {
        let lambda = Scalar::rational(r);
        let d1 = shifted_nullity(&m1, Fp::<P1>::from_scalar(&lambda)?);
        let d2 = shifted_nullity(&m2, Fp::<P2>::from_scalar(&lambda)?);
        if d1 != d2 {
            return Err(GeomError::ModularDisagreement(d1, d2));
        }
        spaces.push(Eigenspace { eigenvalue: lambda, dim: d1, basis: Vec::new() });
    }
    Ok(finish(e, spaces, cofactor, KernelMethod::TwoPrime))
}

fn shifted_nullity<const P: u64>(m: &SparseMatrix<Fp<P>>, lambda: Fp<P>) -> usize {
    let mut ech = SparseEchelon::new(m.cols);
    for (r, row) in m.data.iter().enumerate() {
        let mut row = row.clone();
        row.push((r as u32, lambda.neg_ref()));
        ech.insert(compress(row));
    }
    m.cols - ech.rank()
}

/// Matrix of the derivation action of `x` on `Λᵏ` in the given basis.
pub fn action_on_forms(x: &Mat, basis: &FormBasis) -> SparseMatrix<Scalar> {
    let d = basis.len();
    let mut trip = Vec::new();
    for (col, &mask) in basis.masks.iter().enumerate() {
        let image = KForm::from_mask(basis.n, mask, Scalar::one()).derivation_action(x);
        for (m, c) in image.terms() {
            trip.push((basis.position(m).expect("action stays in the basis"), col, c.clone()));
        }
    }
    from_triplets(d, d, trip)
}

/// The Casimir operator of a Lie algebra basis acting on forms, with the
/// action matrices it was assembled from.
#[derive(Clone, Debug)]
pub struct Casimir {
    pub endo: Endo,
    pub rho: Vec<SparseMatrix<Scalar>>,
}

impl Casimir {
    /// `[C, ρ(E_α)] = 0` for every generator.
    pub fn commutes_with_action(&self) -> bool {
        self.rho.iter().all(|r| self.endo.matrix.commutator(r).is_zero())
    }
}

/// `C = Σ (G⁻¹)^{αβ} ρ(E_α)ρ(E_β)` with `G_αβ = −tr(E_α E_β)`, acting on
/// `Λᵏℝⁿ` through the derivation action.
pub fn casimir_on_forms(basis: &LieBasis, n: usize, degree: usize) -> Result<Casimir> {
    if basis.n != n {
        return Err(GeomError::DimensionMismatch { expected: n, found: basis.n });
    }
    let d = basis.dim();
    let mut gram = Mat::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let g = basis.generators[a].mul(&basis.generators[b]).trace().neg_ref();
            gram.set(a, b, g.clone());
            gram.set(b, a, g);
        }
    }
    let ginv = gram
        .inverse()
        .ok_or_else(|| GeomError::InvalidStructure(format!("basis `{}` has a singular Gram matrix", basis.name)))?;
    let fb = form_basis(n, degree);
    let rho: Vec<SparseMatrix<Scalar>> = basis.generators.iter().map(|x| action_on_forms(x, &fb)).collect();
    let size = fb.len();
    let mut c = SparseMatrix::zeros(size, size);
    for a in 0..d {
        let mut dual = SparseMatrix::zeros(size, size);
        for (b, r) in rho.iter().enumerate() {
            let g = ginv.get(a, b);
            if !g.is_zero() {
                dual = dual.add_scaled(g, r);
            }
        }
        c = c.add(&rho[a].mul(&dual));
    }
    Ok(Casimir { endo: Endo::new(Labeling::Forms { n, degree }, c)?, rho })
}

/// The invariance algebra used for `Λ³ℝⁿ` at each `k`.
pub fn invariance_algebra(k: u32) -> Result<LieBasis> {
    match k {
        1 => builtin_basis("so3-in-5"),
        2 => builtin_basis("su3-in-8"),
        4 => builtin_basis("sp3-in-14"),
        8 => f4_basis(),
        _ => Err(GeomError::UnsupportedK(k)),
    }
}

/// Isotypic dimensions of `Λ³ℝⁿ` under the invariance algebra, read off
/// the Casimir. `k = 8` always uses modular kernels.
pub fn decompose_lambda3(k: u32, seed: u64) -> Result<DecompositionReport> {
    let basis = invariance_algebra(k)?;
    let cas = casimir_on_forms(&basis, basis.n, 3)?;
    if k == 8 {
        spectral_split_modular(&cas.endo, seed)
    } else {
        Ok(spectral_split(&cas.endo, seed))
    }
}

/// Column of `Γ_{MJ,K}` (antisymmetric in `M, J`) in `Λ²ℝⁿ ⊗ ℝⁿ`, with the
/// sign relating it to the stored `M < J` coordinate.
fn gamma_column(n: usize, m: usize, j: usize, k: usize) -> Option<(usize, bool)> {
    match m.cmp(&j) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Less => Some((so_index(n, m, j) * n + k, true)),
        std::cmp::Ordering::Greater => Some((so_index(n, j, m) * n + k, false)),
    }
}

/// `Υ′ : Λ²ℝⁿ ⊗ ℝⁿ → ⊙⁴ℝⁿ`, `Υ′(Γ)_IJKL = 12 Γ_{M(JI} Υ_{KL)M}`.
#[derive(Clone, Debug)]
pub struct UpsilonPrimeMap {
    pub n: usize,
    /// Rows indexed by sorted 4-tuples, columns by `pair(M<J)·n + K`.
    pub matrix: SparseMatrix<Scalar>,
}

pub fn upsilon_prime(u: &SymTensor) -> Result<UpsilonPrimeMap> {
    if u.rank() != 3 {
        return Err(GeomError::InvalidStructure(format!("expected a rank 3 tensor, found rank {}", u.rank())));
    }
    let n = u.dim();
    let ud = u.to_dense();
    let ncols = n * (n - 1) / 2 * n;
    let mut data = Vec::new();
    for t in sorted_tuples(n, 4) {
        let t: Vec<usize> = t.iter().map(|&x| x as usize).collect();
        let mut row: Vec<(u32, Scalar)> = Vec::new();
        for p in 0..4 {
            for q in 0..4 {
                if p == q {
                    continue;
                }
                let rest: Vec<usize> = (0..4).filter(|&s| s != p && s != q).map(|s| t[s]).collect();
                let base = (rest[0] * n + rest[1]) * n;
                for m in 0..n {
                    let y = &ud[base + m];
                    if y.is_zero() {
                        continue;
                    }
                    if let Some((col, plus)) = gamma_column(n, m, t[p], t[q]) {
                        row.push((col as u32, if plus { y.clone() } else { y.neg_ref() }));
                    }
                }
            }
        }
        data.push(compress(row));
    }
    Ok(UpsilonPrimeMap { n, matrix: SparseMatrix { rows: data.len(), cols: ncols, data } })
}

impl UpsilonPrimeMap {
    pub fn domain_dim(&self) -> usize {
        self.matrix.cols
    }

    pub fn kernel_dim_exact(&self) -> usize {
        self.matrix.cols - self.matrix.rank()
    }

    pub fn kernel_dim_modular(&self) -> Result<usize> {
        let a = modular_nullity::<P1>(&self.matrix)?;
        let b = modular_nullity::<P2>(&self.matrix)?;
        if a != b {
            return Err(GeomError::ModularDisagreement(a, b));
        }
        Ok(a)
    }

    /// Exact up to `n = 14`, modular beyond.
    pub fn kernel_dim(&self) -> Result<usize> {
        if self.n <= 14 {
            Ok(self.kernel_dim_exact())
        } else {
            self.kernel_dim_modular()
        }
    }

    pub fn apply(&self, gamma: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(gamma)
    }
}

fn modular_nullity<const P: u64>(m: &SparseMatrix<Scalar>) -> Result<usize> {
    let mut ech = SparseEchelon::<Fp<P>>::new(m.cols);
    for row in &m.data {
        let mut r = Vec::with_capacity(row.len());
        for (c, v) in row {
            r.push((*c, Fp::<P>::from_scalar(v)?));
        }
        ech.insert(compress(r));
        if ech.is_full() {
            break;
        }
    }
    Ok(m.cols - ech.rank())
}

/// `T_{IJ,K} = T_IJK`: a 3-form as an element of `Λ²ℝⁿ ⊗ ℝⁿ`.
pub fn embed_lambda3(form: &KForm, n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n * (n - 1) / 2 * n];
    for (idx, c) in form.sorted_terms() {
        let (a, b, d) = (idx[0], idx[1], idx[2]);
        // T_ab,d = c, T_ad,b = −c, T_bd,a = c
        v[so_index(n, a, b) * n + d] += &c;
        v[so_index(n, a, d) * n + b] -= &c;
        v[so_index(n, b, d) * n + a] += &c;
    }
    v
}

/// `E ⊗ e_K` as an element of `Λ²ℝⁿ ⊗ ℝⁿ`.
pub fn embed_generator(e: &Mat, k: usize) -> Vec<Scalar> {
    let n = e.rows();
    let mut v = vec![Scalar::zero(); n * (n - 1) / 2 * n];
    for a in 0..n {
        for b in a + 1..n {
            v[so_index(n, a, b) * n + k] = e.get(a, b).clone();
        }
    }
    v
}

/// Basis of `(𝔥 ⊗ ℝⁿ) ∩ Λ³ℝⁿ` inside `Λ²ℝⁿ ⊗ ℝⁿ`.
pub fn h_lambda3_intersection(h: &LieBasis) -> Vec<Vec<Scalar>> {
    let n = h.n;
    let mut left: Vec<Vec<Scalar>> = Vec::new();
    for e in &h.generators {
        for k in 0..n {
            left.push(embed_generator(e, k));
        }
    }
    let fb = form_basis(n, 3);
    let right: Vec<Vec<Scalar>> =
        fb.masks.iter().map(|&m| embed_lambda3(&KForm::from_mask(n, m, Scalar::one()), n)).collect();
    // a·left = b·right  ⇔  (a, b) in the kernel of [leftᵀ | −rightᵀ]
    let dim = left[0].len();
    let ncols = left.len() + right.len();
    let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); dim];
    for (j, v) in left.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                rows[i].push((j as u32, x.clone()));
            }
        }
    }
    for (j, v) in right.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                rows[i].push(((left.len() + j) as u32, x.neg_ref()));
            }
        }
    }
    let sys = SparseMatrix { rows: dim, cols: ncols, data: rows.into_iter().map(compress).collect() };
    let mut ech = SparseEchelon::new(dim);
    let mut out = Vec::new();
    for sol in sys.kernel_basis() {
        let mut w = vec![Scalar::zero(); dim];
        for (j, v) in right.iter().enumerate() {
            let c = &sol[left.len() + j];
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(v) {
                    x.add_mul(c, y);
                }
            }
        }
        if ech.insert(dense_to_sparse(&w)) {
            out.push(w);
        }
    }
    out
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let Some(first) = basis.first() else {
        return v.iter().all(|x| x.is_zero());
    };
    let mut ech: SparseEchelon<Scalar> = SparseEchelon::new(first.len());
    for b in basis {
        ech.insert(dense_to_sparse(b));
    }
    ech.contains(dense_to_sparse(v))
}

/// Isotypic class of a 3-form on ℝ⁸.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreeFormClass {
    Zero,
    Sym2_1,
    Sym2_8,
    Lambda2_20,
    Sym2_27,
    Mixed,
}

impl fmt::Display for ThreeFormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreeFormClass::Zero => "zero",
            ThreeFormClass::Sym2_1 => "⊙²₁",
            ThreeFormClass::Sym2_8 => "⊙²₈",
            ThreeFormClass::Lambda2_20 => "Λ²₂₀",
            ThreeFormClass::Sym2_27 => "⊙²₂₇",
            ThreeFormClass::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: ThreeFormClass,
    /// `ψ(ω)_IJ = ψ_IKL ω_JKL`.
    pub image: Mat,
    /// Components of `ψ(ω)` in the eigenspaces of Υ̂, by eigenvalue.
    pub projections: Vec<(Scalar, Mat)>,
}

/// Classifies 3-forms on ℝ⁸ through `ω ↦ ψ(ω)` and the eigenvalues of Υ̂.
#[derive(Clone, Debug)]
pub struct ThreeFormClassifier {
    hat: UpsilonHat,
    psi: KForm,
    eigenvalues: Vec<Scalar>,
}

impl ThreeFormClassifier {
    pub fn new(u: &SymTensor, psi: &KForm) -> Result<Self> {
        let hat = upsilon_hat(u)?;
        if hat.n != psi.dim() || psi.degree() != 3 {
            return Err(GeomError::DimensionMismatch { expected: hat.n, found: psi.dim() });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mp = minimal_polynomial(&hat.full, &mut rng);
        let (roots, cofactor) = rational_roots(&mp);
        if cofactor.len() > 1 || roots.len() != mp.len() - 1 {
            return Err(GeomError::NotDiagonalizable);
        }
        let eigenvalues = distinct(roots).into_iter().map(Scalar::rational).collect();
        Ok(ThreeFormClassifier { hat, psi: psi.clone(), eigenvalues })
    }

    pub fn psi_image(&self, w: &KForm) -> Mat {
        let n = self.hat.n;
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Scalar::zero();
                for k in 0..n {
                    for l in 0..n {
                        let a = self.psi.coeff(&[i, k, l]);
                        if a.is_zero() {
                            continue;
                        }
                        s.add_mul(&a, &w.coeff(&[j, k, l]));
                    }
                }
                m.set(i, j, s);
            }
        }
        m
    }

    /// `Π_{μ≠λ} (Υ̂ − μ)/(λ − μ)` applied to `w`.
    fn project(&self, lambda: &Scalar, w: &Mat) -> Mat {
        let mut cur = w.clone();
        for mu in &self.eigenvalues {
            if mu == lambda {
                continue;
            }
            let shifted = self.hat.apply_matrix(&cur).sub(&cur.scale(mu));
            cur = shifted.scale(&lambda.sub_ref(mu).inv().expect("distinct eigenvalues"));
        }
        cur
    }

    pub fn classify(&self, w: &KForm) -> Result<Classification> {
        let n = self.hat.n;
        if w.dim() != n || w.degree() != 3 {
            return Err(GeomError::DimensionMismatch { expected: n, found: w.dim() });
        }
        let image = self.psi_image(w);
        let projections: Vec<(Scalar, Mat)> = self
            .eigenvalues
            .iter()
            .map(|l| (l.clone(), self.project(l, &image)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        let hat_w = self.hat.apply_matrix(&image);
        let ni = n as i64;
        let tests = [
            (4 + 2 * ni, ThreeFormClass::Sym2_1),
            (2 - ni, ThreeFormClass::Sym2_8),
            (-8, ThreeFormClass::Lambda2_20),
            (4, ThreeFormClass::Sym2_27),
        ];
        let class = if image.is_zero() {
            ThreeFormClass::Zero
        } else {
            tests
                .iter()
                .find(|(l, _)| hat_w == image.scale(&Scalar::from(*l)))
                .map_or(ThreeFormClass::Mixed, |(_, c)| *c)
        };
        Ok(Classification { class, image, projections })
    }
}

pub fn classify_3form(w: &KForm, u: &SymTensor, psi: &KForm) -> Result<Classification> {
    ThreeFormClassifier::new(u, psi)?.classify(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_index_is_lexicographic() {
        let n = 5;
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                assert_eq!(sym_index(n, i, j), k);
                k += 1;
            }
        }
    }

    #[test]
    fn casimir_on_constants_is_zero() {
        let b = builtin_basis("so3-in-5").unwrap();
        let c = casimir_on_forms(&b, 5, 0).unwrap();
        assert!(c.endo.matrix.is_zero());
    }
}
