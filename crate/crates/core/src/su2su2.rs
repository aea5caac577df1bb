//! The SU(2)×SU(2) structure in dimension 8: the embedding of ℝ⁸ into
//! 7×7 antisymmetric matrices, the sextic invariant read off from the
//! characteristic polynomial, and the associated sixth-order tensor.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decomposition::{from_triplets, Endo, Labeling};
use crate::error::{GeomError, Result};
use crate::exact::matrix::same_span;
use crate::exact::Field;
use crate::exterior::derivation_action_sym;
use crate::lie::{builtin_basis, LieBasis};
use crate::tensor::sorted_tuples;
use crate::{Mat, MultiPoly, Scalar, SymTensor};

/// Number of variables `x¹…x⁸` plus the spectral parameter `λ`.
const NVARS: usize = 9;
const LAMBDA: usize = 8;

/// The linear isomorphism `ι : ℝ⁸ → 𝕄⁸`, stored as the images of the
/// standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iota8 {
    pub images: Vec<Mat>,
}

/// Entries of `ι(x)` as `(row, col, [(x index, coefficient)])`, upper
/// block only; the lower block is minus the transpose.
fn iota_entries() -> Vec<(usize, usize, Vec<(usize, Scalar)>)> {
    let i = |v: i64| Scalar::from(v);
    let r = Scalar::sqrt3;
    let mr = || Scalar::sqrt3().neg_ref();
    vec![
        (0, 3, vec![(2, i(-1)), (3, r())]),
        (0, 4, vec![(4, i(-1)), (5, r())]),
        (0, 5, vec![(6, i(-1)), (7, r())]),
        (0, 6, vec![(0, i(-2))]),
        (1, 3, vec![(0, i(-1)), (1, mr())]),
        (1, 4, vec![(6, i(1)), (7, r())]),
        (1, 5, vec![(4, i(-1)), (5, mr())]),
        (1, 6, vec![(2, i(2))]),
        (2, 3, vec![(6, i(-2))]),
        (2, 4, vec![(0, i(1)), (1, mr())]),
        (2, 5, vec![(2, i(-1)), (3, mr())]),
        (2, 6, vec![(4, i(-2))]),
    ]
}

impl Iota8 {
    pub fn apply(&self, x: &[Scalar]) -> Result<Mat> {
        if x.len() != 8 {
            return Err(GeomError::DimensionMismatch { expected: 8, found: x.len() });
        }
        let mut m = Mat::zeros(7, 7);
        for (xi, img) in x.iter().zip(&self.images) {
            if !xi.is_zero() {
                m.add_scaled(xi, img);
            }
        }
        Ok(m)
    }

    /// `x` with `ι(x) = m`, if `m` lies in the image.
    pub fn preimage(&self, m: &Mat) -> Option<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = self.images.iter().map(|e| e.entries().to_vec()).collect();
        Mat::from_columns(&cols, 49).solve(m.entries())
    }

    pub fn is_injective(&self) -> bool {
        let cols: Vec<Vec<Scalar>> = self.images.iter().map(|e| e.entries().to_vec()).collect();
        Mat::from_columns(&cols, 49).rank() == 8
    }

    /// Every image is antisymmetric with the block shape `(0, α; −αᵗ, 0)`
    /// and `α` satisfies the four linear relations.
    pub fn relations_hold(&self) -> bool {
        self.images.iter().all(|m| {
            m.is_antisymmetric()
                && (0..3).all(|a| (0..3).all(|b| m.get(a, b).is_zero()))
                && (3..7).all(|a| (3..7).all(|b| m.get(a, b).is_zero()))
                && alpha_relations(m).iter().all(Zero::is_zero)
        })
    }
}

/// The residuals of the four relations on the `α` block of a 7×7 matrix,
/// with `α_{ij}` at row `i`, column `j` (1-based, `j = 4..7`).
pub fn alpha_relations(m: &Mat) -> [Scalar; 4] {
    let a = |i: usize, j: usize| m.get(i - 1, j - 1).clone();
    [
        a(1, 6) - a(3, 4) - a(2, 5),
        a(2, 6) - a(3, 7) + a(1, 5),
        a(3, 6) + a(2, 7) + a(1, 4),
        a(3, 5) + a(1, 7) - a(2, 4),
    ]
}

pub fn iota8() -> Iota8 {
    let mut images = vec![Mat::zeros(7, 7); 8];
    for (r, c, coeffs) in iota_entries() {
        for (x, v) in coeffs {
            images[x].set(r, c, v.clone());
            images[x].set(c, r, v.neg_ref());
        }
    }
    Iota8 { images }
}

pub fn iota(x: &[Scalar]) -> Result<Mat> {
    iota8().apply(x)
}

/// Exact determinant of a square matrix of polynomials, by expansion over
/// column subsets.
pub fn poly_determinant(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    // dp[mask]: signed sum over assignments of the first |mask| rows to the
    // columns in mask
    let mut dp = vec![MultiPoly::zero(nvars); 1 << n];
    dp[0] = MultiPoly::constant(nvars, Scalar::one());
    for mask in 0usize..(1 << n) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for (col, entry) in m[row].iter().enumerate() {
            if mask & (1 << col) != 0 || entry.is_zero() {
                continue;
            }
            // sign of placing `col` after the columns already used to its right
            let later = (mask >> col).count_ones();
            let term = dp[mask].mul(entry);
            let next = mask | (1 << col);
            dp[next] = if later % 2 == 0 { dp[next].add(&term) } else { dp[next].sub(&term) };
        }
    }
    dp[(1 << n) - 1].clone()
}

fn drop_lambda(p: &MultiPoly) -> MultiPoly {
    let mut r = MultiPoly::zero(8);
    for (exps, c) in p.terms() {
        let powers: Vec<(usize, u32)> = exps.iter().take(8).enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (i, *e)).collect();
        r = r.add(&MultiPoly::monomial(8, &powers, c.clone()));
    }
    r
}

/// `g(x, x)` in eight variables.
pub fn metric_poly() -> MultiPoly {
    MultiPoly::sum_of_squares(8, 0..8)
}

/// `det(ι(x) − λI)` with its coefficients in `λ`.
#[derive(Clone, Debug)]
pub struct CharPoly7 {
    /// Polynomial in `x¹…x⁸, λ` (λ is variable 8).
    pub poly: MultiPoly,
    /// Coefficient of `λᵖ` at index `p`, as polynomials in `x`.
    pub coefficients: Vec<MultiPoly>,
    /// `γ(x,…,x) = ½·[λ¹]`.
    pub gamma: MultiPoly,
}

/// Expands `det(ι(x) − λI)` and checks the coefficient pattern
/// `−λ⁷ − 6gλ⁵ − 9g²λ³ + 2γλ`.
pub fn char_poly7() -> Result<CharPoly7> {
    let io = iota8();
    let mut m = vec![vec![MultiPoly::zero(NVARS); 7]; 7];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            let lin: Vec<(usize, Scalar)> =
                io.images.iter().enumerate().map(|(x, e)| (x, e.get(r, c).clone())).filter(|(_, v)| !v.is_zero()).collect();
            let mut p = MultiPoly::linear(NVARS, &lin);
            if r == c {
                p = p.sub(&MultiPoly::var(NVARS, LAMBDA));
            }
            *slot = p;
        }
    }
    let poly = poly_determinant(&m);
    let coefficients: Vec<MultiPoly> = (0..=7).map(|p| drop_lambda(&poly.coefficient_of(LAMBDA, p))).collect();
    let g = metric_poly();
    let expect = |p: usize, want: MultiPoly| -> Result<()> {
        if coefficients[p] != want {
            return Err(GeomError::DataIntegrity(format!("unexpected coefficient of λ^{p} in the characteristic polynomial")));
        }
        Ok(())
    };
    for p in [0, 2, 4, 6] {
        expect(p, MultiPoly::zero(8))?;
    }
    expect(7, MultiPoly::constant(8, Scalar::from(-1)))?;
    expect(5, g.scale(&Scalar::from(-6)))?;
    expect(3, g.mul(&g).scale(&Scalar::from(-9)))?;
    let gamma = coefficients[1].scale(&Scalar::frac(1, 2));
    if !gamma.is_homogeneous(6) {
        return Err(GeomError::DataIntegrity("coefficient of λ is not a sextic".into()));
    }
    Ok(CharPoly7 { poly, coefficients, gamma })
}

/// The sextic invariants.
#[derive(Clone, Debug)]
pub struct SexticData {
    pub gamma: MultiPoly,
    pub phi: MultiPoly,
    /// `F = Φ + g³`.
    pub f: MultiPoly,
    /// Symmetric coefficients of `F`.
    pub upsilon: SymTensor,
}

pub fn build_sextic() -> Result<SexticData> {
    let cp = char_poly7()?;
    let phi = cp.gamma.clone();
    let g = metric_poly();
    let f = phi.add(&g.pow(3));
    let upsilon = SymTensor::from_polynomial(&f, 8, 6)?;
    if upsilon.to_polynomial(8) != f {
        return Err(GeomError::DataIntegrity("sextic tensor does not reproduce F".into()));
    }
    Ok(SexticData { gamma: cp.gamma, phi, f, upsilon })
}

/// One polynomial identity `lhs = rhs`, with `lhs − rhs` attached.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// `lhs − rhs`, empty when it vanishes.
    pub residual: String,
}

fn identity(name: &str, lhs: MultiPoly, rhs: MultiPoly) -> IdentityCheck {
    let r = lhs.sub(&rhs);
    IdentityCheck { name: name.to_string(), holds: r.is_zero(), residual: if r.is_zero() { String::new() } else { r.to_string() } }
}

/// The differential identities of `Φ` and `F`. When `|∇Φ|² = −72Φg²`
/// fails, the sign-flipped variant is reported as well.
pub fn phi_identities(s: &SexticData) -> Vec<IdentityCheck> {
    let g = metric_poly();
    let g2 = g.mul(&g);
    let phi = &s.phi;
    let c = |v: i64| Scalar::from(v);
    let mut out = vec![
        identity("laplacian_phi", phi.laplacian(0..8), g2.scale(&c(-72))),
        identity("gradient_phi", phi.gradient_norm_sq(0..8), phi.mul(&g2).scale(&c(-72))),
    ];
    if !out[1].holds {
        out.push(identity("gradient_phi_flipped", phi.gradient_norm_sq(0..8), phi.mul(&g2).scale(&c(72))));
    }
    out.push(identity("euler_phi", phi.euler(0..8), phi.scale(&c(6))));
    out.push(identity("laplacian_f", s.f.laplacian(0..8), MultiPoly::zero(8)));
    out.push(identity("gradient_f", s.f.gradient_norm_sq(0..8), g.pow(5).scale(&c(36))));
    out
}

/// `W^{IK} ↦ (25/32) Υ_{IJMNPQ} Υ_{KLMNPQ} W^{JL}` on `⊗²ℝ⁸`, with
/// `W^{IK}` at coordinate `8I + K`.
pub fn upsilon_hat6(s: &SexticData) -> Result<Endo> {
    let n = 8;
    let u = &s.upsilon;
    let tails = sorted_tuples(n, 4);
    let weights: Vec<Scalar> = tails.iter().map(|t| Scalar::from(crate::tensor::multinomial_count(t))).collect();
    // rows[(I,J)] = Υ_{IJ t} over sorted tails t
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rows.push(
                tails
                    .iter()
                    .map(|t| {
                        let mut idx = vec![i, j];
                        idx.extend(t.iter().map(|&x| x as usize));
                        u.get(&idx)
                    })
                    .collect(),
            );
        }
    }
    let scale = Scalar::frac(25, 32);
    let mut contraction = vec![vec![Scalar::zero(); n * n]; n * n];
    for a in 0..n * n {
        for b in a..n * n {
            let mut acc = Scalar::zero();
            for ((x, y), w) in rows[a].iter().zip(&rows[b]).zip(&weights) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &x.mul_ref(y).mul_ref(w);
                }
            }
            let v = acc.mul_ref(&scale);
            contraction[b][a] = v.clone();
            contraction[a][b] = v;
        }
    }
    let mut triplets = Vec::new();
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let v = &contraction[i * n + j][k * n + l];
                    if !v.is_zero() {
                        triplets.push((i * n + k, j * n + l, v.clone()));
                    }
                }
            }
        }
    }
    Endo::new(Labeling::TensorSquare { n }, from_triplets(n * n, n * n, triplets))
}

/// `ρ′(S)` with `ι(ρ′(S)x) = [S, ι(x)]`.
pub fn induced_generator(io: &Iota8, s: &Mat) -> Result<Mat> {
    let mut cols = Vec::with_capacity(8);
    for (j, img) in io.images.iter().enumerate() {
        let br = s.commutator(img);
        let x = io
            .preimage(&br)
            .ok_or_else(|| GeomError::InvalidStructure(format!("[S, ι(e{})] leaves the image of ι", j + 1)))?;
        cols.push(x);
    }
    Ok(Mat::from_columns(&cols, 8))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedGenerator {
    pub name: String,
    pub matrix: Vec<Vec<Scalar>>,
    pub antisymmetric: bool,
    pub annihilates_upsilon: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub generators: Vec<InducedGenerator>,
    /// `span{ρ′(s), ρ′(σ)} = span{Σᴸ, Σᴿ}`.
    pub span_matches_sigma: bool,
    /// `ρ′` preserves every bracket among the seven-dimensional generators.
    pub brackets_preserved: bool,
}

impl InvarianceReport {
    pub fn all(&self) -> bool {
        self.span_matches_sigma
            && self.brackets_preserved
            && self.generators.iter().all(|g| g.antisymmetric && g.annihilates_upsilon)
    }
}

pub fn infinitesimal_invariance(s: &SexticData) -> Result<InvarianceReport> {
    let io = iota8();
    let left = builtin_basis("su2-left-7")?;
    let right = builtin_basis("su2-right-7")?;
    let sevens: Vec<(String, Mat)> = left
        .generators
        .iter()
        .enumerate()
        .map(|(i, m)| (format!("s{}", i + 1), m.clone()))
        .chain(right.generators.iter().enumerate().map(|(i, m)| (format!("sigma{}", i + 1), m.clone())))
        .collect();
    let mut induced = Vec::with_capacity(6);
    for (_, m) in &sevens {
        induced.push(induced_generator(&io, m)?);
    }
    let mut brackets_preserved = true;
    for a in 0..6 {
        for b in a + 1..6 {
            let br = induced_generator(&io, &sevens[a].1.commutator(&sevens[b].1))?;
            brackets_preserved &= br == induced[a].commutator(&induced[b]);
        }
    }
    let sigma = builtin_basis("su2su2-in-8")?;
    let rho = LieBasis::new("rho", 8, induced.clone())?;
    let generators = sevens
        .iter()
        .zip(&induced)
        .map(|((name, _), m)| InducedGenerator {
            name: name.clone(),
            matrix: m.to_rows(),
            antisymmetric: m.is_antisymmetric(),
            annihilates_upsilon: derivation_action_sym(m, &s.upsilon).is_zero(),
        })
        .collect();
    Ok(InvarianceReport { generators, span_matches_sigma: rho.same_span(&sigma), brackets_preserved })
}

/// The `Σ` matrices flattened into `⊗²ℝ⁸` with `(I,K)` at `8I + K`.
pub fn sigma_tensors() -> Result<Vec<Vec<Scalar>>> {
    Ok(builtin_basis("su2su2-in-8")?.generators.iter().map(|m| m.entries().to_vec()).collect())
}

/// Whether `vectors` span the same subspace of `⊗²ℝ⁸` as the `Σ` matrices.
pub fn spans_sigma(vectors: &[Vec<Scalar>]) -> Result<bool> {
    Ok(same_span(vectors, &sigma_tensors()?))
}
