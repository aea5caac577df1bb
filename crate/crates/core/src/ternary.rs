//! The cubic forms `Υ` obtained from the determinant of a Hermitian 3×3
//! matrix over R, C, H or O, and the identities they satisfy.

use serde::{Deserialize, Serialize};

use crate::division::{embed_vector, hermitian_matrix, AlgebraElement, AlgebraTag};
use crate::error::{GeomError, Result};
use crate::exact::Field;
use crate::{MultiPoly, Scalar, SymTensor};

/// Which bracketing of the two non-associative determinant terms is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `a₁₃(a₃₂a₂₁) + (a₁₂a₂₃)a₃₁`
    One,
    /// `a₃₁(a₂₃a₁₂) + (a₂₁a₃₂)a₁₃`
    Two,
}

impl Variant {
    pub fn from_index(v: u32) -> Result<Self> {
        match v {
            1 => Ok(Variant::One),
            2 => Ok(Variant::Two),
            _ => Err(GeomError::UnknownVariant(v.to_string())),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Variant::One => 1,
            Variant::Two => 2,
        }
    }
}

/// `det_a(A − λI)` as a real polynomial in `n + 1` variables: the vector
/// coordinates `x¹..xⁿ` (indices `0..n`) followed by `λ` (index `n`).
pub fn char_poly3(k: u32, variant: Variant) -> Result<MultiPoly> {
    let tag = AlgebraTag::from_k(k)?;
    let n = tag.n();
    let nv = n + 1;
    let x: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(nv, i)).collect();
    let h = hermitian_matrix(&embed_vector(&x, k)?);
    let lambda = MultiPoly::var(nv, n);
    let m = |i: usize, j: usize| -> AlgebraElement<MultiPoly> {
        let e = h.entry(i, j);
        if i == j {
            AlgebraElement::real(tag, e.coeffs[0].sub(&lambda))
        } else {
            e
        }
    };
    let prod3 = |a: &AlgebraElement<MultiPoly>, b: &AlgebraElement<MultiPoly>, c: &AlgebraElement<MultiPoly>| -> Result<_> {
        a.multiply(b)?.multiply(c)
    };
    let (m11, m22, m33) = (m(0, 0), m(1, 1), m(2, 2));
    let (m12, m13, m23) = (m(0, 1), m(0, 2), m(1, 2));
    let (m21, m31, m32) = (m(1, 0), m(2, 0), m(2, 1));

    let mut total = prod3(&m11, &m22, &m33)?;
    total = total.sub(&prod3(&m12, &m21, &m33)?);
    total = total.sub(&prod3(&m13, &m22, &m31)?);
    total = total.sub(&prod3(&m11, &m23, &m32)?);
    match variant {
        Variant::One => {
            total = total.add(&m13.multiply(&m32.multiply(&m21)?)?);
            total = total.add(&m12.multiply(&m23)?.multiply(&m31)?);
        }
        Variant::Two => {
            total = total.add(&m31.multiply(&m23.multiply(&m12)?)?);
            total = total.add(&m21.multiply(&m32)?.multiply(&m13)?);
        }
    }
    total.real_part_checked()
}

/// `Υ_a` with `Υ_a(x, x, x) = ½ det_a(A)`, as a symmetric tensor.
pub fn build_upsilon(k: u32, variant: Variant) -> Result<SymTensor> {
    let n = AlgebraTag::from_k(k)?.n();
    let cp = char_poly3(k, variant)?;
    let cubic = cp.coefficient_of(n, 0).scale(&Scalar::frac(1, 2));
    // drop the λ slot so the form lives in exactly n variables
    let mut restricted = MultiPoly::zero(n);
    for (exps, c) in cubic.terms() {
        let powers: Vec<(usize, u32)> = exps[..n].iter().enumerate().map(|(i, &e)| (i, e)).collect();
        restricted = restricted.add(&MultiPoly::monomial(n, &powers, c.clone()));
    }
    SymTensor::from_polynomial(&restricted, n, 3)
}

/// Results of checking symmetry, trace-freeness and the quadratic identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub symmetric: bool,
    pub trace_free: bool,
    pub quadratic_identity: bool,
    /// Number of sorted `(J, K, L, M)` tuples at which iii) failed.
    pub identity_failures: usize,
}

impl PropertyReport {
    pub fn all(&self) -> bool {
        self.symmetric && self.trace_free && self.quadratic_identity
    }
}

/// Checks i) symmetry, ii) `Υ_IJJ = 0` and iii)
/// `Υ_JKI Υ_LMI + Υ_LJI Υ_KMI + Υ_KLI Υ_JMI = g_JK g_LM + g_LJ g_KM + g_KL g_JM`
/// on every sorted index tuple.
pub fn check_properties(u: &SymTensor, g: &SymTensor) -> Result<PropertyReport> {
    let n = u.dim();
    if u.rank() != 3 || g.rank() != 2 || g.dim() != n {
        return Err(GeomError::DimensionMismatch { expected: n, found: g.dim() });
    }
    // storage is symmetric by construction
    let symmetric = true;
    let ud = u.to_dense();
    let gd = g.to_dense();
    let at = |i: usize, j: usize, k: usize| &ud[(i * n + j) * n + k];
    let gg = |i: usize, j: usize| &gd[i * n + j];

    let trace_free = (0..n).all(|i| {
        let mut s = Scalar::default();
        for j in 0..n {
            s = s.add_ref(at(i, j, j));
        }
        num_traits::Zero::is_zero(&s)
    });

    let mut failures = 0;
    for t in crate::tensor::sorted_tuples(n, 4) {
        let (j, k, l, m) = (t[0] as usize, t[1] as usize, t[2] as usize, t[3] as usize);
        let mut lhs = Scalar::default();
        for i in 0..n {
            lhs.add_mul(at(j, k, i), at(l, m, i));
            lhs.add_mul(at(l, j, i), at(k, m, i));
            lhs.add_mul(at(k, l, i), at(j, m, i));
        }
        let mut rhs = gg(j, k).mul_ref(gg(l, m));
        rhs.add_mul(gg(l, j), gg(k, m));
        rhs.add_mul(gg(k, l), gg(j, m));
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(PropertyReport { symmetric, trace_free, quadratic_identity: failures == 0, identity_failures: failures })
}

/// Outcome of the Cartan conditions on `F = Υ_IJK xᴵxᴶxᴷ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanReport {
    pub harmonic: bool,
    pub gradient_identity: bool,
    /// `ΔF` when nonzero.
    pub laplacian_residual: Option<String>,
    /// `|∇F|² − 9 g²` when nonzero.
    pub gradient_residual: Option<String>,
}

/// Verifies `ΔF = 0` and `|∇F|² = 9 g(x, x)²` as polynomial identities.
pub fn cartan_poly_check(u: &SymTensor) -> CartanReport {
    let n = u.dim();
    let f = u.to_polynomial(n);
    cartan_check_polynomial(&f, n, 3)
}

/// Cartan conditions for a form of degree `p`: `ΔF = 0`, `|∇F|² = p² g^(p−1)`.
pub fn cartan_check_polynomial(f: &MultiPoly, n: usize, p: u32) -> CartanReport {
    let lap = f.laplacian(0..n);
    let g = MultiPoly::sum_of_squares(f.nvars(), 0..n);
    let grad = f.gradient_norm_sq(0..n);
    let target = g.pow(p - 1).scale(&Scalar::int((p * p) as i64));
    let resid = grad.sub(&target);
    CartanReport {
        harmonic: lap.is_zero(),
        gradient_identity: resid.is_zero(),
        laplacian_residual: (!lap.is_zero()).then(|| lap.to_string()),
        gradient_residual: (!resid.is_zero()).then(|| resid.to_string()),
    }
}

/// How the two bracketings relate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VariantRelation {
    Equal,
    /// `Υ² = D·Υ¹` with `D` diagonal of ±1 acting on every slot.
    FlipEquivalent { flip: Vec<i8> },
}

/// The flip `diag(1,1,1,1,1,−1,…,−1)` in dimension `n`.
pub fn standard_flip(n: usize) -> Vec<i8> {
    (0..n).map(|i| if i < 5 { 1 } else { -1 }).collect()
}

pub fn compare_variants(k: u32) -> Result<VariantRelation> {
    let u1 = build_upsilon(k, Variant::One)?;
    let u2 = build_upsilon(k, Variant::Two)?;
    if u1 == u2 {
        return Ok(VariantRelation::Equal);
    }
    let flip = standard_flip(u1.dim());
    let d: Vec<Scalar> = flip.iter().map(|&s| Scalar::int(s as i64)).collect();
    if u1.diagonal_transform(&d) == u2 {
        return Ok(VariantRelation::FlipEquivalent { flip });
    }
    Err(GeomError::InvalidStructure(format!(
        "variants for k={k} are neither equal nor related by the standard flip"
    )))
}

/// Contraction `Υ_LJI Υ_LKI` as an n×n matrix.
pub fn double_contraction(u: &SymTensor) -> crate::Mat {
    let n = u.dim();
    let ud = u.to_dense();
    let mut m = crate::Mat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let mut s = Scalar::default();
            for l in 0..n {
                for i in 0..n {
                    s.add_mul(&ud[(l * n + j) * n + i], &ud[(l * n + k) * n + i]);
                }
            }
            m.set(j, k, s);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_matches_explicit_determinant() {
        let u = build_upsilon(1, Variant::One).unwrap();
        assert_eq!(u.get(&[4, 4, 4]), Scalar::int(-1));
        // ½ det of the real symmetric matrix: the x¹x²x³ term is
        // 2·(√3)³ x¹x²x³ / 2, so Υ₁₂₃ = 3√3 / 6
        assert_eq!(u.get(&[0, 1, 2]), Scalar::sqrt3_frac(1, 2));
        for i in 0..5 {
            let mut t = Scalar::default();
            for j in 0..5 {
                t = t + u.get(&[i, j, j]);
            }
            assert_eq!(t, Scalar::default());
        }
    }

    #[test]
    fn char_poly_shape_k1() {
        let cp = char_poly3(1, Variant::One).unwrap();
        assert_eq!(cp.coefficient_of(5, 3), MultiPoly::constant(6, Scalar::int(-1)));
        assert!(cp.coefficient_of(5, 2).is_zero());
        // for a real symmetric trace-free A the λ coefficient is ½ tr A² = +3g
        let g = MultiPoly::sum_of_squares(6, 0..5);
        assert_eq!(cp.coefficient_of(5, 1), g.scale(&Scalar::int(3)));
    }

    #[test]
    fn zero_and_scaled_tensors_fail_identity() {
        let g = SymTensor::metric(5);
        let z = SymTensor::zero(5, 3);
        let r = check_properties(&z, &g).unwrap();
        assert!(r.symmetric && r.trace_free && !r.quadratic_identity);
        let u = build_upsilon(1, Variant::One).unwrap().scale(&Scalar::int(2));
        assert!(!check_properties(&u, &g).unwrap().quadratic_identity);
    }

    #[test]
    fn non_harmonic_cubic() {
        let f = MultiPoly::var(5, 0).pow(3);
        let r = cartan_check_polynomial(&f, 5, 3);
        assert!(!r.harmonic);
        assert!(!r.gradient_identity);
    }
}
