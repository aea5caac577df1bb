//! Left-invariant coframe models of SU(3) structures in dimension 8:
//! the explicit families, their characteristic connections, torsion,
//! curvature and Ricci tensors, and the characteristic split of a
//! Levi-Civita connection.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decomposition::{classify_3form, embed_generator, embed_lambda3, upsilon_prime, ThreeFormClass};
use crate::error::{GeomError, ParseError, Result};
use crate::exact::sparse::{compress, SparseEchelon};
use crate::exact::{Field, Rational};
use crate::exterior::{derivation_action_sym, form_basis, CoframePresentation};
use crate::lie::{build_psi, builtin_basis, so_coords, so_index, LieBasis};
use crate::ternary::{build_upsilon, Variant};
use crate::{KForm, Mat, Scalar, SymTensor};

pub mod reference;

/// Dimension of the θ-block of every family.
pub const BASE_DIM: usize = 8;

/// Global sign applied to `R^K_{JKL}` so that the maximal family with
/// `λ = 1` has `Ric = +g`.
pub const RICCI_SIGN: i64 = 1;

/// One of the explicit families with its rational parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Maximal { lambda: Rational },
    Family27 { k: Rational, t: Rational },
    Vectorial9a { t1: Rational, t2: Rational },
    Vectorial9b { c: Rational, t: Rational },
}

pub const FAMILY_NAMES: [&str; 4] = ["maximal", "family27", "vectorial9a", "vectorial9b"];

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Maximal { .. } => "maximal",
            FamilySpec::Family27 { .. } => "family27",
            FamilySpec::Vectorial9a { .. } => "vectorial9a",
            FamilySpec::Vectorial9b { .. } => "vectorial9b",
        }
    }

    pub fn parameter_names(name: &str) -> Result<&'static [&'static str]> {
        Ok(match name {
            "maximal" => &["lambda"],
            "family27" => &["k", "t"],
            "vectorial9a" => &["t1", "t2"],
            "vectorial9b" => &["c", "t"],
            _ => return Err(GeomError::UnknownFamily(name.to_string())),
        })
    }

    /// Builds a spec from a family name and bound parameters.
    pub fn from_params(name: &str, params: &BTreeMap<String, Rational>) -> Result<Self> {
        let names = Self::parameter_names(name)?;
        if let Some(extra) = params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(GeomError::InvalidStructure(format!("family `{name}` has no parameter `{extra}`")));
        }
        let get = |p: &str| params.get(p).cloned().ok_or_else(|| GeomError::MissingParameter(p.to_string()));
        let spec = match name {
            "maximal" => FamilySpec::Maximal { lambda: get("lambda")? },
            "family27" => FamilySpec::Family27 { k: get("k")?, t: get("t")? },
            "vectorial9a" => FamilySpec::Vectorial9a { t1: get("t1")?, t2: get("t2")? },
            _ => FamilySpec::Vectorial9b { c: get("c")?, t: get("t")? },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parses `"k=1,t=5/3"` style parameter lists.
    pub fn parse(name: &str, params: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| ParseError::Other(format!("expected name=value, found `{part}`")))?;
            map.insert(key.trim().to_string(), Rational::from_str(value.trim())?);
        }
        Self::from_params(name, &map)
    }

    pub fn parameters(&self) -> BTreeMap<String, Rational> {
        let pairs: Vec<(&str, &Rational)> = match self {
            FamilySpec::Maximal { lambda } => vec![("lambda", lambda)],
            FamilySpec::Family27 { k, t } => vec![("k", k), ("t", t)],
            FamilySpec::Vectorial9a { t1, t2 } => vec![("t1", t1), ("t2", t2)],
            FamilySpec::Vectorial9b { c, t } => vec![("c", c), ("t", t)],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if let FamilySpec::Vectorial9b { c, t } = self {
            if Rational::from(6) * c.clone() == *t {
                return Err(GeomError::InvalidStructure("vectorial9b requires 6c ≠ t".into()));
            }
        }
        Ok(())
    }

    /// Number of γ directions kept in the coframe.
    pub fn free_gammas(&self) -> usize {
        match self {
            FamilySpec::Maximal { .. } => 8,
            FamilySpec::Family27 { .. } => 3,
            FamilySpec::Vectorial9a { .. } | FamilySpec::Vectorial9b { .. } => 1,
        }
    }

    pub fn coframe_dim(&self) -> usize {
        BASE_DIM + self.free_gammas()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.parameters().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}

/// Builder for constant-coefficient forms on a coframe `(θ¹…θ⁸, γ¹…)`
/// using 1-based θ and γ labels.
struct Frame {
    n: usize,
}

impl Frame {
    fn theta(&self, i: usize) -> KForm {
        KForm::basis1(self.n, i - 1)
    }

    fn tt(&self, c: &Scalar, i: usize, j: usize) -> KForm {
        KForm::monomial(self.n, &[i - 1, j - 1], c.clone())
    }

    fn gt(&self, c: &Scalar, a: usize, i: usize) -> KForm {
        KForm::monomial(self.n, &[BASE_DIM + a - 1, i - 1], c.clone())
    }

    fn gg(&self, c: &Scalar, a: usize, b: usize) -> KForm {
        KForm::monomial(self.n, &[BASE_DIM + a - 1, BASE_DIM + b - 1], c.clone())
    }

    fn zero(&self, degree: usize) -> KForm {
        KForm::zero(self.n, degree)
    }
}

fn sum(parts: Vec<KForm>) -> KForm {
    let mut it = parts.into_iter();
    let first = it.next().expect("non-empty sum");
    it.fold(first, |acc, f| acc.add(&f))
}

fn int(v: i64) -> Scalar {
    Scalar::from(v)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn r3() -> Scalar {
    Scalar::sqrt3()
}

/// `1/√3`.
fn inv_r3() -> Scalar {
    Scalar::sqrt3_frac(1, 3)
}

fn sc(r: &Rational) -> Scalar {
    Scalar::rational(r.clone())
}

/// The 2-forms `κ¹…κ⁸` on the θ-block.
fn kappa(f: &Frame) -> Vec<KForm> {
    let one = int(1);
    vec![
        sum(vec![f.tt(&one, 1, 2), f.tt(&int(-2), 3, 4), f.tt(&one, 6, 7)]),
        sum(vec![f.tt(&one, 1, 3), f.tt(&int(-1), 2, 4), f.tt(&r3(), 2, 5), f.tt(&int(-1), 6, 8)]),
        sum(vec![f.tt(&one, 1, 4), f.tt(&r3(), 1, 5), f.tt(&one, 2, 3), f.tt(&one, 7, 8)]),
        sum(vec![f.tt(&int(4), 1, 6), f.tt(&int(2), 2, 7), f.tt(&int(-2), 3, 8)]),
        sum(vec![f.tt(&one, 1, 7), f.tt(&one, 2, 6), f.tt(&int(2), 4, 8)]),
        sum(vec![f.tt(&one, 1, 8), f.tt(&int(-1), 3, 6), f.tt(&one, 4, 7), f.tt(&r3().neg_ref(), 5, 7)]),
        sum(vec![f.tt(&int(-2), 1, 6), f.tt(&int(2), 2, 7), f.tt(&int(4), 3, 8)]),
        sum(vec![f.tt(&r3(), 2, 8), f.tt(&r3(), 3, 7), f.tt(&r3(), 4, 6), f.tt(&int(3), 5, 6)]),
    ]
}

/// `κ^α` as 2-forms on an `n`-dimensional coframe whose first 8 directions
/// are the θ-block.
pub fn kappa_forms(n: usize) -> Vec<KForm> {
    kappa(&Frame { n })
}

/// The su(3) basis `E_α` with `Γ = γ^α E_α`.
pub fn connection_basis() -> LieBasis {
    builtin_basis("su3-in-8").expect("builtin basis")
}

/// The differential system of a family with its parameters substituted,
/// checked for `d² = 0`.
pub fn family_presentation(spec: &FamilySpec) -> Result<CoframePresentation> {
    spec.validate()?;
    let n = spec.coframe_dim();
    let f = Frame { n };
    let one = int(1);
    let m1 = int(-1);
    let diffs = match spec {
        FamilySpec::Maximal { lambda } => {
            let e = connection_basis();
            let c = e.structure_constants()?;
            let kap = kappa(&f);
            let mut d = Vec::with_capacity(n);
            for i in 0..BASE_DIM {
                let mut acc = f.zero(2);
                for j in 0..BASE_DIM {
                    for (a, ea) in e.generators.iter().enumerate() {
                        let x = ea.get(i, j);
                        if !x.is_zero() {
                            acc = acc.add(&f.gt(&x.neg_ref(), a + 1, j + 1));
                        }
                    }
                }
                d.push(acc);
            }
            let coef = sc(lambda).mul_ref(&q(-1, 12));
            for g in 0..8 {
                let mut acc = kap[g].scale(&coef);
                for a in 0..8 {
                    for b in a + 1..8 {
                        let x = &c[a][b][g];
                        if !x.is_zero() {
                            acc = acc.add(&f.gg(&x.neg_ref(), a + 1, b + 1));
                        }
                    }
                }
                d.push(acc);
            }
            d
        }
        FamilySpec::Family27 { k, t } => {
            let (k, t) = (sc(k), sc(t));
            let kap = kappa(&f);
            let two_k_t = k.add_ref(&k).sub_ref(&t);
            let k7t = k.add_ref(&t.mul_ref(&int(7))).mul_ref(&int(2));
            let a = k.add_ref(&t.mul_ref(&int(15))).mul_ref(&t.sub_ref(&k.mul_ref(&int(2))));
            let b = k.add_ref(&t.mul_ref(&int(15))).mul_ref(&k.sub_ref(&t));
            vec![
                sum(vec![
                    f.gt(&one, 1, 2),
                    f.gt(&one, 2, 3),
                    f.gt(&one, 3, 4),
                    f.gt(&r3(), 3, 5),
                    kap[7].scale(&k.mul_ref(&inv_r3())),
                ]),
                sum(vec![
                    f.gt(&m1, 1, 1),
                    f.gt(&m1, 2, 4),
                    f.gt(&r3(), 2, 5),
                    f.gt(&one, 3, 3),
                    kap[5].scale(&k.neg_ref()),
                ]),
                sum(vec![f.gt(&int(-2), 1, 4), f.gt(&m1, 2, 1), f.gt(&m1, 3, 2), kap[4].scale(&k.neg_ref())]),
                sum(vec![f.gt(&int(2), 1, 3), f.gt(&one, 2, 2), f.gt(&m1, 3, 1), kap[6].scale(&k.mul_ref(&q(1, 2)))]),
                // (1/√3) dθ⁵ = −γ²∧θ² − γ³∧θ¹ − (k/6)(2κ⁴ + κ⁷)
                sum(vec![
                    f.gt(&m1, 2, 2),
                    f.gt(&m1, 3, 1),
                    kap[3].scale(&int(2)).add(&kap[6]).scale(&k.mul_ref(&q(-1, 6))),
                ])
                .scale(&r3()),
                sum(vec![f.gt(&one, 1, 7), f.gt(&m1, 2, 8), kap[2].scale(&two_k_t), f.tt(&k7t.neg_ref(), 7, 8)]),
                sum(vec![f.gt(&m1, 1, 6), f.gt(&one, 3, 8), kap[1].scale(&two_k_t), f.tt(&k7t, 6, 8)]),
                sum(vec![f.gt(&one, 2, 6), f.gt(&m1, 3, 7), kap[0].scale(&two_k_t), f.tt(&k7t.neg_ref(), 6, 7)]),
                sum(vec![f.gg(&one, 2, 3), kap[0].scale(&a), f.tt(&b, 6, 7)]),
                sum(vec![f.gg(&m1, 1, 3), kap[1].scale(&a), f.tt(&b.neg_ref(), 6, 8)]),
                sum(vec![f.gg(&one, 1, 2), kap[2].scale(&a), f.tt(&b, 7, 8)]),
            ]
        }
        FamilySpec::Vectorial9a { t1, t2 } => {
            let (t1, t2) = (sc(t1), sc(t2));
            let h1 = t1.mul_ref(&q(1, 2));
            let h2 = t2.mul_ref(&q(1, 2));
            // 1/(2√3) = √3/6
            let e1 = t1.mul_ref(&Scalar::sqrt3_frac(1, 6));
            let s1 = t1.mul_ref(&inv_r3());
            let s2 = t2.mul_ref(&inv_r3());
            let sixth = q(1, 6);
            let t1sq = t1.mul_ref(&t1);
            let t1t2 = t1.mul_ref(&t2);
            let t2sq = t2.mul_ref(&t2);
            vec![
                sum(vec![
                    f.gt(&one, 1, 2),
                    f.tt(&h1.neg_ref(), 1, 3),
                    f.tt(&h1, 2, 4),
                    f.tt(&e1.neg_ref(), 2, 5),
                    f.tt(&h2, 3, 7),
                    f.tt(&h2, 4, 6),
                ]),
                sum(vec![
                    f.gt(&m1, 1, 1),
                    f.tt(&h1, 1, 4),
                    f.tt(&e1, 1, 5),
                    f.tt(&h1, 2, 3),
                    f.tt(&h2, 3, 6),
                    f.tt(&h2.neg_ref(), 4, 7),
                ]),
                sum(vec![f.gt(&int(-2), 1, 4), f.tt(&s1, 4, 5)]),
                sum(vec![f.gt(&int(2), 1, 3), f.tt(&s1.neg_ref(), 3, 5)]),
                sum(vec![
                    f.tt(&s1, 1, 2),
                    f.tt(&s2.neg_ref(), 1, 6),
                    f.tt(&s2.neg_ref(), 2, 7),
                    f.tt(&s1, 3, 4),
                    f.tt(&s1, 6, 7),
                ]),
                sum(vec![
                    f.gt(&one, 1, 7),
                    f.tt(&h2, 1, 4),
                    f.tt(&h2, 2, 3),
                    f.tt(&h1, 3, 6),
                    f.tt(&h1.neg_ref(), 4, 7),
                    f.tt(&e1, 5, 7),
                ]),
                sum(vec![
                    f.gt(&m1, 1, 6),
                    f.tt(&h2, 1, 3),
                    f.tt(&h2.neg_ref(), 2, 4),
                    f.tt(&h1.neg_ref(), 3, 7),
                    f.tt(&h1.neg_ref(), 4, 6),
                    f.tt(&e1.neg_ref(), 5, 6),
                ]),
                f.tt(&t2.neg_ref(), 3, 4),
                sum(vec![
                    f.tt(&t1sq.mul_ref(&sixth).neg_ref(), 1, 2),
                    f.tt(&t1t2.mul_ref(&sixth), 1, 6),
                    f.tt(&t1t2.mul_ref(&sixth), 2, 7),
                    f.tt(&t2sq.mul_ref(&int(3)).sub_ref(&t1sq.mul_ref(&int(4))).mul_ref(&sixth), 3, 4),
                    f.tt(&t1sq.mul_ref(&sixth).neg_ref(), 6, 7),
                ]),
            ]
        }
        FamilySpec::Vectorial9b { c, t } => {
            let (c, t) = (sc(c), sc(t));
            let six_c_t = c.mul_ref(&int(6)).sub_ref(&t);
            let t4c = t.sub_ref(&c.mul_ref(&int(4)));
            let qq = c.mul_ref(&int(3)).mul_ref(&r3()).div_ref(&six_c_t);
            let half = q(1, 2);
            let c2 = c.mul_ref(&int(2));
            let d5 = six_c_t.mul_ref(&inv_r3());
            let dg = t.neg_ref().add_ref(&c2);
            vec![
                sum(vec![
                    f.gt(&one, 1, 2),
                    f.tt(&c.neg_ref(), 2, 8),
                    sum(vec![f.tt(&half, 3, 7), f.tt(&half, 4, 6), f.tt(&qq, 5, 6)]).scale(&t4c),
                ]),
                sum(vec![
                    f.gt(&m1, 1, 1),
                    f.tt(&c, 1, 8),
                    sum(vec![f.tt(&half, 3, 6), f.tt(&half.neg_ref(), 4, 7), f.tt(&qq, 5, 7)]).scale(&t4c),
                ]),
                sum(vec![f.gt(&int(-2), 1, 4), sum(vec![f.tt(&one, 1, 7), f.tt(&one, 2, 6), f.tt(&one, 4, 8)]).scale(&c2)]),
                sum(vec![f.gt(&int(2), 1, 3), sum(vec![f.tt(&one, 1, 6), f.tt(&m1, 2, 7), f.tt(&m1, 3, 8)]).scale(&c2)]),
                sum(vec![f.tt(&one, 1, 6), f.tt(&one, 2, 7)]).scale(&d5),
                sum(vec![
                    f.gt(&one, 1, 7),
                    sum(vec![f.tt(&half, 1, 4), f.tt(&qq, 1, 5), f.tt(&half, 2, 3)]).scale(&t4c),
                    f.tt(&c.neg_ref(), 7, 8),
                ]),
                sum(vec![
                    f.gt(&m1, 1, 6),
                    sum(vec![f.tt(&half, 1, 3), f.tt(&half.neg_ref(), 2, 4), f.tt(&qq, 2, 5)]).scale(&t4c),
                    f.tt(&c, 6, 8),
                ]),
                sum(vec![f.tt(&c2.neg_ref(), 1, 2), f.tt(&t4c.neg_ref(), 3, 4), f.tt(&c2.neg_ref(), 6, 7)]),
                sum(vec![
                    f.tt(&c.neg_ref(), 1, 2),
                    f.tt(&half.mul_ref(&t4c.neg_ref()), 3, 4),
                    f.tt(&c.neg_ref(), 6, 7),
                ])
                .scale(&dg),
            ]
        }
    };
    let p = CoframePresentation::new(BASE_DIM, diffs)?;
    if let Some(&i) = p.jacobi_failures().first() {
        return Err(GeomError::NotClosed(i));
    }
    Ok(p)
}

/// The 1-forms substituted for the non-free `γ^α` (keys are 1-based α).
pub fn family_substitutions(spec: &FamilySpec) -> BTreeMap<usize, KForm> {
    let f = Frame { n: spec.coframe_dim() };
    let th = |c: &Scalar, i: usize| f.theta(i).scale(c);
    let mut m = BTreeMap::new();
    match spec {
        FamilySpec::Maximal { .. } => {}
        FamilySpec::Family27 { k, t } => {
            let d = sc(k).sub_ref(&sc(t));
            m.insert(4, th(&d, 4).add(&th(&d.mul_ref(&r3()), 5)));
            m.insert(5, th(&d, 3));
            m.insert(6, th(&d, 2));
            m.insert(7, th(&d.mul_ref(&int(-2)), 4));
            m.insert(8, th(&d.mul_ref(&r3()).neg_ref(), 1));
        }
        FamilySpec::Vectorial9a { t1, t2 } => {
            let (t1, t2) = (sc(t1), sc(t2));
            let h1 = t1.mul_ref(&q(1, 2));
            let h2 = t2.mul_ref(&q(1, 2));
            m.insert(2, th(&h1.neg_ref(), 1));
            m.insert(3, th(&h1, 2));
            m.insert(4, th(&h2, 4).add(&th(&t2.mul_ref(&inv_r3()).neg_ref(), 5)).add(&th(&h1, 8)));
            m.insert(5, th(&h2, 3));
            m.insert(6, th(&h1.neg_ref(), 6));
            m.insert(7, th(&t2.neg_ref(), 4));
            m.insert(8, th(&t1.mul_ref(&Scalar::sqrt3_frac(-1, 2)), 7));
        }
        FamilySpec::Vectorial9b { c, t } => {
            let (c, t) = (sc(c), sc(t));
            let six_c_t = c.mul_ref(&int(6)).sub_ref(&t);
            let h = t.sub_ref(&c.mul_ref(&int(2))).mul_ref(&q(1, 2));
            let g45 = t.mul_ref(&t).sub_ref(&c.mul_ref(&c).mul_ref(&int(18))).div_ref(&six_c_t).mul_ref(&inv_r3());
            m.insert(2, th(&c, 7));
            m.insert(3, th(&c, 6));
            m.insert(4, th(&h, 4).add(&th(&g45, 5)));
            m.insert(5, th(&h, 3));
            m.insert(6, th(&c.neg_ref(), 2));
            m.insert(7, th(&c.mul_ref(&int(2)).sub_ref(&t), 4));
            m.insert(8, th(&c.mul_ref(&r3()), 1));
        }
    }
    m
}

/// An `n×n` antisymmetric matrix of 1-forms on a coframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionForm {
    pub n: usize,
    pub entries: Vec<Vec<KForm>>,
}

impl ConnectionForm {
    pub fn get(&self, i: usize, j: usize) -> &KForm {
        &self.entries[i][j]
    }

    pub fn coframe_dim(&self) -> usize {
        self.entries[0][0].dim()
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.entries[i][j] == self.entries[j][i].neg()))
    }

    /// Coefficient matrix of the coframe direction `dir`.
    pub fn value_matrix(&self, dir: usize) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.entries[i][j].coeff(&[dir]));
            }
        }
        m
    }

    /// Whether every value matrix lies in the span of `basis`.
    pub fn values_in(&self, basis: &LieBasis) -> bool {
        let span = basis.coordinate_vectors();
        (0..self.coframe_dim()).all(|d| crate::decomposition::in_span(&span, &so_coords(&self.value_matrix(d))))
    }

    /// `Σ_J Γ^I_J ∧ θ^J`.
    pub fn wedge_theta(&self, i: usize) -> KForm {
        let n = self.coframe_dim();
        let mut acc = KForm::zero(n, 2);
        for j in 0..self.n {
            acc = acc.add(&self.entries[i][j].wedge(&KForm::basis1(n, j)));
        }
        acc
    }

    /// `Γ_{MJ,K}` (the θ^K components) as an element of `Λ²ℝⁿ ⊗ ℝⁿ`;
    /// components along free γ directions are dropped.
    pub fn theta_tensor(&self) -> Vec<Scalar> {
        let n = self.n;
        let mut v = vec![Scalar::zero(); n * (n - 1) / 2 * n];
        for m in 0..n {
            for j in m + 1..n {
                for k in 0..n {
                    v[so_index(n, m, j) * n + k] = self.entries[m][j].coeff(&[k]);
                }
            }
        }
        v
    }

    /// Whether the connection has components along free γ directions.
    pub fn has_vertical_part(&self) -> bool {
        self.entries.iter().flatten().any(|f| f.terms().any(|(m, _)| m >> self.n != 0))
    }
}

/// `Γ = γ^α E_α`, where each `γ^α` is either substituted or, when absent
/// from `subs`, the coframe direction `BASE_DIM + α − 1`.
pub fn characteristic_connection(
    p: &CoframePresentation,
    basis: &LieBasis,
    subs: &BTreeMap<usize, KForm>,
) -> Result<ConnectionForm> {
    let n = basis.n;
    let dim = p.dim();
    let mut entries = vec![vec![KForm::zero(dim, 1); n]; n];
    for (a, e) in basis.generators.iter().enumerate() {
        let alpha = a + 1;
        let gamma = match subs.get(&alpha) {
            Some(f) => {
                if f.dim() != dim || f.degree() != 1 {
                    return Err(GeomError::InvalidStructure(format!("substitution for γ{alpha} is not a 1-form")));
                }
                f.clone()
            }
            None if p.base + a < dim => KForm::basis1(dim, p.base + a),
            None => return Err(GeomError::MissingParameter(format!("gamma{alpha}"))),
        };
        for i in 0..n {
            for j in 0..n {
                let x = e.get(i, j);
                if !x.is_zero() {
                    entries[i][j] = entries[i][j].add(&gamma.scale(x));
                }
            }
        }
    }
    Ok(ConnectionForm { n, entries })
}

fn is_horizontal(f: &KForm, n: usize) -> bool {
    f.terms().all(|(m, _)| m >> n == 0)
}

/// Torsion `Tᴵ = dθᴵ + Γᴵ_J ∧ θᴶ`, with its totally skew 3-form view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionData {
    /// The 2-forms `Tᴵ = ½ Tᴵ_JK θᴶ∧θᴷ`.
    pub components: Vec<KForm>,
    /// `T = Σ_{I<J<K} T_IJK θᴵ∧θᴶ∧θᴷ`.
    pub form: KForm,
}

impl TorsionData {
    /// `T_IJK = Tᴵ_JK`.
    pub fn tensor(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.components[i].coeff(&[j, k])
    }

    /// The 3-form viewed on the θ-block alone.
    pub fn base_form(&self) -> KForm {
        self.form.reembed(self.components.len())
    }
}

pub fn torsion(p: &CoframePresentation, gamma: &ConnectionForm) -> Result<TorsionData> {
    let n = gamma.n;
    let components: Vec<KForm> = (0..n).map(|i| p.differentials[i].add(&gamma.wedge_theta(i))).collect();
    if let Some(i) = components.iter().position(|c| !is_horizontal(c, n)) {
        return Err(GeomError::InvalidStructure(format!("torsion component {} has γ terms", i + 1)));
    }
    let dim = p.dim();
    let mut form = KForm::zero(dim, 3);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = components[i].coeff(&[j, k]);
                if !c.is_zero() {
                    form.add_term(1 << i | 1 << j | 1 << k, c);
                }
            }
        }
    }
    // every component must be the contraction of the 3-form
    for (i, comp) in components.iter().enumerate() {
        let mut rebuilt = KForm::zero(dim, 2);
        for j in 0..n {
            for k in j + 1..n {
                let c = form.coeff(&[i, j, k]);
                if !c.is_zero() {
                    rebuilt.add_term(1 << j | 1 << k, c);
                }
            }
        }
        if rebuilt != *comp {
            return Err(GeomError::InvalidStructure(format!("torsion is not totally skew (component {})", i + 1)));
        }
    }
    Ok(TorsionData { components, form })
}

/// Curvature 2-forms `Rᴵ_J = dΓᴵ_J + Γᴵ_K ∧ Γᴷ_J` and the Ricci tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData {
    pub n: usize,
    pub forms: Vec<Vec<KForm>>,
    pub ricci: Mat,
}

impl CurvatureData {
    /// `Rᴵ_JKL` with `Rᴵ_J = ½ Rᴵ_JKL θᴷ∧θᴸ`.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        self.forms[i][j].coeff(&[k, l])
    }

    /// The 2-forms `r^α` with `R = r^α E_α`, if `R` takes values in the
    /// span of `basis`.
    pub fn coefficients_in(&self, basis: &LieBasis) -> Option<Vec<KForm>> {
        let n = self.n;
        let dim = self.forms[0][0].dim();
        let cols = basis.coordinate_vectors();
        let a = Mat::from_columns(&cols, cols[0].len());
        let mut out = vec![KForm::zero(dim, 2); basis.dim()];
        let mut masks: Vec<u32> = self.forms.iter().flatten().flat_map(|f| f.terms().map(|(m, _)| m)).collect();
        masks.sort_unstable();
        masks.dedup();
        for mask in masks {
            let mut m = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, self.forms[i][j].coeff_mask(mask));
                }
            }
            let x = a.solve(&so_coords(&m))?;
            for (alpha, c) in x.into_iter().enumerate() {
                if !c.is_zero() {
                    out[alpha].add_term(mask, c);
                }
            }
        }
        Some(out)
    }
}

pub fn curvature(p: &CoframePresentation, gamma: &ConnectionForm) -> Result<CurvatureData> {
    let n = gamma.n;
    let mut forms = vec![vec![KForm::zero(p.dim(), 2); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut r = p.d(gamma.get(i, j));
            for k in 0..n {
                r = r.add(&gamma.get(i, k).wedge(gamma.get(k, j)));
            }
            if !is_horizontal(&r, n) {
                return Err(GeomError::InvalidStructure(format!("curvature component ({},{}) has γ terms", i + 1, j + 1)));
            }
            forms[i][j] = r;
        }
    }
    let mut ricci = Mat::zeros(n, n);
    let sign = Scalar::from(RICCI_SIGN);
    for j in 0..n {
        for l in 0..n {
            let mut s = Scalar::zero();
            for k in 0..n {
                if k != l {
                    s += &forms[k][j].coeff(&[k, l]);
                }
            }
            ricci.set(j, l, s.mul_ref(&sign));
        }
    }
    Ok(CurvatureData { n, forms, ricci })
}

/// `ΓLCᴵ_J = Γᴵ_J + ½ T_IJK θᴷ`, verified torsion free.
pub fn levi_civita(p: &CoframePresentation, gamma: &ConnectionForm, t: &TorsionData) -> Result<ConnectionForm> {
    let n = gamma.n;
    let dim = p.dim();
    let half = Scalar::frac(1, 2);
    let mut entries = gamma.entries.clone();
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            for k in 0..n {
                let c = t.form.coeff(&[i, j, k]);
                if !c.is_zero() {
                    *e = e.add(&KForm::basis1(dim, k).scale(&c.mul_ref(&half)));
                }
            }
        }
    }
    let lc = ConnectionForm { n, entries };
    for i in 0..n {
        if !p.differentials[i].add(&lc.wedge_theta(i)).is_zero() {
            return Err(GeomError::InvalidStructure(format!("Levi-Civita connection has torsion in component {}", i + 1)));
        }
    }
    Ok(lc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BianchiReport {
    /// `Rᴵ_J ∧ θᴶ = DTᴵ`.
    pub first: bool,
    /// `DRᴵ_J = 0`.
    pub second: bool,
}

pub fn bianchi_check(p: &CoframePresentation, gamma: &ConnectionForm, t: &TorsionData, r: &CurvatureData) -> BianchiReport {
    let n = gamma.n;
    let dim = p.dim();
    let first = (0..n).all(|i| {
        let mut lhs = KForm::zero(dim, 3);
        for j in 0..n {
            lhs = lhs.add(&r.forms[i][j].wedge(&KForm::basis1(dim, j)));
        }
        let mut dt = p.d(&t.components[i]);
        for j in 0..n {
            dt = dt.add(&gamma.get(i, j).wedge(&t.components[j]));
        }
        lhs == dt
    });
    let second = (0..n).all(|i| {
        (0..n).all(|j| {
            let mut dr = p.d(&r.forms[i][j]);
            for k in 0..n {
                dr = dr.add(&gamma.get(i, k).wedge(&r.forms[k][j]));
                dr = dr.sub(&r.forms[i][k].wedge(gamma.get(k, j)));
            }
            dr.is_zero()
        })
    });
    BianchiReport { first, second }
}

/// `d(*T) = 0`, the star taken on the θ-block with orientation θ¹∧…∧θⁿ.
pub fn coclosure_check(t: &KForm, p: &CoframePresentation) -> Result<bool> {
    let star = t.reembed(p.dim()).hodge_star(p.base)?;
    Ok(p.d(&star).is_zero())
}

/// `Υ′(ΓLC) = 0` for a connection given as an element of `Λ²ℝⁿ ⊗ ℝⁿ`.
pub fn nearly_integrable_check(lc_tensor: &[Scalar], u: &SymTensor) -> Result<bool> {
    let map = upsilon_prime(u)?;
    if lc_tensor.len() != map.domain_dim() {
        return Err(GeomError::DimensionMismatch { expected: map.domain_dim(), found: lc_tensor.len() });
    }
    Ok(map.apply(lc_tensor).iter().all(|x| x.is_zero()))
}

/// Solutions of `ΓLC = Γ + ½T` with `Γ ∈ 𝔥 ⊗ ℝⁿ` and `T ∈ Λ³ℝⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacteristicSplit {
    NoSolution,
    /// A particular solution plus the directions `(Γ, T)` with `Γ + ½T = 0`.
    Solutions { gamma: Vec<Scalar>, torsion: KForm, directions: Vec<(Vec<Scalar>, KForm)> },
}

impl CharacteristicSplit {
    pub fn is_unique(&self) -> bool {
        matches!(self, CharacteristicSplit::Solutions { directions, .. } if directions.is_empty())
    }

    /// Whether `(gamma, torsion)` is one of the solutions.
    pub fn contains(&self, gamma: &[Scalar], torsion: &KForm) -> bool {
        let CharacteristicSplit::Solutions { gamma: g0, torsion: t0, directions } = self else {
            return false;
        };
        let n = t0.dim();
        let fb = form_basis(n, 3);
        let flat = |g: &[Scalar], t: &KForm| -> Vec<Scalar> {
            let mut v = g.to_vec();
            v.extend(t.reembed(n).to_vector(&fb));
            v
        };
        let diff: Vec<Scalar> = flat(gamma, torsion).iter().zip(flat(g0, t0)).map(|(a, b)| a.sub_ref(&b)).collect();
        let dirs: Vec<Vec<Scalar>> = directions.iter().map(|(g, t)| flat(g, t)).collect();
        crate::decomposition::in_span(&dirs, &diff)
    }
}

pub fn characteristic_split(lc_tensor: &[Scalar], basis: &LieBasis) -> Result<CharacteristicSplit> {
    let n = basis.n;
    let rows = n * (n - 1) / 2 * n;
    if lc_tensor.len() != rows {
        return Err(GeomError::DimensionMismatch { expected: rows, found: lc_tensor.len() });
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for e in &basis.generators {
        for k in 0..n {
            cols.push(embed_generator(e, k));
        }
    }
    let nh = cols.len();
    let fb = form_basis(n, 3);
    let half = Scalar::frac(1, 2);
    for &m in &fb.masks {
        let v = embed_lambda3(&KForm::from_mask(n, m, Scalar::one()), n);
        cols.push(v.iter().map(|x| x.mul_ref(&half)).collect());
    }
    cols.push(lc_tensor.iter().map(|x| x.neg_ref()).collect());
    let ncols = cols.len();
    let mut data: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); rows];
    for (j, v) in cols.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                data[i].push((j as u32, x.clone()));
            }
        }
    }
    let mut ech = SparseEchelon::new(ncols);
    for r in data {
        ech.insert(compress(r));
    }
    if ech.pivot_columns().contains(&(ncols - 1)) {
        return Ok(CharacteristicSplit::NoSolution);
    }
    let unpack = |x: &[Scalar]| -> (Vec<Scalar>, KForm) {
        let mut g = vec![Scalar::zero(); rows];
        for (j, c) in x[..nh].iter().enumerate() {
            if !c.is_zero() {
                for (a, b) in g.iter_mut().zip(&cols[j]) {
                    a.add_mul(c, b);
                }
            }
        }
        (g, KForm::from_vector(n, &fb, &x[nh..ncols - 1]))
    };
    let mut particular = None;
    let mut directions = Vec::new();
    for x in ech.kernel_basis() {
        if x[ncols - 1].is_one() {
            particular = Some(unpack(&x));
        } else {
            directions.push(unpack(&x));
        }
    }
    let (gamma, torsion) = particular.expect("free last column gives a particular solution");
    Ok(CharacteristicSplit::Solutions { gamma, torsion, directions })
}

/// Infinitesimal invariance of `g` and `Υ` along one free γ direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    /// 1-based γ label.
    pub gamma: usize,
    /// `dθ` has no `γ∧γ` terms and its `γ^α` part is `−E_α θ`.
    pub matches_connection: bool,
    pub preserves_metric: bool,
    pub preserves_upsilon: bool,
}

impl SymmetryCheck {
    pub fn ok(&self) -> bool {
        self.matches_connection && self.preserves_metric && self.preserves_upsilon
    }
}

/// For each free `γ^α`, reads the matrix `A` with `dθᴵ ∋ −A_IJ γ^α∧θᴶ`
/// and checks that it is `E_α` and annihilates `g` and `Υ`.
pub fn lie_symmetry_check(p: &CoframePresentation, basis: &LieBasis, u: &SymTensor) -> Vec<SymmetryCheck> {
    let n = p.base;
    let metric = SymTensor::metric(n);
    (0..p.dim() - n)
        .map(|a| {
            let g = n + a;
            let mut m = Mat::zeros(n, n);
            let mut clean = true;
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, p.differentials[i].coeff(&[g, j]).neg_ref());
                }
                clean &= p.differentials[i].terms().all(|(mask, _)| (mask >> n).count_ones() <= 1);
            }
            let vertical_only: bool = (0..n).all(|i| {
                p.differentials[i]
                    .terms()
                    .filter(|(mask, _)| mask & (1 << g) != 0)
                    .all(|(mask, _)| (mask & !(1 << g)).count_ones() == 1 && (mask & !(1 << g)) >> n == 0)
            });
            SymmetryCheck {
                gamma: a + 1,
                matches_connection: clean && vertical_only && basis.generators.get(a) == Some(&m),
                preserves_metric: m.is_antisymmetric() && derivation_action_sym(&m, &metric).is_zero(),
                preserves_upsilon: derivation_action_sym(&m, u).is_zero(),
            }
        })
        .collect()
}

/// Scalar `c` with `m = c·id`, if any.
pub fn einstein_constant(m: &Mat) -> Option<Scalar> {
    let c = m.get(0, 0).clone();
    (*m == Mat::identity(m.rows()).scale(&c)).then_some(c)
}

/// Every computed property of one family sample.
#[derive(Clone, Debug)]
pub struct FamilyAnalysis {
    pub spec: FamilySpec,
    pub presentation: CoframePresentation,
    pub connection: ConnectionForm,
    pub torsion: TorsionData,
    pub torsion_class: ThreeFormClass,
    pub curvature: CurvatureData,
    pub levi_civita: ConnectionForm,
    pub curvature_lc: CurvatureData,
    pub bianchi: BianchiReport,
    pub coclosed: bool,
    pub symmetry: Vec<SymmetryCheck>,
    pub nearly_integrable: bool,
    pub split_recovers: bool,
    pub connection_in_algebra: bool,
}

impl FamilyAnalysis {
    pub fn ricci(&self) -> &Mat {
        &self.curvature.ricci
    }

    pub fn ricci_lc(&self) -> &Mat {
        &self.curvature_lc.ricci
    }
}

pub fn analyze_family(spec: &FamilySpec) -> Result<FamilyAnalysis> {
    let presentation = family_presentation(spec)?;
    let basis = connection_basis();
    let connection = characteristic_connection(&presentation, &basis, &family_substitutions(spec))?;
    let torsion_data = torsion(&presentation, &connection)?;
    let u = build_upsilon(2, Variant::One)?;
    let psi = build_psi().form;
    let torsion_class = classify_3form(&torsion_data.base_form(), &u, &psi)?.class;
    let curv = curvature(&presentation, &connection)?;
    let lc = levi_civita(&presentation, &connection, &torsion_data)?;
    let curv_lc = curvature(&presentation, &lc)?;
    let bianchi = bianchi_check(&presentation, &connection, &torsion_data, &curv);
    let coclosed = coclosure_check(&torsion_data.form, &presentation)?;
    let symmetry = lie_symmetry_check(&presentation, &basis, &u);
    let lc_tensor = lc.theta_tensor();
    let nearly_integrable = nearly_integrable_check(&lc_tensor, &u)?;
    let split = characteristic_split(&lc_tensor, &basis)?;
    let split_recovers = split.contains(&connection.theta_tensor(), &torsion_data.base_form());
    let connection_in_algebra = connection.is_antisymmetric() && connection.values_in(&basis);
    Ok(FamilyAnalysis {
        spec: spec.clone(),
        presentation,
        connection,
        torsion: torsion_data,
        torsion_class,
        curvature: curv,
        levi_civita: lc,
        curvature_lc: curv_lc,
        bianchi,
        coclosed,
        symmetry,
        nearly_integrable,
        split_recovers,
        connection_in_algebra,
    })
}
