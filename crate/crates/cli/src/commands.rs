//! Single computations behind the subcommands. Each returns a JSON value
//! and whether every check it performed passed.

use hkgeom::coframe::{analyze_family, einstein_constant, FamilySpec};
use hkgeom::decomposition::{
    classify_3form, decompose_lambda3 as lambda3, spectral_split, upsilon_hat, upsilon_prime, DecompositionReport,
};
use hkgeom::lie::{build_phi14, build_psi, builtin_basis, f4_basis, stabilizer_of, LieBasis, TensorRef};
use hkgeom::su2su2::{build_sextic, infinitesimal_invariance, phi_identities, spans_sigma, upsilon_hat6};
use hkgeom::ternary::{build_upsilon, cartan_poly_check, check_properties, Variant};
use hkgeom::{GeomError, KForm, Mat, Result, Scalar, SymTensor};
use serde_json::{json, Value};

use crate::report::Status;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub value: Value,
    pub status: Status,
}

impl Outcome {
    fn new(value: Value, ok: bool) -> Self {
        Outcome { value, status: Status::from_bool(ok) }
    }

    fn skipped(value: Value) -> Self {
        Outcome { value, status: Status::SkippedSlow }
    }
}

pub fn dimension_for(k: u32) -> Result<usize> {
    match k {
        1 | 2 | 4 | 8 => Ok(3 * k as usize + 2),
        _ => Err(GeomError::UnsupportedK(k)),
    }
}

pub fn matrix_json(m: &Mat) -> Value {
    json!(m.to_rows())
}

pub fn spectrum_json(spectrum: &[(Scalar, usize)]) -> Value {
    Value::Array(spectrum.iter().map(|(l, d)| json!({ "eigenvalue": l, "dim": d })).collect())
}

fn report_json(r: &DecompositionReport) -> Value {
    json!({
        "spectrum": spectrum_json(&r.spectrum()),
        "residual": r.residual,
        "complete": r.is_complete(),
    })
}

pub fn verify_ternary(k: u32, variant: Variant, input: Option<SymTensor>) -> Result<Outcome> {
    let u = match input {
        Some(t) => t,
        None => build_upsilon(k, variant)?,
    };
    if u.rank() != 3 {
        return Err(GeomError::InvalidStructure(format!("expected a rank-3 tensor, found rank {}", u.rank())));
    }
    let props = check_properties(&u, &SymTensor::metric(u.dim()))?;
    let cartan = cartan_poly_check(&u);
    let ok = props.all() && cartan.harmonic && cartan.gradient_identity;
    Ok(Outcome::new(
        json!({ "k": k, "variant": variant.index(), "n": u.dim(), "properties": props, "cartan": cartan }),
        ok,
    ))
}

pub fn verify_cartan(k: u32) -> Result<Outcome> {
    let mut ok = true;
    let mut out = Vec::new();
    for v in [Variant::One, Variant::Two] {
        let c = cartan_poly_check(&build_upsilon(k, v)?);
        ok &= c.harmonic && c.gradient_identity;
        out.push(json!({ "variant": v.index(), "cartan": c }));
    }
    Ok(Outcome::new(json!({ "k": k, "n": dimension_for(k)?, "variants": out }), ok))
}

/// Spectrum of Υ̂ on `Λ²` and `⊙²`, plus their union.
pub fn tensor_square_spectra(k: u32, seed: u64) -> Result<(DecompositionReport, DecompositionReport)> {
    let h = upsilon_hat(&build_upsilon(k, Variant::One)?)?;
    if !h.blocks_preserved {
        return Err(GeomError::InvalidStructure("Υ̂ does not preserve Λ² ⊕ ⊙²".into()));
    }
    Ok((spectral_split(&h.lambda2, seed), spectral_split(&h.sym2, seed)))
}

pub fn merged_spectrum(parts: &[&DecompositionReport]) -> Vec<(Scalar, usize)> {
    let mut all: Vec<(Scalar, usize)> = Vec::new();
    for r in parts {
        for (l, d) in r.spectrum() {
            match all.iter_mut().find(|(m, _)| *m == l) {
                Some(slot) => slot.1 += d,
                None => all.push((l, d)),
            }
        }
    }
    all.sort_by(|a, b| b.0.to_f64().total_cmp(&a.0.to_f64()));
    all
}

pub fn decompose_tensor_square(k: u32, seed: u64) -> Result<Outcome> {
    let (a, s) = tensor_square_spectra(k, seed)?;
    let ok = a.is_complete() && s.is_complete();
    Ok(Outcome::new(
        json!({
            "k": k,
            "n": dimension_for(k)?,
            "lambda2": report_json(&a),
            "sym2": report_json(&s),
            "spectrum": spectrum_json(&merged_spectrum(&[&a, &s])),
        }),
        ok,
    ))
}

pub fn decompose_lambda3(k: u32, seed: u64, slow: bool) -> Result<Outcome> {
    let n = dimension_for(k)?;
    if k == 8 && !slow {
        return Ok(Outcome::skipped(json!({ "k": k, "n": n, "skipped": "requires --slow" })));
    }
    let r = lambda3(k, seed)?;
    Ok(Outcome::new(
        json!({ "k": k, "n": n, "method": r.method, "dims": r.dims_sorted(), "decomposition": report_json(&r) }),
        r.is_complete(),
    ))
}

pub fn kernel_upsilon_prime(k: u32, modular: bool) -> Result<Outcome> {
    let n = dimension_for(k)?;
    let map = upsilon_prime(&build_upsilon(k, Variant::One)?)?;
    let use_modular = modular || n > 14;
    let dim = if use_modular { map.kernel_dim_modular()? } else { map.kernel_dim_exact() };
    Ok(Outcome::new(
        json!({
            "k": k,
            "n": n,
            "domain_dim": map.domain_dim(),
            "kernel_dim": dim,
            "method": if use_modular { "two_prime" } else { "exact" },
        }),
        true,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Upsilon,
    Psi,
    Phi14,
    Sextic,
}

pub fn stabilizer_basis(target: Target, k: u32) -> Result<LieBasis> {
    match target {
        Target::Upsilon => {
            let n = dimension_for(k)?;
            stabilizer_of(TensorRef::Sym(&build_upsilon(k, Variant::One)?), n)
        }
        Target::Psi => stabilizer_of(TensorRef::Form(&build_psi().form), 8),
        Target::Phi14 => stabilizer_of(TensorRef::Form(&build_phi14()?.form), 14),
        Target::Sextic => stabilizer_of(TensorRef::Sym(&build_sextic()?.upsilon), 8),
    }
}

/// The builtin algebra a stabilizer is compared with.
pub fn expected_algebra(target: Target, k: u32) -> Result<Option<LieBasis>> {
    Ok(match (target, k) {
        (Target::Upsilon, 1) => Some(builtin_basis("so3-in-5")?),
        (Target::Upsilon, 2) | (Target::Psi, _) => Some(builtin_basis("su3-in-8")?),
        (Target::Upsilon, 4) | (Target::Phi14, _) => Some(builtin_basis("sp3-in-14")?),
        (Target::Upsilon, 8) => Some(f4_basis()?),
        (Target::Sextic, _) => Some(builtin_basis("su2su2-in-8")?),
        _ => None,
    })
}

pub fn stabilizer(target: Target, k: u32) -> Result<Outcome> {
    let st = stabilizer_basis(target, k)?;
    let expected = expected_algebra(target, k)?;
    let same = expected.as_ref().map(|e| st.same_span(e));
    let mut value = json!({
        "target": format!("{target:?}").to_lowercase(),
        "n": st.n,
        "dim": st.dim(),
        "generators": st.generators.iter().map(Mat::to_rows).collect::<Vec<_>>(),
    });
    if let (Some(e), Some(s)) = (&expected, same) {
        value["expected"] = json!({ "name": e.name, "dim": e.dim(), "same_span": s });
    }
    Ok(Outcome::new(value, same.unwrap_or(true)))
}

pub fn classify(form: &KForm) -> Result<Outcome> {
    if form.dim() != 8 || form.degree() != 3 {
        return Err(GeomError::InvalidStructure("expected a 3-form on R^8".into()));
    }
    let u = build_upsilon(2, Variant::One)?;
    let c = classify_3form(form, &u, &build_psi().form)?;
    let projections: Vec<Value> = c.projections.iter().map(|(l, m)| json!({ "eigenvalue": l, "image": matrix_json(m) })).collect();
    Ok(Outcome::new(json!({ "class": c.class, "label": c.class.to_string(), "projections": projections }), true))
}

pub fn family(spec: &FamilySpec) -> Result<Outcome> {
    let a = analyze_family(spec)?;
    let ric = einstein_constant(a.ricci());
    let ric_lc = einstein_constant(a.ricci_lc());
    let symmetry_ok = a.symmetry.iter().all(|c| c.ok());
    let ok = a.bianchi.first && a.bianchi.second && symmetry_ok && a.split_recovers && a.connection_in_algebra;
    Ok(Outcome::new(
        json!({
            "family": spec.name(),
            "parameters": spec.parameters().iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
            "torsion": a.torsion.base_form(),
            "torsion_class": a.torsion_class,
            "ricci": matrix_json(a.ricci()),
            "ricci_levi_civita": matrix_json(a.ricci_lc()),
            "einstein_characteristic": ric.is_some(),
            "ric_scalar": ric,
            "einstein_levi_civita": ric_lc.is_some(),
            "ric_lc_scalar": ric_lc,
            "bianchi": a.bianchi,
            "coclosed": a.coclosed,
            "symmetry": a.symmetry,
            "nearly_integrable": a.nearly_integrable,
            "split_recovers_connection": a.split_recovers,
        }),
        ok,
    ))
}

pub fn verify_su2su2(seed: u64) -> Result<Outcome> {
    let s = build_sextic()?;
    let identities = phi_identities(&s);
    let r = spectral_split(&upsilon_hat6(&s)?, seed);
    let su_space = r.eigenspaces.iter().find(|e| e.eigenvalue == Scalar::from(35));
    let su_is_sigma = match su_space {
        Some(e) => spans_sigma(&e.basis)?,
        None => false,
    };
    let inv = infinitesimal_invariance(&s)?;
    let stab = stabilizer_of(TensorRef::Sym(&s.upsilon), 8)?;
    let ok = identities.iter().all(|c| c.holds) && r.is_complete() && su_is_sigma && inv.all() && stab.dim() == 6;
    Ok(Outcome::new(
        json!({
            "identities": identities,
            "upsilon_hat6": report_json(&r),
            "eigenvalue_35_is_su2_su2": su_is_sigma,
            "invariance": inv,
            "stabilizer_dim": stab.dim(),
        }),
        ok,
    ))
}
