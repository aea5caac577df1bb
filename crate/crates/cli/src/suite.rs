//! The acceptance checks, grouped by criterion number.

use hkgeom::coframe::{analyze_family, einstein_constant, reference, FamilyAnalysis, FamilySpec};
use hkgeom::decomposition::{
    decompose_lambda3, embed_lambda3, h_lambda3_intersection, in_span, upsilon_prime, DecompositionReport, ThreeFormClass,
};
use hkgeom::exact::Field;
use hkgeom::exterior::derivation_action_sym;
use hkgeom::lie::{
    build_phi14, build_psi, builtin_basis, f4_basis, invariant_line_in, sp3_invariant_5form, stabilizer_of, LieBasis,
    TensorRef,
};
use hkgeom::su2su2::{build_sextic, char_poly7, infinitesimal_invariance, phi_identities, spans_sigma, upsilon_hat6};
use hkgeom::ternary::{
    build_upsilon, cartan_poly_check, check_properties, compare_variants, standard_flip, Variant, VariantRelation,
};
use hkgeom::{Mat, Result, Scalar, SymTensor};
use serde_json::{json, Value};

use crate::commands::{dimension_for, matrix_json, spectrum_json, tensor_square_spectra};
use crate::report::{Check, SuiteReport};

pub const CRITERIA: [&str; 13] = [
    "ternary-form identities and Cartan conditions",
    "relation between the two bracketings",
    "spectra of Υ̂ on Λ² and ⊙²",
    "eigenvalue and dimension formulas",
    "stabilizers of Υ",
    "kernel dimensions of Υ′",
    "isotypic decomposition of Λ³",
    "invariant forms ψ and φ",
    "eleven-dimensional family",
    "nine-dimensional families",
    "maximal-symmetry family",
    "SU(2)×SU(2) structure",
    "determinism of the full suite",
];

/// Eigenvalues with multiplicities, largest first.
pub type Spectrum = Vec<(Scalar, usize)>;

pub const KS: [u32; 4] = [1, 2, 4, 8];

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub slow: bool,
}

fn int(v: i64) -> Scalar {
    Scalar::from(v)
}

fn spec_list(pairs: &[(i64, usize)]) -> Spectrum {
    let mut v: Vec<(Scalar, usize)> = pairs.iter().map(|&(l, d)| (int(l), d)).collect();
    v.sort_by(|a, b| b.0.to_f64().total_cmp(&a.0.to_f64()));
    v
}

fn bool_err<T>(r: &Result<T>) -> Value {
    match r {
        Ok(_) => Value::Null,
        Err(e) => json!(e.to_string()),
    }
}

fn guarded(id: &str, claim: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> Check {
    match f() {
        Ok((ok, payload)) => Check::new(id, claim, ok, payload),
        Err(e) => Check::new(id, claim, false, json!({ "error": e.to_string() })),
    }
}

pub fn criterion1() -> Vec<Check> {
    let mut out = Vec::new();
    for k in KS {
        for v in [Variant::One, Variant::Two] {
            let base = format!("c01.k{k}.v{}", v.index());
            let u = build_upsilon(k, v);
            out.push(guarded(&format!("{base}.properties"), "symmetric, trace free, quadratic identity", || {
                let u = u.as_ref().map_err(Clone::clone)?;
                let p = check_properties(u, &SymTensor::metric(u.dim()))?;
                Ok((p.all(), json!(p)))
            }));
            out.push(guarded(&format!("{base}.cartan"), "ΔF = 0 and |∇F|² = 9g²", || {
                let u = u.as_ref().map_err(Clone::clone)?;
                let c = cartan_poly_check(u);
                Ok((c.harmonic && c.gradient_identity, json!(c)))
            }));
        }
    }
    out
}

pub fn criterion2() -> Vec<Check> {
    KS.iter()
        .map(|&k| {
            guarded(&format!("c02.k{k}"), "bracketings equal for k ≤ 2, related by the standard flip otherwise", || {
                let rel = compare_variants(k)?;
                let ok = match (&rel, k) {
                    (VariantRelation::Equal, 1 | 2) => true,
                    (VariantRelation::FlipEquivalent { flip }, 4 | 8) => *flip == standard_flip(dimension_for(k)?),
                    _ => false,
                };
                Ok((ok, json!(rel)))
            })
        })
        .collect()
}

/// Printed eigenvalue tables of Υ̂ on Λ² and ⊙².
pub fn hat_tables(k: u32) -> (Spectrum, Spectrum) {
    match k {
        1 => (spec_list(&[(7, 3), (-8, 7)]), spec_list(&[(14, 1), (-3, 5), (4, 9)])),
        2 => (spec_list(&[(10, 8), (-8, 20)]), spec_list(&[(20, 1), (-6, 8), (4, 27)])),
        4 => (spec_list(&[(16, 21), (-8, 70)]), spec_list(&[(32, 1), (-12, 14), (4, 90)])),
        _ => (spec_list(&[(28, 52), (-8, 273)]), spec_list(&[(56, 1), (-24, 26), (4, 324)])),
    }
}

pub type HatSpectra = Vec<(u32, Result<(DecompositionReport, DecompositionReport)>)>;

pub fn hat_spectra(seed: u64) -> HatSpectra {
    KS.iter().map(|&k| (k, tensor_square_spectra(k, seed))).collect()
}

pub fn criterion3(spectra: &HatSpectra) -> Vec<Check> {
    let mut out = Vec::new();
    for (k, r) in spectra {
        let (lam, sym) = hat_tables(*k);
        out.push(guarded(&format!("c03.k{k}"), "Υ̂ eigenvalues and multiplicities", || {
            let (a, s) = r.as_ref().map_err(Clone::clone)?;
            let ok = a.is_complete() && s.is_complete() && a.spectrum() == lam && s.spectrum() == sym;
            Ok((ok, json!({ "lambda2": spectrum_json(&a.spectrum()), "sym2": spectrum_json(&s.spectrum()) })))
        }));
    }
    out
}

pub fn criterion4(spectra: &HatSpectra) -> Vec<Check> {
    let mut out = Vec::new();
    for (k, r) in spectra {
        out.push(guarded(&format!("c04.k{k}"), "eigenvalues 4+2n, 2+n, 2−n, −8, 4 with dims 1, dim H, n, s+1−dim H, s", || {
            let (a, s) = r.as_ref().map_err(Clone::clone)?;
            let n = dimension_for(*k)? as i64;
            let (dim_h, s_k) = match k {
                1 => (3, 9),
                2 => (8, 27),
                4 => (21, 90),
                _ => (52, 324),
            };
            let lam = spec_list(&[(2 + n, dim_h), (-8, s_k + 1 - dim_h)]);
            let sym = spec_list(&[(4 + 2 * n, 1), (2 - n, n as usize), (4, s_k)]);
            let ok = a.spectrum() == lam && s.spectrum() == sym && n as usize * (n as usize - 1) / 2 == s_k + 1;
            Ok((ok, json!({ "n": n, "dim_h": dim_h, "s_k": s_k })))
        }));
    }
    out
}

fn flip_scalars(n: usize) -> Vec<Scalar> {
    standard_flip(n).iter().map(|&s| int(s as i64)).collect()
}

pub fn criterion5() -> Vec<Check> {
    let mut out = Vec::new();
    let dims = [(1u32, 3usize), (2, 8), (4, 21), (8, 52)];
    let mut stabs: Vec<(u32, Result<LieBasis>)> = Vec::new();
    for (k, _) in dims {
        let n = dimension_for(k).unwrap_or(0);
        stabs.push((k, build_upsilon(k, Variant::One).and_then(|u| stabilizer_of(TensorRef::Sym(&u), n))));
    }
    for ((k, st), (_, d)) in stabs.iter().zip(dims) {
        out.push(guarded(&format!("c05.k{k}.dim"), "dimension of the stabilizer of Υ¹", || {
            let st = st.as_ref().map_err(Clone::clone)?;
            Ok((st.dim() == d, json!({ "dim": st.dim(), "expected": d })))
        }));
    }
    for ((k, st), name) in stabs.iter().take(3).zip(["so3-in-5", "su3-in-8", "sp3-in-14"]) {
        out.push(guarded(&format!("c05.k{k}.builtin"), "stabilizer of Υ¹ equals the printed generators' span", || {
            let st = st.as_ref().map_err(Clone::clone)?;
            let b = builtin_basis(name)?;
            let u = build_upsilon(*k, Variant::One)?;
            let residual: Vec<usize> = b.generators.iter().map(|g| derivation_action_sym(g, &u).nnz()).collect();
            Ok((st.same_span(&b), json!({ "builtin": name, "nonzero_components_of_x_upsilon": residual })))
        }));
    }
    out.push(guarded("c05.k4.flip_conjugate", "stabilizer of Υ¹ equals the flip conjugate of the printed sp(3)", || {
        let st = stabs[2].1.as_ref().map_err(Clone::clone)?;
        let b = builtin_basis("sp3-in-14")?.conjugate_by_diagonal(&flip_scalars(14));
        let u2 = build_upsilon(4, Variant::Two)?;
        Ok((st.same_span(&b) && builtin_basis("sp3-in-14")?.annihilates_tensor(&u2), json!({ "printed_annihilates_variant_2": true })))
    }));
    out.push(guarded("c05.k8.f4", "derived f₄ basis closes, satisfies Jacobi and spans the stabilizer", || {
        let f4 = f4_basis()?;
        let c = f4.structure_constants()?;
        let st = stabs[3].1.as_ref().map_err(Clone::clone)?;
        let ok = LieBasis::jacobi_holds(&c) && st.same_span(&f4);
        Ok((ok, json!({ "dim": f4.dim() })))
    }));
    out
}

pub fn criterion6(opts: Options) -> Vec<Check> {
    let mut out = Vec::new();
    for (k, want) in [(1u32, 25usize), (2, 119), (4, 658)] {
        out.push(guarded(&format!("c06.k{k}"), "dimension of ker Υ′", || {
            let map = upsilon_prime(&build_upsilon(k, Variant::One)?)?;
            let d = map.kernel_dim()?;
            Ok((d == want, json!({ "kernel_dim": d, "expected": want, "method": "exact" })))
        }));
    }
    out.push(guarded("c06.k2.intersection", "ker Υ′ ∩ (su(3)⊗ℝ⁸) ∩ Λ³ is spanned by ψ", || {
        let meet = h_lambda3_intersection(&builtin_basis("su3-in-8")?);
        let psi = embed_lambda3(&build_psi().form, 8);
        let map = upsilon_prime(&build_upsilon(2, Variant::One)?)?;
        let in_kernel = map.apply(&psi).iter().all(|x| *x == int(0));
        Ok((meet.len() == 1 && in_span(&meet, &psi) && in_kernel, json!({ "dim": meet.len() })))
    }));
    if opts.slow {
        out.push(guarded("c06.k8", "dimension of ker Υ′", || {
            let map = upsilon_prime(&build_upsilon(8, Variant::One)?)?;
            let d = map.kernel_dim_modular()?;
            Ok((d == 4004, json!({ "kernel_dim": d, "expected": 4004, "method": "two_prime" })))
        }));
    } else {
        out.push(Check::skipped("c06.k8", "dimension of ker Υ′"));
    }
    out
}

pub fn criterion7(opts: Options) -> Vec<Check> {
    let mut out = Vec::new();
    for (k, dims) in [(1u32, vec![7, 3]), (2, vec![27, 20, 8, 1]), (4, vec![189, 84, 70, 21]), (8, vec![1274, 1053, 273])] {
        let id = format!("c07.k{k}");
        if k == 8 && !opts.slow {
            out.push(Check::skipped(id, "Casimir decomposition of Λ³"));
            continue;
        }
        out.push(guarded(&id, "Casimir decomposition of Λ³", || {
            let r = decompose_lambda3(k, opts.seed)?;
            let got = r.dims_sorted();
            Ok((r.is_complete() && got == dims, json!({ "dims": got, "spectrum": spectrum_json(&r.spectrum()) })))
        }));
    }
    out
}

pub fn criterion8(opts: Options) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(guarded("c08.psi.stabilizer", "stabilizer of ψ is su(3)", || {
        let st = stabilizer_of(TensorRef::Form(&build_psi().form), 8)?;
        Ok((st.dim() == 8 && st.same_span(&builtin_basis("su3-in-8")?), json!({ "dim": st.dim() })))
    }));
    out.push(guarded("c08.psi.invariant_line", "su(3)-invariant 3-forms are the multiples of ψ", || {
        let line = invariant_line_in(&builtin_basis("su3-in-8")?, 3);
        let psi = build_psi().form;
        let ok = line.len() == 1 && {
            let (mask, c) = psi.terms().next().expect("ψ is nonzero");
            psi.scale(&line[0].coeff_mask(mask).div_ref(c)) == line[0]
        };
        Ok((ok, json!({ "dim": line.len() })))
    }));
    let phi = build_phi14();
    out.push(guarded("c08.phi.terms", "the 5-form has 129 terms", || {
        let f = &phi.as_ref().map_err(Clone::clone)?.form;
        Ok((f.num_terms() == 129, json!({ "terms": f.num_terms() })))
    }));
    out.push(guarded("c08.phi.annihilated", "every sp(3) generator annihilates the 5-form", || {
        let f = &phi.as_ref().map_err(Clone::clone)?.form;
        let sp3 = builtin_basis("sp3-in-14")?;
        let count = sp3.generators.iter().filter(|g| f.derivation_action(g).is_zero()).count();
        Ok((count == sp3.dim(), json!({ "annihilating": count, "generators": sp3.dim() })))
    }));
    out.push(guarded("c08.phi.stabilizer", "stabilizer of the 5-form has dimension 21", || {
        let f = &phi.as_ref().map_err(Clone::clone)?.form;
        let st = stabilizer_of(TensorRef::Form(f), 14)?;
        Ok((st.dim() == 21, json!({ "dim": st.dim() })))
    }));
    if opts.slow {
        out.push(guarded("c08.phi.invariant_line", "sp(3)-invariant 5-forms form a line with the printed support", || {
            let inv = sp3_invariant_5form()?.form;
            let printed = phi.as_ref().map_err(Clone::clone)?.form.clone();
            let support = |f: &hkgeom::KForm| f.terms().map(|(m, _)| m).collect::<Vec<_>>();
            let st = stabilizer_of(TensorRef::Form(&inv), 14)?;
            let ok = support(&inv) == support(&printed) && st.dim() == 21;
            Ok((ok, json!({ "terms": inv.num_terms(), "stabilizer_dim": st.dim(), "form": inv })))
        }));
    } else {
        out.push(Check::skipped("c08.phi.invariant_line", "sp(3)-invariant 5-forms form a line with the printed support"));
    }
    out
}

fn family_checks(id: &str, spec: &FamilySpec, a: &Result<FamilyAnalysis>, class: ThreeFormClass) -> Vec<Check> {
    let mut out = Vec::new();
    let get = || a.as_ref().map_err(Clone::clone);
    out.push(guarded(&format!("{id}.closed"), "d² = 0", || Ok((get()?.presentation.jacobi_failures().is_empty(), json!(bool_err(a))))));
    out.push(guarded(&format!("{id}.torsion"), "torsion equals the printed 3-form", || {
        let t = get()?.torsion.base_form();
        Ok((t == reference::torsion(spec), json!(t)))
    }));
    out.push(guarded(&format!("{id}.class"), "torsion type", || {
        let c = get()?.torsion_class;
        Ok((c == class || c == ThreeFormClass::Zero, json!({ "class": c, "expected": class })))
    }));
    out.push(guarded(&format!("{id}.ricci"), "Ricci tensor of the characteristic connection", || {
        let r = get()?.ricci().clone();
        Ok((r == reference::ricci(spec), matrix_json(&r)))
    }));
    out.push(guarded(&format!("{id}.ricci_lc"), "Ricci tensor of the Levi-Civita connection", || {
        let r = get()?.ricci_lc().clone();
        Ok((r == reference::ricci_levi_civita(spec), matrix_json(&r)))
    }));
    out.push(guarded(&format!("{id}.coclosed"), "d(*T) = 0", || Ok((get()?.coclosed, Value::Null))));
    out.push(guarded(&format!("{id}.bianchi"), "first and second Bianchi identities", || {
        let b = get()?.bianchi;
        Ok((b.first && b.second, json!(b)))
    }));
    out.push(guarded(&format!("{id}.symmetry"), "free γ directions act by the connection generators and preserve g and Υ", || {
        let a = get()?;
        Ok((a.symmetry.iter().all(|c| c.ok()) && a.connection_in_algebra && a.split_recovers, json!(a.symmetry)))
    }));
    out
}

fn sample_id(spec: &FamilySpec) -> String {
    let params: Vec<String> = spec.parameters().iter().map(|(k, v)| format!("{k}={v}")).collect();
    params.join(",")
}

pub const FAMILY27_SAMPLES: [&str; 6] = ["k=1,t=0", "k=1,t=1", "k=1,t=2", "k=1,t=5/3", "k=1,t=10/13", "k=0,t=1"];
pub const VECTORIAL9A_SAMPLES: [&str; 3] = ["t1=1,t2=0", "t1=1,t2=1", "t1=2,t2=-3"];
pub const VECTORIAL9B_SAMPLES: [&str; 3] = ["c=1,t=0", "c=1,t=1", "c=1/2,t=2"];
pub const MAXIMAL_SAMPLES: [&str; 3] = ["lambda=1", "lambda=0", "lambda=-1"];

fn parse(name: &str, p: &str) -> FamilySpec {
    FamilySpec::parse(name, p).expect("built-in sample parameters")
}

pub fn criterion9() -> Vec<Check> {
    let mut out = Vec::new();
    for p in FAMILY27_SAMPLES {
        let spec = parse("family27", p);
        let a = analyze_family(&spec);
        let id = format!("c09.{}", sample_id(&spec));
        out.extend(family_checks(&id, &spec, &a, ThreeFormClass::Sym2_27));
    }
    out.push(guarded("c09.einstein_characteristic", "Ric = (136/3)k²g at t = 5k/3", || {
        let a = analyze_family(&parse("family27", "k=1,t=5/3"))?;
        let c = einstein_constant(a.ricci());
        Ok((c == Some(Scalar::frac(136, 3)), json!(c)))
    }));
    out.push(guarded("c09.einstein_levi_civita", "Ric^LC = (16128/169)k²g at t = 10k/13", || {
        let a = analyze_family(&parse("family27", "k=1,t=10/13"))?;
        let c = einstein_constant(a.ricci_lc());
        Ok((c == Some(Scalar::frac(16128, 169)), json!(c)))
    }));
    out
}

pub fn criterion10() -> Vec<Check> {
    let mut out = Vec::new();
    for (name, samples) in [("vectorial9a", VECTORIAL9A_SAMPLES), ("vectorial9b", VECTORIAL9B_SAMPLES)] {
        for p in samples {
            let spec = parse(name, p);
            let a = analyze_family(&spec);
            let id = format!("c10.{name}.{}", sample_id(&spec));
            out.extend(family_checks(&id, &spec, &a, ThreeFormClass::Sym2_8));
        }
    }
    out
}

pub fn criterion11() -> Vec<Check> {
    let mut out = Vec::new();
    for p in MAXIMAL_SAMPLES {
        let spec = parse("maximal", p);
        let a = analyze_family(&spec);
        let id = format!("c11.{}", sample_id(&spec));
        let FamilySpec::Maximal { lambda } = &spec else { unreachable!() };
        let lambda = Scalar::rational(lambda.clone());
        out.push(guarded(&format!("{id}.closed"), "d² = 0", || {
            let a = a.as_ref().map_err(Clone::clone)?;
            Ok((a.presentation.jacobi_failures().is_empty(), Value::Null))
        }));
        out.push(guarded(&format!("{id}.torsion_free"), "T = 0", || {
            Ok((a.as_ref().map_err(Clone::clone)?.torsion.form.is_zero(), Value::Null))
        }));
        out.push(guarded(&format!("{id}.einstein"), "Ric = λg", || {
            let r = a.as_ref().map_err(Clone::clone)?.ricci().clone();
            Ok((r == Mat::identity(8).scale(&lambda), matrix_json(&r)))
        }));
        out.push(guarded(&format!("{id}.bianchi"), "first and second Bianchi identities", || {
            let b = a.as_ref().map_err(Clone::clone)?.bianchi;
            Ok((b.first && b.second, json!(b)))
        }));
    }
    out
}

pub fn criterion12(opts: Options) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(guarded("c12.char_poly", "det(ι(x) − λI) = −λ⁷ − 6gλ⁵ − 9g²λ³ + 2γλ", || {
        let cp = char_poly7()?;
        Ok((true, json!({ "gamma_terms": cp.gamma.num_terms() })))
    }));
    let sextic = build_sextic();
    out.push(guarded("c12.identities", "ΔΦ = −72g², |∇Φ|² = −72Φg², x·∇Φ = 6Φ, ΔF = 0, |∇F|² = 36g⁵", || {
        let s = sextic.as_ref().map_err(Clone::clone)?;
        let ids = phi_identities(s);
        Ok((ids.iter().all(|c| c.holds), json!(ids)))
    }));
    out.push(guarded("c12.spectrum", "spectrum of Υ̂⁶ and the eigenvalue-35 space", || {
        let s = sextic.as_ref().map_err(Clone::clone)?;
        let r = hkgeom::decomposition::spectral_split(&upsilon_hat6(s)?, opts.seed);
        let want = spec_list(&[(175, 1), (-21, 5), (35, 6), (-25, 7), (7, 9), (-49, 15), (27, 21)]);
        let su = r.eigenspaces.iter().find(|e| e.eigenvalue == int(35));
        let su_ok = match su {
            Some(e) => spans_sigma(&e.basis)?,
            None => false,
        };
        Ok((r.spectrum() == want && su_ok, json!({ "spectrum": spectrum_json(&r.spectrum()), "eigenvalue_35_is_su2_su2": su_ok })))
    }));
    out.push(guarded("c12.commutators", "bracket relations of s, σ and Σ", || {
        let s = builtin_basis("su2-left-7")?;
        let sigma = builtin_basis("su2-right-7")?;
        let big = builtin_basis("su2su2-in-8")?;
        let eps = |g: &[Mat], sign: i64| {
            [(0, 1, 2), (1, 2, 0), (2, 0, 1)].iter().all(|&(i, j, k)| g[j].commutator(&g[k]) == g[i].scale(&int(sign)))
        };
        let commute = |a: &[Mat], b: &[Mat]| a.iter().all(|x| b.iter().all(|y| x.commutator(y).is_zero()));
        let ok = eps(&s.generators, 1)
            && eps(&sigma.generators, 1)
            && commute(&s.generators, &sigma.generators)
            && eps(&big.generators[..3], -1)
            && eps(&big.generators[3..], -1)
            && commute(&big.generators[..3], &big.generators[3..]);
        Ok((ok, Value::Null))
    }));
    out.push(guarded("c12.invariance", "induced generators lie in the image of ι, annihilate Υ and span Σ", || {
        let s = sextic.as_ref().map_err(Clone::clone)?;
        let inv = infinitesimal_invariance(s)?;
        Ok((inv.all(), json!(inv)))
    }));
    out.push(guarded("c12.stabilizer", "stabilizer of Υ⁶ has dimension 6", || {
        let s = sextic.as_ref().map_err(Clone::clone)?;
        let st = stabilizer_of(TensorRef::Sym(&s.upsilon), 8)?;
        Ok((st.dim() == 6 && st.same_span(&builtin_basis("su2su2-in-8")?), json!({ "dim": st.dim() })))
    }));
    out
}

/// The checks of one criterion in `1..=12`.
pub fn run_criterion(n: u32, opts: Options) -> Option<Vec<Check>> {
    Some(match n {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(&hat_spectra(opts.seed)),
        4 => criterion4(&hat_spectra(opts.seed)),
        5 => criterion5(),
        6 => criterion6(opts),
        7 => criterion7(opts),
        8 => criterion8(opts),
        9 => criterion9(),
        10 => criterion10(),
        11 => criterion11(),
        12 => criterion12(opts),
        _ => return None,
    })
}

/// Every check of criteria 1–12, one thread per criterion. Criterion 13
/// compares two runs of this.
pub fn run_all(opts: Options) -> SuiteReport {
    let checks: Vec<Check> = std::thread::scope(|scope| {
        let spectral = scope.spawn(move || {
            let spectra = hat_spectra(opts.seed);
            let mut v = criterion3(&spectra);
            v.extend(criterion4(&spectra));
            v
        });
        let others: Vec<_> = (1..=12)
            .filter(|n| *n != 3 && *n != 4)
            .map(|n| scope.spawn(move || run_criterion(n, opts).unwrap_or_default()))
            .collect();
        let mut all = spectral.join().expect("criterion thread");
        for h in others {
            all.extend(h.join().expect("criterion thread"));
        }
        all
    });
    SuiteReport::new("all", opts.seed, opts.slow, checks)
}
