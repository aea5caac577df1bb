use std::collections::BTreeMap;

use hkgeom::coframe::{
    analyze_family, characteristic_connection, characteristic_split, coclosure_check, connection_basis, einstein_constant,
    family_presentation, family_substitutions, kappa_forms, nearly_integrable_check, reference, torsion, FamilySpec,
};
use hkgeom::exact::{Field, Rational};
use hkgeom::decomposition::{embed_lambda3, ThreeFormClass};
use hkgeom::lie::build_psi;
use hkgeom::ternary::{build_upsilon, Variant};
use hkgeom::{GeomError, KForm, Mat, Scalar};

fn spec(name: &str, params: &str) -> FamilySpec {
    FamilySpec::parse(name, params).unwrap()
}

const FAMILY27: [&str; 6] = ["k=1,t=0", "k=1,t=1", "k=1,t=2", "k=1,t=5/3", "k=1,t=10/13", "k=0,t=1"];
const VECTORIAL_A: [&str; 4] = ["t1=1,t2=0", "t1=1,t2=1", "t1=2,t2=-3", "t1=0,t2=1"];
const VECTORIAL_B: [&str; 4] = ["c=1,t=0", "c=1,t=1", "c=1/2,t=2", "c=-1,t=3"];

fn all_samples() -> Vec<FamilySpec> {
    let mut v: Vec<FamilySpec> = ["lambda=1", "lambda=0", "lambda=-1"].iter().map(|p| spec("maximal", p)).collect();
    v.extend(FAMILY27.iter().map(|p| spec("family27", p)));
    v.extend(VECTORIAL_A.iter().map(|p| spec("vectorial9a", p)));
    v.extend(VECTORIAL_B.iter().map(|p| spec("vectorial9b", p)));
    v
}

#[test]
fn every_sample_is_consistent() {
    for s in all_samples() {
        let a = analyze_family(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(a.presentation.jacobi_failures().is_empty(), "{s}");
        assert_eq!(a.torsion.base_form(), reference::torsion(&s), "{s} torsion");
        assert_eq!(*a.ricci(), reference::ricci(&s), "{s} Ricci");
        assert_eq!(*a.ricci_lc(), reference::ricci_levi_civita(&s), "{s} Levi-Civita Ricci");
        assert!(a.bianchi.first && a.bianchi.second, "{s}");
        assert!(a.coclosed, "{s}");
        assert!(a.symmetry.iter().all(|c| c.ok()), "{s} {:?}", a.symmetry);
        assert!(a.connection_in_algebra, "{s}");
        assert!(a.nearly_integrable, "{s}");
        assert!(a.split_recovers, "{s}");
        assert!(a.ricci().is_symmetric() && a.ricci_lc().is_symmetric(), "{s}");
    }
}

#[test]
fn torsion_classes() {
    for s in all_samples() {
        let a = analyze_family(&s).unwrap();
        let expected = match (&s, a.torsion.form.is_zero()) {
            (_, true) => ThreeFormClass::Zero,
            (FamilySpec::Family27 { .. }, false) => ThreeFormClass::Sym2_27,
            (FamilySpec::Vectorial9a { .. } | FamilySpec::Vectorial9b { .. }, false) => ThreeFormClass::Sym2_8,
            (FamilySpec::Maximal { .. }, false) => panic!("maximal family has torsion"),
        };
        assert_eq!(a.torsion_class, expected, "{s}");
    }
}

#[test]
fn maximal_family_is_einstein_with_constant_lambda() {
    for (p, l) in [("lambda=1", 1), ("lambda=-1", -1), ("lambda=3/2", 0)] {
        let a = analyze_family(&spec("maximal", p)).unwrap();
        assert!(a.torsion.form.is_zero());
        let c = einstein_constant(a.ricci()).unwrap();
        if l != 0 {
            assert_eq!(c, Scalar::from(l));
        } else {
            assert_eq!(c, Scalar::frac(3, 2));
        }
    }
}

#[test]
fn family27_einstein_loci() {
    let a = analyze_family(&spec("family27", "k=1,t=5/3")).unwrap();
    assert_eq!(einstein_constant(a.ricci()), Some(Scalar::frac(136, 3)));
    assert_eq!(einstein_constant(a.ricci_lc()), None);

    let b = analyze_family(&spec("family27", "k=1,t=10/13")).unwrap();
    assert_eq!(einstein_constant(b.ricci_lc()), Some(Scalar::frac(16128, 169)));
    assert_eq!(einstein_constant(b.ricci()), None);

    // coincidence of the two characteristic eigenvalues only at t = 0, 5k/3
    for p in FAMILY27 {
        let s = spec("family27", p);
        let a = analyze_family(&s).unwrap();
        let FamilySpec::Family27 { k, t } = &s else { unreachable!() };
        let special = *t == Rational::from(0) || t.clone() * Rational::from(3) == k.clone() * Rational::from(5);
        assert_eq!(einstein_constant(a.ricci()).is_some(), special, "{s}");
    }
}

#[test]
fn family27_ricci_eigenvalue_formulas() {
    let a = analyze_family(&spec("family27", "k=1,t=1")).unwrap();
    // λ = 12(1+15−8), μ = 12(1+5/3)
    let lam = Scalar::from(96);
    let mu = Scalar::from(32);
    for i in 0..5 {
        assert_eq!(*a.ricci().get(i, i), lam);
        assert_eq!(*a.ricci_lc().get(i, i), lam.clone() + Scalar::from(3));
    }
    for i in 5..8 {
        assert_eq!(*a.ricci().get(i, i), mu);
        assert_eq!(*a.ricci_lc().get(i, i), mu.clone() + Scalar::from(115));
    }
}

#[test]
fn vectorial_ricci_entries() {
    let a = analyze_family(&spec("vectorial9a", "t1=1,t2=1")).unwrap();
    let r = a.ricci();
    assert_eq!(*r.get(0, 0), Scalar::frac(-5, 3));
    assert_eq!(*r.get(2, 2), Scalar::frac(-7, 3));
    assert_eq!(*r.get(4, 4), Scalar::from(-1));
    assert_eq!(*r.get(0, 6), Scalar::frac(-2, 3));
    assert_eq!(*r.get(1, 5), Scalar::frac(2, 3));

    // λ = ⅓[(6c−t)²−2t²], μ = 4c(3c−t) at c=1, t=1
    let b = analyze_family(&spec("vectorial9b", "c=1,t=1")).unwrap();
    assert_eq!(*b.ricci().get(0, 0), Scalar::frac(23, 3));
    assert_eq!(*b.ricci().get(2, 2), Scalar::from(8));
    assert_eq!(*b.ricci_lc().get(4, 4), Scalar::frac(25, 3));
    assert_eq!(*b.ricci_lc().get(7, 7), Scalar::frac(51, 6));
}

#[test]
fn printed_differentials() {
    let p = family_presentation(&spec("family27", "k=1,t=2")).unwrap();
    assert_eq!(p.differentials[7].coeff(&[5, 6]), Scalar::from(-30));
    // d(θ⁶∧θ⁷∧θ⁸) by Leibniz
    let p = family_presentation(&spec("family27", "k=0,t=1")).unwrap();
    let n = p.dim();
    let th = |i| KForm::basis1(n, i);
    let w = th(5).wedge(&th(6)).wedge(&th(7));
    let leibniz = p.differentials[5]
        .wedge(&th(6).wedge(&th(7)))
        .sub(&th(5).wedge(&p.differentials[6]).wedge(&th(7)))
        .add(&th(5).wedge(&th(6)).wedge(&p.differentials[7]));
    assert_eq!(p.d(&w), leibniz);
    assert!(p.d(&p.d(&w)).is_zero());
}

#[test]
fn flat_limit_has_only_maurer_cartan_terms() {
    let p = family_presentation(&spec("family27", "k=0,t=0")).unwrap();
    let kap = kappa_forms(p.dim());
    for d in &p.differentials {
        assert!(d.terms().all(|(m, _)| m >> 8 != 0), "pure θ∧θ term in {d:?}");
    }
    assert!(kap.iter().all(|k| !k.is_zero()));
}

#[test]
fn substitutions_vanish_on_the_diagonal() {
    let s = spec("family27", "k=2,t=2");
    assert!(family_substitutions(&s).values().all(|f| f.is_zero()));
    let s = spec("vectorial9b", "c=1,t=2");
    let subs = family_substitutions(&s);
    assert_eq!(subs[&8], KForm::basis1(9, 0).scale(&Scalar::sqrt3()));
}

#[test]
fn missing_gamma_is_reported() {
    let s = spec("family27", "k=1,t=1");
    let p = family_presentation(&s).unwrap();
    let mut subs = family_substitutions(&s);
    subs.remove(&6);
    let err = characteristic_connection(&p, &connection_basis(), &subs).unwrap_err();
    assert!(matches!(err, GeomError::MissingParameter(_)));
}

#[test]
fn wrong_connection_leaves_vertical_torsion() {
    let s = spec("family27", "k=1,t=1");
    let p = family_presentation(&s).unwrap();
    let mut subs = BTreeMap::new();
    for a in 1..=8 {
        subs.insert(a, KForm::zero(p.dim(), 1));
    }
    let gamma = characteristic_connection(&p, &connection_basis(), &subs).unwrap();
    assert!(matches!(torsion(&p, &gamma), Err(GeomError::InvalidStructure(_))));
}

#[test]
fn coclosure_is_not_automatic() {
    let p = family_presentation(&spec("family27", "k=1,t=1")).unwrap();
    let w = KForm::monomial(8, &[0, 1, 2], Scalar::from(1));
    assert!(!coclosure_check(&w, &p).unwrap());
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(FamilySpec::parse("vectorial9b", "c=1,t=6").is_err());
    assert!(matches!(FamilySpec::parse("family27", "k=1"), Err(GeomError::MissingParameter(_))));
    assert!(matches!(FamilySpec::parse("nope", "k=1"), Err(GeomError::UnknownFamily(_))));
    assert!(FamilySpec::parse("family27", "k=1,t=1,x=2").is_err());
}

#[test]
fn split_on_dimension_eight_is_a_line_along_psi() {
    let a = analyze_family(&spec("vectorial9a", "t1=1,t2=1")).unwrap();
    let split = characteristic_split(&a.levi_civita.theta_tensor(), &connection_basis()).unwrap();
    assert!(!split.is_unique());
    let hkgeom::coframe::CharacteristicSplit::Solutions { directions, .. } = &split else { panic!() };
    assert_eq!(directions.len(), 1);
    let psi = build_psi().form;
    let (_, t) = &directions[0];
    let (mask, c) = psi.terms().next().unwrap();
    assert_eq!(psi.scale(&t.coeff_mask(mask).div_ref(c)), *t);

    // a tensor outside su(3)⊗ℝ⁸ + Λ³ has no split
    let mut bad = vec![Scalar::from(0); 28 * 8];
    bad[0] = Scalar::from(1);
    assert_eq!(split_kind(&bad), "none");
    let u = build_upsilon(2, Variant::One).unwrap();
    assert!(!nearly_integrable_check(&bad, &u).unwrap());
    assert!(nearly_integrable_check(&embed_lambda3(&psi, 8), &u).unwrap());
}

fn split_kind(v: &[Scalar]) -> &'static str {
    match characteristic_split(v, &connection_basis()).unwrap() {
        hkgeom::coframe::CharacteristicSplit::NoSolution => "none",
        _ => "some",
    }
}

#[test]
fn curvature_takes_values_in_su3() {
    let a = analyze_family(&spec("family27", "k=1,t=1")).unwrap();
    let r = a.curvature.coefficients_in(&connection_basis()).expect("su(3)-valued curvature");
    assert_eq!(r.len(), 8);
    assert!(r.iter().all(|f| f.lives_on(8)));
    assert!(einstein_constant(&Mat::identity(8)).is_some());
}
