use hkgeom::decomposition::{
    casimir_on_forms, classify_3form, decompose_lambda3, embed_lambda3, from_triplets, h_lambda3_intersection, in_span,
    spectral_split, upsilon_hat, upsilon_prime, Endo, Labeling, ThreeFormClass, ThreeFormClassifier,
};
use hkgeom::exterior::form_basis;
use hkgeom::lie::{build_psi, builtin_basis};
use hkgeom::ternary::{build_upsilon, Variant};
use hkgeom::{KForm, Mat, Scalar};

fn spec(pairs: &[(i64, usize)]) -> Vec<(Scalar, usize)> {
    let mut v: Vec<(Scalar, usize)> = pairs.iter().map(|&(l, d)| (Scalar::from(l), d)).collect();
    v.sort_by(|a, b| b.0.to_f64().total_cmp(&a.0.to_f64()));
    v
}

fn hat_spectrum(k: u32) -> (Vec<(Scalar, usize)>, Vec<(Scalar, usize)>) {
    let h = upsilon_hat(&build_upsilon(k, Variant::One).unwrap()).unwrap();
    assert!(h.blocks_preserved);
    let a = spectral_split(&h.lambda2, 3);
    let s = spectral_split(&h.sym2, 3);
    assert!(a.is_complete() && s.is_complete());
    (a.spectrum(), s.spectrum())
}

#[test]
fn upsilon_hat_spectra() {
    let cases: [(u32, &[(i64, usize)], &[(i64, usize)]); 3] = [
        (1, &[(7, 3), (-8, 7)], &[(14, 1), (-3, 5), (4, 9)]),
        (2, &[(10, 8), (-8, 20)], &[(20, 1), (-6, 8), (4, 27)]),
        (4, &[(16, 21), (-8, 70)], &[(32, 1), (-12, 14), (4, 90)]),
    ];
    for (k, lam, sym) in cases {
        let (a, s) = hat_spectrum(k);
        assert_eq!(a, spec(lam), "Λ² k={k}");
        assert_eq!(s, spec(sym), "⊙² k={k}");
    }
}

#[test]
fn upsilon_hat_spectrum_in_dimension_26() {
    let (a, s) = hat_spectrum(8);
    assert_eq!(a, spec(&[(28, 52), (-8, 273)]));
    assert_eq!(s, spec(&[(56, 1), (-24, 26), (4, 324)]));
}

#[test]
fn spectra_follow_the_dimension_formulas() {
    for (k, dim_h) in [(1u32, 3usize), (2, 8), (4, 21)] {
        let n = 3 * k as i64 + 2;
        let s_k = 9 * k as usize * (k as usize + 1) / 2;
        let (a, s) = hat_spectrum(k);
        let nn = n as usize;
        assert_eq!(a, spec(&[(2 + n, dim_h), (-8, nn * (nn - 1) / 2 - dim_h)]));
        assert_eq!(s, spec(&[(4 + 2 * n, 1), (2 - n, nn), (4, s_k)]));
    }
}

#[test]
fn metric_is_an_eigenvector_and_trace_vanishes() {
    for k in [1, 2, 4] {
        let u = build_upsilon(k, Variant::One).unwrap();
        let h = upsilon_hat(&u).unwrap();
        let n = h.n;
        let g = Mat::identity(n);
        assert_eq!(h.apply_matrix(&g), g.scale(&Scalar::from(2 * n as i64 + 4)));
        assert!(is_zero(&h.full.trace()));
    }
}

fn is_zero(x: &Scalar) -> bool {
    *x == Scalar::from(0)
}

#[test]
fn non_split_operator_leaves_a_residual() {
    let rot = from_triplets(2, 2, vec![(0, 1, Scalar::from(-1)), (1, 0, Scalar::from(1))]);
    let e = Endo::new(Labeling::Forms { n: 2, degree: 1 }, rot).unwrap();
    let r = spectral_split(&e, 0);
    assert!(r.eigenspaces.is_empty());
    assert_eq!(r.residual, 2);
    assert_eq!(r.unfactored.len(), 3);
}

#[test]
fn casimir_examples() {
    let su3 = builtin_basis("su3-in-8").unwrap();
    let c = casimir_on_forms(&su3, 8, 1).unwrap();
    assert!(c.commutes_with_action());
    let r = spectral_split(&c.endo, 1);
    assert_eq!(r.eigenspaces.len(), 1);
    assert_eq!(r.eigenspaces[0].dim, 8);

    let so3 = builtin_basis("so3-in-5").unwrap();
    let c = casimir_on_forms(&so3, 5, 2).unwrap();
    assert!(c.commutes_with_action());
    let r = spectral_split(&c.endo, 1);
    assert_eq!(r.dims_sorted(), vec![7, 3]);
}

#[test]
fn lambda3_isotypic_dimensions() {
    for (k, dims) in [(1, vec![7, 3]), (2, vec![27, 20, 8, 1]), (4, vec![189, 84, 70, 21])] {
        let r = decompose_lambda3(k, 5).unwrap();
        assert!(r.is_complete(), "k={k}");
        assert_eq!(r.dims_sorted(), dims, "k={k}");
    }
    let sp3 = builtin_basis("sp3-in-14").unwrap();
    assert!(casimir_on_forms(&sp3, 14, 3).unwrap().commutes_with_action());
}

#[test]
fn upsilon_prime_kernel_dimensions() {
    for (k, dim) in [(1, 25), (2, 119), (4, 658)] {
        let p = upsilon_prime(&build_upsilon(k, Variant::One).unwrap()).unwrap();
        assert_eq!(p.kernel_dim().unwrap(), dim, "k={k}");
    }
    for k in [1, 2] {
        let p = upsilon_prime(&build_upsilon(k, Variant::One).unwrap()).unwrap();
        assert_eq!(p.kernel_dim_modular().unwrap(), p.kernel_dim_exact());
    }
}

#[test]
fn su3_tensor_intersection_is_spanned_by_psi() {
    let su3 = builtin_basis("su3-in-8").unwrap();
    let meet = h_lambda3_intersection(&su3);
    assert_eq!(meet.len(), 1);
    let psi = embed_lambda3(&build_psi().form, 8);
    assert!(in_span(&meet, &psi));
    let p = upsilon_prime(&build_upsilon(2, Variant::One).unwrap()).unwrap();
    assert!(p.apply(&psi).iter().all(is_zero));
}

#[test]
fn lambda3_embedding_is_antisymmetric() {
    let w = KForm::monomial(5, &[0, 2, 4], Scalar::from(1));
    let v = embed_lambda3(&w, 5);
    assert_eq!(v.iter().filter(|x| !is_zero(x)).count(), 3);
}

#[test]
fn classification_of_special_forms() {
    let u = build_upsilon(2, Variant::One).unwrap();
    let psi = build_psi().form;
    assert_eq!(classify_3form(&psi, &u, &psi).unwrap().class, ThreeFormClass::Sym2_1);
    let zero = KForm::zero(8, 3);
    let z = classify_3form(&zero, &u, &psi).unwrap();
    assert_eq!(z.class, ThreeFormClass::Zero);
    assert!(z.projections.is_empty());
}

#[test]
fn classification_agrees_with_casimir_eigenspaces() {
    let u = build_upsilon(2, Variant::One).unwrap();
    let psi = build_psi().form;
    let classifier = ThreeFormClassifier::new(&u, &psi).unwrap();
    let su3 = builtin_basis("su3-in-8").unwrap();
    let cas = casimir_on_forms(&su3, 8, 3).unwrap();
    let r = spectral_split(&cas.endo, 2);
    let fb = form_basis(8, 3);
    let mut seen = Vec::new();
    for space in &r.eigenspaces {
        let classes: Vec<ThreeFormClass> = space
            .basis
            .iter()
            .map(|v| classifier.classify(&KForm::from_vector(8, &fb, v)).unwrap().class)
            .collect();
        assert!(classes.iter().all(|c| *c == classes[0]), "{classes:?}");
        let expected = match space.dim {
            1 => ThreeFormClass::Sym2_1,
            8 => ThreeFormClass::Sym2_8,
            20 => ThreeFormClass::Lambda2_20,
            27 => ThreeFormClass::Sym2_27,
            d => panic!("unexpected dimension {d}"),
        };
        assert_eq!(classes[0], expected);
        seen.push(expected);
    }
    assert_eq!(seen.len(), 4);
    // a sum across two eigenspaces is mixed, with two projections
    let a = KForm::from_vector(8, &fb, &r.eigenspaces[0].basis[0]);
    let b = KForm::from_vector(8, &fb, &r.eigenspaces[1].basis[0]);
    let m = classifier.classify(&a.add(&b)).unwrap();
    assert_eq!(m.class, ThreeFormClass::Mixed);
    assert_eq!(m.projections.len(), 2);
}
