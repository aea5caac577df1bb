use hkgeom::exact::Field;
use hkgeom::lie::{
    build_phi14, build_psi, builtin_basis, invariant_line_in, polynomial_action, sp3_invariant_5form, stabilizer_of, LieBasis,
    TensorRef,
};
use hkgeom::ternary::{build_upsilon, standard_flip, Variant};
use hkgeom::{Mat, Scalar};

fn eps_bracket_check(b: &LieBasis, sign: i64) {
    // [E_j, E_k] = sign · ε_ijk E_i
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let br = b.generators[j].commutator(&b.generators[k]);
        assert_eq!(br, b.generators[i].scale(&Scalar::from(sign)), "{} [{j},{k}]", b.name);
    }
}

#[test]
fn builtin_bases_close_and_satisfy_jacobi() {
    for name in hkgeom::lie::BUILTIN_NAMES {
        let b = builtin_basis(name).unwrap();
        let c = b.structure_constants().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(LieBasis::jacobi_holds(&c), "{name}");
    }
}

#[test]
fn su2_commutation_relations() {
    let s = builtin_basis("su2-left-7").unwrap();
    let sigma = builtin_basis("su2-right-7").unwrap();
    eps_bracket_check(&s, 1);
    eps_bracket_check(&sigma, 1);
    for a in &s.generators {
        for b in &sigma.generators {
            assert!(a.commutator(b).is_zero());
        }
    }
    let big = builtin_basis("su2su2-in-8").unwrap();
    let left = LieBasis::new("L", 8, big.generators[..3].to_vec()).unwrap();
    let right = LieBasis::new("R", 8, big.generators[3..].to_vec()).unwrap();
    eps_bracket_check(&left, -1);
    eps_bracket_check(&right, -1);
    for a in &left.generators {
        for b in &right.generators {
            assert!(a.commutator(b).is_zero());
        }
    }
}

fn flip(n: usize) -> Vec<Scalar> {
    standard_flip(n).iter().map(|&s| Scalar::from(s as i64)).collect()
}

#[test]
fn builtin_bases_annihilate_upsilon() {
    for (k, name) in [(1, "so3-in-5"), (2, "su3-in-8")] {
        let b = builtin_basis(name).unwrap();
        for v in [Variant::One, Variant::Two] {
            assert!(b.annihilates_tensor(&build_upsilon(k, v).unwrap()), "{name} {v:?}");
        }
    }
    // the printed sp(3) generators preserve the second bracketing; their
    // flip conjugates preserve the first
    let sp3 = builtin_basis("sp3-in-14").unwrap();
    let u1 = build_upsilon(4, Variant::One).unwrap();
    let u2 = build_upsilon(4, Variant::Two).unwrap();
    assert!(sp3.annihilates_tensor(&u2));
    assert!(!sp3.annihilates_tensor(&u1));
    let fixing_u1 = sp3.generators.iter().filter(|g| polynomial_action(g, &u1.to_polynomial(14)).is_zero()).count();
    assert_eq!(fixing_u1, 6);
    assert!(sp3.conjugate_by_diagonal(&flip(14)).annihilates_tensor(&u1));
}

#[test]
fn stabilizers_of_upsilon_in_low_dimensions() {
    for (k, n, d, name) in [(1, 5, 3, "so3-in-5"), (2, 8, 8, "su3-in-8")] {
        let u = build_upsilon(k, Variant::One).unwrap();
        let st = stabilizer_of(TensorRef::Sym(&u), n).unwrap();
        assert_eq!(st.dim(), d, "k={k}");
        assert!(st.same_span(&builtin_basis(name).unwrap()), "k={k}");
    }
    let sp3 = builtin_basis("sp3-in-14").unwrap();
    let u1 = build_upsilon(4, Variant::One).unwrap();
    let st1 = stabilizer_of(TensorRef::Sym(&u1), 14).unwrap();
    assert_eq!(st1.dim(), 21);
    assert!(!st1.same_span(&sp3));
    assert!(st1.same_span(&sp3.conjugate_by_diagonal(&flip(14))));
    let u2 = build_upsilon(4, Variant::Two).unwrap();
    assert!(stabilizer_of(TensorRef::Sym(&u2), 14).unwrap().same_span(&sp3));
}

#[test]
fn f4_stabilizer_in_26_dimensions() {
    let u = build_upsilon(8, Variant::One).unwrap();
    let f4 = hkgeom::lie::f4_basis().unwrap();
    assert_eq!(f4.dim(), 52);
    assert!(f4.annihilates_tensor(&u));
    let c = f4.structure_constants().expect("derived basis closes");
    assert!(LieBasis::jacobi_holds(&c));
}

#[test]
fn psi_has_su3_stabilizer() {
    let psi = build_psi().form;
    let su3 = builtin_basis("su3-in-8").unwrap();
    assert!(su3.annihilates_form(&psi));
    let st = stabilizer_of(TensorRef::Form(&psi), 8).unwrap();
    assert_eq!(st.dim(), 8);
    assert!(st.same_span(&su3));
}

#[test]
fn invariant_three_forms_in_dimension_eight() {
    let su3 = builtin_basis("su3-in-8").unwrap();
    let line = invariant_line_in(&su3, 3);
    assert_eq!(line.len(), 1);
    let psi = build_psi().form;
    // proportional to ψ
    let (mask, c) = psi.terms().next().unwrap();
    let ratio = line[0].coeff_mask(mask).div_ref(c);
    assert_eq!(psi.scale(&ratio), line[0]);
    let so3 = builtin_basis("so3-in-5").unwrap();
    assert!(invariant_line_in(&so3, 1).is_empty());
}

#[test]
fn printed_five_form_is_not_sp3_invariant() {
    let phi = build_phi14().unwrap().form;
    let sp3 = builtin_basis("sp3-in-14").unwrap();
    assert_eq!(phi.num_terms(), 129);
    assert!(sp3.generators.iter().all(|g| !phi.derivation_action(g).is_zero()));
    assert!(!sp3.conjugate_by_diagonal(&flip(14)).annihilates_form(&phi));
    assert_eq!(stabilizer_of(TensorRef::Form(&phi), 14).unwrap().dim(), 1);
}

#[test]
fn computed_five_form_has_sp3_stabilizer() {
    let inv = sp3_invariant_5form().unwrap().form;
    let printed = build_phi14().unwrap().form;
    let support = |f: &hkgeom::KForm| f.terms().map(|(m, _)| m).collect::<Vec<_>>();
    assert_eq!(support(&inv), support(&printed));
    assert_eq!(inv.coeff(&[0, 1, 2, 3, 4]), printed.coeff(&[0, 1, 2, 3, 4]));
    let sp3 = builtin_basis("sp3-in-14").unwrap();
    assert!(sp3.annihilates_form(&inv));
    let st = stabilizer_of(TensorRef::Form(&inv), 14).unwrap();
    assert_eq!(st.dim(), 21);
    assert!(st.same_span(&sp3));
}

#[test]
fn action_is_a_lie_algebra_homomorphism() {
    let su3 = builtin_basis("su3-in-8").unwrap();
    let w = hkgeom::KForm::monomial(8, &[0, 2, 5], Scalar::from(3))
        .add(&hkgeom::KForm::monomial(8, &[1, 4, 7], Scalar::sqrt3()))
        .add(&hkgeom::KForm::monomial(8, &[3, 6, 7], Scalar::frac(1, 2)));
    for x in &su3.generators {
        for y in &su3.generators {
            let lhs = w.derivation_action(&x.commutator(y));
            let rhs = w.derivation_action(y).derivation_action(x).sub(&w.derivation_action(x).derivation_action(y));
            assert_eq!(lhs, rhs);
        }
    }
    let zero = Mat::zeros(8, 8);
    assert!(w.derivation_action(&zero).is_zero());
}
