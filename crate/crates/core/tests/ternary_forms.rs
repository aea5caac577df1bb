use hkgeom::division::AlgebraTag;
use hkgeom::exact::Field;
use hkgeom::ternary::{
    build_upsilon, cartan_poly_check, char_poly3, check_properties, compare_variants, double_contraction,
    standard_flip, Variant, VariantRelation,
};
use hkgeom::{Mat, MultiPoly, Scalar, SymTensor};

#[test]
fn properties_hold_for_all_algebras_and_variants() {
    for k in [1, 2, 4, 8] {
        for v in [Variant::One, Variant::Two] {
            let u = build_upsilon(k, v).unwrap();
            let n = u.dim();
            let r = check_properties(&u, &SymTensor::metric(n)).unwrap();
            assert!(r.all(), "k={k} {v:?}: {r:?}");
            let c = cartan_poly_check(&u);
            assert!(c.harmonic && c.gradient_identity, "k={k} {v:?}: {c:?}");
        }
    }
}

#[test]
fn contracted_identity() {
    for k in [1, 2, 4, 8] {
        let u = build_upsilon(k, Variant::One).unwrap();
        let n = u.dim();
        let expected = Mat::identity(n).scale(&Scalar::frac(n as i64 + 2, 2));
        assert_eq!(double_contraction(&u), expected, "k={k}");
    }
}

#[test]
fn variant_relations() {
    assert_eq!(compare_variants(1).unwrap(), VariantRelation::Equal);
    assert_eq!(compare_variants(2).unwrap(), VariantRelation::Equal);
    for k in [4u32, 8] {
        let n = AlgebraTag::from_k(k).unwrap().n();
        assert_eq!(
            compare_variants(k).unwrap(),
            VariantRelation::FlipEquivalent { flip: standard_flip(n) }
        );
    }
}

#[test]
fn char_poly_shape_k8() {
    let cp = char_poly3(8, Variant::Two).unwrap();
    assert!(cp.coefficient_of(26, 2).is_zero());
    assert_eq!(cp.coefficient_of(26, 3), MultiPoly::constant(27, Scalar::int(-1)));
    let u = build_upsilon(8, Variant::Two).unwrap();
    let two_upsilon = u.to_polynomial(27).scale(&Scalar::int(2));
    assert_eq!(cp.coefficient_of(26, 0), two_upsilon);
}

#[test]
fn euler_identity() {
    let u = build_upsilon(4, Variant::One).unwrap();
    let f = u.to_polynomial(14);
    assert_eq!(f.euler(0..14), f.scale(&Scalar::int(3)));
    assert_eq!(f.partial(4).coeff(&[0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0]), Scalar::int(-3).mul_ref(&Scalar::int(1)));
}
