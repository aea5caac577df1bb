use hkgeom::coframe::{family_presentation, FamilySpec};
use hkgeom::division::{AlgebraElement, AlgebraTag};
use hkgeom::exact::Field;
use hkgeom::{KForm, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(|(a, b, c, d)| Scalar::frac(a, b) + Scalar::sqrt3_frac(c, d))
}

fn octonion() -> impl Strategy<Value = AlgebraElement<Scalar>> {
    proptest::array::uniform8(scalar()).prop_map(|c| AlgebraElement::new(AlgebraTag::O, c).unwrap())
}

/// A form of the given degree on an 11-dimensional coframe with up to four terms.
fn form(degree: usize) -> impl Strategy<Value = KForm> {
    proptest::collection::vec((proptest::sample::subsequence((0..11).collect::<Vec<_>>(), degree), scalar()), 1..4)
        .prop_map(move |terms| {
            terms.into_iter().fold(KForm::zero(11, degree), |acc, (idx, c)| acc.add(&KForm::monomial(11, &idx, c)))
        })
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert!(a.sub_ref(&a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div_ref(&b).mul_ref(&b), a.clone());
        }
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in octonion(), y in octonion()) {
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(xy.norm(), x.norm().mul_ref(&y.norm()));
    }

    #[test]
    fn conjugation_reverses_products(x in octonion(), y in octonion()) {
        let lhs = x.multiply(&y).unwrap().conjugate();
        let rhs = y.conjugate().multiply(&x.conjugate()).unwrap();
        prop_assert!(lhs == rhs);
    }

    #[test]
    fn wedge_is_associative(a in form(1), b in form(2), c in form(2)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
    }

    #[test]
    fn coframe_derivative_obeys_leibniz(a in form(1), b in form(2)) {
        let p = family_presentation(&FamilySpec::parse("family27", "k=1,t=1").unwrap()).unwrap();
        let lhs = p.d(&a.wedge(&b));
        let rhs = p.d(&a).wedge(&b).sub(&a.wedge(&p.d(&b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(p.d(&p.d(&a)).is_zero());
    }
}
