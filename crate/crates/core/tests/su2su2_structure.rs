use std::sync::OnceLock;

use hkgeom::decomposition::spectral_split;
use hkgeom::exact::Field;
use hkgeom::lie::{builtin_basis, stabilizer_of, TensorRef};
use hkgeom::su2su2::{
    alpha_relations, build_sextic, char_poly7, infinitesimal_invariance, iota, iota8, metric_poly, phi_identities,
    poly_determinant, spans_sigma, upsilon_hat6, SexticData,
};
use hkgeom::{Mat, MultiPoly, Scalar};

fn sextic() -> &'static SexticData {
    static S: OnceLock<SexticData> = OnceLock::new();
    S.get_or_init(|| build_sextic().unwrap())
}

fn unit(i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::from(0); 8];
    v[i] = Scalar::from(1);
    v
}

#[test]
fn iota_matches_the_printed_matrix() {
    assert!(iota(&vec![Scalar::from(0); 8]).unwrap().is_zero());
    let m = iota(&unit(0)).unwrap();
    assert_eq!(*m.get(0, 6), Scalar::from(-2));
    assert_eq!(*m.get(6, 0), Scalar::from(2));
    assert_eq!(*m.get(1, 3), Scalar::from(-1));
    let m = iota(&unit(7)).unwrap();
    assert_eq!(*m.get(1, 4), Scalar::sqrt3());
    assert!(iota(&[Scalar::from(1)]).is_err());

    let io = iota8();
    assert!(io.is_injective());
    assert!(io.relations_hold());
    let x: Vec<Scalar> = (1..=8).map(|i| Scalar::frac(i, 3)).collect();
    let m = io.apply(&x).unwrap();
    assert!(m.is_antisymmetric());
    assert!(alpha_relations(&m).iter().all(|r| *r == Scalar::from(0)));
    assert_eq!(io.preimage(&m).unwrap(), x);
    assert!(io.preimage(&Mat::identity(7)).is_none());
}

#[test]
fn characteristic_polynomial_shape() {
    let cp = char_poly7().unwrap();
    let g = metric_poly();
    assert_eq!(cp.coefficients[7], MultiPoly::constant(8, Scalar::from(-1)));
    assert_eq!(cp.coefficients[5], g.scale(&Scalar::from(-6)));
    assert_eq!(cp.coefficients[3], g.mul(&g).scale(&Scalar::from(-9)));
    for p in [0, 2, 4, 6] {
        assert!(cp.coefficients[p].is_zero(), "λ^{p}");
    }
    assert!(cp.gamma.is_homogeneous(6));
    // at x = 0 only −λ⁷ survives
    let mut at_zero = vec![Scalar::from(0); 9];
    at_zero[8] = Scalar::from(2);
    assert_eq!(cp.poly.eval(&at_zero), Scalar::from(-128));
}

#[test]
fn char_poly_agrees_with_numeric_determinant() {
    let cp = char_poly7().unwrap();
    let x: Vec<Scalar> = [1, -2, 0, 3, 1, 1, -1, 2].iter().map(|&v| Scalar::from(v)).collect();
    let lam = Scalar::frac(1, 2);
    let m = iota(&x).unwrap().sub(&Mat::identity(7).scale(&lam));
    let mut point = x.clone();
    point.push(lam);
    assert_eq!(cp.poly.eval(&point), m.determinant());
}

#[test]
fn polynomial_determinant_of_constants() {
    let c = |v: i64| MultiPoly::constant(1, Scalar::from(v));
    let m = vec![vec![c(2), c(1), c(0)], vec![c(1), c(3), c(1)], vec![c(0), c(1), c(4)]];
    assert_eq!(poly_determinant(&m), c(18));
}

#[test]
fn sextic_identities() {
    let s = sextic();
    let checks = phi_identities(s);
    for c in &checks {
        assert!(c.holds, "{} residual {}", c.name, c.residual);
    }
    let names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["laplacian_phi", "gradient_phi", "euler_phi", "laplacian_f", "gradient_f"]);
    assert_eq!(s.upsilon.to_polynomial(8), s.f);
    assert_eq!(s.phi, s.gamma);
}

#[test]
fn upsilon_hat6_spectrum() {
    let s = sextic();
    let h = upsilon_hat6(s).unwrap();
    let r = spectral_split(&h, 7);
    assert!(r.is_complete());
    let mut got: Vec<(i64, usize)> = r.spectrum().iter().map(|(l, d)| (l.to_f64().round() as i64, *d)).collect();
    got.sort();
    let mut want = vec![(175, 1), (-21, 5), (35, 6), (-25, 7), (7, 9), (-49, 15), (27, 21)];
    want.sort();
    assert_eq!(got, want);
    for (l, _) in r.spectrum() {
        assert!(l.is_rational());
    }

    let g: Vec<Scalar> = Mat::identity(8).entries().to_vec();
    let image = h.apply(&g);
    assert_eq!(image, g.iter().map(|x| x.mul_ref(&Scalar::from(175))).collect::<Vec<_>>());

    // antisymmetric inputs stay antisymmetric
    let mut w = vec![Scalar::from(0); 64];
    w[3] = Scalar::from(1);
    w[3 * 8] = Scalar::from(-1);
    let out = h.apply(&w);
    for i in 0..8 {
        for k in 0..8 {
            assert_eq!(out[i * 8 + k], out[k * 8 + i].neg_ref());
        }
    }

    let su = r.eigenspaces.iter().find(|e| e.eigenvalue == Scalar::from(35)).unwrap();
    assert!(spans_sigma(&su.basis).unwrap());
}

#[test]
fn seven_dimensional_generators_induce_sigma() {
    let s = sextic();
    let rep = infinitesimal_invariance(s).unwrap();
    assert_eq!(rep.generators.len(), 6);
    assert!(rep.generators.iter().all(|g| g.antisymmetric && g.annihilates_upsilon));
    assert!(rep.brackets_preserved);
    assert!(rep.span_matches_sigma);
    assert!(rep.all());
}

#[test]
fn stabilizer_of_sextic_is_su2_su2() {
    let st = stabilizer_of(TensorRef::Sym(&sextic().upsilon), 8).unwrap();
    assert_eq!(st.dim(), 6);
    assert!(st.same_span(&builtin_basis("su2su2-in-8").unwrap()));
}
