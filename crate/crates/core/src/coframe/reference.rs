//! Closed-form torsion and Ricci tensors of the explicit families, used as
//! independent checks of the computed values.

use crate::exact::Field;
use crate::{KForm, Mat, Scalar};

use super::{sc, FamilySpec, BASE_DIM};

fn t3(c: Scalar, i: usize, j: usize, k: usize) -> KForm {
    KForm::monomial(BASE_DIM, &[i - 1, j - 1, k - 1], c)
}

fn combo(terms: Vec<(Scalar, usize, usize, usize)>) -> KForm {
    terms.into_iter().fold(KForm::zero(BASE_DIM, 3), |acc, (c, i, j, k)| acc.add(&t3(c, i, j, k)))
}

fn i(v: i64) -> Scalar {
    Scalar::from(v)
}

/// The closed-form torsion 3-form on the θ-block.
pub fn torsion(spec: &FamilySpec) -> KForm {
    let r3 = Scalar::sqrt3();
    let ir3 = Scalar::sqrt3_frac(1, 3);
    match spec {
        FamilySpec::Maximal { .. } => KForm::zero(BASE_DIM, 3),
        FamilySpec::Family27 { t, .. } => combo(vec![
            (i(1), 1, 2, 8),
            (i(1), 1, 3, 7),
            (i(1), 1, 4, 6),
            (r3.clone(), 1, 5, 6),
            (i(1), 2, 3, 6),
            (i(-1), 2, 4, 7),
            (r3, 2, 5, 7),
            (i(-2), 3, 4, 8),
            (i(-15), 6, 7, 8),
        ])
        .scale(&sc(t)),
        FamilySpec::Vectorial9a { t1, t2 } => {
            let m2 = Scalar::sqrt3_frac(-2, 3);
            let a = combo(vec![
                (m2.clone(), 1, 2, 5),
                (i(1), 1, 6, 8),
                (i(1), 2, 7, 8),
                (ir3.clone(), 3, 4, 5),
                (m2, 5, 6, 7),
            ]);
            let b = combo(vec![(ir3.clone(), 1, 5, 6), (ir3, 2, 5, 7), (i(1), 3, 4, 8)]);
            a.scale(&sc(t1)).add(&b.scale(&sc(t2)))
        }
        FamilySpec::Vectorial9b { t, .. } => {
            combo(vec![(ir3.clone(), 1, 5, 6), (ir3, 2, 5, 7), (i(1), 3, 4, 8)]).scale(&sc(t))
        }
    }
}

fn diag(d: [Scalar; 8]) -> Mat {
    Mat::diagonal(&d)
}

fn sym_set(m: &mut Mat, a: usize, b: usize, v: Scalar) {
    m.set(a - 1, b - 1, v.clone());
    m.set(b - 1, a - 1, v);
}

/// Closed-form Ricci tensor of the characteristic connection.
pub fn ricci(spec: &FamilySpec) -> Mat {
    match spec {
        FamilySpec::Maximal { lambda } => Mat::identity(BASE_DIM).scale(&sc(lambda)),
        FamilySpec::Family27 { k, t } => {
            let (k, t) = (sc(k), sc(t));
            let l = k.mul_ref(&k).add_ref(&i(15).mul_ref(&k).mul_ref(&t)).sub_ref(&i(8).mul_ref(&t).mul_ref(&t)).mul_ref(&i(12));
            let m = k.mul_ref(&k).add_ref(&Scalar::frac(5, 3).mul_ref(&k).mul_ref(&t)).mul_ref(&i(12));
            diag([l.clone(), l.clone(), l.clone(), l.clone(), l, m.clone(), m.clone(), m])
        }
        FamilySpec::Vectorial9a { t1, t2 } => {
            let (t1, t2) = (sc(t1), sc(t2));
            let s1 = t1.mul_ref(&t1);
            let s2 = t2.mul_ref(&t2);
            let a = s1.mul_ref(&i(4)).add_ref(&s2).mul_ref(&Scalar::frac(-1, 3));
            let b = s1.mul_ref(&Scalar::frac(-7, 3));
            let c = s1.neg_ref();
            let mut m = diag([a.clone(), a.clone(), b.clone(), b, c.clone(), a.clone(), a, c]);
            let x = t1.mul_ref(&t2).mul_ref(&Scalar::frac(2, 3));
            sym_set(&mut m, 1, 7, x.neg_ref());
            sym_set(&mut m, 2, 6, x);
            m
        }
        FamilySpec::Vectorial9b { c, t } => {
            let (c, t) = (sc(c), sc(t));
            let u = c.mul_ref(&i(6)).sub_ref(&t);
            let l = u.mul_ref(&u).sub_ref(&i(2).mul_ref(&t).mul_ref(&t)).mul_ref(&Scalar::frac(1, 3));
            let m = i(4).mul_ref(&c).mul_ref(&i(3).mul_ref(&c).sub_ref(&t));
            diag([l.clone(), l.clone(), m.clone(), m.clone(), m.clone(), l.clone(), l, m])
        }
    }
}

/// Closed-form Ricci tensor of the Levi-Civita connection.
pub fn ricci_levi_civita(spec: &FamilySpec) -> Mat {
    match spec {
        FamilySpec::Maximal { lambda } => Mat::identity(BASE_DIM).scale(&sc(lambda)),
        FamilySpec::Family27 { t, .. } => {
            let base = ricci(spec);
            let t2 = sc(t).mul_ref(&sc(t));
            let mut m = base;
            for d in 0..5 {
                let v = m.get(d, d).add_ref(&t2.mul_ref(&i(3)));
                m.set(d, d, v);
            }
            for d in 5..8 {
                let v = m.get(d, d).add_ref(&t2.mul_ref(&i(115)));
                m.set(d, d, v);
            }
            m
        }
        FamilySpec::Vectorial9a { t1, t2 } => {
            let (t1, t2) = (sc(t1), sc(t2));
            let s1 = t1.mul_ref(&t1);
            let s2 = t2.mul_ref(&t2);
            let sixth = Scalar::frac(1, 6);
            let a = s1.add_ref(&s2).mul_ref(&sixth).neg_ref();
            let b = s2.mul_ref(&i(3)).sub_ref(&s1.mul_ref(&i(13))).mul_ref(&sixth);
            let c = s1.mul_ref(&i(3)).add_ref(&s2.mul_ref(&i(2))).mul_ref(&sixth);
            let d = s2.mul_ref(&Scalar::frac(1, 2));
            let mut m = diag([a.clone(), a.clone(), b.clone(), b, c, a.clone(), a, d]);
            let x = t1.mul_ref(&t2).mul_ref(&Scalar::frac(4, 3));
            sym_set(&mut m, 1, 7, x.neg_ref());
            sym_set(&mut m, 2, 6, x);
            // −1/(2√3) = −√3/6
            sym_set(&mut m, 5, 8, t1.mul_ref(&t2).mul_ref(&Scalar::sqrt3_frac(-1, 6)));
            m
        }
        FamilySpec::Vectorial9b { c, t } => {
            let (c, t) = (sc(c), sc(t));
            let u = c.mul_ref(&i(6)).sub_ref(&t);
            let u2 = u.mul_ref(&u);
            let tt = t.mul_ref(&t);
            let third = Scalar::frac(1, 3);
            let l = u2.sub_ref(&tt.mul_ref(&Scalar::frac(3, 2))).mul_ref(&third);
            let m = u2.mul_ref(&third);
            let n = u2.add_ref(&tt.mul_ref(&Scalar::frac(1, 2))).mul_ref(&third);
            diag([l.clone(), l.clone(), n.clone(), n.clone(), m, l.clone(), l, n])
        }
    }
}
