use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::gf::field_of_order;

fn ring(q: u32, n: usize, m: usize, d: usize) -> Arc<Ring> {
    Ring::new(field_of_order(q).unwrap(), Space::new(n, m, d).unwrap())
}

fn p(r: &Arc<Ring>, s: &str) -> MPoly {
    MPoly::parse(r, s).unwrap()
}

fn x(r: &Arc<Ring>, j: usize, i: usize) -> MPoly {
    MPoly::var(r, VarId::x(j, i))
}

fn y(r: &Arc<Ring>, k: usize, i: usize) -> MPoly {
    MPoly::var(r, VarId::y(k, i))
}

#[test]
fn text_format_is_canonical() {
    let r = ring(3, 2, 1, 2);
    let f = &y(&r, 2, 1).scale(2) + &(x(&r, 1, 1).pow(2) * y(&r, 1, 2));
    assert_eq!(f.to_text(), "x[1,1]^2*y[1,2] + 2*y[2,1]");
    assert_eq!(p(&r, "x[1,1]^2*y[1,2] + 2*y[2,1]"), f);
    assert_eq!(p(&r, "2*y[2,1] - 2*x[1,1]^2*y[1,2] + 0"), p(&r, "2*y[2,1] + x[1,1]^2*y[1,2]"));
    assert_eq!(MPoly::zero(&r).to_text(), "0");
    assert_eq!(MPoly::from_int(&r, 5).to_text(), "2");
    assert!(MPoly::parse(&r, "x[2,1]").is_err());
    assert!(MPoly::parse(&r, "x[1,1] +").is_err());
}

#[test]
fn extension_field_text_round_trip() {
    let r = ring(4, 2, 1, 1);
    let g = r.field.primitive_element();
    let f = x(&r, 1, 1).scale(g) + y(&r, 1, 2);
    let back = p(&r, &f.to_text());
    assert_eq!(back, f);
}

#[test]
fn arithmetic_examples() {
    let r2 = ring(2, 2, 1, 1);
    let s = &x(&r2, 1, 1) + &y(&r2, 1, 1);
    assert_eq!(s.pow(2), p(&r2, "x[1,1]^2 + y[1,1]^2"));
    assert!((&s * &MPoly::zero(&r2)).is_zero());
    let r3 = ring(3, 2, 1, 1);
    let t = &x(&r3, 1, 1) + &x(&r3, 1, 2);
    assert_eq!(mp_arith(&t, &t, PolyOp::Mul).unwrap(), p(&r3, "x[1,1]^2 + 2*x[1,1]*x[1,2] + x[1,2]^2"));
    assert_eq!(t.pow(0), MPoly::one(&r3));
    let other = ring(3, 3, 1, 1);
    assert!(matches!(mp_arith(&t, &x(&other, 1, 1), PolyOp::Add), Err(Error::ContextMismatch)));
}

#[test]
fn pow_matches_repeated_multiplication() {
    let r = ring(3, 2, 1, 1);
    let f = p(&r, "x[1,1] + 2*x[1,2]*y[1,1] + 1");
    let mut acc = MPoly::one(&r);
    for k in 0..12 {
        assert_eq!(f.pow(k), acc, "k={k}");
        acc = &acc * &f;
    }
}

fn u0(r: &Arc<Ring>) -> MPoly {
    (1..=r.space.n).fold(MPoly::zero(r), |a, i| a + x(r, 1, i) * y(r, 1, i))
}

#[test]
fn frobenius_and_involution_examples() {
    let r = ring(2, 2, 1, 1);
    let u = u0(&r);
    let fu = frobenius_endo(&r, FrobeniusKind::F, 1).apply(&u).unwrap();
    assert_eq!(fu, p(&r, "x[1,1]^2*y[1,1] + x[1,2]^2*y[1,2]"));
    let um = frobenius_endo(&r, FrobeniusKind::Fstar, 1).apply(&u).unwrap();
    assert_eq!(um, p(&r, "x[1,1]*y[1,1]^2 + x[1,2]*y[1,2]^2"));
    assert_eq!(frobenius_endo(&r, FrobeniusKind::F, 0), RingEndo::identity(&r));
    let star = involution_endo(&r, 1, 1).unwrap();
    assert_eq!(star.apply(&x(&r, 1, 1)).unwrap(), y(&r, 1, 2));
    assert_eq!(star.apply(&um).unwrap(), fu);
    assert_eq!(star.apply(&u).unwrap(), u);
    assert!(involution_endo(&r, 2, 1).is_err());
}

#[test]
fn missing_image_is_an_error() {
    let r = ring(3, 2, 1, 1);
    let mut e = RingEndo::partial(&r);
    e.set(VarId::x(1, 1), p(&r, "x[1,1] + x[1,2]")).unwrap();
    assert!(e.apply(&x(&r, 1, 1)).is_ok());
    assert!(matches!(e.apply(&u0(&r)), Err(Error::MissingImage(_))));
}

#[test]
fn determinant_examples() {
    let r = ring(3, 2, 1, 1);
    let (a, b) = (x(&r, 1, 1), x(&r, 1, 2));
    let m = vec![vec![a.clone(), b.clone()], vec![a.pow(3), b.pow(3)]];
    assert_eq!(poly_det(&m).unwrap(), p(&r, "x[1,1]*x[1,2]^3 - x[1,1]^3*x[1,2]"));
    assert_eq!(poly_det(&[vec![a.clone()]]).unwrap(), a);
    let rep = vec![vec![a.clone(), b.clone()], vec![a.clone(), b.clone()]];
    assert!(poly_det(&rep).unwrap().is_zero());
    assert!(matches!(poly_det(&[vec![a.clone(), b]]), Err(Error::NotSquare)));
}

#[test]
fn rational_equality() {
    let r = ring(3, 2, 1, 1);
    let f = p(&r, "x[1,1] + y[1,2]");
    let g = p(&r, "2*x[1,2]*y[1,1] + 1");
    let a = RatExpr::new(&f * &g, g.clone()).unwrap();
    assert!(rat_eq(&a, &RatExpr::from_poly(f.clone())).unwrap());
    assert!(!rat_eq(&a, &RatExpr::from_poly(g.clone())).unwrap());
    assert!(RatExpr::new(f.clone(), MPoly::zero(&r)).is_err());
    // monomial content is stripped, the denominator is made monic
    let m = p(&r, "2*x[1,1]^2*y[1,1]");
    let q = RatExpr::new(&f * &m, m.clone()).unwrap();
    assert_eq!(q.den(), &MPoly::one(&r));
    assert_eq!(q.num(), &f);
    let s = a.add(&q).unwrap();
    assert!(rat_eq(&s, &RatExpr::from_poly(f.scale(2))).unwrap());
}

#[test]
fn evaluation_examples() {
    let r = ring(2, 2, 1, 1);
    let pt: HashMap<VarId, u32> = [
        (VarId::x(1, 1), 1),
        (VarId::x(1, 2), 0),
        (VarId::y(1, 1), 1),
        (VarId::y(1, 2), 1),
    ]
    .into();
    assert_eq!(evaluate(&u0(&r), &pt).unwrap(), 1);
    let partial: HashMap<VarId, u32> = [(VarId::x(1, 1), 1)].into();
    assert!(matches!(evaluate(&u0(&r), &partial), Err(Error::MissingCoordinate(_))));
    let f = p(&r, "x[1,1]*y[1,2] + 1");
    assert_eq!(f.eval_codes(&[0, 0, 0, 0]), f.constant_term());
    let r1 = ring(5, 1, 1, 1);
    assert_eq!(x(&r1, 1, 1).pow(4).eval_codes(&[1, 0]), 1);
}

#[test]
fn jacobian_examples() {
    let r = ring(3, 1, 1, 1);
    assert_eq!(jacobian_rank(&[x(&r, 1, 1)], &[1, 0]), 1);
    assert_eq!(jacobian_rank(&[x(&r, 1, 1).pow(3)], &[2, 1]), 0);
    let polys = [x(&r, 1, 1), y(&r, 1, 1), u0(&r)];
    assert_eq!(jacobian_rank(&polys, &[2, 1]), 2);
}

#[test]
fn endo_homomorphism_on_group_like_substitution() {
    let r = ring(3, 2, 1, 1);
    let mut e = RingEndo::partial(&r);
    e.set(VarId::x(1, 1), p(&r, "x[1,1]")).unwrap();
    e.set(VarId::x(1, 2), p(&r, "x[1,1] + x[1,2]")).unwrap();
    e.set(VarId::y(1, 1), p(&r, "y[1,1] - y[1,2]")).unwrap();
    e.set(VarId::y(1, 2), p(&r, "y[1,2]")).unwrap();
    assert_eq!(e.apply(&u0(&r)).unwrap(), u0(&r));
    let composed = e.compose(&e).unwrap();
    let f = p(&r, "x[1,2]^4*y[1,1] + x[1,1]");
    assert_eq!(composed.apply(&f).unwrap(), e.apply(&e.apply(&f).unwrap()).unwrap());
}

fn arb_poly(r: Arc<Ring>) -> impl Strategy<Value = MPoly> {
    let nv = r.space.nvars();
    let q = r.field.q();
    prop::collection::vec((prop::collection::vec(0u32..4, nv), 0..q), 0..6).prop_map(move |ts| {
        MPoly::from_terms(&r, ts.into_iter().map(|(m, c)| (m.into_iter().collect(), c)))
    })
}

fn perm_det(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    let r = m[0][0].ring().clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = MPoly::zero(&r);
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let t = (0..n).fold(MPoly::one(&r), |t, i| t * &m[i][p[i]]);
        acc = if inversions % 2 == 0 { &acc + &t } else { &acc - &t };
    });
    acc
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms((a, b, c) in prop::sample::select(vec![2u32, 3, 4]).prop_flat_map(|q| {
        let r = ring(q, 2, 1, 1);
        (arb_poly(r.clone()), arb_poly(r.clone()), arb_poly(r))
    })) {
        let r = a.ring().clone();
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(MPoly::parse(&r, &a.to_text()).unwrap(), a);
    }

    #[test]
    fn endo_is_homomorphism(a in arb_poly(ring(3, 2, 1, 1)), b in arb_poly(ring(3, 2, 1, 1))) {
        let r = a.ring().clone();
        let mut e = RingEndo::partial(&r);
        e.set(VarId::x(1, 1), p(&r, "x[1,1] + 2*x[1,2]")).unwrap();
        e.set(VarId::x(1, 2), p(&r, "x[1,2]")).unwrap();
        e.set(VarId::y(1, 1), p(&r, "y[1,1]*y[1,2]")).unwrap();
        e.set(VarId::y(1, 2), p(&r, "1 + y[1,1]")).unwrap();
        let (ea, eb) = (e.apply(&a).unwrap(), e.apply(&b).unwrap());
        prop_assert_eq!(e.apply(&(&a * &b)).unwrap(), &ea * &eb);
        prop_assert_eq!(e.apply(&(&a + &b)).unwrap(), &ea + &eb);
    }

    #[test]
    fn frobenius_powers_compose(a in arb_poly(ring(2, 2, 1, 1)), i in 0u32..3, j in 0u32..3) {
        let r = a.ring().clone();
        for kind in [FrobeniusKind::F, FrobeniusKind::Fstar] {
            let lhs = frobenius_endo(&r, kind, i).apply(&frobenius_endo(&r, kind, j).apply(&a).unwrap()).unwrap();
            prop_assert_eq!(lhs, frobenius_endo(&r, kind, i + j).apply(&a).unwrap());
        }
        prop_assert_eq!(a.q_pow(1), a.pow(2));
    }

    #[test]
    fn involution_is_an_involution(a in arb_poly(ring(3, 2, 2, 1))) {
        let r = a.ring().clone();
        let s = involution_endo(&r, 2, 1).unwrap();
        prop_assert_eq!(s.apply(&s.apply(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn det_matches_permutation_sum(entries in prop::collection::vec(arb_poly(ring(3, 1, 1, 1)), 13)) {
        let m2 = vec![entries[0..2].to_vec(), entries[2..4].to_vec()];
        prop_assert_eq!(poly_det(&m2).unwrap(), perm_det(&m2));
        let m3 = vec![entries[4..7].to_vec(), entries[7..10].to_vec(), entries[10..13].to_vec()];
        prop_assert_eq!(poly_det(&m3).unwrap(), perm_det(&m3));
    }

    #[test]
    fn jacobian_rank_is_bounded(polys in prop::collection::vec(arb_poly(ring(3, 1, 1, 1)), 0..4), pt in prop::collection::vec(0u32..3, 2)) {
        prop_assert!(jacobian_rank(&polys, &pt) <= polys.len().min(2));
    }
}
