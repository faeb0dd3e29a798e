use super::*;

fn ctx(q: u32, n: usize, m: usize, d: usize) -> InvariantCtx {
    let ring = Ring::new(field_of_order(q).unwrap(), Space::new(n, m, d).unwrap());
    InvariantCtx::resolved(ring).unwrap()
}

#[test]
fn bootstrap_resolves_uniquely() {
    let c = resolved_conventions().unwrap();
    assert_eq!(c.action, ActionConvention::RowVector);
    assert_eq!(c.invariants.dickson_sign, DicksonSign::Alternating);
    assert_eq!(c.twist, Twist::Staggered);
    assert_eq!(c.invariants.v, VConvention::Mirrored);
    println!("{c:?}");
}

#[test]
fn t_star_and_t_relations_vanish_on_desk_grid() {
    let tw = resolved_conventions().unwrap().twist;
    for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let c = ctx(q, n, 2, 2);
        for r in 1..n {
            for j in 1..=2 {
                assert!(check_t_star(&c, j, r, tw).unwrap(), "T*_{r} j={j} n={n} q={q}");
            }
            for k in 1..=2 {
                assert!(check_t(&c, k, r, tw).unwrap(), "T_{r} k={k} n={n} q={q}");
            }
        }
    }
}

#[test]
fn t_relation_explicit_char2_instance() {
    // c*0 u21 + c*1 u20^2 + u2,-1^2 at n = 2, q = 2, built by hand
    let c = ctx(2, 2, 2, 1);
    let g = |l: Label| c.get(&l).unwrap();
    let lhs = g(Label::CStar { k: 1, i: 0 }) * g(Label::U { j: 2, i: 1 })
        + g(Label::CStar { k: 1, i: 1 }) * g(Label::U { j: 2, i: 0 }).pow(2)
        + g(Label::U { j: 2, i: -1 }).pow(2);
    assert!(lhs.is_zero());
}

#[test]
fn t_relations_fail_with_wrong_conventions() {
    let ring = Ring::new(field_of_order(3).unwrap(), Space::new(2, 2, 2).unwrap());
    let raw = InvariantCtx::new(ring.clone(), InvariantConventions { v: VConvention::Mirrored, dickson_sign: DicksonSign::Raw });
    assert!(!check_t_star(&raw, 2, 1, Twist::Staggered).unwrap());
    let as_def = InvariantCtx::new(ring, InvariantConventions { v: VConvention::AsDefined, dickson_sign: DicksonSign::Alternating });
    assert!(!check_t(&as_def, 2, 1, Twist::Staggered).unwrap());
    let c3 = ctx(3, 3, 2, 1);
    assert!(!check_t_star(&c3, 2, 2, Twist::Uniform).unwrap());
}

#[test]
fn t_star_image_under_involution_is_t_instance() {
    let c = ctx(3, 2, 1, 2);
    let tw = Twist::Staggered;
    // In the pair (x[1], y[2]) the starred relation for y[2] maps to the
    // unstarred one by swapping the blocks.
    let star = crate::mpoly::involution_endo(c.ring(), 1, 1).unwrap();
    let t1 = t_star_lhs(&c, 1, 1, tw).unwrap();
    assert!(star.apply(&t1).unwrap().is_zero());
    assert!(check_t(&c, 2, 1, tw).unwrap());
}

#[test]
fn determinant_identity_on_desk_grid() {
    for n in 1..=3 {
        for q in [2, 3] {
            let c = ctx(q, n, 2, 1);
            for j in 1..=2 {
                let r = check_det_identity(&c, j).unwrap();
                assert!(r.as_printed && r.with_dstar, "n={n} q={q} j={j}");
            }
        }
    }
    // n = 1: d[j,1]·dstar[1,1] = x[j,1] y[1,1] = u[j,0]
    let c = ctx(3, 1, 2, 1);
    let lhs = c.get(&Label::D { j: 2 }).unwrap() * c.get(&Label::DStar { k: 1 }).unwrap();
    assert_eq!(lhs, c.get(&Label::U { j: 2, i: 0 }).unwrap());
}

#[test]
fn determinant_identity_n2_by_hand() {
    // d12 d*12 = -(u0 u0^q - u1 u_{-1}) at n = 2; the sign is invisible in char 2
    let c = ctx(3, 2, 1, 1);
    let g = |l: Label| c.get(&l).unwrap();
    let det = g(Label::U { j: 1, i: 0 }) * g(Label::U { j: 1, i: 0 }).pow(3)
        - g(Label::U { j: 1, i: 1 }) * g(Label::U { j: 1, i: -1 });
    assert_eq!(g(Label::D { j: 1 }) * g(Label::DStar { k: 1 }), -det);
}

#[test]
fn hypersurface_vanishes() {
    for q in [2, 3, 4] {
        let c = ctx(q, 2, 2, 2);
        assert!(check_hypersurface_n2(&c).unwrap(), "q={q}");
        for j in 1..=2 {
            for k in 1..=2 {
                assert!(hypersurface_lhs(&c, j, k).unwrap().is_zero());
            }
        }
    }
    assert!(check_hypersurface_n2(&ctx(2, 3, 1, 1)).is_err());
}

#[test]
fn negative_controls_break_identities() {
    let c = ctx(3, 2, 2, 2);
    let one = MPoly::one(c.ring());
    assert!(!(t_star_lhs(&c, 2, 1, Twist::Staggered).unwrap() + &one).is_zero());
    assert!(!(hypersurface_lhs(&c, 1, 1).unwrap() + &one).is_zero());
    let m = pairing_matrix(&c, 1).unwrap();
    let mut bumped = m.clone();
    bumped[0][0] = &bumped[0][0] + &one;
    let d = c.get(&Label::D { j: 1 }).unwrap() * c.get(&Label::DStar { k: 1 }).unwrap();
    assert_ne!(d, -poly_det(&bumped).unwrap());
}

fn solve_all(c: &InvariantCtx, name: RName, pair: PairCtx) -> CoeffSolution {
    let t = RelationTemplate::new(name, c.n(), RVariant::PatternConsistent).unwrap();
    solve_relation_coeffs(c, &t, pair).unwrap()
}

#[test]
fn r_templates_solve_at_n3() {
    for q in [2, 3] {
        let c = ctx(q, 3, 2, 2);
        let cases = [
            (RName::R1Plus, PairCtx::direct(1, 1)),
            (RName::R(2), PairCtx::direct(1, 1)),
            (RName::RMinus(3), PairCtx::direct(1, 1)),
            (RName::R1Plus, PairCtx::direct(2, 1)),
            (RName::R(2), PairCtx::direct(2, 1)),
            (RName::RMinus(3), PairCtx::direct(2, 1)),
            (RName::R1Plus, PairCtx::mirrored(1, 2)),
            (RName::R(2), PairCtx::mirrored(1, 2)),
            (RName::RMinus(3), PairCtx::mirrored(1, 2)),
        ];
        for (name, pair) in cases {
            let s = solve_all(&c, name, pair);
            assert!(s.residual_is_zero(), "{} q={q}", s.name());
            assert!(s.all_nonzero, "{} q={q} dim={}", s.name(), s.nullspace_dim);
        }
    }
}

#[test]
fn r_template_variants_agree_at_n3() {
    let c = ctx(2, 3, 1, 1);
    let a = RelationTemplate::new(RName::RMinus(3), 3, RVariant::AsPrinted).unwrap();
    let b = RelationTemplate::new(RName::RMinus(3), 3, RVariant::PatternConsistent).unwrap();
    assert_eq!(a, b);
    assert!(solve_relation_coeffs(&c, &a, PairCtx::direct(1, 1)).unwrap().residual_is_zero());
    assert_eq!(templates::variants_coincide_up_to(), 5);
    let a6 = RelationTemplate::new(RName::RMinus(3), 6, RVariant::AsPrinted).unwrap();
    let b6 = RelationTemplate::new(RName::RMinus(3), 6, RVariant::PatternConsistent).unwrap();
    assert_ne!(a6, b6);
}

#[test]
fn mirrored_solution_is_involution_image() {
    // Solving in the pair (x[1], y[1]) and applying the involution gives a
    // valid instance of the mirrored template.
    let c = ctx(2, 3, 1, 1);
    let s = solve_all(&c, RName::R1Plus, PairCtx::direct(1, 1));
    let star = crate::mpoly::involution_endo(c.ring(), 1, 1).unwrap();
    let mut lhs = MPoly::one(c.ring());
    for (g, e) in s.template.lhs_exponents(2) {
        lhs = lhs * c.get(&PairCtx::mirrored(1, 1).gen_label(g)).unwrap().pow(e);
    }
    let mut rhs = MPoly::zero(c.ring());
    for slot in &s.slots {
        let t = pair_poly(&c, PairCtx::mirrored(1, 1), slot.term.a).unwrap().q_pow(slot.term.twist);
        rhs = rhs + star.apply(&slot.coeff).unwrap() * t;
    }
    assert_eq!(lhs, rhs);
}

#[test]
fn r_template_shapes() {
    let t = RelationTemplate::new(RName::R1Plus, 3, RVariant::PatternConsistent).unwrap();
    let terms: Vec<(i64, u32)> = t.slots.iter().map(|s| (s.a, s.twist)).collect();
    assert_eq!(terms, [(-1, 1), (0, 1), (1, 0)]);
    let t = RelationTemplate::new(RName::R(2), 3, RVariant::PatternConsistent).unwrap();
    let terms: Vec<(i64, u32)> = t.slots.iter().map(|s| (s.a, s.twist)).collect();
    assert_eq!(terms, [(-1, 0), (0, 0), (0, 1), (1, 0)]);
    let t = RelationTemplate::new(RName::RMinus(3), 3, RVariant::PatternConsistent).unwrap();
    let terms: Vec<(i64, u32)> = t.slots.iter().map(|s| (s.a, s.twist)).collect();
    assert_eq!(terms, [(-1, 0), (0, 1), (1, 1)]);
    assert!(RelationTemplate::new(RName::R(3), 3, RVariant::PatternConsistent).is_err());
    assert!(RelationTemplate::new(RName::R1Plus, 2, RVariant::PatternConsistent).is_err());
}
