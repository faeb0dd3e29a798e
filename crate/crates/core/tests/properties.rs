use proptest::prelude::*;

use invfield::certificate::{build_certificate, verify_certificate, Theorem};
use invfield::gf::{field_of_order, make_field};
use invfield::groups::{fixes, Family, GroupElem, GroupSpec};
use invfield::invariants::{InvariantCtx, SetName};
use invfield::mpoly::{Ring, Space};

/// Schoolbook product of two residues modulo a monic polynomial over F_p,
/// coefficients low degree first.
fn oracle_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (t, &m) in modulus.iter().enumerate() {
                let k = deg - e + t;
                prod[k] = (prod[k] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

proptest! {
    #[test]
    fn field_mul_matches_schoolbook(pe in prop::sample::select(vec![(2u32, 3u32), (3, 2), (5, 2), (2, 4)]), a in 0u32..625, b in 0u32..625) {
        let (p, e) = pe;
        let f = make_field(p, e, None).unwrap();
        let (a, b) = (a % f.q(), b % f.q());
        let want = oracle_mul(&f.coeffs(a), &f.coeffs(b), f.modulus(), p);
        prop_assert_eq!(f.coeffs(f.mul(a, b)), want);
    }

    #[test]
    fn field_inverse_and_frobenius(q in prop::sample::select(vec![4u32, 8, 9, 25, 27]), a in 1u32..27) {
        let f = field_of_order(q).unwrap();
        let a = a % (q - 1) + 1;
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        prop_assert_eq!(f.pow(a, q as u64), a);
        prop_assert_eq!(f.frobenius(a), f.pow(a, f.p() as u64));
    }

    #[test]
    fn random_elements_fix_theorem_sets(
        fam in prop::sample::select(vec![Family::GL, Family::SL, Family::U]),
        entries in prop::collection::vec(0u32..3, 9),
        m in 1usize..3,
        d in 1usize..3,
    ) {
        let (n, q) = (3usize, 3u32);
        let spec = GroupSpec::new(fam, n, q).unwrap();
        let text: Vec<String> = entries.chunks(n).enumerate().map(|(r, row)| {
            row.iter().enumerate().map(|(c, &x)| match fam {
                Family::U if r == c => "1".to_string(),
                Family::U if r > c => "0".to_string(),
                _ => x.to_string(),
            }).collect::<Vec<_>>().join(",")
        }).collect();
        let g = GroupElem::parse(&spec.field, &text.join(";")).unwrap();
        prop_assume!(g.belongs_to(&spec));
        let ctx = InvariantCtx::resolved(Ring::new(spec.field.clone(), Space::new(n, m, d).unwrap())).unwrap();
        for p in ctx.generating_set(SetName::theorem_for(fam)).unwrap().polys() {
            prop_assert!(fixes(&g, &p).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn certificates_verify_for_any_multiplicity(
        t in prop::sample::select(vec![Theorem::GL, Theorem::SL, Theorem::UU]),
        n in 1usize..3,
        q in prop::sample::select(vec![2u32, 3]),
        m in 1usize..4,
        d in 1usize..4,
    ) {
        let cert = build_certificate(t, &GroupSpec::new(t.family(), n, q).unwrap(), m, d).unwrap();
        prop_assert!(verify_certificate(&cert).unwrap().passed);
    }
}
