//! The groups GL(n,q), SL(n,q) and U(n,q), their generators and elements,
//! and the induced action on the polynomial ring.
//!
//! A matrix σ acts on each vector block as a row vector times σ,
//! `x[j,i] -> Σ_t σ[t,i] x[j,t]`, and on each covector block through the
//! inverse, `y[k,i] -> Σ_t σ⁻¹[i,t] y[k,t]`. With this choice
//! `action(σ) ∘ action(τ) = action(στ)`, every pairing `Σ_i x[j,i] y[k,i]`
//! is fixed, and upper unitriangular matrices fix `x[j,1]`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{field_of_order, FieldCtx};
use crate::linalg::Matrix;
use crate::mpoly::{MPoly, Ring, RingEndo, VarId};

/// Default bound on the number of elements enumerated for brute-force checks.
pub const DEFAULT_ENUM_CAP: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    U,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::U => "U",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            "U" => Ok(Family::U),
            other => Err(Error::Config(format!("unknown group family '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub field: Arc<FieldCtx>,
}

impl GroupSpec {
    pub fn new(family: Family, n: usize, q: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("group dimension must be at least 1".into()));
        }
        Ok(Self { family, n, field: field_of_order(q)? })
    }

    pub fn with_field(family: Family, n: usize, field: Arc<FieldCtx>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("group dimension must be at least 1".into()));
        }
        Ok(Self { family, n, field })
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.family, self.n, self.q())
    }
}

/// An invertible matrix of field codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub mat: Matrix,
}

impl GroupElem {
    pub fn identity(f: &FieldCtx, n: usize) -> Self {
        Self { mat: Matrix::identity(f, n) }
    }

    pub fn n(&self) -> usize {
        self.mat.rows
    }

    pub fn mul(&self, f: &FieldCtx, other: &GroupElem) -> GroupElem {
        GroupElem { mat: self.mat.mul(f, &other.mat) }
    }

    pub fn det(&self, f: &FieldCtx) -> u32 {
        self.mat.det(f).expect("group elements are square")
    }

    pub fn is_upper_unitriangular(&self, f: &FieldCtx) -> bool {
        let n = self.n();
        (0..n).all(|r| {
            (0..n).all(|c| match r.cmp(&c) {
                std::cmp::Ordering::Equal => self.mat.get(r, c) == f.one(),
                std::cmp::Ordering::Greater => self.mat.get(r, c) == 0,
                std::cmp::Ordering::Less => true,
            })
        })
    }

    pub fn belongs_to(&self, spec: &GroupSpec) -> bool {
        let f = &spec.field;
        if self.n() != spec.n || self.mat.cols != spec.n {
            return false;
        }
        match spec.family {
            Family::GL => self.det(f) != 0,
            Family::SL => self.det(f) == f.one(),
            Family::U => self.is_upper_unitriangular(f),
        }
    }

    /// Row-major text, rows separated by `;`, entries by `,`.
    pub fn format(&self, f: &FieldCtx) -> String {
        (0..self.n())
            .map(|r| self.mat.row(r).iter().map(|&a| f.format(a)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(f: &FieldCtx, s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for row in s.split(';') {
            let mut entries = Vec::new();
            let mut depth = 0;
            let mut cur = String::new();
            for ch in row.chars() {
                match ch {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    _ => {}
                }
                if ch == ',' && depth == 0 {
                    entries.push(f.parse(&cur)?);
                    cur.clear();
                } else {
                    cur.push(ch);
                }
            }
            entries.push(f.parse(&cur)?);
            rows.push(entries);
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Self { mat: Matrix::from_rows(rows) })
    }
}

/// Number of elements of the group.
pub fn group_order(spec: &GroupSpec) -> u128 {
    let q = spec.q() as u128;
    let n = spec.n as u32;
    let gl: u128 = (0..n).map(|i| q.pow(n) - q.pow(i)).product();
    match spec.family {
        Family::GL => gl,
        Family::SL => gl / (q - 1),
        Family::U => q.pow(n * (n - 1) / 2),
    }
}

fn transvection(f: &FieldCtx, n: usize, r: usize, c: usize, t: u32) -> GroupElem {
    let mut m = Matrix::identity(f, n);
    m.set(r, c, t);
    GroupElem { mat: m }
}

/// A generating set: elementary transvections (superdiagonal ones for U, all
/// root transvections for SL and GL) over a prime-field basis of GF(q), plus
/// `diag(g,1,..,1)` with `g` primitive for GL.
pub fn group_generators(spec: &GroupSpec) -> Vec<GroupElem> {
    let f = &spec.field;
    let n = spec.n;
    let basis = f.prime_basis();
    let mut out = Vec::new();
    match spec.family {
        Family::U => {
            for i in 0..n.saturating_sub(1) {
                for &t in &basis {
                    out.push(transvection(f, n, i, i + 1, t));
                }
            }
        }
        Family::SL | Family::GL => {
            for r in 0..n {
                for c in 0..n {
                    if r != c {
                        for &t in &basis {
                            out.push(transvection(f, n, r, c, t));
                        }
                    }
                }
            }
            if spec.family == Family::GL && f.q() > 2 {
                let mut m = Matrix::identity(f, n);
                m.set(0, 0, f.primitive_element());
                out.push(GroupElem { mat: m });
            }
        }
    }
    out
}

/// Closure of `gens` under multiplication, stopping with an error once more
/// than `cap` elements have been found. Sorted canonically.
pub fn closure(f: &FieldCtx, n: usize, gens: &[GroupElem], cap: u128) -> Result<Vec<GroupElem>> {
    let id = GroupElem::identity(f, n);
    let mut seen: FxHashSet<GroupElem> = FxHashSet::default();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(f, s);
            if seen.insert(h.clone()) {
                if seen.len() as u128 > cap {
                    return Err(Error::OrderExceedsCap { order: seen.len() as u128, cap });
                }
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Every element of the group, each exactly once, in canonical order.
pub fn group_enumerate(spec: &GroupSpec, cap: u128) -> Result<Vec<GroupElem>> {
    let order = group_order(spec);
    if order > cap {
        return Err(Error::OrderExceedsCap { order, cap });
    }
    closure(&spec.field, spec.n, &group_generators(spec), cap)
}

/// Confirms that the generators produce a group of the expected order.
pub fn certify_generators(spec: &GroupSpec, cap: u128) -> Result<bool> {
    let gens = group_generators(spec);
    if !gens.iter().all(|g| g.belongs_to(spec)) {
        return Ok(false);
    }
    Ok(group_enumerate(spec, cap)?.len() as u128 == group_order(spec))
}

/// The ring endomorphism induced by `g` on every vector and covector block.
pub fn action_endo(g: &GroupElem, ring: &Arc<Ring>) -> Result<RingEndo> {
    let f = &ring.field;
    let sp = ring.space;
    if g.n() != sp.n {
        return Err(Error::InvalidParameter(format!(
            "matrix of size {} acting on n = {}",
            g.n(),
            sp.n
        )));
    }
    let inv = g.mat.inverse(f)?;
    let linear = |coeffs: &mut dyn Iterator<Item = (u32, VarId)>| {
        MPoly::from_terms(
            ring,
            coeffs.filter(|(c, _)| *c != 0).map(|(c, v)| {
                let mut m: crate::mpoly::Mono = smallvec::SmallVec::from_elem(0, sp.nvars());
                m[sp.index(v)] = 1;
                (m, c)
            }),
        )
    };
    let mut e = RingEndo::partial(ring);
    for i in 1..=sp.n {
        for j in 1..=sp.m {
            let img = linear(&mut (1..=sp.n).map(|t| (g.mat.get(t - 1, i - 1), VarId::x(j, t))));
            e.set(VarId::x(j, i), img)?;
        }
        for k in 1..=sp.d {
            let img = linear(&mut (1..=sp.n).map(|t| (inv.get(i - 1, t - 1), VarId::y(k, t))));
            e.set(VarId::y(k, i), img)?;
        }
    }
    Ok(e)
}

/// True iff `g` fixes `f` exactly.
pub fn fixes(g: &GroupElem, f: &MPoly) -> Result<bool> {
    Ok(action_endo(g, f.ring())?.apply(f)? == *f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Space;

    fn spec(fam: Family, n: usize, q: u32) -> GroupSpec {
        GroupSpec::new(fam, n, q).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&spec(Family::GL, 1, 3)), 2);
        assert_eq!(group_order(&spec(Family::U, 3, 2)), 8);
        assert_eq!(group_order(&spec(Family::GL, 2, 2)), 6);
        assert_eq!(group_order(&spec(Family::SL, 2, 3)), 24);
        assert_eq!(group_order(&spec(Family::GL, 3, 3)), 11232);
    }

    #[test]
    fn generator_examples() {
        let f = field_of_order(2).unwrap();
        let u = group_generators(&spec(Family::U, 2, 2));
        assert_eq!(u, vec![GroupElem::parse(&f, "1,1;0,1").unwrap()]);
        let sl = group_generators(&spec(Family::SL, 2, 2));
        assert!(sl.contains(&GroupElem::parse(&f, "1,1;0,1").unwrap()));
        assert!(sl.contains(&GroupElem::parse(&f, "1,0;1,1").unwrap()));
        let f3 = field_of_order(3).unwrap();
        assert_eq!(group_generators(&spec(Family::GL, 1, 3)), vec![GroupElem::parse(&f3, "2").unwrap()]);
    }

    #[test]
    fn enumeration_matches_order() {
        for fam in [Family::GL, Family::SL, Family::U] {
            for (n, q) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
                let s = spec(fam, n, q);
                match group_enumerate(&s, DEFAULT_ENUM_CAP) {
                    Ok(all) => {
                        assert_eq!(all.len() as u128, group_order(&s), "{s}");
                        assert!(all.iter().all(|g| g.belongs_to(&s)), "{s}");
                        assert!(certify_generators(&s, DEFAULT_ENUM_CAP).unwrap());
                    }
                    Err(Error::OrderExceedsCap { order, .. }) => {
                        assert_eq!((fam, n, q, order), (Family::GL, 3, 3, 11232));
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let f = field_of_order(4).unwrap();
        for g in group_enumerate(&spec(Family::SL, 2, 4), DEFAULT_ENUM_CAP).unwrap() {
            assert_eq!(GroupElem::parse(&f, &g.format(&f)).unwrap(), g);
        }
    }

    fn pairing(r: &Arc<Ring>, j: usize, k: usize) -> MPoly {
        (1..=r.space.n).fold(MPoly::zero(r), |a, i| {
            a + MPoly::var(r, VarId::x(j, i)) * MPoly::var(r, VarId::y(k, i))
        })
    }

    #[test]
    fn action_is_a_homomorphism_on_gl22() {
        let s = spec(Family::GL, 2, 2);
        let f = &s.field;
        let r = Ring::new(f.clone(), Space::new(2, 1, 1).unwrap());
        let all = group_enumerate(&s, DEFAULT_ENUM_CAP).unwrap();
        let probe = MPoly::parse(&r, "x[1,1]^3*y[1,2] + x[1,2]*y[1,1]^2 + x[1,1]*x[1,2]").unwrap();
        for a in &all {
            let ea = action_endo(a, &r).unwrap();
            for b in &all {
                let eb = action_endo(b, &r).unwrap();
                let lhs = ea.apply(&eb.apply(&probe).unwrap()).unwrap();
                let rhs = action_endo(&a.mul(f, b), &r).unwrap().apply(&probe).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pairings_are_fixed_and_identity_acts_trivially() {
        let r = Ring::new(field_of_order(3).unwrap(), Space::new(2, 2, 2).unwrap());
        let s = spec(Family::GL, 2, 3);
        for g in group_enumerate(&s, DEFAULT_ENUM_CAP).unwrap() {
            for j in 1..=2 {
                for k in 1..=2 {
                    assert!(fixes(&g, &pairing(&r, j, k)).unwrap());
                }
            }
        }
        let id = GroupElem::identity(&s.field, 2);
        assert_eq!(action_endo(&id, &r).unwrap(), RingEndo::identity(&r));
    }

    #[test]
    fn unipotent_fixes_first_coordinate() {
        let s = spec(Family::U, 2, 2);
        let r = Ring::new(s.field.clone(), Space::new(2, 1, 1).unwrap());
        let g = &group_generators(&s)[0];
        let x11 = MPoly::var(&r, VarId::x(1, 1));
        assert!(fixes(g, &x11).unwrap());
        assert!(!fixes(g, &MPoly::var(&r, VarId::x(1, 2))).unwrap());
        let sing = GroupElem::parse(&s.field, "1,1;1,1").unwrap();
        assert!(matches!(action_endo(&sing, &r), Err(Error::Singular)));
    }
}
