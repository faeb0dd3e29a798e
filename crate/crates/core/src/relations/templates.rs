//! Relation templates among Mui invariants and pairings, and the linear
//! solver that recovers their coefficients.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{pairing, InvariantCtx, Label, VConvention};
use crate::linalg::{solve, Matrix};
use crate::mpoly::{MPoly, Mono};

/// The relation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RName {
    /// `f_1^q f*_n = ...`
    R1Plus,
    /// `f_s f*_{n+1-s} = ...`, `2 <= s <= n-1`.
    R(usize),
    /// `f_s (f*_{n+1-s})^q = ...`, `3 <= s <= n`.
    RMinus(usize),
}

impl fmt::Display for RName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RName::R1Plus => write!(f, "R1+"),
            RName::R(s) => write!(f, "R{s}"),
            RName::RMinus(s) => write!(f, "R{s}-"),
        }
    }
}

/// Which transcription of the third level of `R3-` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RVariant {
    /// The second term of the level repeats the index of the first.
    AsPrinted,
    /// Indices increase by one along the level.
    PatternConsistent,
}

/// A generator of a coefficient ring, relative to a pair of copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RGen {
    F(usize),
    FStar(usize),
}

/// The pairing `u_a` raised to `q^twist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UTerm {
    pub a: i64,
    pub twist: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTemplate {
    pub name: RName,
    pub n: usize,
    /// Left side as a product of generators; `true` marks a factor raised to q.
    pub lhs: Vec<(RGen, bool)>,
    /// Terms on the right, each with its own coefficient slot.
    pub slots: Vec<UTerm>,
    /// Generators of the ring the coefficients live in.
    pub ring_gens: Vec<RGen>,
}

fn level_terms(l: i64, lo: i64, hi: i64) -> impl Iterator<Item = UTerm> {
    (lo..=hi).map(move |a| UTerm { a, twist: (l - a.max(0)) as u32 })
}

fn third_level_printed(n: i64) -> Vec<i64> {
    // "u_{4-n} + γ_{5-n} u_{4-n} + … + γ_0 u_0 + γ_1 u_1"
    let mut idx = vec![4 - n, 4 - n];
    idx.extend(6 - n..=1);
    idx.extend([0, 1]);
    // terms outside this range are excluded by degree
    idx.retain(|&a| (4 - n..=1).contains(&a));
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// Largest n at which both transcriptions of `R3-` have the same terms.
pub fn variants_coincide_up_to() -> usize {
    (3..64)
        .find(|&n| {
            let consistent: Vec<i64> = (4 - n as i64..=1).collect();
            third_level_printed(n as i64) != consistent
        })
        .map_or(63, |n| n - 1)
}

impl RelationTemplate {
    pub fn new(name: RName, n: usize, variant: RVariant) -> Result<Self> {
        let ni = n as i64;
        let bad = || Error::InvalidParameter(format!("relation {name} is not defined for n = {n}"));
        if n < 3 {
            return Err(bad());
        }
        let mut slots = Vec::new();
        let (lhs, ring_gens) = match name {
            RName::R1Plus => {
                slots.extend(level_terms(1, 2 - ni, 1));
                (vec![(RGen::F(1), true), (RGen::FStar(n), false)], (1..n).map(RGen::FStar).collect())
            }
            RName::R(s) => {
                if !(2..n).contains(&s) {
                    return Err(bad());
                }
                let si = s as i64;
                for l in 0..si {
                    slots.extend(level_terms(l, si + l - ni, l));
                }
                let gens = (1..s).map(RGen::F).chain((1..=n - s).map(RGen::FStar)).collect();
                (vec![(RGen::F(s), false), (RGen::FStar(n + 1 - s), false)], gens)
            }
            RName::RMinus(s) => {
                if !(3..=n).contains(&s) {
                    return Err(bad());
                }
                let si = s as i64;
                for l in 0..si {
                    if s == 3 && l == 2 && variant == RVariant::AsPrinted {
                        slots.extend(third_level_printed(ni).into_iter().map(|a| UTerm { a, twist: (l - a.max(0)) as u32 }));
                    } else {
                        slots.extend(level_terms(l, si - 1 + l - ni, l - 1));
                    }
                }
                let gens = (1..s).map(RGen::F).chain((1..=n - s).map(RGen::FStar)).collect();
                (vec![(RGen::F(s), false), (RGen::FStar(n + 1 - s), true)], gens)
            }
        };
        Ok(Self { name, n, lhs, slots, ring_gens })
    }

    /// Exponent of each left-side factor, given the field size.
    pub fn lhs_exponents(&self, q: u64) -> Vec<(RGen, u64)> {
        self.lhs.iter().map(|&(g, raised)| (g, if raised { q } else { 1 })).collect()
    }
}

/// Which copies play the roles of the vector and the covector. With
/// `mirrored`, the template is read through the involution: `f_i` and
/// `f*_i` swap roles and `u_a` becomes `u_{-a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairCtx {
    pub j: usize,
    pub k: usize,
    pub mirrored: bool,
}

impl PairCtx {
    pub fn direct(j: usize, k: usize) -> Self {
        Self { j, k, mirrored: false }
    }

    pub fn mirrored(j: usize, k: usize) -> Self {
        Self { j, k, mirrored: true }
    }

    pub fn gen_label(&self, g: RGen) -> Label {
        match (g, self.mirrored) {
            (RGen::F(i), false) | (RGen::FStar(i), true) => Label::F { j: self.j, i },
            (RGen::FStar(i), false) | (RGen::F(i), true) => Label::FStar { k: self.k, i },
        }
    }

    fn pairing_index(&self, a: i64) -> i64 {
        if self.mirrored {
            -a
        } else {
            a
        }
    }

    /// The label of `u_a` in this pair, when it has one.
    pub fn u_label(&self, a: i64, v: VConvention) -> Option<Label> {
        let b = self.pairing_index(a);
        if self.k == 1 {
            Some(Label::U { j: self.j, i: b })
        } else if self.j == 1 {
            Some(Label::V { k: self.k, i: if v == VConvention::Mirrored { b } else { -b } })
        } else {
            None
        }
    }

    pub fn describe(&self, name: RName) -> String {
        let base = format!("({name})_[{},{}]", self.j, self.k);
        if self.mirrored {
            format!("*{base}")
        } else {
            base
        }
    }
}

/// The polynomial `u_a` for a pair.
pub fn pair_poly(ctx: &InvariantCtx, pair: PairCtx, a: i64) -> Result<MPoly> {
    pairing(ctx.ring(), pair.j, pair.k, pair.pairing_index(a))
}

/// Solved coefficient of one slot.
#[derive(Clone, Debug)]
pub struct SlotSolution {
    pub term: UTerm,
    /// Label of the pairing in this slot, if it has one.
    pub term_label: Option<Label>,
    /// The coefficient as `Σ c · ∏ gen^e`, one exponent per ring generator.
    pub monomials: Vec<(Vec<u32>, u32)>,
    /// The coefficient expanded as a polynomial.
    pub coeff: MPoly,
}

/// Outcome of [`solve_relation_coeffs`].
#[derive(Clone, Debug)]
pub struct CoeffSolution {
    pub template: RelationTemplate,
    pub pair: PairCtx,
    pub gen_labels: Vec<Label>,
    pub slots: Vec<SlotSolution>,
    /// Left side minus the right side with the solved coefficients.
    pub residual: MPoly,
    /// Dimension of the solution space (0 when the coefficients are unique).
    pub nullspace_dim: usize,
    /// Whether every slot has a non-zero coefficient.
    pub all_nonzero: bool,
}

impl CoeffSolution {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn slot(&self, a: i64, twist: u32) -> Option<&SlotSolution> {
        self.slots.iter().find(|s| s.term == UTerm { a, twist })
    }

    pub fn name(&self) -> String {
        self.pair.describe(self.template.name)
    }
}

fn sub_vec(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

/// All exponent vectors `e` with `Σ e_g · deg_g = target`.
fn degree_monomials(degs: &[Vec<u32>], target: &[u32]) -> Vec<Vec<u32>> {
    fn rec(degs: &[Vec<u32>], target: &[u32], g: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if g == degs.len() {
            if target.iter().all(|&t| t == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let mut rest = target.to_vec();
        let mut e = 0;
        loop {
            cur.push(e);
            rec(degs, &rest, g + 1, cur, out);
            cur.pop();
            if degs[g].iter().all(|&d| d == 0) {
                break;
            }
            match sub_vec(&rest, &degs[g]) {
                Some(r) => rest = r,
                None => break,
            }
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(degs, target, 0, &mut Vec::new(), &mut out);
    out
}

const EXHAUSTIVE_LIMIT: u64 = 4096;

/// Recovers the coefficients of a relation template in a pair of copies by
/// exact linear algebra. Each slot's coefficient is expanded in the
/// monomials of its ring with the block degrees forced by the left side.
/// When the solution is not unique, the first member of the solution space
/// with every slot non-zero is returned (searched exhaustively in canonical
/// order for small spaces, otherwise by seeded sampling).
pub fn solve_relation_coeffs(ctx: &InvariantCtx, t: &RelationTemplate, pair: PairCtx) -> Result<CoeffSolution> {
    if ctx.n() != t.n {
        return Err(Error::InvalidParameter("template and context disagree on n".into()));
    }
    let ring = ctx.ring();
    let field = &ring.field;
    let q = field.q() as u64;
    let mut lhs = MPoly::one(ring);
    for (g, e) in t.lhs_exponents(q) {
        lhs = lhs * ctx.get(&pair.gen_label(g))?.pow(e);
    }
    let target = lhs.block_degrees().ok_or_else(|| Error::Infeasible(pair.describe(t.name)))?;
    let gen_labels: Vec<Label> = t.ring_gens.iter().map(|&g| pair.gen_label(g)).collect();
    let gens: Vec<MPoly> = gen_labels.iter().map(|l| ctx.get(l)).collect::<Result<_>>()?;
    let gen_degs: Vec<Vec<u32>> = gens.iter().map(|g| g.block_degrees().expect("generators are homogeneous")).collect();
    let mut pow_cache: FxHashMap<(usize, u32), MPoly> = FxHashMap::default();
    let mut gen_monomial = |e: &[u32]| -> MPoly {
        let mut acc = MPoly::one(ring);
        for (g, &k) in e.iter().enumerate() {
            if k > 0 {
                let p = pow_cache.entry((g, k)).or_insert_with(|| gens[g].pow(k as u64));
                acc = acc * &*p;
            }
        }
        acc
    };
    // columns: (slot, generator monomial)
    let mut columns: Vec<(usize, Vec<u32>, MPoly, MPoly)> = Vec::new();
    let mut terms = Vec::new();
    for (si, st) in t.slots.iter().enumerate() {
        let term = pair_poly(ctx, pair, st.a)?.q_pow(st.twist);
        let td = term.block_degrees().expect("pairings are homogeneous");
        if let Some(rest) = sub_vec(&target, &td) {
            for e in degree_monomials(&gen_degs, &rest) {
                let m = gen_monomial(&e);
                columns.push((si, e, m.clone(), m * &term));
            }
        }
        terms.push(term);
    }
    let mut rows: FxHashMap<Mono, usize> = FxHashMap::default();
    let mut row_of = |m: &Mono| -> usize {
        let next = rows.len();
        *rows.entry(m.clone()).or_insert(next)
    };
    let mut entries = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        for (m, v) in col.3.terms() {
            entries.push((row_of(m), c, *v));
        }
    }
    let mut rhs_entries = Vec::new();
    for (m, v) in lhs.terms() {
        rhs_entries.push((row_of(m), *v));
    }
    let mut a = Matrix::zeros(rows.len(), columns.len());
    for (r, c, v) in entries {
        a.set(r, c, v);
    }
    let mut b = vec![0; rows.len()];
    for (r, v) in rhs_entries {
        b[r] = v;
    }
    let sol = solve(field, &a, &b).ok_or_else(|| Error::Infeasible(pair.describe(t.name)))?;
    let dim = sol.nullspace.len();
    let slot_nonzero = |x: &[u32]| -> bool {
        (0..t.slots.len()).all(|s| columns.iter().enumerate().any(|(c, col)| col.0 == s && x[c] != 0))
    };
    let combine = |coeffs: &[u32]| -> Vec<u32> {
        let mut x = sol.particular.clone();
        for (basis, &c) in sol.nullspace.iter().zip(coeffs) {
            if c != 0 {
                for (xi, bi) in x.iter_mut().zip(basis) {
                    *xi = field.add(*xi, field.mul(c, *bi));
                }
            }
        }
        x
    };
    let mut chosen = sol.particular.clone();
    if dim > 0 && !slot_nonzero(&chosen) {
        let qf = field.q() as u64;
        let total = qf.checked_pow(dim as u32);
        let mut found = None;
        if let Some(total) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT) {
            for idx in 0..total {
                let mut rest = idx;
                let coeffs: Vec<u32> = (0..dim)
                    .map(|_| {
                        let c = (rest % qf) as u32;
                        rest /= qf;
                        c
                    })
                    .collect();
                let x = combine(&coeffs);
                if slot_nonzero(&x) {
                    found = Some(x);
                    break;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..EXHAUSTIVE_LIMIT {
                let coeffs: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..field.q())).collect();
                let x = combine(&coeffs);
                if slot_nonzero(&x) {
                    found = Some(x);
                    break;
                }
            }
        }
        if let Some(x) = found {
            chosen = x;
        }
    }
    // The slot coefficient is Σ x_c · monomial_c over the slot's columns.
    let v = ctx.conventions().v;
    let mut slots = Vec::new();
    let mut rhs = MPoly::zero(ring);
    for (si, st) in t.slots.iter().enumerate() {
        let mut monomials = Vec::new();
        let mut coeff = MPoly::zero(ring);
        for (c, col) in columns.iter().enumerate() {
            if col.0 == si && chosen[c] != 0 {
                monomials.push((col.1.clone(), chosen[c]));
                coeff = coeff + col.2.scale(chosen[c]);
            }
        }
        rhs = rhs + &coeff * &terms[si];
        slots.push(SlotSolution { term: *st, term_label: pair.u_label(st.a, v), monomials, coeff });
    }
    let all_nonzero = slots.iter().all(|s| !s.coeff.is_zero());
    Ok(CoeffSolution {
        template: t.clone(),
        pair,
        gen_labels,
        slots,
        residual: lhs - rhs,
        nullspace_dim: dim,
        all_nonzero,
    })
}
