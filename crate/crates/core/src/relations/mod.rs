//! Polynomial identities among the invariants, the bootstrap that fixes
//! the sign and twist conventions, and recovery of relation coefficients.

mod templates;

pub use templates::{
    pair_poly, solve_relation_coeffs, CoeffSolution, PairCtx, RGen, RName, RVariant,
    RelationTemplate, SlotSolution, UTerm,
};

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::field_of_order;
use crate::groups::{action_endo, group_generators, Family, GroupElem, GroupSpec};
use crate::invariants::{
    mui, pairing_u, DicksonSign, InvariantConventions, InvariantCtx, Label, VConvention,
};
use crate::mpoly::{poly_det, MPoly, Ring, Space, VarId};

/// Frobenius-twist pattern of the T-relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    /// Term `i` of relation `r` is raised to `q^min(r,i)`.
    Staggered,
    /// Every term after the first is raised to `q^r`.
    Uniform,
}

impl Twist {
    pub fn exponent(&self, r: usize, i: usize) -> u32 {
        match self {
            Twist::Staggered => r.min(i) as u32,
            Twist::Uniform if i == 0 => 0,
            Twist::Uniform => r as u32,
        }
    }
}

/// How a matrix acts on the vector blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActionConvention {
    /// `x[j,i] -> Σ_t σ[t,i] x[j,t]`, covectors through `σ⁻¹`.
    RowVector,
    /// `x[j,i] -> Σ_t σ[i,t] x[j,t]`, covectors through `σ⁻ᵀ`.
    ColumnVector,
}

/// Every convention choice, as resolved by [`resolved_conventions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub action: ActionConvention,
    pub invariants: InvariantConventions,
    pub twist: Twist,
    /// Largest n for which the printed and index-consistent R templates
    /// have the same terms.
    pub r_templates_coincide_up_to: usize,
}

impl Conventions {
    /// Sign relating `d[j,n]·dstar[1,n]` to the determinant of pairings.
    pub fn det_sign(n: usize) -> i64 {
        if (n * (n - 1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Human-readable summary of each bootstrap outcome.
pub fn describe(c: &Conventions) -> Vec<(String, String)> {
    let s = |a: &str, b: String| (a.to_string(), b);
    vec![
        s(
            "action",
            match c.action {
                ActionConvention::RowVector => {
                    "x[j,i] -> sum_t g[t,i] x[j,t]; y[k,i] -> sum_t ginv[i,t] y[k,t]".into()
                }
                ActionConvention::ColumnVector => {
                    "x[j,i] -> sum_t g[i,t] x[j,t]; y[k,i] -> sum_t ginv[t,i] y[k,t]".into()
                }
            },
        ),
        s(
            "dickson_sign",
            match c.invariants.dickson_sign {
                DicksonSign::Alternating => {
                    "c[i] = (-1)^(n-i) * coefficient of X^(q^i) in prod_v (X + v)".into()
                }
                DicksonSign::Raw => "c[i] = coefficient of X^(q^i) in prod_v (X + v)".into(),
            },
        ),
        s(
            "t_twist",
            match c.twist {
                Twist::Staggered => "term i of T_r raised to q^min(r,i), signs (-1)^i".into(),
                Twist::Uniform => "terms i >= 1 of T_r raised to q^r, signs (-1)^i".into(),
            },
        ),
        s(
            "v_pairing",
            match c.invariants.v {
                VConvention::Mirrored => {
                    "v[k,i] = sum_t x[1,t]^(q^i) y[k,t], v[k,-i] = sum_t x[1,t] y[k,t]^(q^i)".into()
                }
                VConvention::AsDefined => {
                    "v[k,i] = sum_t y[k,t]^(q^i) x[1,t], v[k,-i] = sum_t y[k,t] x[1,t]^(q^i)".into()
                }
            },
        ),
        s("det_sign", "d[j,n]*dstar[1,n] = (-1)^(n(n-1)/2) * det(u[j,r-s]^(q^min(r,s)))".into()),
        s(
            "r_variant",
            format!(
                "printed and index-consistent R templates coincide for n <= {}; index-consistent used beyond",
                c.r_templates_coincide_up_to
            ),
        ),
    ]
}

/// The two polynomials whose equality is a T-relation instance, collected
/// as one left-hand side. Returns `Σ_i (-1)^i c_i w_{idx(i)}^{q^tw(i)}`.
fn t_relation_lhs(
    ctx: &InvariantCtx,
    starred: bool,
    copy: usize,
    r: usize,
    sign: DicksonSign,
    twist: Twist,
) -> Result<MPoly> {
    let n = ctx.n();
    if n < 2 || r == 0 || r >= n {
        return Err(Error::InvalidParameter(format!("T-relation index r={r} needs 1 <= r <= n-1 with n >= 2")));
    }
    let ring = ctx.ring();
    let c_alt = |i: usize| -> Result<MPoly> {
        if i == n {
            return Ok(MPoly::one(ring));
        }
        let lab = if starred { Label::CStar { k: 1, i } } else { Label::C { j: 1, i } };
        let c = ctx.get(&lab)?;
        // undo the context's sign and apply the requested one
        let flip = ctx.conventions().dickson_sign != sign && (n - i) % 2 == 1;
        Ok(if flip { -c } else { c })
    };
    let mut acc = MPoly::zero(ring);
    for i in 0..=n {
        let idx = if starred { r as i64 - i as i64 } else { i as i64 - r as i64 };
        let w = if starred {
            ctx.get(&Label::U { j: copy, i: idx })?
        } else {
            ctx.get(&Label::V { k: copy, i: idx })?
        };
        let term = c_alt(i)? * w.q_pow(twist.exponent(r, i));
        acc = if i % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// The left side of `(T_r*)` for vector copy `j`.
pub fn t_star_lhs(ctx: &InvariantCtx, j: usize, r: usize, twist: Twist) -> Result<MPoly> {
    t_relation_lhs(ctx, true, j, r, ctx.conventions().dickson_sign, twist)
}

/// The left side of `(T_r)` for covector copy `k`.
pub fn t_lhs(ctx: &InvariantCtx, k: usize, r: usize, twist: Twist) -> Result<MPoly> {
    t_relation_lhs(ctx, false, k, r, ctx.conventions().dickson_sign, twist)
}

/// True iff `(T_r*)` vanishes for vector copy `j`.
pub fn check_t_star(ctx: &InvariantCtx, j: usize, r: usize, twist: Twist) -> Result<bool> {
    Ok(t_star_lhs(ctx, j, r, twist)?.is_zero())
}

/// True iff `(T_r)` vanishes for covector copy `k`.
pub fn check_t(ctx: &InvariantCtx, k: usize, r: usize, twist: Twist) -> Result<bool> {
    Ok(t_lhs(ctx, k, r, twist)?.is_zero())
}

/// The matrix of pairings with `(r,s)` entry `u[j,r-s]^(q^min(r,s))`, 0-based.
pub fn pairing_matrix(ctx: &InvariantCtx, j: usize) -> Result<Vec<Vec<MPoly>>> {
    let n = ctx.n();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|s| Ok(ctx.get(&Label::U { j, i: r as i64 - s as i64 })?.q_pow(r.min(s) as u32)))
                .collect()
        })
        .collect()
}

/// Determinant of the Moore matrix of `y[1,·]` in natural order, with the
/// powers running along the rows of the transpose.
pub fn covector_moore_det(ring: &Arc<Ring>) -> Result<MPoly> {
    let n = ring.space.n;
    let q = ring.field.q();
    let rows: Vec<Vec<MPoly>> = (1..=n)
        .map(|t| (0..n).map(|e| MPoly::var_pow(ring, VarId::y(1, t), q.pow(e as u32))).collect())
        .collect();
    poly_det(&rows)
}

/// Outcome of the determinant identity for one vector copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetIdentity {
    /// `d[j,n]` times the covector Moore determinant equals the pairing determinant.
    pub as_printed: bool,
    /// `d[j,n]·dstar[1,n] = (-1)^(n(n-1)/2)·det`.
    pub with_dstar: bool,
}

pub fn check_det_identity(ctx: &InvariantCtx, j: usize) -> Result<DetIdentity> {
    let n = ctx.n();
    let det = poly_det(&pairing_matrix(ctx, j)?)?;
    let d = ctx.get(&Label::D { j })?;
    let ds = ctx.get(&Label::DStar { k: 1 })?;
    let as_printed = &d * &covector_moore_det(ctx.ring())? == det;
    let signed = if Conventions::det_sign(n) == 1 { det } else { -det };
    Ok(DetIdentity { as_printed, with_dstar: d * ds == signed })
}

/// `u^q - (f1 f1*)^(q-1) u - f1^q f2* - f1*^q f2` for the pair
/// `(x[j], y[k])`, with `u` the untwisted pairing.
pub fn hypersurface_lhs(ctx: &InvariantCtx, j: usize, k: usize) -> Result<MPoly> {
    if ctx.n() != 2 {
        return Err(Error::InvalidParameter("the hypersurface relation needs n = 2".into()));
    }
    let ring = ctx.ring();
    let q = ring.field.q() as u64;
    let u = crate::invariants::pairing(ring, j, k, 0)?;
    let f1 = ctx.get(&Label::F { j, i: 1 })?;
    let f2 = ctx.get(&Label::F { j, i: 2 })?;
    let g1 = ctx.get(&Label::FStar { k, i: 1 })?;
    let g2 = ctx.get(&Label::FStar { k, i: 2 })?;
    Ok(u.pow(q) - (&f1 * &g1).pow(q - 1) * &u - f1.pow(q) * g2 - g1.pow(q) * f2)
}

/// True iff the n = 2 hypersurface relation vanishes for the first pair.
pub fn check_hypersurface_n2(ctx: &InvariantCtx) -> Result<bool> {
    Ok(hypersurface_lhs(ctx, 1, 1)?.is_zero())
}

fn bootstrap_ctx(q: u32, n: usize, m: usize, d: usize, inv: InvariantConventions) -> Result<InvariantCtx> {
    let ring = Ring::new(field_of_order(q)?, Space::new(n, m, d)?);
    Ok(InvariantCtx::new(ring, inv))
}

fn transpose(g: &GroupElem) -> GroupElem {
    let n = g.n();
    let mut t = g.mat.clone();
    for r in 0..n {
        for c in 0..n {
            t.set(r, c, g.mat.get(c, r));
        }
    }
    GroupElem { mat: t }
}

/// Picks the action convention under which the pairing and every Mui
/// invariant are fixed by U(n,q), for n = 3 and q = 3.
fn resolve_action() -> Result<ActionConvention> {
    let spec = GroupSpec::new(Family::U, 3, 3)?;
    let ring = Ring::new(spec.field.clone(), Space::new(3, 1, 1)?);
    let mut polys = vec![pairing_u(&ring, 1, 0)?];
    for i in 1..=3 {
        polys.push(mui(&ring, 1, i)?);
    }
    let mut ok = Vec::new();
    for conv in [ActionConvention::RowVector, ActionConvention::ColumnVector] {
        let mut all = true;
        for g in group_generators(&spec) {
            let g = if conv == ActionConvention::RowVector { g } else { transpose(&g) };
            let e = action_endo(&g, &ring)?;
            all &= polys.iter().all(|p| e.apply(p).map(|img| img == *p).unwrap_or(false));
        }
        if all {
            ok.push(conv);
        }
    }
    match ok.as_slice() {
        [ActionConvention::RowVector] => Ok(ActionConvention::RowVector),
        [ActionConvention::ColumnVector] => Err(Error::Bootstrap(
            "only the column-vector action fixes the Mui invariants; the action module would need to transpose".into(),
        )),
        _ => Err(Error::Bootstrap(format!("action convention not unique: {ok:?}"))),
    }
}

/// Runs the bootstrap checks. Every choice must be pinned down uniquely.
pub fn bootstrap() -> Result<Conventions> {
    let action = resolve_action()?;
    let probe = InvariantConventions { v: VConvention::Mirrored, dickson_sign: DicksonSign::Alternating };
    // sign and twist: c_0 = d^(q-1) and every (T_r*) at n = 2, 3 over GF(3)
    let mut candidates = Vec::new();
    for sign in [DicksonSign::Alternating, DicksonSign::Raw] {
        for twist in [Twist::Staggered, Twist::Uniform] {
            let mut good = true;
            for n in [2, 3] {
                let ctx = bootstrap_ctx(3, n, 2, 1, InvariantConventions { dickson_sign: sign, ..probe })?;
                let c0 = ctx.get(&Label::C { j: 1, i: 0 })?;
                good &= c0 == ctx.get(&Label::D { j: 1 })?.pow(2);
                for r in 1..n {
                    good &= t_relation_lhs(&ctx, true, 2, r, sign, twist)?.is_zero();
                }
            }
            if good {
                candidates.push((sign, twist));
            }
        }
    }
    let [(dickson_sign, twist)] = candidates[..] else {
        return Err(Error::Bootstrap(format!("sign/twist pattern not unique: {candidates:?}")));
    };
    // v pairing: (T_r) at n = 2, 3 over GF(3)
    let mut vs = Vec::new();
    for v in [VConvention::AsDefined, VConvention::Mirrored] {
        let inv = InvariantConventions { v, dickson_sign };
        let mut good = true;
        for n in [2, 3] {
            let ctx = bootstrap_ctx(3, n, 1, 2, inv)?;
            for r in 1..n {
                good &= t_relation_lhs(&ctx, false, 2, r, dickson_sign, twist)?.is_zero();
            }
        }
        if good {
            vs.push(v);
        }
    }
    let [v] = vs[..] else {
        return Err(Error::Bootstrap(format!("v pairing convention not unique: {vs:?}")));
    };
    let r_templates_coincide_up_to = templates::variants_coincide_up_to();
    Ok(Conventions {
        action,
        invariants: InvariantConventions { v, dickson_sign },
        twist,
        r_templates_coincide_up_to,
    })
}

static RESOLVED: OnceLock<std::result::Result<Conventions, String>> = OnceLock::new();

/// The bootstrap outcome, computed once per process.
pub fn resolved_conventions() -> Result<Conventions> {
    RESOLVED
        .get_or_init(|| bootstrap().map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::Bootstrap)
}

impl InvariantCtx {
    /// A context using the resolved conventions.
    pub fn resolved(ring: Arc<Ring>) -> Result<InvariantCtx> {
        Ok(InvariantCtx::new(ring, resolved_conventions()?.invariants))
    }
}

#[cfg(test)]
mod tests;
