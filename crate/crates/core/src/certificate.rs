//! Derivation certificates: ordered chains expressing each auxiliary
//! invariant as a rational expression in a claimed generating set.
//!
//! A step either solves one relation for its target ([`StepKind::Derived`])
//! or cites a single-pair generating statement ([`StepKind::Axiom`]).
//! Verification evaluates every derived expression from the labels it
//! mentions and compares it with the directly constructed target by
//! cross-multiplication.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::field_of_order;
use crate::groups::{action_endo, group_generators, Family, GroupSpec};
use crate::invariants::{set_labels, InvariantCtx, Label, SetName};
use crate::mpoly::{rat_eq, MPoly, RatExpr, Ring, Space};
use crate::relations::{
    describe, resolved_conventions, solve_relation_coeffs, CoeffSolution, Conventions, PairCtx,
    RGen, RName, RVariant, RelationTemplate,
};

pub const CERT_FORMAT: &str = "invfield-certificate";
pub const CERT_VERSION: u32 = 1;

/// The theorem a certificate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    GL,
    SL,
    UU,
}

impl Theorem {
    pub fn family(&self) -> Family {
        match self {
            Theorem::GL => Family::GL,
            Theorem::SL => Family::SL,
            Theorem::UU => Family::U,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::GL => "GL",
            Theorem::SL => "SL",
            Theorem::UU => "UU",
        })
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GL" => Ok(Theorem::GL),
            "SL" => Ok(Theorem::SL),
            "UU" | "U" => Ok(Theorem::UU),
            other => Err(Error::Parse(format!("unknown theorem '{other}'"))),
        }
    }
}

/// A rational expression over invariant labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    Label(String),
    /// A field element in the textual element format.
    Const(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u64),
    Div(Box<Expr>, Box<Expr>),
    Det(Vec<Vec<Expr>>),
}

impl Expr {
    fn label(l: Label, n: usize) -> Expr {
        Expr::Label(l.text(n))
    }

    fn pow(self, k: u64) -> Expr {
        if k == 1 {
            self
        } else {
            Expr::Pow(Box::new(self), k)
        }
    }

    fn div(self, den: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(den))
    }

    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    /// Every label mentioned.
    pub fn labels(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Label(s) => {
                out.insert(s.clone());
            }
            Expr::Const(_) => {}
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.labels(out)),
            Expr::Neg(e) | Expr::Pow(e, _) => e.labels(out),
            Expr::Div(a, b) => {
                a.labels(out);
                b.labels(out);
            }
            Expr::Det(rows) => rows.iter().flatten().for_each(|e| e.labels(out)),
        }
    }

    /// Evaluates with `lookup` supplying each label.
    pub fn eval(&self, ring: &std::sync::Arc<Ring>, lookup: &mut dyn FnMut(&str) -> Result<RatExpr>) -> Result<RatExpr> {
        let one = || RatExpr::from_poly(MPoly::one(ring));
        Ok(match self {
            Expr::Label(s) => lookup(s)?,
            Expr::Const(c) => {
                let v = ring.field.parse(c)?;
                RatExpr::from_poly(MPoly::constant(ring, v))
            }
            Expr::Add(v) => {
                let mut acc = RatExpr::from_poly(MPoly::zero(ring));
                for e in v {
                    acc = acc.add(&e.eval(ring, lookup)?)?;
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = one();
                for e in v {
                    acc = acc.mul(&e.eval(ring, lookup)?)?;
                }
                acc
            }
            Expr::Neg(e) => e.eval(ring, lookup)?.neg(),
            Expr::Pow(e, k) => e.eval(ring, lookup)?.pow(*k),
            Expr::Div(a, b) => a.eval(ring, lookup)?.div(&b.eval(ring, lookup)?)?,
            Expr::Det(rows) => {
                let m: Vec<Vec<RatExpr>> = rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.eval(ring, lookup)).collect())
                    .collect::<Result<_>>()?;
                if m.iter().any(|r| r.len() != m.len()) {
                    return Err(Error::InvalidParameter("determinant of a non-square matrix".into()));
                }
                rat_det(ring, &m)?
            }
        })
    }

    /// Replaces the first constant `c` by `c + 1`, or adds 1 when there is
    /// no constant. Used for negative controls.
    fn perturb(&mut self, field: &crate::gf::FieldCtx) -> bool {
        match self {
            Expr::Const(c) => {
                let v = field.parse(c).unwrap_or(0);
                *c = field.format(field.add(v, field.one()));
                true
            }
            Expr::Label(_) => false,
            Expr::Add(v) | Expr::Mul(v) => v.iter_mut().any(|e| e.perturb(field)),
            Expr::Neg(e) | Expr::Pow(e, _) => e.perturb(field),
            Expr::Div(a, b) => a.perturb(field) || b.perturb(field),
            Expr::Det(rows) => rows.iter_mut().flatten().any(|e| e.perturb(field)),
        }
    }
}

fn rat_det(ring: &std::sync::Arc<Ring>, m: &[Vec<RatExpr>]) -> Result<RatExpr> {
    match m.len() {
        0 => Ok(RatExpr::from_poly(MPoly::one(ring))),
        1 => Ok(m[0][0].clone()),
        n => {
            let mut acc = RatExpr::from_poly(MPoly::zero(ring));
            for c in 0..n {
                let minor: Vec<Vec<RatExpr>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&rat_det(ring, &minor)?)?;
                acc = if c % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            Ok(acc)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[Expr], sep: &str| -> fmt::Result {
            for (i, e) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        match self {
            Expr::Label(s) | Expr::Const(s) => f.write_str(s),
            Expr::Add(v) => {
                f.write_str("(")?;
                join(f, v, " + ")?;
                f.write_str(")")
            }
            Expr::Mul(v) => join(f, v, "*"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Pow(e, k) => match **e {
                Expr::Label(_) | Expr::Const(_) => write!(f, "{e}^{k}"),
                _ => write!(f, "({e})^{k}"),
            },
            Expr::Div(a, b) => write!(f, "({a}) / ({b})"),
            Expr::Det(rows) => {
                f.write_str("det[")?;
                for (i, r) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    join(f, r, ", ")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StepKind {
    /// The target equals `expr`, whose expansion is `num / den`.
    Derived { expr: Expr, num: String, den: String },
    /// The target lies in the field generated by `basis`, by `statement`.
    Axiom { statement: String, basis: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub target: String,
    pub justification: String,
    #[serde(flatten)]
    pub kind: StepKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    pub theorem: Theorem,
    pub n: usize,
    pub q: u32,
    pub m: usize,
    pub d: usize,
    pub conventions: Vec<(String, String)>,
    /// The claimed generating set.
    pub generators: Vec<String>,
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        let c: Certificate = serde_json::from_str(s)?;
        if c.format != CERT_FORMAT || c.version != CERT_VERSION {
            return Err(Error::Certificate(format!("unsupported certificate format {} v{}", c.format, c.version)));
        }
        Ok(c)
    }
}

struct Builder<'a> {
    ctx: &'a InvariantCtx,
    conv: Conventions,
    steps: Vec<Step>,
}

impl<'a> Builder<'a> {
    fn n(&self) -> usize {
        self.ctx.n()
    }

    fn q(&self) -> u64 {
        self.ctx.ring().field.q() as u64
    }

    fn lab(&self, l: Label) -> Expr {
        Expr::label(l, self.n())
    }

    fn konst(&self, c: u32) -> Expr {
        Expr::Const(self.ctx.ring().field.format(c))
    }

    fn derive(&mut self, target: Label, justification: String, expr: Expr) -> Result<()> {
        let ring = self.ctx.ring().clone();
        let n = self.n();
        let ctx = self.ctx;
        let val = expr.eval(&ring, &mut |s| Ok(RatExpr::from_poly(ctx.get(&Label::parse(s, n)?)?)))?;
        self.steps.push(Step {
            target: target.text(n),
            justification,
            kind: StepKind::Derived { expr, num: val.num().to_text(), den: val.den().to_text() },
        });
        Ok(())
    }

    fn axiom(&mut self, target: Label, statement: &str, pair: (usize, usize), basis: Vec<Label>) {
        let n = self.n();
        self.steps.push(Step {
            target: target.text(n),
            justification: format!("{statement} for the pair (x[{}], y[{}])", pair.0, pair.1),
            kind: StepKind::Axiom { statement: statement.into(), basis: basis.iter().map(|l| l.text(n)).collect() },
        });
    }

    /// Solves `Σ_{i=0}^n (-1)^i c_i w_{idx(i)}^{q^tw(r,i)} = 0` for the
    /// `i = 0` term. `coef(i)` gives `c_i` for `i < n`; `w(b)` the pairing label.
    fn solve_t(&mut self, target: Label, name: String, r: usize, coef: &dyn Fn(usize) -> Expr, w: &dyn Fn(i64) -> Label, starred: bool) -> Result<()> {
        let n = self.n();
        let q = self.q();
        let mut rest = Vec::new();
        for i in 1..=n {
            let idx = if starred { r as i64 - i as i64 } else { i as i64 - r as i64 };
            let term = self.lab(w(idx)).pow(q.pow(self.conv.twist.exponent(r, i)));
            let t = if i == n { term } else { Expr::Mul(vec![coef(i), term]) };
            rest.push(if i % 2 == 0 { t } else { t.neg() });
        }
        let expr = Expr::Add(rest).neg().div(coef(0));
        self.derive(target, name, expr)
    }

    /// `c_0 = (ε·det P)^(q-1) / c0_other` or `d = ε·det P / d_other`, with
    /// `P[r][s] = w(r-s)^(q^min(r,s))`.
    fn det_matrix(&self, w: &dyn Fn(i64) -> Label) -> Expr {
        let n = self.n();
        let q = self.q();
        let rows = (0..n)
            .map(|r| (0..n).map(|s| self.lab(w(r as i64 - s as i64)).pow(q.pow(r.min(s) as u32))).collect())
            .collect();
        let det = Expr::Det(rows);
        if Conventions::det_sign(n) == 1 {
            det
        } else {
            det.neg()
        }
    }

    /// Adds the step solving a solved R relation for `target`, which is
    /// either the unraised left factor or a linear pairing term.
    fn solve_r(&mut self, sol: &CoeffSolution, target: Label) -> Result<()> {
        let q = self.q();
        let ring_gens: Vec<Expr> = sol.gen_labels.iter().map(|&l| self.lab(l)).collect();
        let coeff_expr = |monomials: &[(Vec<u32>, u32)]| -> Expr {
            Expr::Add(
                monomials
                    .iter()
                    .map(|(e, c)| {
                        let mut f = vec![self.konst(*c)];
                        for (g, &k) in e.iter().enumerate() {
                            if k > 0 {
                                f.push(ring_gens[g].clone().pow(k as u64));
                            }
                        }
                        Expr::Mul(f)
                    })
                    .collect(),
            )
        };
        let lhs: Vec<(Label, u64)> =
            sol.template.lhs_exponents(q).into_iter().map(|(g, e)| (sol.pair.gen_label(g), e)).collect();
        let mut target_slot = None;
        let mut slot_terms = Vec::new();
        for (i, s) in sol.slots.iter().enumerate() {
            let label = s.term_label.ok_or_else(|| Error::Certificate(format!("{}: pairing term has no label", sol.name())))?;
            if label == target && s.term.twist == 0 {
                target_slot = Some(i);
                continue;
            }
            slot_terms.push(Expr::Mul(vec![coeff_expr(&s.monomials), self.lab(label).pow(q.pow(s.term.twist))]));
        }
        let expr = if let Some(i) = target_slot {
            let lhs_expr = Expr::Mul(lhs.iter().map(|&(l, e)| self.lab(l).pow(e)).collect());
            let mut num = vec![lhs_expr];
            num.extend(slot_terms.into_iter().map(Expr::neg));
            Expr::Add(num).div(coeff_expr(&sol.slots[i].monomials))
        } else {
            let others: Vec<Expr> =
                lhs.iter().filter(|&&(l, _)| l != target).map(|&(l, e)| self.lab(l).pow(e)).collect();
            if others.len() + 1 != lhs.len() || lhs.iter().any(|&(l, e)| l == target && e != 1) {
                return Err(Error::Certificate(format!("{}: cannot solve for {}", sol.name(), target.text(self.n()))));
            }
            Expr::Add(slot_terms).div(Expr::Mul(others))
        };
        self.derive(target, sol.name(), expr)
    }

    fn solved(&self, name: RName, pair: PairCtx) -> Result<CoeffSolution> {
        let t = RelationTemplate::new(name, self.n(), RVariant::PatternConsistent)?;
        let sol = solve_relation_coeffs(self.ctx, &t, pair)?;
        if !sol.residual_is_zero() || !sol.all_nonzero {
            return Err(Error::Certificate(format!("{}: coefficients not recovered", sol.name())));
        }
        Ok(sol)
    }

    /// `f_2 = (u^q - (f_1 g_1)^(q-1) u - g_1^q f_2') / f_1'^q` from the
    /// n = 2 hypersurface in the pair, solved for one of the second Mui
    /// invariants.
    fn hypersurface_step(&mut self, j: usize, k: usize, for_vector: bool) -> Result<()> {
        let q = self.q();
        let u = PairCtx::direct(j, k)
            .u_label(0, self.ctx.conventions().v)
            .ok_or_else(|| Error::Certificate("pairing has no label".into()))?;
        let (f1, f2, g1, g2) = (
            Label::F { j, i: 1 },
            Label::F { j, i: 2 },
            Label::FStar { k, i: 1 },
            Label::FStar { k, i: 2 },
        );
        let (target, known2, known1, other1) = if for_vector { (f2, g2, f1, g1) } else { (g2, f2, g1, f1) };
        // u^q - (f1 g1)^(q-1) u = f1^q g2 + g1^q f2
        let num = Expr::Add(vec![
            self.lab(u).pow(q),
            Expr::Mul(vec![Expr::Mul(vec![self.lab(f1), self.lab(g1)]).pow(q - 1), self.lab(u)]).neg(),
            Expr::Mul(vec![self.lab(known1).pow(q), self.lab(known2)]).neg(),
        ]);
        let expr = num.div(self.lab(other1).pow(q));
        self.derive(target, format!("hypersurface_[{j},{k}]"), expr)
    }
}

/// Builds the derivation chain of the given theorem.
pub fn build_certificate(theorem: Theorem, group: &GroupSpec, m: usize, d: usize) -> Result<Certificate> {
    if group.family != theorem.family() {
        return Err(Error::InvalidParameter(format!("theorem {theorem} does not concern {}", group.family)));
    }
    let n = group.n;
    let ring = Ring::new(group.field.clone(), Space::new(n, m, d)?);
    let conv = resolved_conventions()?;
    let ctx = InvariantCtx::new(ring, conv.invariants);
    build_with(&ctx, theorem, conv)
}

/// Builds a certificate in an existing context.
pub fn build_with(ctx: &InvariantCtx, theorem: Theorem, conv: Conventions) -> Result<Certificate> {
    let sp = ctx.ring().space;
    let (n, m, d) = (sp.n, sp.m, sp.d);
    let q = ctx.ring().field.q();
    let mut b = Builder { ctx, conv, steps: Vec::new() };
    let ni = n as i64;
    let qq = q as u64;
    match theorem {
        Theorem::GL | Theorem::SL => {
            let gl = theorem == Theorem::GL;
            let (stmt, set) = if gl { ("pGL", SetName::PGL) } else { ("pSL", SetName::PSL) };
            let base = set_labels(set, n, 1, 1)?;
            // first pair
            for i in 1..n {
                b.axiom(Label::C { j: 1, i }, stmt, (1, 1), base.clone());
            }
            if gl {
                for i in 0..n {
                    b.axiom(Label::CStar { k: 1, i }, stmt, (1, 1), base.clone());
                }
            } else {
                b.axiom(Label::DStar { k: 1 }, stmt, (1, 1), base.clone());
                for i in 1..n {
                    b.axiom(Label::CStar { k: 1, i }, stmt, (1, 1), base.clone());
                }
            }
            let cstar = |i: usize| -> Expr {
                if i == 0 && !gl {
                    Expr::label(Label::DStar { k: 1 }, n).pow(qq - 1)
                } else {
                    Expr::label(Label::CStar { k: 1, i }, n)
                }
            };
            let c1 = |i: usize| -> Expr {
                if i == 0 && !gl {
                    Expr::label(Label::D { j: 1 }, n).pow(qq - 1)
                } else {
                    Expr::label(Label::C { j: 1, i }, n)
                }
            };
            for j in 2..=m {
                for r in 1..n {
                    let w = |a: i64| Label::U { j, i: a };
                    b.solve_t(Label::U { j, i: r as i64 }, format!("T*_{r}[{j}]"), r, &cstar, &w, true)?;
                }
                let det = b.det_matrix(&|a| Label::U { j, i: a });
                let (target, expr) = if gl {
                    (Label::C { j, i: 0 }, det.pow(qq - 1).div(cstar(0)))
                } else {
                    (Label::D { j }, det.div(b.lab(Label::DStar { k: 1 })))
                };
                b.derive(target, format!("det_identity[{j},1]"), expr)?;
                let mut basis = vec![if gl { Label::C { j, i: 0 } } else { Label::D { j } }];
                basis.extend((1 - ni..ni).map(|i| Label::U { j, i }));
                for i in 1..n {
                    b.axiom(Label::C { j, i }, stmt, (j, 1), basis.clone());
                }
            }
            let vl = |k: usize, a: i64| -> Result<Label> {
                PairCtx::direct(1, k)
                    .u_label(a, ctx.conventions().v)
                    .ok_or_else(|| Error::Certificate("pairing has no label".into()))
            };
            for k in 2..=d {
                let w = |a: i64| vl(k, a).expect("j = 1 pairings are labelled");
                for r in 1..n {
                    b.solve_t(w(-(r as i64)), format!("T_{r}[{k}]"), r, &c1, &w, false)?;
                }
                let det = b.det_matrix(&w);
                let (target, expr) = if gl {
                    (Label::CStar { k, i: 0 }, det.pow(qq - 1).div(c1(0)))
                } else {
                    (Label::DStar { k }, det.div(b.lab(Label::D { j: 1 })))
                };
                b.derive(target, format!("det_identity[1,{k}]"), expr)?;
                let mut basis = vec![target];
                basis.extend((1 - ni..ni).map(|a| w(a)));
                for i in 1..n {
                    b.axiom(Label::CStar { k, i }, stmt, (1, k), basis.clone());
                }
            }
        }
        Theorem::UU => match n {
            1 => {
                for j in 1..=m {
                    let e = Expr::Mul(vec![b.lab(Label::F { j, i: 1 }), b.lab(Label::FStar { k: 1, i: 1 })]);
                    b.derive(Label::U { j, i: 0 }, "pairing_n1".into(), e)?;
                }
                for k in 2..=d {
                    let e = Expr::Mul(vec![b.lab(Label::F { j: 1, i: 1 }), b.lab(Label::FStar { k, i: 1 })]);
                    let target = PairCtx::direct(1, k).u_label(0, ctx.conventions().v).expect("labelled");
                    b.derive(target, "pairing_n1".into(), e)?;
                }
            }
            2 => {
                b.hypersurface_step(1, 1, true)?;
                for j in 2..=m {
                    b.hypersurface_step(j, 1, true)?;
                }
                for k in 2..=d {
                    b.hypersurface_step(1, k, false)?;
                }
            }
            3 => {
                let p11 = PairCtx::direct(1, 1);
                let s = b.solved(RName::R(2), p11)?;
                b.solve_r(&s, Label::FStar { k: 1, i: 2 })?;
                let s = b.solved(RName::R1Plus, p11)?;
                b.solve_r(&s, Label::FStar { k: 1, i: 3 })?;
                let s = b.solved(RName::RMinus(3), p11)?;
                b.solve_r(&s, Label::F { j: 1, i: 3 })?;
                for j in 2..=m {
                    let p = PairCtx::direct(j, 1);
                    let s = b.solved(RName::R1Plus, p)?;
                    b.solve_r(&s, Label::U { j, i: 1 })?;
                    let s = b.solved(RName::R(2), p)?;
                    b.solve_r(&s, Label::F { j, i: 2 })?;
                    let s = b.solved(RName::RMinus(3), p)?;
                    b.solve_r(&s, Label::F { j, i: 3 })?;
                }
                for k in 2..=d {
                    let p = PairCtx::mirrored(1, k);
                    let s = b.solved(RName::R1Plus, p)?;
                    let v = p.u_label(1, ctx.conventions().v).expect("j = 1 pairings are labelled");
                    b.solve_r(&s, v)?;
                    let s = b.solved(RName::R(2), p)?;
                    b.solve_r(&s, p.gen_label(RGen::F(2)))?;
                    let s = b.solved(RName::RMinus(3), p)?;
                    b.solve_r(&s, p.gen_label(RGen::F(3)))?;
                }
            }
            _ => {
                return Err(Error::InvalidParameter("certificates for U are available for n <= 3".into()));
            }
        },
    }
    let generators = set_labels(SetName::theorem_for(theorem.family()), n, m, d)?
        .iter()
        .map(|l| l.text(n))
        .collect();
    Ok(Certificate {
        format: CERT_FORMAT.into(),
        version: CERT_VERSION,
        theorem,
        n,
        q,
        m,
        d,
        conventions: describe(&conv),
        generators,
        steps: b.steps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub index: usize,
    pub target: String,
    pub justification: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub theorem: Theorem,
    pub n: usize,
    pub q: u32,
    pub m: usize,
    pub d: usize,
    pub steps: Vec<StepReport>,
    /// Every element of the large generating set is a generator or a target.
    pub complete: bool,
    pub conventions_match: bool,
    pub passed: bool,
}

impl CertificateReport {
    pub fn failed_steps(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| !s.passed).map(|s| s.index).collect()
    }
}

fn check_step(
    ctx: &InvariantCtx,
    spec: &GroupSpec,
    step: &Step,
    known: &BTreeSet<String>,
) -> std::result::Result<String, String> {
    let n = ctx.n();
    let ring = ctx.ring();
    let target_label = Label::parse(&step.target, n).map_err(|e| e.to_string())?;
    let target = ctx.get(&target_label).map_err(|e| e.to_string())?;
    match &step.kind {
        StepKind::Derived { expr, num, den } => {
            let mut used = BTreeSet::new();
            expr.labels(&mut used);
            if let Some(l) = used.iter().find(|l| !known.contains(*l)) {
                return Err(format!("uses {l}, which is neither a generator nor an earlier target"));
            }
            let val = expr
                .eval(ring, &mut |s| Ok(RatExpr::from_poly(ctx.get(&Label::parse(s, n)?)?)))
                .map_err(|e| format!("evaluation failed: {e}"))?;
            let recorded = MPoly::parse(ring, num)
                .and_then(|a| Ok(RatExpr::new(a, MPoly::parse(ring, den)?)?))
                .map_err(|e| format!("recorded quotient unreadable: {e}"))?;
            if !rat_eq(&val, &recorded).map_err(|e| e.to_string())? {
                return Err("expression does not expand to the recorded quotient".into());
            }
            if !rat_eq(&val, &RatExpr::from_poly(target)).map_err(|e| e.to_string())? {
                return Err("cross-multiplication fails".into());
            }
            Ok("cross-multiplies exactly".into())
        }
        StepKind::Axiom { statement, basis } => {
            if let Some(l) = basis.iter().find(|l| !known.contains(*l)) {
                return Err(format!("basis element {l} not available"));
            }
            if basis.len() != 2 * n || basis.iter().collect::<BTreeSet<_>>().len() != basis.len() {
                return Err(format!("basis of {statement} must have {} distinct members", 2 * n));
            }
            for g in group_generators(spec) {
                let e = action_endo(&g, ring).map_err(|e| e.to_string())?;
                if e.apply(&target).map_err(|e| e.to_string())? != target {
                    return Err(format!("target is not invariant under {}", g.format(&ring.field)));
                }
            }
            Ok(format!("{statement}: target invariant, basis of size {}", 2 * n))
        }
    }
}

/// Checks every step of a certificate. Failures are reported per step.
pub fn verify_certificate(c: &Certificate) -> Result<CertificateReport> {
    let field = field_of_order(c.q)?;
    let spec = GroupSpec::with_field(c.theorem.family(), c.n, field.clone())?;
    let ring = Ring::new(field, Space::new(c.n, c.m, c.d)?);
    let conv = resolved_conventions()?;
    let ctx = InvariantCtx::new(ring, conv.invariants);
    let mut known: BTreeSet<String> = c.generators.iter().cloned().collect();
    let mut steps = Vec::new();
    for (index, step) in c.steps.iter().enumerate() {
        let (passed, detail) = match check_step(&ctx, &spec, step, &known) {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        steps.push(StepReport {
            index,
            target: step.target.clone(),
            justification: step.justification.clone(),
            passed,
            detail,
        });
        known.insert(step.target.clone());
    }
    let big = set_labels(SetName::big_for(c.theorem.family()), c.n, c.m, c.d)?;
    let complete = big.iter().all(|l| known.contains(&l.text(c.n)));
    let conventions_match = c.conventions == describe(&conv);
    let passed = complete && conventions_match && steps.iter().all(|s| s.passed);
    Ok(CertificateReport { theorem: c.theorem, n: c.n, q: c.q, m: c.m, d: c.d, steps, complete, conventions_match, passed })
}

/// Perturbs one constant of a derived step (or adds one to it). Returns
/// false if the step is an axiom.
pub fn corrupt(c: &mut Certificate, index: usize) -> Result<bool> {
    let field = field_of_order(c.q)?;
    let step = c.steps.get_mut(index).ok_or_else(|| Error::InvalidParameter(format!("no step {index}")))?;
    match &mut step.kind {
        StepKind::Derived { expr, .. } => {
            if !expr.perturb(&field) {
                let old = std::mem::replace(expr, Expr::Const(String::new()));
                *expr = Expr::Add(vec![old, Expr::Const(field.format(field.one()))]);
            }
            Ok(true)
        }
        StepKind::Axiom { .. } => Ok(false),
    }
}
