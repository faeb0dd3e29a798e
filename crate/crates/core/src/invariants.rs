//! Constructors for the pairing, Dickson and Mui invariants and for the
//! named generating sets.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::Family;
use crate::mpoly::{involution_endo, poly_det, MPoly, Ring, VarId};

/// How the covector pairings `v[k,i]` twist their factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VConvention {
    /// `v[k,i] = Σ y[k,t]^(q^i) x[1,t]` for `i ≥ 0`, and
    /// `v[k,-i] = Σ y[k,t] x[1,t]^(q^i)`.
    AsDefined,
    /// `v[k,i] = Σ x[1,t]^(q^i) y[k,t]` for `i ≥ 0`, and
    /// `v[k,-i] = Σ x[1,t] y[k,t]^(q^i)`, so `v[k,·]` is the pairing of
    /// `(x[1], y[k])` with the same twist pattern as `u[j,·]`.
    Mirrored,
}

/// Sign applied to the coefficients of `∏ (X + v) = Σ κ_i X^(q^i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DicksonSign {
    /// `c_i = (-1)^(n-i) κ_i`.
    Alternating,
    /// `c_i = κ_i`.
    Raw,
}

/// The convention choices the invariant constructors depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantConventions {
    pub v: VConvention,
    pub dickson_sign: DicksonSign,
}

/// A named invariant. Indices follow the copy/index of the invariant; `i`
/// of `u` and `v` may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    C { j: usize, i: usize },
    D { j: usize },
    F { j: usize, i: usize },
    FStar { k: usize, i: usize },
    U { j: usize, i: i64 },
    V { k: usize, i: i64 },
    CStar { k: usize, i: usize },
    DStar { k: usize },
}

impl Label {
    /// Text form; `n` is needed for the `d[j,n]` labels.
    pub fn text(&self, n: usize) -> String {
        match *self {
            Label::C { j, i } => format!("c[{j},{i}]"),
            Label::D { j } => format!("d[{j},{n}]"),
            Label::F { j, i } => format!("f[{j},{i}]"),
            Label::FStar { k, i } => format!("fstar[{k},{i}]"),
            Label::U { j, i } => format!("u[{j},{i}]"),
            Label::V { k, i } => format!("v[{k},{i}]"),
            Label::CStar { k, i } => format!("cstar[{k},{i}]"),
            Label::DStar { k } => format!("dstar[{k},{n}]"),
        }
    }

    /// Parses `name[a,b]`; for `d` and `dstar` the second index must be `n`
    /// (numerically or literally).
    pub fn parse(s: &str, n: usize) -> Result<Label> {
        let bad = || Error::UnknownLabel(s.to_string());
        let s = s.trim();
        let open = s.find('[').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim();
        let idx = |b: &str| -> Result<usize> { b.parse().map_err(|_| bad()) };
        let top = |b: &str| -> Result<()> {
            if b == "n" || b.parse() == Ok(n) {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let lab = match &s[..open] {
            "c" => Label::C { j: a, i: idx(b)? },
            "d" => {
                top(b)?;
                Label::D { j: a }
            }
            "f" => Label::F { j: a, i: idx(b)? },
            "fstar" => Label::FStar { k: a, i: idx(b)? },
            "u" => Label::U { j: a, i: b.parse().map_err(|_| bad())? },
            "v" => Label::V { k: a, i: b.parse().map_err(|_| bad())? },
            "cstar" => Label::CStar { k: a, i: idx(b)? },
            "dstar" => {
                top(b)?;
                Label::DStar { k: a }
            }
            _ => return Err(bad()),
        };
        Ok(lab)
    }
}

/// `Σ_t x[j,t]^(q^a) y[k,t]` for `a ≥ 0`, `Σ_t x[j,t] y[k,t]^(q^-a)` otherwise.
pub fn pairing(ring: &Arc<Ring>, j: usize, k: usize, a: i64) -> Result<MPoly> {
    let sp = ring.space;
    if !(1..=sp.m).contains(&j) || !(1..=sp.d).contains(&k) {
        return Err(Error::InvalidParameter(format!("pairing copies ({j},{k}) out of range")));
    }
    let q = ring.field.q();
    let tw = q.checked_pow(a.unsigned_abs() as u32).ok_or(Error::ExponentOverflow)?;
    let (ex, ey) = if a >= 0 { (tw, 1) } else { (1, tw) };
    Ok((1..=sp.n).fold(MPoly::zero(ring), |acc, t| {
        acc + MPoly::var_pow(ring, VarId::x(j, t), ex) * MPoly::var_pow(ring, VarId::y(k, t), ey)
    }))
}

/// `u[j,i]`: the pairing of vector copy `j` with the first covector copy.
pub fn pairing_u(ring: &Arc<Ring>, j: usize, i: i64) -> Result<MPoly> {
    pairing(ring, j, 1, i)
}

/// `v[k,i]`: the pairing of covector copy `k` with the first vector copy.
pub fn pairing_v(ring: &Arc<Ring>, k: usize, i: i64, conv: VConvention) -> Result<MPoly> {
    match conv {
        VConvention::Mirrored => pairing(ring, 1, k, i),
        VConvention::AsDefined => pairing(ring, 1, k, -i),
    }
}

fn check_copy(what: &str, c: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&c) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} copy {c} out of range 1..={max}")))
    }
}

/// All linear combinations `Σ a_t x[j,t]` for `t < upto`, in canonical
/// coefficient order.
fn span(ring: &Arc<Ring>, j: usize, upto: usize) -> Vec<MPoly> {
    let f = &ring.field;
    let mut out = vec![MPoly::zero(ring)];
    for t in 1..upto {
        let x = MPoly::var(ring, VarId::x(j, t));
        out = out
            .iter()
            .flat_map(|v| f.elements().map(move |a| (v.clone(), a)))
            .map(|(v, a)| v + x.scale(a))
            .collect();
    }
    out
}

/// Mui invariant `f[j,i] = ∏ (x[j,i] + v)` over `v` in the span of
/// `x[j,1..i-1]`.
pub fn mui(ring: &Arc<Ring>, j: usize, i: usize) -> Result<MPoly> {
    check_copy("vector", j, ring.space.m)?;
    if !(1..=ring.space.n).contains(&i) {
        return Err(Error::InvalidParameter(format!("Mui index {i} out of range")));
    }
    let x = MPoly::var(ring, VarId::x(j, i));
    Ok(span(ring, j, i).iter().fold(MPoly::one(ring), |acc, v| acc * (&x + v)))
}

/// `f*[k,i]`, the image of `f[1,i]` under the involution swapping
/// `x[1]` and `y[k]`.
pub fn mui_star(ring: &Arc<Ring>, k: usize, i: usize) -> Result<MPoly> {
    check_copy("covector", k, ring.space.d)?;
    involution_endo(ring, 1, k)?.apply(&mui(ring, 1, i)?)
}

/// Moore determinant of `x[j,·]`: rows are the `q^r`-th powers, `r = 0..n-1`.
pub fn moore_det(ring: &Arc<Ring>, j: usize) -> Result<MPoly> {
    check_copy("vector", j, ring.space.m)?;
    let n = ring.space.n;
    let q = ring.field.q();
    let rows: Vec<Vec<MPoly>> = (0..n)
        .map(|r| (1..=n).map(|t| MPoly::var_pow(ring, VarId::x(j, t), q.pow(r as u32))).collect())
        .collect();
    poly_det(&rows)
}

/// Coefficients `κ_0..κ_n` of `∏_{v ∈ span(x[j,·])} (X + v) = Σ κ_i X^(q^i)`.
pub fn orbit_polynomial_coeffs(ring: &Arc<Ring>, j: usize) -> Result<Vec<MPoly>> {
    check_copy("vector", j, ring.space.m)?;
    let n = ring.space.n;
    let q = ring.field.q() as usize;
    // dense in X: coeffs[e] multiplies X^e
    let mut coeffs = vec![MPoly::one(ring)];
    for v in span(ring, j, n + 1) {
        let mut next = vec![MPoly::zero(ring); coeffs.len() + 1];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[e + 1] = &next[e + 1] + c;
            if !v.is_zero() {
                next[e] = &next[e] + &(c * &v);
            }
        }
        coeffs = next;
    }
    let out: Vec<MPoly> = (0..=n).map(|i| coeffs[q.pow(i as u32)].clone()).collect();
    debug_assert!(coeffs
        .iter()
        .enumerate()
        .all(|(e, c)| c.is_zero() || (0..=n).any(|i| q.pow(i as u32) == e)));
    Ok(out)
}

/// Dickson invariants `[c[j,0], .., c[j,n-1]]` and the Moore determinant `d[j,n]`.
pub fn dickson(ring: &Arc<Ring>, j: usize, sign: DicksonSign) -> Result<(Vec<MPoly>, MPoly)> {
    let n = ring.space.n;
    let kappa = orbit_polynomial_coeffs(ring, j)?;
    let c = kappa[..n]
        .iter()
        .enumerate()
        .map(|(i, k)| match sign {
            DicksonSign::Alternating if (n - i) % 2 == 1 => -k,
            _ => k.clone(),
        })
        .collect();
    Ok((c, moore_det(ring, j)?))
}

/// Starred Dickson invariants: images of `dickson(1)` under the involution
/// swapping `x[1]` and `y[k]`.
pub fn dickson_star(ring: &Arc<Ring>, k: usize, sign: DicksonSign) -> Result<(Vec<MPoly>, MPoly)> {
    check_copy("covector", k, ring.space.d)?;
    let star = involution_endo(ring, 1, k)?;
    let (c, d) = dickson(ring, 1, sign)?;
    let cs = c.iter().map(|p| star.apply(p)).collect::<Result<_>>()?;
    Ok((cs, star.apply(&d)?))
}

/// Builds and caches invariants for one ring and one convention choice.
pub struct InvariantCtx {
    ring: Arc<Ring>,
    conv: InvariantConventions,
    cache: Mutex<FxHashMap<Label, MPoly>>,
}

impl InvariantCtx {
    pub fn new(ring: Arc<Ring>, conv: InvariantConventions) -> Self {
        Self { ring, conv, cache: Mutex::new(FxHashMap::default()) }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.space.n
    }

    pub fn conventions(&self) -> InvariantConventions {
        self.conv
    }

    pub fn label_text(&self, l: &Label) -> String {
        l.text(self.n())
    }

    /// The polynomial named by `label`.
    pub fn get(&self, label: &Label) -> Result<MPoly> {
        if let Some(p) = self.cache.lock().unwrap().get(label) {
            return Ok(p.clone());
        }
        let sp = self.ring.space;
        let n = sp.n;
        let r = &self.ring;
        let bad_index = || Error::UnknownLabel(label.text(n));
        let p = match *label {
            Label::C { j, i } => {
                if i >= n {
                    return Err(bad_index());
                }
                let (c, d) = dickson(r, j, self.conv.dickson_sign)?;
                self.store(Label::D { j }, d);
                for (t, ct) in c.iter().enumerate() {
                    self.store(Label::C { j, i: t }, ct.clone());
                }
                c[i].clone()
            }
            Label::D { j } => moore_det(r, j)?,
            Label::F { j, i } => mui(r, j, i).map_err(|_| bad_index())?,
            Label::FStar { k, i } => {
                check_copy("covector", k, sp.d)?;
                let base = self.get(&Label::F { j: 1, i }).map_err(|_| bad_index())?;
                involution_endo(r, 1, k)?.apply(&base)?
            }
            Label::U { j, i } => pairing_u(r, j, i)?,
            Label::V { k, i } => pairing_v(r, k, i, self.conv.v)?,
            Label::CStar { k, i } => {
                check_copy("covector", k, sp.d)?;
                let base = self.get(&Label::C { j: 1, i })?;
                involution_endo(r, 1, k)?.apply(&base)?
            }
            Label::DStar { k } => {
                check_copy("covector", k, sp.d)?;
                let base = self.get(&Label::D { j: 1 })?;
                involution_endo(r, 1, k)?.apply(&base)?
            }
        };
        self.store(*label, p.clone());
        Ok(p)
    }

    fn store(&self, l: Label, p: MPoly) {
        self.cache.lock().unwrap().insert(l, p);
    }

    pub fn generating_set(&self, name: SetName) -> Result<GeneratorSet> {
        let labels = set_labels(name, self.n(), self.ring.space.m, self.ring.space.d)?;
        let members = labels
            .into_iter()
            .map(|l| Ok((l, self.get(&l)?)))
            .collect::<Result<_>>()?;
        Ok(GeneratorSet { name, members })
    }
}

/// Named generating sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SetName {
    PGL,
    PSL,
    PUn1,
    PUn2,
    PUn3,
    PrecGL,
    PrecSL,
    PrecU,
    ThmGL,
    ThmSL,
    ThmUU,
}

impl SetName {
    pub const ALL: [SetName; 11] = [
        SetName::PGL,
        SetName::PSL,
        SetName::PUn1,
        SetName::PUn2,
        SetName::PUn3,
        SetName::PrecGL,
        SetName::PrecSL,
        SetName::PrecU,
        SetName::ThmGL,
        SetName::ThmSL,
        SetName::ThmUU,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SetName::PGL => "pGL",
            SetName::PSL => "pSL",
            SetName::PUn1 => "pU_n1",
            SetName::PUn2 => "pU_n2",
            SetName::PUn3 => "pU_n3",
            SetName::PrecGL => "prec_GL",
            SetName::PrecSL => "prec_SL",
            SetName::PrecU => "prec_U",
            SetName::ThmGL => "thm_GL",
            SetName::ThmSL => "thm_SL",
            SetName::ThmUU => "thm_UU",
        }
    }

    /// The group whose invariant field the set generates.
    pub fn family(&self) -> Family {
        match self {
            SetName::PGL | SetName::PrecGL | SetName::ThmGL => Family::GL,
            SetName::PSL | SetName::PrecSL | SetName::ThmSL => Family::SL,
            _ => Family::U,
        }
    }

    /// The main-theorem set for a family.
    pub fn theorem_for(f: Family) -> SetName {
        match f {
            Family::GL => SetName::ThmGL,
            Family::SL => SetName::ThmSL,
            Family::U => SetName::ThmUU,
        }
    }

    /// The large set obtained from the Galois argument, for a family.
    pub fn big_for(f: Family) -> SetName {
        match f {
            Family::GL => SetName::PrecGL,
            Family::SL => SetName::PrecSL,
            Family::U => SetName::PrecU,
        }
    }
}

impl fmt::Display for SetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SetName::ALL
            .into_iter()
            .find(|n| n.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// An ordered, labelled list of invariants.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub name: SetName,
    pub members: Vec<(Label, MPoly)>,
}

impl GeneratorSet {
    pub fn labels(&self) -> Vec<Label> {
        self.members.iter().map(|(l, _)| *l).collect()
    }

    pub fn polys(&self) -> Vec<MPoly> {
        self.members.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn incompatible(name: SetName, why: &str) -> Error {
    Error::InvalidParameter(format!("set {name} {why}"))
}

/// The labels of a named set, in the order the statements list them.
pub fn set_labels(name: SetName, n: usize, m: usize, d: usize) -> Result<Vec<Label>> {
    let ni = n as i64;
    let u = |j, i| Label::U { j, i };
    let v = |k, i| Label::V { k, i };
    let single = matches!(name, SetName::PGL | SetName::PSL | SetName::PUn1 | SetName::PUn2 | SetName::PUn3);
    if single && (m < 1 || d < 1) {
        return Err(incompatible(name, "needs at least one vector and one covector copy"));
    }
    let mut out = Vec::new();
    match name {
        SetName::PGL | SetName::PSL => {
            out.push(if name == SetName::PGL { Label::C { j: 1, i: 0 } } else { Label::D { j: 1 } });
            out.extend((1 - ni..=ni - 1).map(|i| u(1, i)));
        }
        SetName::PUn1 => {
            if n != 1 {
                return Err(incompatible(name, "requires n = 1"));
            }
            out.extend([Label::F { j: 1, i: 1 }, Label::FStar { k: 1, i: 1 }]);
        }
        SetName::PUn2 => {
            if n != 2 {
                return Err(incompatible(name, "requires n = 2"));
            }
            out.extend([
                Label::F { j: 1, i: 1 },
                Label::FStar { k: 1, i: 1 },
                Label::FStar { k: 1, i: 2 },
                u(1, 0),
            ]);
        }
        SetName::PUn3 => {
            if n < 3 {
                return Err(incompatible(name, "requires n >= 3"));
            }
            out.extend([Label::F { j: 1, i: 1 }, Label::F { j: 1, i: 2 }]);
            out.extend((1..=n - 2).map(|s| Label::FStar { k: 1, i: s }));
            out.extend((2 - ni..=1).rev().map(|i| u(1, i)));
        }
        SetName::PrecGL | SetName::PrecSL | SetName::PrecU => {
            for j in 1..=m {
                match name {
                    SetName::PrecGL => out.extend((0..n).map(|i| Label::C { j, i })),
                    SetName::PrecSL => {
                        out.push(Label::D { j });
                        out.extend((1..n).map(|i| Label::C { j, i }));
                    }
                    _ => out.extend((1..=n).map(|i| Label::F { j, i })),
                }
                out.push(u(j, 0));
            }
            for k in 1..=d {
                match name {
                    SetName::PrecGL => out.extend((0..n).map(|i| Label::CStar { k, i })),
                    SetName::PrecSL => {
                        out.push(Label::DStar { k });
                        out.extend((1..n).map(|i| Label::CStar { k, i }));
                    }
                    _ => out.extend((1..=n).map(|i| Label::FStar { k, i })),
                }
            }
            out.extend((2..=d).map(|k| v(k, 0)));
        }
        SetName::ThmGL | SetName::ThmSL => {
            out.push(if name == SetName::ThmGL { Label::C { j: 1, i: 0 } } else { Label::D { j: 1 } });
            out.extend((1 - ni..=ni - 1).map(|i| u(1, i)));
            for j in 2..=m {
                out.extend((1 - ni..=0).map(|i| u(j, i)));
            }
            for k in 2..=d {
                out.extend((0..ni).map(|i| v(k, i)));
            }
        }
        SetName::ThmUU => match n {
            1 => {
                out.extend((1..=m).map(|j| Label::F { j, i: 1 }));
                out.extend((1..=d).map(|k| Label::FStar { k, i: 1 }));
            }
            2 => {
                out.extend([
                    Label::F { j: 1, i: 1 },
                    Label::FStar { k: 1, i: 1 },
                    Label::FStar { k: 1, i: 2 },
                    u(1, 0),
                ]);
                for j in 2..=m {
                    out.extend([Label::F { j, i: 1 }, u(j, 0)]);
                }
                for k in 2..=d {
                    out.extend([Label::FStar { k, i: 1 }, v(k, 0)]);
                }
            }
            _ => {
                out.extend([Label::F { j: 1, i: 1 }, Label::F { j: 1, i: 2 }]);
                out.extend((1..=n - 2).map(|s| Label::FStar { k: 1, i: s }));
                out.extend((2 - ni..=1).rev().map(|i| u(1, i)));
                for j in 2..=m {
                    out.push(Label::F { j, i: 1 });
                    out.extend((2 - ni..=0).map(|i| u(j, i)));
                }
                for k in 2..=d {
                    out.push(Label::FStar { k, i: 1 });
                    out.extend((0..=ni - 2).map(|i| v(k, i)));
                }
            }
        },
    }
    Ok(out)
}
