//! Sparse multivariate polynomials over GF(q) in the variables
//! `x[j,i]` (vector copies) and `y[k,i]` (covector copies).

mod endo;
mod parse;
mod rat;

pub use endo::{frobenius_endo, involution_endo, FrobeniusKind, RingEndo};
pub use rat::{rat_eq, RatExpr};

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::Matrix;

/// The ambient variable set: `n` coordinates, `m` vector copies, `d` covector copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub n: usize,
    pub m: usize,
    pub d: usize,
}

impl Space {
    pub fn new(n: usize, m: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(Self { n, m, d })
    }

    pub fn nvars(&self) -> usize {
        (self.m + self.d) * self.n
    }

    pub fn index(&self, v: VarId) -> usize {
        match v.block {
            Block::X => (v.copy - 1) * self.n + v.coord - 1,
            Block::Y => (self.m + v.copy - 1) * self.n + v.coord - 1,
        }
    }

    pub fn var(&self, idx: usize) -> VarId {
        let (blk, coord) = (idx / self.n, idx % self.n + 1);
        if blk < self.m {
            VarId { block: Block::X, copy: blk + 1, coord }
        } else {
            VarId { block: Block::Y, copy: blk - self.m + 1, coord }
        }
    }

    pub fn contains(&self, v: VarId) -> bool {
        let copies = match v.block {
            Block::X => self.m,
            Block::Y => self.d,
        };
        (1..=copies).contains(&v.copy) && (1..=self.n).contains(&v.coord)
    }

    pub fn check(&self, v: VarId) -> Result<VarId> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(Error::InvalidParameter(format!("{v} is not a variable of {self:?}")))
        }
    }

    /// Number of variable blocks (vector copies first, then covector copies).
    pub fn nblocks(&self) -> usize {
        self.m + self.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
}

/// A polynomial variable: `x[copy,coord]` or `y[copy,coord]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub block: Block,
    pub copy: usize,
    pub coord: usize,
}

impl VarId {
    pub fn x(copy: usize, coord: usize) -> Self {
        Self { block: Block::X, copy, coord }
    }

    pub fn y(copy: usize, coord: usize) -> Self {
        Self { block: Block::Y, copy, coord }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.block {
            Block::X => 'x',
            Block::Y => 'y',
        };
        write!(f, "{b}[{},{}]", self.copy, self.coord)
    }
}

/// The polynomial ring GF(q)[x, y] over a given [`Space`].
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    pub field: Arc<FieldCtx>,
    pub space: Space,
}

impl Ring {
    pub fn new(field: Arc<FieldCtx>, space: Space) -> Arc<Self> {
        Arc::new(Self { field, space })
    }
}

/// Dense exponent vector indexed by [`Space::index`].
pub type Mono = SmallVec<[u32; 12]>;

/// A sparse polynomial. Terms are kept sorted in canonical order (descending
/// lexicographic on exponent vectors, variables ordered x-blocks then
/// y-blocks) and no stored coefficient is zero.
#[derive(Clone)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: Vec<(Mono, u32)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl Eq for MPoly {}

impl std::hash::Hash for MPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn add_exps(a: &Mono, b: &Mono) -> Mono {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

/// Accumulates terms, dropping zero sums.
pub(crate) struct TermAcc<'a> {
    field: &'a FieldCtx,
    map: FxHashMap<Mono, u32>,
}

impl<'a> TermAcc<'a> {
    pub(crate) fn new(field: &'a FieldCtx) -> Self {
        Self { field, map: FxHashMap::default() }
    }

    #[inline]
    pub(crate) fn push(&mut self, mono: Mono, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        self.map.entry(mono).and_modify(|v| *v = f.add(*v, c)).or_insert(c);
    }

    pub(crate) fn finish(self, ring: &Arc<Ring>) -> MPoly {
        let terms = self.map.into_iter().filter(|(_, c)| *c != 0).collect();
        MPoly::from_unsorted(ring.clone(), terms)
    }
}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: u32) -> Self {
        let mono: Mono = SmallVec::from_elem(0, ring.space.nvars());
        Self::from_unsorted(ring.clone(), vec![(mono, c)])
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_int(n))
    }

    pub fn var(ring: &Arc<Ring>, v: VarId) -> Self {
        Self::var_pow(ring, v, 1)
    }

    pub fn var_pow(ring: &Arc<Ring>, v: VarId, e: u32) -> Self {
        assert!(ring.space.contains(v), "{v} not in {:?}", ring.space);
        let mut mono: Mono = SmallVec::from_elem(0, ring.space.nvars());
        mono[ring.space.index(v)] = e;
        Self { ring: ring.clone(), terms: vec![(mono, ring.field.one())] }
    }

    /// Builds a polynomial from arbitrary terms; duplicate monomials are summed.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Mono, u32)>) -> Self {
        let mut acc = TermAcc::new(&ring.field);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.space.nvars());
            acc.push(m, c);
        }
        acc.finish(ring)
    }

    fn from_unsorted(ring: Arc<Ring>, mut terms: Vec<(Mono, u32)>) -> Self {
        terms.retain(|(_, c)| *c != 0);
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self { ring, terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ring.field
    }

    pub fn space(&self) -> Space {
        self.ring.space
    }

    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].1 == self.field().one()
            && self.terms[0].0.iter().all(|&e| e == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> u32 {
        self.terms
            .last()
            .filter(|(m, _)| m.iter().all(|&e| e == 0))
            .map_or(0, |(_, c)| *c)
    }

    /// Leading coefficient in canonical order, zero for the zero polynomial.
    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.iter().sum()).max()
    }

    /// Degree in each variable block (x copies then y copies) if the
    /// polynomial is homogeneous in every block.
    pub fn block_degrees(&self) -> Option<Vec<u32>> {
        let n = self.space().n;
        let degs = |m: &Mono| -> Vec<u32> { m.chunks(n).map(|c| c.iter().sum()).collect() };
        let first = degs(&self.terms.first()?.0);
        self.terms.iter().all(|(m, _)| degs(m) == first).then_some(first)
    }

    /// The variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<VarId> {
        let nv = self.space().nvars();
        (0..nv)
            .filter(|&i| self.terms.iter().any(|(m, _)| m[i] > 0))
            .map(|i| self.space().var(i))
            .collect()
    }

    fn same_ring(&self, other: &MPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        let f = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let oc = |c: u32| if negate { f.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match b.0.cmp(&a.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b.0.clone(), oc(b.1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a.1, oc(b.1));
                    if c != 0 {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), oc(*c))));
        MPoly { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let f = self.field();
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        let mut acc = TermAcc::new(f);
        acc.map.reserve(self.terms.len() * other.terms.len() / 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push(add_exps(ma, mb), f.mul(*ca, *cb));
            }
        }
        acc.finish(&self.ring)
    }

    /// Multiplies by a single term `c * mono`.
    pub fn mul_term(&self, mono: &Mono, c: u32) -> MPoly {
        let f = self.field();
        if c == 0 {
            return MPoly::zero(&self.ring);
        }
        // adding a fixed exponent vector preserves the lex order
        let terms = self.terms.iter().map(|(m, cm)| (add_exps(m, mono), f.mul(*cm, c))).collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: u32) -> MPoly {
        let f = self.field();
        if c == 0 {
            return MPoly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, cm)| (m.clone(), f.mul(*cm, c))).collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    /// `f^(p^k)`, computed termwise.
    pub fn frobenius_pow(&self, k: u32) -> MPoly {
        let f = self.field();
        let pk = (f.p() as u64).pow(k);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let m: Mono = m
                    .iter()
                    .map(|&e| u32::try_from(e as u64 * pk).expect("exponent overflow"))
                    .collect();
                (m, f.pow(*c, pk))
            })
            .collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    /// `f^k`, splitting `k` into base-`p` digits so that each digit is a
    /// Frobenius twist followed by a small power.
    pub fn pow(&self, k: u64) -> MPoly {
        let p = self.field().p() as u64;
        let mut acc = MPoly::one(&self.ring);
        let mut rest = k;
        let mut level = 0;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let tw = self.frobenius_pow(level);
                let mut part = tw.clone();
                for _ in 1..digit {
                    part = part.mul_impl(&tw);
                }
                acc = acc.mul_impl(&part);
            }
            rest /= p;
            level += 1;
        }
        acc
    }

    /// `f^(q^k)` for the field size q.
    pub fn q_pow(&self, k: u32) -> MPoly {
        self.frobenius_pow(k * self.field().e())
    }

    /// Formal partial derivative; `d/dv v^t = t v^(t-1)` with t reduced mod p.
    pub fn derivative(&self, v: VarId) -> MPoly {
        let idx = self.space().index(v);
        let f = self.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m[idx];
            if e == 0 {
                continue;
            }
            let t = f.from_int((e % f.p()) as i64);
            let c2 = f.mul(*c, t);
            if c2 == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[idx] -= 1;
            terms.push((m2, c2));
        }
        MPoly::from_unsorted(self.ring.clone(), terms)
    }

    /// Exact evaluation at a point given as one code per variable.
    pub fn eval_codes(&self, point: &[u32]) -> u32 {
        let f = self.field();
        self.terms.iter().fold(0, |acc, (m, c)| {
            let t = m
                .iter()
                .zip(point)
                .fold(*c, |t, (&e, &x)| if e == 0 { t } else { f.mul(t, f.pow(x, e as u64)) });
            f.add(acc, t)
        })
    }

    /// The substitution `x -> image`, given as one image per variable index.
    pub(crate) fn substitute(&self, images: &[Option<&MPoly>]) -> Result<MPoly> {
        let nv = self.space().nvars();
        let target = images
            .iter()
            .flatten()
            .next()
            .map_or_else(|| self.ring.clone(), |p| p.ring.clone());
        let f = &target.field;
        // variables mapped to themselves need no expansion
        let identity: Vec<bool> = (0..nv)
            .map(|i| {
                images[i].is_some_and(|img| {
                    img.ring == self.ring
                        && img.terms.len() == 1
                        && img.terms[0].1 == f.one()
                        && img.terms[0].0.iter().enumerate().all(|(j, &e)| e == u32::from(i == j))
                })
            })
            .collect();
        for (i, img) in images.iter().enumerate() {
            if img.is_none() && self.terms.iter().any(|(m, _)| m[i] > 0) {
                return Err(Error::MissingImage(self.space().var(i).to_string()));
            }
        }
        let mut power_cache: FxHashMap<(usize, u32), MPoly> = FxHashMap::default();
        let mut moving_cache: FxHashMap<Mono, MPoly> = FxHashMap::default();
        let mut acc = TermAcc::new(f);
        let tn = target.space.nvars();
        for (m, c) in &self.terms {
            let mut fixed: Mono = SmallVec::from_elem(0, tn);
            let mut moving: Mono = SmallVec::from_elem(0, nv);
            for i in 0..nv {
                if m[i] == 0 {
                    continue;
                }
                if identity[i] {
                    fixed[i] = m[i];
                } else {
                    moving[i] = m[i];
                }
            }
            if !moving_cache.contains_key(&moving) {
                let mut prod = MPoly::one(&target);
                for (i, &e) in moving.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let pw = power_cache
                        .entry((i, e))
                        .or_insert_with(|| images[i].unwrap().pow(e as u64));
                    prod = prod.mul_impl(pw);
                }
                moving_cache.insert(moving.clone(), prod);
            }
            for (mm, cm) in &moving_cache[&moving].terms {
                acc.push(add_exps(mm, &fixed), f.mul(*c, *cm));
            }
        }
        Ok(acc.finish(&target))
    }

    /// Re-embeds the polynomial into a ring over a larger (or equal) space,
    /// keeping variable names.
    pub fn embed(&self, ring: &Arc<Ring>) -> Result<MPoly> {
        if ring.field != self.ring.field {
            return Err(Error::ContextMismatch);
        }
        let src = self.space();
        let nv = ring.space.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m2: Mono = SmallVec::from_elem(0, nv);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let v = ring.space.check(src.var(i))?;
                    m2[ring.space.index(v)] = e;
                }
            }
            terms.push((m2, *c));
        }
        Ok(MPoly::from_unsorted(ring.clone(), terms))
    }

    /// Canonical text form, e.g. `x[1,1]^2*y[1,2] + 2*y[2,1]`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<MPoly> {
        parse::parse_poly(ring, s)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return out.write_str("0");
        }
        let f = self.field();
        let sp = self.space();
        for (t, (m, c)) in self.terms.iter().enumerate() {
            if t > 0 {
                out.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if *c != f.one() || m.iter().all(|&e| e == 0) {
                factors.push(f.format(*c));
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(sp.var(i).to_string()),
                    _ => factors.push(format!("{}^{e}", sp.var(i))),
                }
            }
            out.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let f = self.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect();
        MPoly { ring: self.ring.clone(), terms }
    }
}

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Operations accepted by [`mp_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Pow(u64),
}

/// Checked polynomial arithmetic; `b` is ignored for `Pow`.
pub fn mp_arith(a: &MPoly, b: &MPoly, op: PolyOp) -> Result<MPoly> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
        PolyOp::Pow(k) => {
            a.same_ring(b)?;
            Ok(a.pow(k))
        }
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(rows: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    let ring = rows[0][0].ring().clone();
    for r in rows.iter().flatten() {
        r.same_ring(&rows[0][0])?;
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor(rows, 0, &cols, &ring))
}

fn cofactor(rows: &[Vec<MPoly>], row: usize, cols: &[usize], ring: &Arc<Ring>) -> MPoly {
    if cols.len() == 1 {
        return rows[row][cols[0]].clone();
    }
    let mut acc = MPoly::zero(ring);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &cofactor(rows, row + 1, &rest, ring);
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Evaluates at a point given as `VarId -> element code`.
pub fn evaluate(f: &MPoly, point: &std::collections::HashMap<VarId, u32>) -> Result<u32> {
    let sp = f.space();
    let mut codes = vec![0; sp.nvars()];
    for v in f.variables() {
        codes[sp.index(v)] =
            *point.get(&v).ok_or_else(|| Error::MissingCoordinate(v.to_string()))?;
    }
    Ok(f.eval_codes(&codes))
}

/// Rank over GF(q) of the Jacobian matrix of `polys` at `point` (one code
/// per variable index).
pub fn jacobian_rank(polys: &[MPoly], point: &[u32]) -> usize {
    let Some(first) = polys.first() else {
        return 0;
    };
    let sp = first.space();
    let nv = sp.nvars();
    let mut m = Matrix::zeros(polys.len(), nv);
    for (r, p) in polys.iter().enumerate() {
        for c in 0..nv {
            m.set(r, c, p.derivative(sp.var(c)).eval_codes(point));
        }
    }
    m.rank(first.field())
}

#[cfg(test)]
mod tests;
