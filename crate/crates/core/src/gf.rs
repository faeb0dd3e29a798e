//! Arithmetic in GF(q), q = p^e, in the polynomial basis.
//!
//! Elements are stored as a `u32` code: the coefficient vector `[c0, c1, ..]`
//! read as a base-`p` number with `c0` the most significant digit. Numeric
//! order on codes is therefore lexicographic order on coefficient vectors, so
//! `0` is the zero element and the element list from [`FieldCtx::elements`]
//! is simply `0..q`. For prime fields the code is the residue itself.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Monic irreducible moduli (coefficients low to high) for the fields
/// constructible without an explicit modulus.
const IRREDUCIBLE_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 0, 1, 1]),
    (2, 4, &[1, 0, 0, 1, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 0, 2, 1]),
    (3, 4, &[1, 0, 1, 1, 1]),
    (5, 2, &[1, 1, 1]),
    (5, 3, &[1, 0, 1, 1]),
    (5, 4, &[1, 0, 1, 1, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[1, 0, 1, 1]),
    (7, 4, &[1, 0, 0, 1, 1]),
];

/// Fields up to this size get full addition and multiplication tables.
const TABLE_LIMIT: u32 = 1024;

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Immutable description of GF(p^e).
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    one: u32,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p, self.e, self.modulus)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds GF(p^e). Without a modulus the built-in table is consulted; a
/// supplied modulus must be monic of degree `e` and irreducible.
pub fn make_field(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Arc<FieldCtx>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
    }
    let modulus: Vec<u32> = match modulus {
        Some(m) => {
            if m.len() != e as usize + 1 || *m.last().unwrap() != 1 || m.iter().any(|&c| c >= p) {
                return Err(Error::BadModulus(format!(
                    "{m:?} is not a monic degree-{e} polynomial over GF({p})"
                )));
            }
            if !is_irreducible(m, p) {
                return Err(Error::BadModulus(format!("{m:?} is reducible over GF({p})")));
            }
            m.to_vec()
        }
        None if e == 1 => vec![0, 1],
        None => IRREDUCIBLE_TABLE
            .iter()
            .find(|(tp, te, _)| *tp == p && *te == e)
            .map(|(_, _, m)| m.to_vec())
            .ok_or(Error::MissingModulus { p, e })?,
    };
    let q = p.checked_pow(e).filter(|q| *q <= 1 << 16).ok_or_else(|| {
        Error::InvalidParameter(format!("GF({p}^{e}) is too large"))
    })?;
    let mut ctx = FieldCtx {
        p,
        e,
        q,
        modulus,
        one: p.pow(e - 1),
        tables: None,
    };
    if e > 1 && q <= TABLE_LIMIT {
        ctx.tables = Some(ctx.build_tables());
    }
    Ok(Arc::new(ctx))
}

/// GF(q) for a prime power `q` using the built-in modulus.
pub fn field_of_order(q: u32) -> Result<Arc<FieldCtx>> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, e, None)
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while a.len() >= b.len() {
        let c = a.last().unwrap() * lead_inv % p;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * bi % p) % p;
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

/// Exhaustive trial division by every monic polynomial of degree up to e/2.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() - 1;
    for deg in 1..=e / 2 {
        let count = (p as usize).pow(deg as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut t = idx;
            for _ in 0..deg {
                g.push((t % p as usize) as u32);
                t /= p as usize;
            }
            g.push(1);
            if poly_rem(f.to_vec(), &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        self.one
    }

    /// Coefficient vector `[c0, .., c_{e-1}]` of a code.
    pub fn coeffs(&self, code: u32) -> Vec<u32> {
        let mut out = vec![0; self.e as usize];
        let mut c = code;
        for slot in out.iter_mut().rev() {
            *slot = c % self.p;
            c /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "{coeffs:?} is not an element of GF({}^{})",
                self.p, self.e
            )));
        }
        Ok(coeffs.iter().fold(0, |acc, &c| acc * self.p + c))
    }

    /// The image of an integer under Z -> GF(q).
    pub fn from_int(&self, n: i64) -> u32 {
        // the prime-subfield element r has coefficient vector [r, 0, ..]
        n.rem_euclid(self.p as i64) as u32 * self.one
    }

    /// All q elements in canonical order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn is_zero(&self, a: u32) -> bool {
        a == 0
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize],
            None if self.e == 1 => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None if self.e == 1 => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            None => {
                let c: Vec<u32> = self.coeffs(a).iter().map(|&x| (self.p - x) % self.p).collect();
                self.from_coeffs(&c).unwrap()
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize],
            None if self.e == 1 => ((a as u64 * b as u64) % self.p as u64) as u32,
            None => self.mul_raw(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a as usize],
            None => self.pow(a, (self.q - 2) as u64),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = self.one;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// a^p
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// A generator of the multiplicative group, the first in canonical order.
    pub fn primitive_element(&self) -> u32 {
        let order = (self.q - 1) as u64;
        let divisors: Vec<u64> = (1..order).filter(|d| order % d == 0).collect();
        self.elements()
            .skip(1)
            .find(|&g| divisors.iter().all(|&d| self.pow(g, d) != self.one))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// The basis `1, X, .., X^{e-1}` of GF(q) over GF(p).
    pub fn prime_basis(&self) -> Vec<u32> {
        (0..self.e)
            .map(|k| {
                let mut c = vec![0; self.e as usize];
                c[k as usize] = 1;
                self.from_coeffs(&c).unwrap()
            })
            .collect()
    }

    /// Textual element format: an integer for prime fields, `[c0,c1,..]` otherwise.
    pub fn format(&self, a: u32) -> String {
        if self.e == 1 {
            a.to_string()
        } else {
            let c: Vec<String> = self.coeffs(a).iter().map(|x| x.to_string()).collect();
            format!("[{}]", c.join(","))
        }
    }

    pub fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let c = inner
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("bad field element {s:?}: {e}")))?;
            self.from_coeffs(&c)
        } else {
            let n: i64 = s
                .parse()
                .map_err(|e| Error::Parse(format!("bad field element {s:?}: {e}")))?;
            Ok(self.from_int(n))
        }
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let c: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&c).unwrap()
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; 2 * self.e as usize - 1];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        while prod.last() == Some(&0) {
            prod.pop();
        }
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(self.e as usize, 0);
        self.from_coeffs(&r).unwrap()
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..self.q {
            for b in a..self.q {
                let s = self.add_raw(a, b);
                let m = self.mul_raw(a, b);
                add[a as usize * q + b as usize] = s;
                add[b as usize * q + a as usize] = s;
                mul[a as usize * q + b as usize] = m;
                mul[b as usize * q + a as usize] = m;
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..self.q {
            for b in 0..self.q {
                if add[a as usize * q + b as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[a as usize * q + b as usize] == self.one {
                    inv[a as usize] = b;
                }
            }
        }
        Tables { add, mul, neg, inv }
    }
}

/// An element together with its field, for callers that want value semantics.
#[derive(Clone)]
pub struct FieldElem {
    ctx: Arc<FieldCtx>,
    code: u32,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.format(self.code))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.format(self.code))
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && *self.ctx == *other.ctx
    }
}

impl Eq for FieldElem {}

/// The operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Neg,
    Inv,
}

impl FieldElem {
    pub fn new(ctx: &Arc<FieldCtx>, code: u32) -> Self {
        assert!(code < ctx.q, "code {code} out of range for GF({})", ctx.q);
        Self { ctx: ctx.clone(), code }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, 0)
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, ctx.one())
    }

    pub fn from_coeffs(ctx: &Arc<FieldCtx>, coeffs: &[u32]) -> Result<Self> {
        Ok(Self::new(ctx, ctx.from_coeffs(coeffs)?))
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.ctx.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

/// Exact arithmetic on field elements; `b` is ignored by unary operations.
pub fn field_arith(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem> {
    if *a.ctx != *b.ctx {
        return Err(Error::ContextMismatch);
    }
    let f = &a.ctx;
    let code = match op {
        FieldOp::Add => f.add(a.code, b.code),
        FieldOp::Sub => f.sub(a.code, b.code),
        FieldOp::Mul => f.mul(a.code, b.code),
        FieldOp::Div => f.div(a.code, b.code)?,
        FieldOp::Pow(k) => f.pow(a.code, k),
        FieldOp::Neg => f.neg(a.code),
        FieldOp::Inv => f.inv(a.code)?,
    };
    Ok(FieldElem::new(f, code))
}

/// Every element of the field in canonical order.
pub fn enumerate_field(ctx: &Arc<FieldCtx>) -> Vec<FieldElem> {
    ctx.elements().map(|c| FieldElem::new(ctx, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Arc<FieldCtx>> {
        [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49]
            .iter()
            .map(|&q| field_of_order(q).unwrap())
            .collect()
    }

    #[test]
    fn table_moduli_are_irreducible() {
        for (p, _, m) in IRREDUCIBLE_TABLE {
            assert!(is_irreducible(m, *p), "{m:?} over GF({p})");
        }
    }

    #[test]
    fn make_field_examples() {
        let f2 = make_field(2, 1, None).unwrap();
        assert_eq!(f2.q(), 2);
        let f4 = make_field(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.q(), 4);
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(f3.q(), 3);
    }

    #[test]
    fn make_field_errors() {
        assert!(matches!(make_field(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(2, 2, Some(&[1, 0, 1])), Err(Error::BadModulus(_))));
        assert!(matches!(make_field(11, 2, None), Err(Error::MissingModulus { .. })));
        assert!(matches!(make_field(2, 5, None), Err(Error::MissingModulus { .. })));
        assert!(field_of_order(6).is_err());
    }

    #[test]
    fn arith_examples() {
        let f3 = make_field(3, 1, None).unwrap();
        let two = FieldElem::new(&f3, 2);
        assert_eq!(field_arith(&two, &two, FieldOp::Mul).unwrap().code(), 1);

        let f4 = make_field(2, 2, Some(&[1, 1, 1])).unwrap();
        let x = FieldElem::from_coeffs(&f4, &[0, 1]).unwrap();
        let xx = field_arith(&x, &x, FieldOp::Mul).unwrap();
        assert_eq!(xx.coeffs(), vec![1, 1]);

        let zero = FieldElem::zero(&f4);
        assert!(matches!(field_arith(&x, &zero, FieldOp::Div), Err(Error::DivisionByZero)));
        assert!(matches!(field_arith(&zero, &zero, FieldOp::Inv), Err(Error::DivisionByZero)));
        assert!(matches!(field_arith(&x, &two, FieldOp::Add), Err(Error::ContextMismatch)));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let q = f.q() as u64;
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.mul(a, 0), 0);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                    assert_eq!(f.pow(a, q - 1), f.one());
                }
                if q <= 27 {
                    for b in f.elements() {
                        let lhs = f.frobenius(f.add(a, b));
                        assert_eq!(lhs, f.add(f.frobenius(a), f.frobenius(b)));
                        assert_eq!(f.mul(a, b), f.mul(b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_direct_arithmetic() {
        let f = field_of_order(9).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_raw(a, b));
                assert_eq!(f.add(a, b), f.add_raw(a, b));
            }
        }
    }

    #[test]
    fn enumeration_is_canonical() {
        let f2 = make_field(2, 1, None).unwrap();
        let e: Vec<u32> = enumerate_field(&f2).iter().map(|x| x.code()).collect();
        assert_eq!(e, vec![0, 1]);
        let f3 = make_field(3, 1, None).unwrap();
        let e: Vec<String> = enumerate_field(&f3).iter().map(|x| x.to_string()).collect();
        assert_eq!(e, vec!["0", "1", "2"]);
        let f4 = field_of_order(4).unwrap();
        let e = enumerate_field(&f4);
        assert_eq!(e.len(), 4);
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(e[i].coeffs(), e[j].coeffs());
            }
        }
        let coeffs: Vec<Vec<u32>> = e.iter().map(|x| x.coeffs()).collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(coeffs, sorted);
        assert_eq!(coeffs[0], vec![0, 0]);
    }

    #[test]
    fn text_format_round_trips() {
        for f in all_fields() {
            for a in f.elements() {
                assert_eq!(f.parse(&f.format(a)).unwrap(), a);
            }
        }
        let f3 = field_of_order(3).unwrap();
        assert_eq!(f3.parse("-1").unwrap(), 2);
    }

    #[test]
    fn primitive_elements() {
        let f3 = field_of_order(3).unwrap();
        assert_eq!(f3.primitive_element(), 2);
        for f in all_fields() {
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..f.q() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, f.q() - 1);
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
