use std::fmt;

use smallvec::SmallVec;

use super::{MPoly, Mono};
use crate::error::{Error, Result};

/// A quotient of polynomials. Kept with common monomial content removed and
/// a monic denominator, never GCD-reduced.
#[derive(Clone, Debug)]
pub struct RatExpr {
    num: MPoly,
    den: MPoly,
}

impl RatExpr {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.checked_add(&den)?;
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.ring());
        Self { num: p, den }
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        let f = den.field();
        let nv = den.space().nvars();
        let mut content: Mono = SmallVec::from_elem(u32::MAX, nv);
        for (m, _) in num.terms().iter().chain(den.terms()) {
            for (c, &e) in content.iter_mut().zip(m) {
                *c = (*c).min(e);
            }
        }
        let strip = |p: &MPoly| -> MPoly {
            if content.iter().all(|&c| c == 0) {
                return p.clone();
            }
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| (m.iter().zip(&content).map(|(e, k)| e - k).collect(), *c))
                .collect::<Vec<_>>();
            MPoly::from_terms(p.ring(), terms)
        };
        let (num, den) = if num.is_zero() {
            (num, MPoly::one(den.ring()))
        } else {
            (strip(&num), strip(&den))
        };
        let lc = f.inv(den.leading_coeff()).expect("nonzero denominator");
        Self { num: num.scale(lc), den: den.scale(lc) }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn add(&self, o: &RatExpr) -> Result<RatExpr> {
        if self.den == o.den {
            return RatExpr::new(self.num.checked_add(&o.num)?, self.den.clone());
        }
        let num = self.num.checked_mul(&o.den)?.checked_add(&o.num.checked_mul(&self.den)?)?;
        RatExpr::new(num, self.den.checked_mul(&o.den)?)
    }

    pub fn sub(&self, o: &RatExpr) -> Result<RatExpr> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatExpr {
        RatExpr { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatExpr) -> Result<RatExpr> {
        RatExpr::new(self.num.checked_mul(&o.num)?, self.den.checked_mul(&o.den)?)
    }

    pub fn div(&self, o: &RatExpr) -> Result<RatExpr> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatExpr::new(self.num.checked_mul(&o.den)?, self.den.checked_mul(&o.num)?)
    }

    pub fn pow(&self, k: u64) -> RatExpr {
        Self::normalized(self.num.pow(k), self.den.pow(k))
    }

    /// The polynomial this expression equals, if the denominator is constant.
    pub fn as_poly(&self) -> Option<MPoly> {
        (self.den.is_one()).then(|| self.num.clone())
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Equality by cross-multiplication.
pub fn rat_eq(a: &RatExpr, b: &RatExpr) -> Result<bool> {
    if a.den.is_zero() || b.den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.num.checked_mul(&b.den)? == b.num.checked_mul(&a.den)?)
}
