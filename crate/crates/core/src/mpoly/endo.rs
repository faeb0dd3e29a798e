use std::sync::Arc;

use smallvec::SmallVec;

use super::{MPoly, Mono, Ring, TermAcc, VarId};
use crate::error::{Error, Result};

/// An algebra endomorphism given by the image of each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingEndo {
    ring: Arc<Ring>,
    images: Vec<Option<MPoly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrobeniusKind {
    /// Raises x-variables to the q-th power, fixes y-variables.
    F,
    /// Raises y-variables to the q-th power, fixes x-variables.
    Fstar,
}

impl RingEndo {
    pub fn identity(ring: &Arc<Ring>) -> Self {
        let images = (0..ring.space.nvars())
            .map(|i| Some(MPoly::var(ring, ring.space.var(i))))
            .collect();
        Self { ring: ring.clone(), images }
    }

    /// An endomorphism with no images set; fill in with [`RingEndo::set`].
    pub fn partial(ring: &Arc<Ring>) -> Self {
        Self { ring: ring.clone(), images: vec![None; ring.space.nvars()] }
    }

    pub fn set(&mut self, v: VarId, image: MPoly) -> Result<()> {
        self.ring.space.check(v)?;
        if image.ring() != &self.ring && **image.ring() != *self.ring {
            return Err(Error::ContextMismatch);
        }
        let idx = self.ring.space.index(v);
        self.images[idx] = Some(image);
        Ok(())
    }

    pub fn image(&self, v: VarId) -> Option<&MPoly> {
        self.images.get(self.ring.space.index(v)).and_then(Option::as_ref)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn apply(&self, f: &MPoly) -> Result<MPoly> {
        if **f.ring() != *self.ring {
            return Err(Error::ContextMismatch);
        }
        if let Some(out) = self.apply_monomial(f)? {
            return Ok(out);
        }
        let refs: Vec<Option<&MPoly>> = self.images.iter().map(Option::as_ref).collect();
        f.substitute(&refs)
    }

    /// Fast path when every image is a single term.
    fn apply_monomial(&self, f: &MPoly) -> Result<Option<MPoly>> {
        if !self.images.iter().all(|i| i.as_ref().map_or(true, |p| p.len() == 1)) {
            return Ok(None);
        }
        let field = &self.ring.field;
        let nv = self.ring.space.nvars();
        let mut acc = TermAcc::new(field);
        for (m, c) in f.terms() {
            let mut out: Mono = SmallVec::from_elem(0, nv);
            let mut coeff = *c;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = self.images[i]
                    .as_ref()
                    .ok_or_else(|| Error::MissingImage(self.ring.space.var(i).to_string()))?;
                let (im, ic) = &img.terms()[0];
                coeff = field.mul(coeff, field.pow(*ic, e as u64));
                for (o, &x) in out.iter_mut().zip(im) {
                    let add = x.checked_mul(e).ok_or(Error::ExponentOverflow)?;
                    *o = o.checked_add(add).ok_or(Error::ExponentOverflow)?;
                }
            }
            acc.push(out, coeff);
        }
        Ok(Some(acc.finish(&self.ring)))
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &RingEndo) -> Result<RingEndo> {
        let images = other
            .images
            .iter()
            .map(|img| img.as_ref().map(|p| self.apply(p)).transpose())
            .collect::<Result<_>>()?;
        Ok(RingEndo { ring: self.ring.clone(), images })
    }
}

/// `F^power` or `F*^power`; power 0 is the identity.
pub fn frobenius_endo(ring: &Arc<Ring>, which: FrobeniusKind, power: u32) -> RingEndo {
    let sp = ring.space;
    let qi = ring.field.q().checked_pow(power).expect("Frobenius exponent overflow");
    let images = (0..sp.nvars())
        .map(|i| {
            let v = sp.var(i);
            let moved = matches!(
                (which, v.block),
                (FrobeniusKind::F, super::Block::X) | (FrobeniusKind::Fstar, super::Block::Y)
            );
            Some(MPoly::var_pow(ring, v, if moved { qi } else { 1 }))
        })
        .collect();
    RingEndo { ring: ring.clone(), images }
}

/// The involution swapping `x[j,i]` with `y[k,n+1-i]`; other variables are fixed.
pub fn involution_endo(ring: &Arc<Ring>, j: usize, k: usize) -> Result<RingEndo> {
    let sp = ring.space;
    if !(1..=sp.m).contains(&j) || !(1..=sp.d).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "involution copies ({j},{k}) out of range for m={}, d={}",
            sp.m, sp.d
        )));
    }
    let mut e = RingEndo::identity(ring);
    let n = sp.n;
    for i in 1..=n {
        e.set(VarId::x(j, i), MPoly::var(ring, VarId::y(k, n + 1 - i)))?;
        e.set(VarId::y(k, i), MPoly::var(ring, VarId::x(j, n + 1 - i)))?;
    }
    Ok(e)
}
