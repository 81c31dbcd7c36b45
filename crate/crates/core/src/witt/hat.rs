//! `Ŵ_n = 𝕎_n ⊕ 𝔾_m ⊕ ℤ` with `[a] = ([a], a, 1)`.
//!
//! * `(α,a,m) ⋆ (α',a',m') = (α⋆α', a^{m'} a'^m, mm')`
//! * `F_s(α,a,m) = (F_s α, a^s, m)`
//! * `V_s(α,a,m) = (V_s α, a, sm)`
//!
//! Cycles realise a sign-twisted Verschiebung instead: the norm of `x^s - a`
//! is `(-1)^{s+1} a`, so [`HatWittVector::verschiebung_motivic`] uses the unit
//! `(-1)^{(s-1)m} a`. Both versions satisfy the same identities and agree for
//! odd `s`.

use serde_json::{json, Value};

use super::big::BigWittVector;
use crate::exact::{parse_ring, Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HatWittVector {
    pub witt: BigWittVector,
    unit: Elem,
    pub degree: i64,
}

/// `a^e` for a unit `a` and any integer `e`.
fn unit_pow(r: &Ring, a: &Elem, e: i64) -> Elem {
    if e >= 0 {
        r.pow(a, e as u64)
    } else {
        r.pow(&r.inv(a).expect("unit"), e.unsigned_abs())
    }
}

impl HatWittVector {
    pub fn new(witt: BigWittVector, unit: Elem, degree: i64) -> Result<Self> {
        let r = witt.ring();
        if !r.contains(&unit) || !r.is_unit(&unit) {
            return Err(Error::NotUnit(if r.contains(&unit) { r.fmt_elem(&unit) } else { format!("{unit:?}") }));
        }
        Ok(HatWittVector { witt, unit, degree })
    }

    /// `[a] = ([a], a, 1)`; `a` must be a unit.
    pub fn teichmuller(ring: &Ring, a: &Elem, n: usize) -> Result<Self> {
        Self::new(BigWittVector::teichmuller(ring, a, n), a.clone(), 1)
    }

    /// The additive identity `(0, 1, 0)`.
    pub fn zero(ring: &Ring, n: usize) -> Self {
        HatWittVector { witt: BigWittVector::identity(ring, n), unit: ring.one(), degree: 0 }
    }

    /// The unit `[1]`.
    pub fn one(ring: &Ring, n: usize) -> Self {
        HatWittVector { witt: BigWittVector::one(ring, n), unit: ring.one(), degree: 1 }
    }

    pub fn ring(&self) -> &Ring {
        self.witt.ring()
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let r = self.ring();
        Ok(HatWittVector { witt: self.witt.add(&o.witt)?, unit: r.mul(&self.unit, &o.unit), degree: self.degree + o.degree })
    }

    pub fn neg(&self) -> Self {
        let r = self.ring();
        HatWittVector { witt: self.witt.neg(), unit: r.inv(&self.unit).expect("unit"), degree: -self.degree }
    }

    pub fn star(&self, o: &Self) -> Result<Self> {
        let r = self.ring();
        let unit = r.mul(&unit_pow(r, &self.unit, o.degree), &unit_pow(r, &o.unit, self.degree));
        Ok(HatWittVector { witt: self.witt.star(&o.witt)?, unit, degree: self.degree * o.degree })
    }

    pub fn frobenius(&self, s: usize) -> Result<Self> {
        let r = self.ring();
        Ok(HatWittVector { witt: self.witt.frobenius(s)?, unit: r.pow(&self.unit, s as u64), degree: self.degree })
    }

    pub fn frobenius_truncating(&self, s: usize, n: usize) -> Result<Self> {
        let r = self.ring();
        Ok(HatWittVector { witt: self.witt.frobenius_truncating(s, n)?, unit: r.pow(&self.unit, s as u64), degree: self.degree })
    }

    pub fn verschiebung(&self, s: usize) -> Result<Self> {
        Ok(HatWittVector { witt: self.witt.verschiebung(s)?, unit: self.unit.clone(), degree: s as i64 * self.degree })
    }

    /// The Verschiebung realised by `div(x^s - a)`: unit `(-1)^{(s-1)m} a`.
    pub fn verschiebung_motivic(&self, s: usize) -> Result<Self> {
        let r = self.ring();
        let flip = (s as i64 - 1) * self.degree % 2 != 0;
        let unit = if flip { r.neg(&self.unit) } else { self.unit.clone() };
        Ok(HatWittVector { witt: self.witt.verschiebung(s)?, unit, degree: s as i64 * self.degree })
    }

    pub fn truncate(&self, m: usize) -> Result<Self> {
        Ok(HatWittVector { witt: self.witt.truncate(m)?, unit: self.unit.clone(), degree: self.degree })
    }

    pub fn display(&self) -> String {
        format!("({}, {}, {})", self.witt.display(), self.ring().fmt_elem(&self.unit), self.degree)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.witt.to_json();
        v["unit"] = json!(self.ring().fmt_elem(&self.unit));
        v["degree"] = json!(self.degree);
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let witt = BigWittVector::from_json(v)?;
        let ring = parse_ring(v["ring"].as_str().unwrap_or_default())?;
        let unit = ring.parse_elem(v["unit"].as_str().ok_or_else(|| Error::Parse("missing unit".into()))?)?;
        let degree = v["degree"].as_i64().ok_or_else(|| Error::Parse("missing degree".into()))?;
        Self::new(witt, unit, degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        let f7 = Ring::Fp(7);
        let a = f7.from_i64(3);
        let b = f7.from_i64(5);
        let ta = HatWittVector::teichmuller(&f7, &a, 3).unwrap();
        let tb = HatWittVector::teichmuller(&f7, &b, 3).unwrap();
        assert_eq!(ta.star(&tb).unwrap(), HatWittVector::teichmuller(&f7, &f7.mul(&a, &b), 3).unwrap());
        let ta4 = HatWittVector::teichmuller(&f7, &a, 4).unwrap();
        assert_eq!(ta4.frobenius(2).unwrap(), HatWittVector::teichmuller(&f7, &f7.mul(&a, &a), 2).unwrap());
        let v3 = HatWittVector::teichmuller(&f7, &a, 1).unwrap().verschiebung(3).unwrap();
        assert_eq!(v3.degree, 3);
        assert_eq!(v3.unit(), &a);
        assert_eq!(v3.witt, BigWittVector::new(&f7, vec![f7.zero(), f7.zero(), f7.neg(&a)]).unwrap());
        assert!(HatWittVector::new(BigWittVector::identity(&f7, 2), f7.zero(), 0).is_err());
    }

    #[test]
    fn motivic_verschiebung_differs_only_in_sign() {
        let f5 = Ring::Fp(5);
        let a = f5.from_i64(2);
        let ta = HatWittVector::teichmuller(&f5, &a, 2).unwrap();
        let v = ta.verschiebung(2).unwrap();
        let vm = ta.verschiebung_motivic(2).unwrap();
        assert_eq!(v.witt, vm.witt);
        assert_eq!(vm.unit(), &f5.neg(&a));
        assert_eq!(ta.verschiebung(3).unwrap(), ta.verschiebung_motivic(3).unwrap());
    }
}
