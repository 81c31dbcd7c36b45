//! p-typical Witt vectors `W_n`, the quotient of `Ŵ_{p^{n-1}} ⊗ ℤ_(p)` by the
//! images of the idempotents `ℓ^{-1} V_ℓ F_ℓ`, `ℓ ≠ p` prime.
//!
//! In product coordinates `u = ∏_k (1 - x_k t^k)` a summand `V_k[x]` with a
//! prime `ℓ ≠ p` dividing `k` is fixed by `ℓ^{-1} V_ℓ F_ℓ`, and the image of
//! that idempotent consists of such summands. So the class of `u` is given by
//! the coordinates `x_1, x_p, …, x_{p^{n-1}}`; the unit and degree components
//! of `Ŵ` are killed as well. Operations lift to `∏_j (1 - x_j t^{p^j})`,
//! act on big Witt vectors and project back.

use serde_json::{json, Value};

use super::big::BigWittVector;
use super::hat::HatWittVector;
use crate::exact::{parse_ring, Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PTypicalWitt {
    p: u64,
    ring: Ring,
    /// `x_0..x_{n-1}`.
    comps: Vec<Elem>,
}

fn big_len(p: u64, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        p.pow(n as u32 - 1) as usize
    }
}

impl PTypicalWitt {
    pub fn new(p: u64, ring: &Ring, comps: Vec<Elem>) -> Result<Self> {
        if !crate::exact::arith::is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if let Some(bad) = comps.iter().find(|c| !ring.contains(c)) {
            return Err(Error::Shape(format!("{bad:?} is not an element of {ring}")));
        }
        Ok(PTypicalWitt { p, ring: ring.clone(), comps })
    }

    pub fn zero(p: u64, ring: &Ring, n: usize) -> Self {
        PTypicalWitt { p, ring: ring.clone(), comps: vec![ring.zero(); n] }
    }

    pub fn teichmuller(p: u64, ring: &Ring, a: &Elem, n: usize) -> Self {
        let mut comps = vec![ring.zero(); n];
        if n > 0 {
            comps[0] = a.clone();
        }
        PTypicalWitt { p, ring: ring.clone(), comps }
    }

    /// The unit `[1]`.
    pub fn one(p: u64, ring: &Ring, n: usize) -> Self {
        Self::teichmuller(p, ring, &ring.one(), n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn level(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Elem] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| self.ring.is_zero(c))
    }

    /// Representative `∏_j (1 - x_j t^{p^j})` in `𝕎_{p^{n-1}}`.
    pub fn lift(&self) -> BigWittVector {
        self.lift_to(big_len(self.p, self.level()))
    }

    fn lift_to(&self, len: usize) -> BigWittVector {
        let r = &self.ring;
        let mut xs = vec![r.zero(); len];
        let mut k = 1usize;
        for c in &self.comps {
            if k > len {
                break;
            }
            xs[k - 1] = c.clone();
            k *= self.p as usize;
        }
        BigWittVector::from_product_coords(r, &xs, len)
    }

    /// Class of a big Witt vector of length `p^{n-1}` in `W_n`.
    pub fn project(p: u64, u: &BigWittVector, n: usize) -> Result<Self> {
        let need = big_len(p, n);
        if u.len() != need {
            return Err(Error::Shape(format!("W_{n} for p = {p} needs length {need}, got {}", u.len())));
        }
        let xs = u.product_coords();
        let comps = (0..n).map(|j| xs[p.pow(j as u32) as usize - 1].clone()).collect();
        Self::new(p, u.ring(), comps)
    }

    /// Class of an element of `Ŵ`; unit and degree do not contribute.
    pub fn project_hat(p: u64, u: &HatWittVector, n: usize) -> Result<Self> {
        Self::project(p, &u.witt, n)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), o.ring.to_string()));
        }
        if self.p != o.p || self.level() != o.level() {
            return Err(Error::Shape(format!("W_{} (p={}) vs W_{} (p={})", self.level(), self.p, o.level(), o.p)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::project(self.p, &self.lift().add(&o.lift())?, self.level())
    }

    pub fn neg(&self) -> Self {
        Self::project(self.p, &self.lift().neg(), self.level()).expect("same shape")
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::project(self.p, &self.lift().mul_int(k), self.level()).expect("same shape")
    }

    pub fn star(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::project(self.p, &self.lift().star(&o.lift())?, self.level())
    }

    /// `F: W_{n+1} → W_n`.
    pub fn frobenius(&self) -> Result<Self> {
        let n = self.level().checked_sub(1).ok_or_else(|| Error::Shape("F on W_0".into()))?;
        let p = self.p as usize;
        let f = self.lift().frobenius_truncating(p, big_len(self.p, n))?;
        Self::project(self.p, &f, n)
    }

    /// `V: W_n → W_{n+1}`.
    pub fn verschiebung(&self) -> Result<Self> {
        let n = self.level();
        let p = self.p as usize;
        if n == 0 {
            return Ok(Self::zero(self.p, &self.ring, 1));
        }
        Self::project(self.p, &self.lift().verschiebung(p)?, n + 1)
    }

    /// Restriction `W_{n} → W_{m}`, `m ≤ n`.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        if m > self.level() {
            return Err(Error::Shape(format!("cannot restrict W_{} to W_{m}", self.level())));
        }
        Ok(PTypicalWitt { p: self.p, ring: self.ring.clone(), comps: self.comps[..m].to_vec() })
    }

    /// Ghost components `w_i = g_{p^i}` of the lift.
    pub fn ghost(&self) -> Vec<Elem> {
        let g = self.lift().ghost();
        (0..self.level()).map(|i| g[self.p.pow(i as u32) as usize - 1].clone()).collect()
    }

    pub fn map(&self, target: &Ring, h: impl Fn(&Elem) -> Elem) -> Self {
        PTypicalWitt { p: self.p, ring: target.clone(), comps: self.comps.iter().map(h).collect() }
    }

    pub fn display(&self) -> String {
        format!("({})", self.comps.iter().map(|c| self.ring.fmt_elem(c)).collect::<Vec<_>>().join(", "))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.to_string(),
            "p": self.p,
            "n": self.level(),
            "components": self.comps.iter().map(|c| self.ring.fmt_elem(c)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = parse_ring(v["ring"].as_str().ok_or_else(|| Error::Parse("missing ring".into()))?)?;
        let p = v["p"].as_u64().ok_or_else(|| Error::Parse("missing p".into()))?;
        let comps = v["components"].as_array().ok_or_else(|| Error::Parse("missing components".into()))?;
        let comps: Result<Vec<Elem>> = comps.iter().map(|c| ring.parse_elem(c.as_str().unwrap_or_default())).collect();
        Self::new(p, &ring, comps?)
    }
}

/// `ℓ^{-1} V_ℓ F_ℓ (u)`: the unique `w` with `ℓ·w = V_ℓ F_ℓ(u)`.
pub fn idempotent_apply(l: u64, u: &BigWittVector) -> Result<BigWittVector> {
    let r = u.ring();
    let n = u.len();
    if r.div_int(&r.one(), l).is_none() {
        return Err(Error::Division(l, r.to_string()));
    }
    let target = u.vf_descend(l as usize, n)?.series();
    // solve w^l = target coefficientwise: [t^k] w^l = l·w_k + (terms in w_1..w_{k-1})
    let mut w = vec![r.one()];
    w.resize(n + 1, r.zero());
    for k in 1..=n {
        let partial = crate::exact::series::TruncatedSeries::new(r, k, w[..=k].to_vec()).pow(l);
        let rest = partial.coeff(k).clone();
        w[k] = r.div_int(&r.sub(&target[k], &rest), l).ok_or_else(|| Error::Division(l, r.to_string()))?;
    }
    BigWittVector::from_series(r, &w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_ghosts() {
        let q = Ring::Q;
        let a = q.from_i64(2);
        let t = PTypicalWitt::teichmuller(3, &q, &a, 2);
        assert_eq!(t.ghost(), vec![q.from_i64(2), q.from_i64(8)]);
        let big = BigWittVector::teichmuller(&q, &a, 3);
        assert_eq!(PTypicalWitt::project(3, &big, 2).unwrap(), t);
        assert!(PTypicalWitt::project(3, &BigWittVector::identity(&q, 3), 2).unwrap().is_zero());
    }

    #[test]
    fn idempotent_examples() {
        let q = Ring::Q;
        let a = q.from_i64(3);
        let e = idempotent_apply(2, &BigWittVector::teichmuller(&q, &a, 4)).unwrap();
        assert_eq!(e.ghost(), vec![q.zero(), q.from_i64(9), q.zero(), q.from_i64(81)]);
        assert_eq!(idempotent_apply(2, &e).unwrap(), e);
        assert!(idempotent_apply(2, &BigWittVector::identity(&q, 4)).unwrap().is_identity());
        assert!(idempotent_apply(3, &BigWittVector::identity(&Ring::Zmod(9), 2)).is_err());
    }

    #[test]
    fn fv_is_p() {
        let f3 = Ring::Fp(3);
        let x = PTypicalWitt::new(3, &f3, vec![f3.from_i64(2), f3.from_i64(1)]).unwrap();
        assert_eq!(x.verschiebung().unwrap().frobenius().unwrap(), x.mul_int(3));
    }
}
