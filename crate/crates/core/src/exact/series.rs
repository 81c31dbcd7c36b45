//! Power series truncated modulo `t^{N+1}`.

use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    ring: Ring,
    order: usize,
    c: Vec<Elem>,
}

impl TruncatedSeries {
    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn new(ring: &Ring, order: usize, mut c: Vec<Elem>) -> Self {
        c.resize(order + 1, ring.zero());
        TruncatedSeries { ring: ring.clone(), order, c }
    }

    pub fn from_i64s(ring: &Ring, order: usize, c: &[i64]) -> Self {
        Self::new(ring, order, c.iter().map(|&v| ring.from_i64(v)).collect())
    }

    pub fn one(ring: &Ring, order: usize) -> Self {
        Self::new(ring, order, vec![ring.one()])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &Elem {
        &self.c[k]
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.c
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), o.ring.to_string()));
        }
        if self.order != o.order {
            return Err(Error::Shape(format!("truncation orders {} and {}", self.order, o.order)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let r = &self.ring;
        Ok(Self::new(r, self.order, self.c.iter().zip(&o.c).map(|(a, b)| r.add(a, b)).collect()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let r = &self.ring;
        Ok(Self::new(r, self.order, self.c.iter().zip(&o.c).map(|(a, b)| r.sub(a, b)).collect()))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::new(&self.ring, self.order, mul_trunc(&self.ring, &self.c, &o.c, self.order)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ring, self.order);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).expect("same shape");
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        let r = &self.ring;
        let inv0 = r.inv(&self.c[0]).ok_or_else(|| Error::NotUnit(r.fmt_elem(&self.c[0])))?;
        let mut out = vec![r.zero(); self.order + 1];
        out[0] = inv0.clone();
        for k in 1..=self.order {
            let mut acc = r.zero();
            for j in 1..=k {
                if !r.is_zero(&self.c[j]) {
                    acc = r.add(&acc, &r.mul(&self.c[j], &out[k - j]));
                }
            }
            out[k] = r.neg(&r.mul(&acc, &inv0));
        }
        Ok(Self::new(r, self.order, out))
    }

    /// `s(t^k)`, still truncated at the same order.
    pub fn substitute_power(&self, k: usize) -> Self {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.order + 1];
        for (i, c) in self.c.iter().enumerate() {
            if i * k <= self.order {
                out[i * k] = c.clone();
            }
        }
        Self::new(r, self.order, out)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(&self.ring, order, self.c[..=order.min(self.order)].to_vec())
    }

    pub fn display(&self) -> String {
        let r = &self.ring;
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !r.is_zero(c))
            .map(|(i, c)| match i {
                0 => r.fmt_elem(c),
                1 => format!("({})*t", r.fmt_elem(c)),
                _ => format!("({})*t^{}", r.fmt_elem(c), i),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Product of two coefficient lists modulo `t^{order+1}`.
pub(crate) fn mul_trunc(r: &Ring, a: &[Elem], b: &[Elem], order: usize) -> Vec<Elem> {
    let mut out = vec![r.zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !r.is_zero(y) {
                out[i + j] = r.add(&out[i + j], &r.mul(x, y));
            }
        }
    }
    out
}

/// Inverse of a truncated series.
pub fn series_invert(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.invert()
}
