//! Dense univariate polynomials over a runtime ring.
//!
//! Division, gcd and friends need an invertible leading coefficient; over a
//! field every nonzero polynomial qualifies.

use std::fmt;

use super::mpoly::MPoly;
use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

/// `c[0] + c[1]·x + ⋯`, trimmed so the last stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    ring: Ring,
    c: Vec<Elem>,
}

impl UPoly {
    pub fn new(ring: &Ring, mut c: Vec<Elem>) -> Self {
        while c.last().is_some_and(|x| ring.is_zero(x)) {
            c.pop();
        }
        UPoly { ring: ring.clone(), c }
    }

    pub fn from_i64s(ring: &Ring, c: &[i64]) -> Self {
        Self::new(ring, c.iter().map(|&v| ring.from_i64(v)).collect())
    }

    pub fn zero(ring: &Ring) -> Self {
        UPoly { ring: ring.clone(), c: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &Ring, a: Elem) -> Self {
        Self::new(ring, vec![a])
    }

    pub fn x(ring: &Ring) -> Self {
        Self::new(ring, vec![ring.zero(), ring.one()])
    }

    /// `x - a`.
    pub fn linear(ring: &Ring, a: &Elem) -> Self {
        Self::new(ring, vec![ring.neg(a), ring.one()])
    }

    pub fn monomial(ring: &Ring, k: usize, a: Elem) -> Self {
        let mut c = vec![ring.zero(); k + 1];
        c[k] = a;
        Self::new(ring, c)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.c.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Elem {
        self.c.last().cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| self.ring.is_one(x))
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let r = &self.ring;
        let n = self.c.len().max(o.c.len());
        Self::new(r, (0..n).map(|i| r.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn neg(&self) -> UPoly {
        Self::new(&self.ring, self.c.iter().map(|x| self.ring.neg(x)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Elem) -> UPoly {
        Self::new(&self.ring, self.c.iter().map(|x| self.ring.mul(x, k)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        let r = &self.ring;
        if self.is_zero() || o.is_zero() {
            return Self::zero(r);
        }
        let mut out = vec![r.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !r.is_zero(b) {
                    out[i + j] = r.add(&out[i + j], &r.mul(a, b));
                }
            }
        }
        Self::new(r, out)
    }

    pub fn pow(&self, mut e: u64) -> UPoly {
        let mut acc = Self::one(&self.ring);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn eval(&self, a: &Elem) -> Elem {
        let r = &self.ring;
        self.c.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, a), c))
    }

    pub fn deriv(&self) -> UPoly {
        let r = &self.ring;
        Self::new(r, self.c.iter().enumerate().skip(1).map(|(i, c)| r.mul_i64(c, i as i64)).collect())
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        self.c.iter().rev().fold(Self::zero(&self.ring), |acc, c| acc.mul(g).add(&Self::constant(&self.ring, c.clone())))
    }

    /// `self(x^s)`.
    pub fn inflate(&self, s: usize) -> UPoly {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.c.len().saturating_sub(1) * s + 1];
        for (i, c) in self.c.iter().enumerate() {
            out[i * s] = c.clone();
        }
        Self::new(r, out)
    }

    /// `x^d · self(1/x)` with `d = deg self`.
    pub fn reverse(&self) -> UPoly {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(&self.ring, c)
    }

    /// Quotient and remainder; the divisor needs an invertible leading coefficient.
    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let r = &self.ring;
        let dd = d.degree().ok_or_else(|| Error::NotUnit("0".into()))?;
        let inv = r.inv(&d.lc()).ok_or_else(|| Error::NotUnit(r.fmt_elem(&d.lc())))?;
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(r), self.clone()));
        }
        let mut q = vec![r.zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r.mul(&rem[k + dd], &inv);
            if r.is_zero(&top) {
                continue;
            }
            for (i, dc) in d.c.iter().enumerate() {
                rem[k + i] = r.sub(&rem[k + i], &r.mul(&top, dc));
            }
            q[k] = top;
        }
        rem.truncate(dd);
        Ok((Self::new(r, q), Self::new(r, rem)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient, failing when the division leaves a remainder.
    pub fn div_exact(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Precondition("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Result<UPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.ring.inv(&self.lc()).ok_or_else(|| Error::NotUnit(self.ring.fmt_elem(&self.lc())))?;
        Ok(self.scale(&inv))
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, o: &UPoly) -> Result<UPoly> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &UPoly) -> Result<UPoly> {
        let mut acc = Self::one(&self.ring).rem(m)?;
        let mut b = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Squarefree decomposition `[(g_i, i)]` of a monic polynomial over a
    /// field of characteristic 0 (Yun).
    pub fn squarefree_char0(&self) -> Result<Vec<(UPoly, u32)>> {
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic()?;
        let fp = f.deriv();
        let a0 = f.gcd(&fp)?;
        let mut b = f.div_exact(&a0)?;
        let mut c = fp.div_exact(&a0)?;
        let mut d = c.sub(&b.deriv());
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d)?;
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a)?;
            c = d.div_exact(&a)?;
            d = c.sub(&b.deriv());
            i += 1;
        }
        Ok(out)
    }

    /// Embeds into the univariate polynomial ring `ring[var]`.
    pub fn to_mpoly(&self) -> MPoly {
        MPoly::from_terms(&self.ring, self.c.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }

    /// Reads variable `var` of an `nvars`-variable polynomial that involves no other variable.
    pub fn from_mpoly(ring: &Ring, f: &MPoly, var: usize) -> Result<UPoly> {
        let mut c = vec![ring.zero(); f.deg_in(var).map_or(0, |d| d as usize + 1)];
        for (e, v) in f.terms() {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return Err(Error::Shape("polynomial involves more than one variable".into()));
            }
            c[e[var] as usize] = v.clone();
        }
        Ok(Self::new(ring, c))
    }

    pub fn parse(ring: &Ring, var: &str, s: &str) -> Result<UPoly> {
        let pr = Ring::poly(ring.clone(), &[var]);
        let e = super::parse::parse_elem(&pr, s)?;
        Self::from_mpoly(ring, e.as_poly(), 0)
    }

    pub fn display(&self, var: &str) -> String {
        self.to_mpoly().display(&self.ring, &[var.to_string()])
    }
}

/// Orders by degree, then coefficients from the top down.
impl Ord for UPoly {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl PartialOrd for UPoly {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}
