//! Zero-cycles on `𝔸¹`, the comparison maps to Witt vectors and the
//! cycle-level operations `F_s`, `V_s`, `⋆`.
//!
//! `φ(Σ m_i [π_i]) = ∏ rev(π_i)^{m_i} mod t^{n+1}`: a point with minimal
//! polynomial `x^d + a_1 x^{d-1} + ⋯ + a_d` goes to `1 + a_1 t + ⋯ + a_d t^d`.
//! `φ̂` also records the norm `∏ ((-1)^{deg π} π(0))^{m}` and the degree.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::point::{check_field, factor_over_field, ClosedPoint};
use crate::exact::{resultant, Elem, MPoly, Ring, UPoly};
use crate::error::{Error, Result};
use crate::witt::{BigWittVector, HatWittVector, PTypicalWitt};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroCycle {
    field: Ring,
    terms: BTreeMap<ClosedPoint, i64>,
}

impl ZeroCycle {
    pub fn zero(field: &Ring) -> Self {
        ZeroCycle { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn point(p: ClosedPoint, mult: i64) -> Self {
        let mut c = Self::zero(p.field());
        c.add_term(p, mult);
        c
    }

    /// The divisor of a nonzero polynomial on `𝔸¹` (leading coefficient ignored).
    pub fn of_poly(f: &UPoly) -> Result<Self> {
        check_field(f.ring())?;
        if f.is_zero() {
            return Err(Error::Precondition("divisor of the zero polynomial".into()));
        }
        let mut c = Self::zero(f.ring());
        for (g, m) in factor_over_field(f)? {
            c.add_term(ClosedPoint::from_factor(g), m as i64);
        }
        Ok(c)
    }

    fn add_term(&mut self, p: ClosedPoint, m: i64) {
        let e = self.terms.entry(p).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClosedPoint, i64)> {
        self.terms.iter().map(|(p, &m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, &m)| m * p.degree() as i64).sum()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(Error::RingMismatch(self.field.to_string(), o.field.to_string()));
        }
        let mut c = self.clone();
        for (p, &m) in &o.terms {
            c.add_term(p.clone(), m);
        }
        Ok(c)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut c = Self::zero(&self.field);
        if k != 0 {
            for (p, &m) in &self.terms {
                c.terms.insert(p.clone(), m * k);
            }
        }
        c
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// `φ: c ↦ ∏ rev(π)^m` in `𝕎_n`.
    pub fn phi(&self, n: usize) -> BigWittVector {
        let r = &self.field;
        let mut acc = BigWittVector::identity(r, n);
        for (p, &m) in &self.terms {
            let mut s = p.poly().reverse().coeffs().to_vec();
            s.resize(n + 1, r.zero());
            s.truncate(n + 1);
            let w = BigWittVector::from_series(r, &s).expect("reversed monic polynomial has constant term 1");
            acc = acc.add(&w.mul_int(m)).expect("same shape");
        }
        acc
    }

    /// `φ̂: c ↦ (φ(c), ∏ ((-1)^{deg π} π(0))^m, deg c)`; the origin is not allowed.
    pub fn phi_hat(&self, n: usize) -> Result<HatWittVector> {
        let r = &self.field;
        let mut unit = r.one();
        for (p, &m) in &self.terms {
            if p.is_origin() {
                return Err(Error::Precondition("cycle meets the origin".into()));
            }
            let mut nm = p.poly().coeff(0);
            if p.degree() % 2 == 1 {
                nm = r.neg(&nm);
            }
            let f = if m >= 0 { r.pow(&nm, m as u64) } else { r.pow(&r.inv(&nm).expect("nonzero in a field"), m.unsigned_abs()) };
            unit = r.mul(&unit, &f);
        }
        HatWittVector::new(self.phi(n), unit, self.degree())
    }

    /// `φ^(p)`: the image in `W_n`, via `𝕎_{p^{n-1}}`.
    pub fn phi_ptypical(&self, p: u64, n: usize) -> Result<PTypicalWitt> {
        let len = if n == 0 { 0 } else { p.pow(n as u32 - 1) as usize };
        PTypicalWitt::project(p, &self.phi(len), n)
    }

    /// Applies a pointwise map `π ↦ polynomial whose divisor is the image`.
    fn map_points(&self, f: impl Fn(&ClosedPoint) -> Result<UPoly>) -> Result<Self> {
        let mut out = Self::zero(&self.field);
        for (p, &m) in &self.terms {
            out = out.add(&Self::of_poly(&f(p)?)?.scale(m))?;
        }
        Ok(out)
    }

    /// Pushforward along `x ↦ x^s`: each point goes to the divisor of `Res_y(π(y), x - y^s)`.
    pub fn frobenius(&self, s: usize) -> Result<Self> {
        let r = &self.field;
        let pr = Ring::poly(r.clone(), &["x", "y"]);
        self.map_points(|p| {
            let pi_y = embed(&pr, p.poly(), 1);
            let g = pr.sub(&Elem::Poly(MPoly::var(r, 0, 2)), &Elem::Poly(MPoly::var(r, 1, 2).pow(r, s as u64, 2)));
            let res = resultant(&pr, &pi_y, &g, "y")?;
            UPoly::from_mpoly(r, res.as_poly(), 0)
        })
    }

    /// Pullback along `x ↦ x^s`: each point goes to the divisor of `π(x^s)`.
    pub fn verschiebung(&self, s: usize) -> Result<Self> {
        self.map_points(|p| Ok(p.poly().inflate(s)))
    }

    /// Pushforward of the product along multiplication: the composed product
    /// `Res_y(π_1(y), y^{deg π_2} π_2(x/y))`, roots `αβ`.
    pub fn star(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(Error::RingMismatch(self.field.to_string(), o.field.to_string()));
        }
        let r = &self.field;
        let pr = Ring::poly(r.clone(), &["x", "y"]);
        let mut out = Self::zero(r);
        for (p1, &m1) in &self.terms {
            for (p2, &m2) in &o.terms {
                let pi1 = embed(&pr, p1.poly(), 1);
                let d2 = p2.degree() as u32;
                let hom = MPoly::from_terms(
                    r,
                    p2.poly().coeffs().iter().enumerate().map(|(k, c)| (vec![k as u32, d2 - k as u32], c.clone())),
                );
                let res = resultant(&pr, &pi1, &Elem::Poly(hom), "y")?;
                let f = UPoly::from_mpoly(r, res.as_poly(), 0)?;
                out = out.add(&Self::of_poly(&f)?.scale(m1 * m2))?;
            }
        }
        Ok(out)
    }

    /// `[p1] + 2[p2] - [p3]`, points written as bracketed polynomials.
    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, &m)) in self.terms.iter().enumerate() {
            let sign = if m < 0 { "-" } else { "+" };
            if i == 0 {
                if m < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if m.abs() != 1 {
                out.push_str(&m.abs().to_string());
            }
            out.push_str(&format!("[{}]", p.poly().display("x")));
        }
        out
    }

    /// Parses `2[x-3] - [x^2+1] + ...`; a bracketed polynomial stands for its divisor.
    pub fn parse(field: &Ring, s: &str) -> Result<Self> {
        let mut out = Self::zero(field);
        let mut rest = s.trim();
        if rest == "0" || rest.is_empty() {
            return Ok(out);
        }
        let mut sign = 1i64;
        loop {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
                continue;
            }
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
                continue;
            }
            let open = rest.find('[').ok_or_else(|| Error::Parse(format!("expected '[' in {s:?}")))?;
            let coef = rest[..open].trim().trim_end_matches('*');
            let k: i64 = if coef.is_empty() { 1 } else { coef.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity {coef:?}")))? };
            let close = rest[open..].find(']').ok_or_else(|| Error::Parse("unclosed '['".into()))? + open;
            let f = UPoly::parse(field, "x", &rest[open + 1..close])?;
            out = out.add(&Self::of_poly(&f)?.scale(sign * k))?;
            rest = rest[close + 1..].trim_start();
            sign = 1;
            if rest.is_empty() {
                return Ok(out);
            }
            if !rest.starts_with(['+', '-']) {
                return Err(Error::Parse(format!("expected '+' or '-' before {rest:?}")));
            }
        }
    }

    /// `[{"poly": .., "mult": ..}, ..]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(p, &m)| json!({"poly": p.poly().display("x"), "mult": m})).collect())
    }

    pub fn from_json(field: &Ring, v: &Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| Error::Parse("cycle must be a JSON list".into()))?;
        let mut out = Self::zero(field);
        for it in items {
            let poly = it["poly"].as_str().ok_or_else(|| Error::Parse("missing poly".into()))?;
            let m = it["mult"].as_i64().ok_or_else(|| Error::Parse("missing mult".into()))?;
            out = out.add(&ZeroCycle::point(ClosedPoint::parse(field, poly)?, m))?;
        }
        Ok(out)
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// A univariate polynomial placed in variable `var` of `pr`.
fn embed(pr: &Ring, f: &UPoly, var: usize) -> Elem {
    let n = pr.poly_ring().vars.len();
    let base = &pr.poly_ring().base;
    Elem::Poly(MPoly::from_terms(
        base,
        f.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e = vec![0u32; n];
            e[var] = k as u32;
            (e, c.clone())
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(field: &Ring, s: &str) -> ZeroCycle {
        ZeroCycle::parse(field, s).unwrap()
    }

    #[test]
    fn phi_examples() {
        let f7 = Ring::Fp(7);
        let c = cyc(&f7, "[x^2+1]");
        assert_eq!(c.phi(2), BigWittVector::from_i64s(&f7, &[0, 1]));
        let h = c.phi_hat(2).unwrap();
        assert_eq!((h.unit().clone(), h.degree), (f7.one(), 2));
        let q = Ring::Q;
        assert_eq!(cyc(&q, "[x-2] + [x-3]").phi(2), BigWittVector::from_i64s(&q, &[-5, 6]));
        assert_eq!(cyc(&q, "[x-2]").phi(3), BigWittVector::teichmuller(&q, &q.from_i64(2), 3));
        assert!(cyc(&f7, "[x]").phi_hat(2).is_err());
    }

    #[test]
    fn operations() {
        let f7 = Ring::Fp(7);
        assert_eq!(cyc(&f7, "[x-3]").frobenius(2).unwrap(), cyc(&f7, "[x-2]"));
        assert_eq!(cyc(&f7, "[x^2+1]").frobenius(2).unwrap(), cyc(&f7, "2[x+1]"));
        assert_eq!(cyc(&f7, "[x-4]").verschiebung(2).unwrap(), cyc(&f7, "[x-2] + [x-5]"));
        assert_eq!(cyc(&f7, "[x-2]").star(&cyc(&f7, "[x-3]")).unwrap(), cyc(&f7, "[x-6]"));
        assert_eq!(cyc(&f7, "[x^2+1]").star(&cyc(&f7, "[x^2+1]")).unwrap(), cyc(&f7, "2[x+1] + 2[x-1]"));
        let c = cyc(&f7, "[x^3+x+1] - 2[x-5]");
        assert_eq!(cyc(&f7, "[x-1]").star(&c).unwrap(), c);
        assert_eq!(c.frobenius(1).unwrap(), c);
        assert_eq!(c.verschiebung(1).unwrap(), c);
    }

    #[test]
    fn parse_and_json() {
        let f5 = Ring::Fp(5);
        let c = cyc(&f5, "[x^2+1] - 2[x-4]");
        assert_eq!(c, cyc(&f5, "[x+2] + [x+3] - 2*[x+1]"));
        assert_eq!(ZeroCycle::from_json(&f5, &c.to_json()).unwrap(), c);
        assert_eq!(c.degree(), 0);
    }
}
