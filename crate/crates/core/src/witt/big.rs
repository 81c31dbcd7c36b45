//! Big Witt vectors `𝕎_n(A) = 1 + tA[t]/(t^{n+1})`.
//!
//! Addition is multiplication of series and `[a] = 1 - at`. The ring
//! structure is computed in product coordinates: every `u` factors uniquely
//! as `∏_{k≤n} (1 - x_k t^k) = Σ_k V_k[x_k]`, and on those summands
//!
//! * `V_k[x] ⋆ V_l[y] = gcd(k,l) · V_{lcm(k,l)}[x^{l/g} y^{k/g}]`,
//! * `F_s V_k[x] = gcd(s,k) · V_{k/g}[x^{s/g}]`,
//!
//! which only uses ring operations, so it works over every commutative ring.
//! The universal polynomial tables in [`super::universal`] are an independent
//! route used for cross-checks.

use serde_json::{json, Value};

use crate::exact::arith::gcd;
use crate::exact::series::mul_trunc;
use crate::exact::{parse_ring, Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigWittVector {
    ring: Ring,
    /// `a_1..a_n`.
    coeffs: Vec<Elem>,
}

fn check_pair(u: &BigWittVector, v: &BigWittVector) -> Result<()> {
    if u.ring != v.ring {
        return Err(Error::RingMismatch(u.ring.to_string(), v.ring.to_string()));
    }
    if u.len() != v.len() {
        return Err(Error::Shape(format!("Witt vectors of lengths {} and {}", u.len(), v.len())));
    }
    Ok(())
}

impl BigWittVector {
    pub fn new(ring: &Ring, coeffs: Vec<Elem>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !ring.contains(c)) {
            return Err(Error::Shape(format!("{bad:?} is not an element of {ring}")));
        }
        Ok(BigWittVector { ring: ring.clone(), coeffs })
    }

    pub fn from_i64s(ring: &Ring, coeffs: &[i64]) -> Self {
        BigWittVector { ring: ring.clone(), coeffs: coeffs.iter().map(|&c| ring.from_i64(c)).collect() }
    }

    /// From a series `1 + a_1 t + ⋯`; the constant term must be 1.
    pub fn from_series(ring: &Ring, series: &[Elem]) -> Result<Self> {
        match series.first() {
            Some(c) if ring.is_one(c) => Self::new(ring, series[1..].to_vec()),
            _ => Err(Error::Precondition("series must have constant term 1".into())),
        }
    }

    /// The zero element (the series 1).
    pub fn identity(ring: &Ring, n: usize) -> Self {
        BigWittVector { ring: ring.clone(), coeffs: vec![ring.zero(); n] }
    }

    /// `[a] = 1 - at`.
    pub fn teichmuller(ring: &Ring, a: &Elem, n: usize) -> Self {
        let mut c = vec![ring.zero(); n];
        if n > 0 {
            c[0] = ring.neg(a);
        }
        BigWittVector { ring: ring.clone(), coeffs: c }
    }

    /// The unit `[1]` of `⋆`.
    pub fn one(ring: &Ring, n: usize) -> Self {
        Self::teichmuller(ring, &ring.one(), n)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// `1, a_1, …, a_n`.
    pub fn series(&self) -> Vec<Elem> {
        let mut s = Vec::with_capacity(self.len() + 1);
        s.push(self.ring.one());
        s.extend(self.coeffs.iter().cloned());
        s
    }

    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.len() {
            return Err(Error::Shape(format!("cannot truncate length {} to {m}", self.len())));
        }
        Ok(BigWittVector { ring: self.ring.clone(), coeffs: self.coeffs[..m].to_vec() })
    }

    /// Group law: product of series.
    pub fn add(&self, o: &Self) -> Result<Self> {
        check_pair(self, o)?;
        let n = self.len();
        let s = mul_trunc(&self.ring, &self.series(), &o.series(), n);
        Ok(BigWittVector { ring: self.ring.clone(), coeffs: s[1..].to_vec() })
    }

    /// Group inverse: the inverse series.
    pub fn neg(&self) -> Self {
        let r = &self.ring;
        let n = self.len();
        let a = self.series();
        let mut out = vec![r.zero(); n + 1];
        out[0] = r.one();
        for k in 1..=n {
            let mut acc = r.zero();
            for j in 1..=k {
                if !r.is_zero(&a[j]) {
                    acc = r.add(&acc, &r.mul(&a[j], &out[k - j]));
                }
            }
            out[k] = r.neg(&acc);
        }
        BigWittVector { ring: r.clone(), coeffs: out[1..].to_vec() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// `k·u` for an integer `k`.
    pub fn mul_int(&self, k: i64) -> Self {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let mut acc = Self::identity(&self.ring, self.len());
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&base).expect("same shape");
        }
        acc
    }

    /// Ghost components `g_1..g_n`, the coefficients of `-t·u'/u`, so that
    /// `g_m([a]) = a^m`. Division-free: `g_m = -m a_m - Σ_{j<m} g_j a_{m-j}`.
    pub fn ghost(&self) -> Vec<Elem> {
        let r = &self.ring;
        let a = &self.coeffs;
        let mut g: Vec<Elem> = Vec::with_capacity(a.len());
        for m in 1..=a.len() {
            let mut acc = r.mul_i64(&a[m - 1], m as i64);
            for j in 1..m {
                if !r.is_zero(&a[m - j - 1]) {
                    acc = r.add(&acc, &r.mul(&g[j - 1], &a[m - j - 1]));
                }
            }
            g.push(r.neg(&acc));
        }
        g
    }

    /// Inverse of [`BigWittVector::ghost`]; needs exact division by `1..n`.
    pub fn unghost(ring: &Ring, g: &[Elem]) -> Result<Self> {
        let mut a: Vec<Elem> = Vec::with_capacity(g.len());
        for m in 1..=g.len() {
            let mut acc = g[m - 1].clone();
            for j in 1..m {
                acc = ring.add(&acc, &ring.mul(&g[j - 1], &a[m - j - 1]));
            }
            let q = ring.div_int(&ring.neg(&acc), m as u64).ok_or_else(|| Error::Division(m as u64, ring.to_string()))?;
            a.push(q);
        }
        Ok(BigWittVector { ring: ring.clone(), coeffs: a })
    }

    /// Product coordinates `x_1..x_n` with `u = ∏ (1 - x_k t^k)`.
    pub fn product_coords(&self) -> Vec<Elem> {
        let r = &self.ring;
        let n = self.len();
        let mut cur = self.series();
        let mut xs = Vec::with_capacity(n);
        for k in 1..=n {
            let x = r.neg(&cur[k]);
            if !r.is_zero(&x) {
                // divide by (1 - x t^k), i.e. multiply by Σ x^j t^{jk}
                let mut geo = vec![r.zero(); n + 1];
                let mut pw = r.one();
                for j in 0..=n / k {
                    geo[j * k] = pw.clone();
                    pw = r.mul(&pw, &x);
                }
                cur = mul_trunc(r, &cur, &geo, n);
            }
            xs.push(x);
        }
        xs
    }

    /// `∏_k (1 - x_k t^k)` truncated at length `n`.
    pub fn from_product_coords(ring: &Ring, xs: &[Elem], n: usize) -> Self {
        let mut acc = vec![ring.one()];
        acc.resize(n + 1, ring.zero());
        for (i, x) in xs.iter().enumerate() {
            let k = i + 1;
            if k <= n && !ring.is_zero(x) {
                acc = mul_factor(ring, &acc, &ring.neg(x), k, 1, n);
            }
        }
        BigWittVector { ring: ring.clone(), coeffs: acc[1..].to_vec() }
    }

    /// Star multiplication, characterised by `[a] ⋆ [b] = [ab]`.
    pub fn star(&self, o: &Self) -> Result<Self> {
        check_pair(self, o)?;
        let r = &self.ring;
        let n = self.len();
        let xs = self.product_coords();
        let ys = o.product_coords();
        let mut acc = vec![r.one()];
        acc.resize(n + 1, r.zero());
        for (i, x) in xs.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            let k = i + 1;
            for (j, y) in ys.iter().enumerate() {
                let l = j + 1;
                let g = gcd(k as u64, l as u64) as usize;
                let lcm = k / g * l;
                if lcm > n {
                    continue;
                }
                if r.is_zero(y) {
                    continue;
                }
                let z = r.mul(&r.pow(x, (l / g) as u64), &r.pow(y, (k / g) as u64));
                if !r.is_zero(&z) {
                    acc = mul_factor(r, &acc, &r.neg(&z), lcm, g, n);
                }
            }
        }
        Ok(BigWittVector { ring: r.clone(), coeffs: acc[1..].to_vec() })
    }

    /// `F_s: 𝕎_{sn} → 𝕎_n`; the input length must be a multiple of `s`.
    pub fn frobenius(&self, s: usize) -> Result<Self> {
        if s == 0 || self.len() % s != 0 {
            return Err(Error::Shape(format!("F_{s} needs a length divisible by {s}, got {}", self.len())));
        }
        Ok(self.frobenius_to(s, self.len() / s))
    }

    /// `F_s` into `𝕎_n`, first truncating the input to length `s·n`.
    pub fn frobenius_truncating(&self, s: usize, n: usize) -> Result<Self> {
        if s == 0 || self.len() < s * n {
            return Err(Error::Shape(format!("F_{s} into length {n} needs length at least {}, got {}", s * n, self.len())));
        }
        Ok(self.truncate(s * n)?.frobenius_to(s, n))
    }

    fn frobenius_to(&self, s: usize, n: usize) -> Self {
        let r = &self.ring;
        let xs = self.product_coords();
        let mut acc = vec![r.one()];
        acc.resize(n + 1, r.zero());
        for (i, x) in xs.iter().enumerate() {
            let k = i + 1;
            let g = gcd(s as u64, k as u64) as usize;
            if k / g > n || r.is_zero(x) {
                continue;
            }
            let z = r.pow(x, (s / g) as u64);
            if !r.is_zero(&z) {
                acc = mul_factor(r, &acc, &r.neg(&z), k / g, g, n);
            }
        }
        BigWittVector { ring: r.clone(), coeffs: acc[1..].to_vec() }
    }

    /// `V_s: 𝕎_n → 𝕎_{sn}`, induced by `t ↦ t^s`.
    pub fn verschiebung(&self, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::Precondition("V_0 is undefined".into()));
        }
        let r = &self.ring;
        let n = self.len();
        let mut c = vec![r.zero(); s * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[(i + 1) * s - 1] = a.clone();
        }
        Ok(BigWittVector { ring: r.clone(), coeffs: c })
    }

    /// `V_s F_s` on `𝕎_m` (`m` = the length of `self`). It is well defined on
    /// the truncation because `s(⌊m/s⌋+1) ≥ m+1`.
    pub fn vf_descend(&self, s: usize, m: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::Precondition("s must be positive".into()));
        }
        if m != self.len() {
            return Err(Error::Shape(format!("vf_descend on length {m} got a vector of length {}", self.len())));
        }
        let r = &self.ring;
        let xs = self.product_coords();
        let mut acc = vec![r.one()];
        acc.resize(m + 1, r.zero());
        for (i, x) in xs.iter().enumerate() {
            let k = i + 1;
            let g = gcd(s as u64, k as u64) as usize;
            let l = k / g * s;
            if l > m || r.is_zero(x) {
                continue;
            }
            let z = r.pow(x, (s / g) as u64);
            if !r.is_zero(&z) {
                acc = mul_factor(r, &acc, &r.neg(&z), l, g, m);
            }
        }
        Ok(BigWittVector { ring: r.clone(), coeffs: acc[1..].to_vec() })
    }

    /// Applies a coefficientwise ring map.
    pub fn map(&self, target: &Ring, h: impl Fn(&Elem) -> Elem) -> Self {
        BigWittVector { ring: target.clone(), coeffs: self.coeffs.iter().map(h).collect() }
    }

    pub fn display(&self) -> String {
        let r = &self.ring;
        let mut out = "1".to_string();
        for (i, c) in self.coeffs.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            let (neg, mag) = r.split_sign(c);
            let k = i + 1;
            let t = if k == 1 { "t".to_string() } else { format!("t^{k}") };
            let body = if mag == "1" { t } else if mag.contains([' ', '+', '-']) { format!("({mag})*{t}") } else { format!("{mag}*{t}") };
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
        out
    }

    /// `{"ring": .., "n": .., "coeffs": [..]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.to_string(),
            "n": self.len(),
            "coeffs": self.coeffs.iter().map(|c| self.ring.fmt_elem(c)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = parse_ring(v["ring"].as_str().ok_or_else(|| Error::Parse("missing ring".into()))?)?;
        let coeffs = v["coeffs"].as_array().ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        let coeffs: Result<Vec<Elem>> =
            coeffs.iter().map(|c| ring.parse_elem(c.as_str().ok_or_else(|| Error::Parse("coefficient must be a string".into()))?)).collect();
        let out = Self::new(&ring, coeffs?)?;
        if let Some(n) = v["n"].as_u64() {
            if n as usize != out.len() {
                return Err(Error::Parse(format!("n = {n} but {} coefficients", out.len())));
            }
        }
        Ok(out)
    }
}

/// `acc · (1 + c·t^k)^e` modulo `t^{n+1}`.
fn mul_factor(r: &Ring, acc: &[Elem], c: &Elem, k: usize, e: usize, n: usize) -> Vec<Elem> {
    let mut out = acc.to_vec();
    for _ in 0..e {
        for i in (k..=n).rev() {
            if !r.is_zero(&out[i - k]) {
                out[i] = r.add(&out[i], &r.mul(c, &out[i - k]));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ring: &Ring, c: &[i64]) -> BigWittVector {
        BigWittVector::from_i64s(ring, c)
    }

    #[test]
    fn addition_and_negation() {
        let z = Ring::Z;
        assert_eq!(w(&z, &[-1, 0]).add(&w(&z, &[-1, 0])).unwrap(), w(&z, &[-2, 1]));
        assert_eq!(w(&z, &[-2, 0]).neg(), w(&z, &[2, 4]));
        assert!(BigWittVector::identity(&z, 3).neg().is_identity());
        assert!(w(&z, &[1, 2]).add(&w(&z, &[1])).is_err());
    }

    #[test]
    fn ghosts() {
        let z = Ring::Z;
        let a = z.from_i64(3);
        let g = BigWittVector::teichmuller(&z, &a, 4).ghost();
        assert_eq!(g, vec![z.from_i64(3), z.from_i64(9), z.from_i64(27), z.from_i64(81)]);
        let two = w(&z, &[-2, 1, 0]).ghost();
        assert_eq!(two, vec![z.from_i64(2); 3]);
        let q = Ring::Q;
        let g = vec![q.from_i64(1), q.from_i64(3), q.from_i64(4)];
        let u = BigWittVector::unghost(&q, &g).unwrap();
        assert_eq!(u.ghost(), g);
        assert!(BigWittVector::unghost(&z, &[z.from_i64(1), z.from_i64(2)]).is_err());
    }

    #[test]
    fn star_examples() {
        let z = Ring::Z;
        let two = BigWittVector::teichmuller(&z, &z.from_i64(2), 3);
        let three = BigWittVector::teichmuller(&z, &z.from_i64(3), 3);
        assert_eq!(two.star(&three).unwrap(), BigWittVector::teichmuller(&z, &z.from_i64(6), 3));
        assert_eq!(w(&z, &[1, 0]).star(&w(&z, &[1, 0])).unwrap(), w(&z, &[-1, 0]));
    }

    #[test]
    fn frobenius_and_verschiebung() {
        let z = Ring::Z;
        let a = z.from_i64(5);
        let ta = BigWittVector::teichmuller(&z, &a, 4);
        assert_eq!(ta.frobenius(2).unwrap(), BigWittVector::teichmuller(&z, &z.from_i64(25), 2));
        assert_eq!(ta.frobenius(1).unwrap(), ta);
        assert_eq!(ta.truncate(2).unwrap().verschiebung(2).unwrap(), w(&z, &[0, -5, 0, 0]));
        // F_2 of 1 - t^2 = (1-t)(1+t) is F_2[1] + F_2[-1] = [1] + [1]
        assert_eq!(w(&z, &[0, -1, 0, 0]).frobenius(2).unwrap(), w(&z, &[-2, 1]));
        // F_2 V_2 [a] = 2[a]
        let t2 = BigWittVector::teichmuller(&z, &a, 2);
        assert_eq!(t2.verschiebung(2).unwrap().frobenius(2).unwrap(), t2.add(&t2).unwrap());
        assert!(ta.frobenius(3).is_err());
    }

    #[test]
    fn vf_descend_matches_long_computation() {
        let z = Ring::Z;
        let u = w(&z, &[3, -1, 4, 1, -5]);
        for s in 1..=4 {
            let m = u.len();
            let direct = u.vf_descend(s, m).unwrap();
            // compute at length s*(m/s + 1) after padding with zeros, then truncate
            let big = s * (m / s + 1);
            let mut padded = u.coeffs().to_vec();
            padded.resize(big, z.zero());
            let p = BigWittVector::new(&z, padded).unwrap();
            let long = p.frobenius(s).unwrap().verschiebung(s).unwrap().truncate(m).unwrap();
            assert_eq!(direct, long, "s={s}");
        }
        assert_eq!(u.vf_descend(1, 5).unwrap(), u);
    }

    #[test]
    fn json_round_trip() {
        let f5 = Ring::Fp(5);
        let u = BigWittVector::teichmuller(&f5, &f5.one(), 3);
        let j = u.to_json();
        assert_eq!(j.to_string(), r#"{"coeffs":["4","0","0"],"n":3,"ring":"F5"}"#);
        assert_eq!(BigWittVector::from_json(&j).unwrap(), u);
    }
}
