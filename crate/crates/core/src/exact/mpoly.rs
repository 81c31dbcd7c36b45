//! Sparse multivariate polynomials.
//!
//! Terms are keyed by exponent tuples of a fixed length (the number of
//! variables of the ambient [`PolyRing`](super::ring::PolyRing)); zero
//! coefficients are never stored. Every operation takes the coefficient ring
//! explicitly.

use std::collections::BTreeMap;

use super::ring::{Elem, Ring};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Elem>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(base: &Ring, c: Elem, nvars: usize) -> Self {
        MPoly::monomial(base, vec![0; nvars], c)
    }

    pub fn monomial(base: &Ring, exps: Vec<u32>, c: Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !base.is_zero(&c) {
            terms.insert(exps, c);
        }
        MPoly { terms }
    }

    pub fn var(base: &Ring, i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(base, e, base.one())
    }

    pub fn from_terms(base: &Ring, terms: impl IntoIterator<Item = (Vec<u32>, Elem)>) -> Self {
        let mut out: BTreeMap<Vec<u32>, Elem> = BTreeMap::new();
        for (e, c) in terms {
            let merged = match out.remove(&e) {
                Some(prev) => base.add(&prev, &c),
                None => c,
            };
            if !base.is_zero(&merged) {
                out.insert(e, merged);
            }
        }
        MPoly { terms: out }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Elem)> {
        self.terms.iter()
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

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self, base: &Ring) -> Elem {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| base.zero())
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&Elem> {
        self.terms.get(exps)
    }

    pub(crate) fn is_valid(&self, base: &Ring, nvars: usize) -> bool {
        self.terms.iter().all(|(e, c)| e.len() == nvars && !base.is_zero(c) && base.contains(c))
    }

    pub fn add(&self, base: &Ring, other: &MPoly) -> MPoly {
        let mut out = self.terms.clone();
        for (e, c) in &other.terms {
            match out.get_mut(e) {
                Some(prev) => {
                    let s = base.add(prev, c);
                    if base.is_zero(&s) {
                        out.remove(e);
                    } else {
                        *prev = s;
                    }
                }
                None => {
                    out.insert(e.clone(), c.clone());
                }
            }
        }
        MPoly { terms: out }
    }

    pub fn neg(&self, base: &Ring) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), base.neg(c))).collect() }
    }

    pub fn sub(&self, base: &Ring, other: &MPoly) -> MPoly {
        self.add(base, &other.neg(base))
    }

    pub fn scale(&self, base: &Ring, k: &Elem) -> MPoly {
        MPoly::from_terms(base, self.terms.iter().map(|(e, c)| (e.clone(), base.mul(c, k))))
    }

    pub fn mul(&self, base: &Ring, other: &MPoly) -> MPoly {
        let mut out: BTreeMap<Vec<u32>, Elem> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = base.mul(c1, c2);
                match out.get_mut(&e) {
                    Some(prev) => *prev = base.add(prev, &prod),
                    None => {
                        out.insert(e, prod);
                    }
                }
            }
        }
        out.retain(|_, c| !base.is_zero(c));
        MPoly { terms: out }
    }

    pub fn pow(&self, base: &Ring, mut e: u64, nvars: usize) -> MPoly {
        let mut acc = MPoly::constant(base, base.one(), nvars);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(base, &b);
            }
        }
        acc
    }

    pub fn map_coeffs(&self, base: &Ring, f: impl Fn(&Elem) -> Elem) -> MPoly {
        MPoly::from_terms(base, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn try_map_coeffs(&self, base: &Ring, f: impl Fn(&Elem) -> Option<Elem>) -> Option<MPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            terms.push((e.clone(), f(c)?));
        }
        Some(MPoly::from_terms(base, terms))
    }

    /// Degree in variable `i`; `None` for the zero polynomial.
    pub fn deg_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Whether variable `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Coefficients with respect to variable `i`, lowest degree first.
    pub fn coeffs_in(&self, base: &Ring, i: usize) -> Vec<MPoly> {
        let d = match self.deg_in(i) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Vec<u32>, Elem)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            buckets[k].push((e2, c.clone()));
        }
        buckets.into_iter().map(|b| MPoly::from_terms(base, b)).collect()
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(base: &Ring, i: usize, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[i] += k as u32;
                terms.push((e2, v.clone()));
            }
        }
        MPoly::from_terms(base, terms)
    }

    /// Substitutes the polynomial `val` for variable `i`.
    pub fn subst(&self, base: &Ring, i: usize, val: &MPoly) -> MPoly {
        let coeffs = self.coeffs_in(base, i);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(base, val).add(base, c);
        }
        acc
    }

    /// Evaluates at a point of `base^nvars`.
    pub fn eval(&self, base: &Ring, point: &[Elem]) -> Elem {
        let mut acc = base.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = base.mul(&t, &base.pow(x, k as u64));
                }
            }
            acc = base.add(&acc, &t);
        }
        acc
    }

    /// Re-indexes variables: old variable `i` becomes new variable `map[i]`.
    pub fn remap(&self, base: &Ring, map: &[usize], new_nvars: usize) -> MPoly {
        MPoly::from_terms(
            base,
            self.terms.iter().map(|(e, c)| {
                let mut ne = vec![0u32; new_nvars];
                for (i, &k) in e.iter().enumerate() {
                    ne[map[i]] += k;
                }
                (ne, c.clone())
            }),
        )
    }

    /// Leading term with respect to the lexicographic order on exponent tuples.
    pub fn leading(&self) -> Option<(&Vec<u32>, &Elem)> {
        self.terms.iter().next_back()
    }

    /// Canonical text form: terms in decreasing exponent order.
    pub fn display(&self, base: &Ring, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = base.split_sign(c);
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], k) })
                .collect();
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else if mag.contains(['(', '+', '-', '/']) && matches!(base, Ring::Alg(_)) {
                format!("({})*{}", mag, mono.join("*"))
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            match (idx, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_substitution() {
        let z = Ring::Z;
        let x = MPoly::var(&z, 0, 2);
        let y = MPoly::var(&z, 1, 2);
        let one = MPoly::constant(&z, z.one(), 2);
        let f = x.add(&z, &one).mul(&z, &y.sub(&z, &one));
        assert_eq!(f.len(), 4);
        let g = f.subst(&z, 1, &x);
        let expect = x.mul(&z, &x).sub(&z, &one);
        assert_eq!(g, expect);
        assert_eq!(f.deg_in(0), Some(1));
        assert_eq!(f.coeffs_in(&z, 1).len(), 2);
        let back = MPoly::from_coeffs_in(&z, 1, &f.coeffs_in(&z, 1));
        assert_eq!(back, f);
    }

    #[test]
    fn display_is_canonical() {
        let z = Ring::Z;
        let x = MPoly::var(&z, 0, 2);
        let y = MPoly::var(&z, 1, 2);
        let f = x.mul(&z, &x).mul(&z, &y).scale(&z, &z.from_i64(3)).sub(&z, &MPoly::constant(&z, z.one(), 2));
        assert_eq!(f.display(&z, &["x".into(), "y".into()]), "3*x^2*y - 1");
    }
}
