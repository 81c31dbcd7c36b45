//! Universal integer polynomials for `⋆` and `F_s`.
//!
//! Built symbolically through ghost components over `ℤ[a, b]`: the ghost map
//! is division-free, and inverting it divides by `m` at step `m`. Every such
//! division is checked to be exact in `ℤ[a, b]`, which is precisely the
//! statement that the resulting polynomials have integer coefficients.
//! Evaluating them over any commutative ring gives `⋆` and `F_s` there.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::big::BigWittVector;
use crate::exact::{Elem, MPoly, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct UniversalStarTable {
    pub n: usize,
    /// Over `ℤ[a_1..a_n, b_1..b_n]`.
    pub ring: Ring,
    pub polys: Vec<MPoly>,
}

#[derive(Clone, Debug)]
pub struct UniversalFrobeniusTable {
    pub s: usize,
    pub n: usize,
    /// Over `ℤ[a_1..a_{sn}]`.
    pub ring: Ring,
    pub polys: Vec<MPoly>,
}

fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn symbolic(ring: &Ring, offset: usize, n: usize) -> BigWittVector {
    let nv = ring.poly_ring().vars.len();
    let coeffs = (0..n).map(|i| Elem::Poly(MPoly::var(&Ring::Z, offset + i, nv))).collect();
    BigWittVector::new(ring, coeffs).expect("symbolic coefficients")
}

fn unghost_checked(ring: &Ring, g: &[Elem], what: &str) -> Result<Vec<MPoly>> {
    let u = BigWittVector::unghost(ring, g).map_err(|e| match e {
        Error::Division(m, _) => Error::Certificate(format!("{what}: coefficient {m} is not integral")),
        other => other,
    })?;
    Ok(u.coeffs().iter().map(|c| c.as_poly().clone()).collect())
}

impl UniversalStarTable {
    pub fn build(n: usize) -> Result<Self> {
        let mut names = var_names("a", n);
        names.extend(var_names("b", n));
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = Ring::poly(Ring::Z, &refs);
        let ga = symbolic(&ring, 0, n).ghost();
        let gb = symbolic(&ring, n, n).ghost();
        let prod: Vec<Elem> = ga.iter().zip(&gb).map(|(x, y)| ring.mul(x, y)).collect();
        let polys = unghost_checked(&ring, &prod, "star table")?;
        Ok(UniversalStarTable { n, ring, polys })
    }

    pub fn eval(&self, u: &BigWittVector, v: &BigWittVector) -> Result<BigWittVector> {
        if u.len() != self.n || v.len() != self.n {
            return Err(Error::Shape(format!("table for length {} applied to lengths {} and {}", self.n, u.len(), v.len())));
        }
        if u.ring() != v.ring() {
            return Err(Error::RingMismatch(u.ring().to_string(), v.ring().to_string()));
        }
        let point: Vec<Elem> = u.coeffs().iter().chain(v.coeffs()).cloned().collect();
        let target = u.ring();
        BigWittVector::new(target, self.polys.iter().map(|p| eval_int_poly(target, p, &point)).collect())
    }
}

impl UniversalFrobeniusTable {
    pub fn build(s: usize, n: usize) -> Result<Self> {
        let names = var_names("a", s * n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = Ring::poly(Ring::Z, &refs);
        let g = symbolic(&ring, 0, s * n).ghost();
        let picked: Vec<Elem> = (1..=n).map(|m| g[s * m - 1].clone()).collect();
        let polys = unghost_checked(&ring, &picked, "Frobenius table")?;
        Ok(UniversalFrobeniusTable { s, n, ring, polys })
    }

    pub fn eval(&self, u: &BigWittVector) -> Result<BigWittVector> {
        if u.len() != self.s * self.n {
            return Err(Error::Shape(format!("F_{} table for length {} applied to length {}", self.s, self.s * self.n, u.len())));
        }
        let target = u.ring();
        BigWittVector::new(target, self.polys.iter().map(|p| eval_int_poly(target, p, u.coeffs())).collect())
    }
}

/// Evaluates an integer polynomial at a point of `target`.
pub fn eval_int_poly(target: &Ring, p: &MPoly, point: &[Elem]) -> Elem {
    let mut acc = target.zero();
    for (e, c) in p.terms() {
        let mut t = target.from_bigint(c.as_int());
        for (x, &k) in point.iter().zip(e) {
            if k > 0 {
                t = target.mul(&t, &target.pow(x, k as u64));
            }
        }
        acc = target.add(&acc, &t);
    }
    acc
}

type Cache<K, V> = OnceLock<Mutex<BTreeMap<K, Arc<V>>>>;

static STAR: Cache<usize, UniversalStarTable> = OnceLock::new();
static FROB: Cache<(usize, usize), UniversalFrobeniusTable> = OnceLock::new();

/// Cached star table for length `n`.
pub fn star_table(n: usize) -> Result<Arc<UniversalStarTable>> {
    let cache = STAR.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache").get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(UniversalStarTable::build(n)?);
    Ok(cache.lock().expect("cache").entry(n).or_insert(t).clone())
}

/// Cached `F_s` table into length `n`.
pub fn frobenius_table(s: usize, n: usize) -> Result<Arc<UniversalFrobeniusTable>> {
    let cache = FROB.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache").get(&(s, n)) {
        return Ok(t.clone());
    }
    let t = Arc::new(UniversalFrobeniusTable::build(s, n)?);
    Ok(cache.lock().expect("cache").entry((s, n)).or_insert(t).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_two_star_formula() {
        let t = UniversalStarTable::build(2).unwrap();
        let vars = t.ring.poly_ring().vars.clone();
        assert_eq!(t.polys[0].display(&Ring::Z, &vars), "-a1*b1");
        let shown = t.polys[1].display(&Ring::Z, &vars);
        let expected = crate::exact::parse_elem(&t.ring, "a1^2*b2 + a2*b1^2 - 2*a2*b2").unwrap();
        assert_eq!(shown, t.ring.fmt_elem(&expected));
    }

    #[test]
    fn tables_agree_with_product_coordinates() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for ring in [Ring::Z, Ring::Zmod(12), Ring::Fp(7)] {
            let st = star_table(4).unwrap();
            let ft = frobenius_table(3, 2).unwrap();
            for _ in 0..10 {
                let u = BigWittVector::new(&ring, (0..4).map(|_| ring.random(&mut rng, 5)).collect()).unwrap();
                let v = BigWittVector::new(&ring, (0..4).map(|_| ring.random(&mut rng, 5)).collect()).unwrap();
                assert_eq!(st.eval(&u, &v).unwrap(), u.star(&v).unwrap());
                let w = BigWittVector::new(&ring, (0..6).map(|_| ring.random(&mut rng, 5)).collect()).unwrap();
                assert_eq!(ft.eval(&w).unwrap(), w.frobenius(3).unwrap());
            }
        }
    }
}
