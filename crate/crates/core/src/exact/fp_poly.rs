//! Factorisation of univariate polynomials over prime fields.
//!
//! Squarefree decomposition, distinct-degree splitting and Cantor–Zassenhaus
//! equal-degree splitting on dense `u64` coefficient vectors. Randomness
//! comes from a ChaCha stream with a fixed seed, so results (including the
//! order of work) are reproducible; the output list is sorted anyway.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::{addmod, invmod, is_prime, mulmod, submod};
use super::ring::{Elem, Ring};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Arithmetic on dense polynomials (lowest coefficient first) over `F_p`.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

pub type Dense = Vec<u64>;

fn trim(mut a: Dense) -> Dense {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

impl Fp {
    pub fn add(&self, a: &[u64], b: &[u64]) -> Dense {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| addmod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), self.p)).collect())
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Dense {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| submod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), self.p)).collect())
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Dense {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &[u64], k: u64) -> Dense {
        trim(a.iter().map(|&x| mulmod(x, k, self.p)).collect())
    }

    /// Division by a nonzero polynomial.
    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Dense, Dense) {
        let p = self.p;
        let db = b.len() - 1;
        let inv = invmod(b[db], p).expect("nonzero leading coefficient");
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let t = mulmod(r[k + db], inv, p);
            if t != 0 {
                for (i, &c) in b.iter().enumerate() {
                    r[k + i] = submod(r[k + i], mulmod(t, c, p), p);
                }
            }
            q[k] = t;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Dense {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> Dense {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, invmod(lc, self.p).expect("nonzero")),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Dense {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn deriv(&self, a: &[u64]) -> Dense {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p)).collect())
    }

    pub fn mulmod_poly(&self, a: &[u64], b: &[u64], m: &[u64]) -> Dense {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod_poly(&self, a: &[u64], mut e: u128, m: &[u64]) -> Dense {
        let mut acc = self.rem(&[1], m);
        let mut b = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod_poly(&acc, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.mulmod_poly(&b, &b, m);
            }
        }
        acc
    }

    pub fn eval(&self, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, x, self.p), c, self.p))
    }

    /// Squarefree decomposition of a monic polynomial: `[(g, i)]` with `f = ∏ g^i`.
    pub fn squarefree(&self, f: &[u64]) -> Vec<(Dense, u32)> {
        let mut out = Vec::new();
        self.sqf_rec(&self.monic(f), 1, &mut out);
        out
    }

    fn sqf_rec(&self, f: &[u64], mult: u32, out: &mut Vec<(Dense, u32)>) {
        if f.len() <= 1 {
            return;
        }
        let p = self.p;
        let fp = self.deriv(f);
        let mut c = self.gcd(f, &fp);
        let mut w = self.divrem(f, &c).0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let z = self.divrem(&w, &y).0;
            if z.len() > 1 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = self.divrem(&c, &w).0;
        }
        if c.len() > 1 {
            // c is a p-th power: take the p-th root coefficientwise (Frobenius is the identity on F_p).
            let root: Dense = c.iter().step_by(p as usize).copied().collect();
            self.sqf_rec(&root, mult * p as u32, out);
        }
    }

    /// Distinct-degree factorisation of a squarefree monic polynomial.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Dense, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: Dense = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod_poly(&h, self.p as u128, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Dense> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let p = self.p;
        loop {
            let a: Dense = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.len() <= 1 {
                continue;
            }
            let g0 = self.gcd(&a, f);
            let g = if g0.len() > 1 {
                g0
            } else {
                let b = if p == 2 {
                    // trace map a + a^2 + ... + a^{2^{d-1}}
                    let mut t = a.clone();
                    let mut acc = a.clone();
                    for _ in 1..d {
                        t = self.mulmod_poly(&t, &t, f);
                        acc = self.add(&acc, &t);
                    }
                    acc
                } else {
                    // a^{(p^d-1)/2} = (a^{1+p+...+p^{d-1}})^{(p-1)/2}
                    let mut t = a.clone();
                    let mut acc = a.clone();
                    for _ in 1..d {
                        t = self.powmod_poly(&t, p as u128, f);
                        acc = self.mulmod_poly(&acc, &t, f);
                    }
                    self.sub(&self.powmod_poly(&acc, ((p - 1) / 2) as u128, f), &[1])
                };
                self.gcd(&b, f)
            };
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Full factorisation of a monic polynomial, sorted by (degree, coefficients).
    pub fn factor(&self, f: &[u64], seed: u64) -> Vec<(Dense, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, m) in self.squarefree(f) {
            for (h, d) in self.distinct_degree(&g) {
                for q in self.equal_degree(&h, d, &mut rng) {
                    out.push((q, m));
                }
            }
        }
        // merge equal factors (cannot occur after squarefree splitting, but keep the list canonical)
        out.sort_by(|a, b| (a.0.len(), a.0.iter().rev().collect::<Vec<_>>()).cmp(&(b.0.len(), b.0.iter().rev().collect::<Vec<_>>())));
        out.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        out
    }

    pub fn is_irreducible(&self, f: &[u64]) -> bool {
        let f = self.monic(f);
        if f.len() <= 1 {
            return false;
        }
        let fac = self.factor(&f, 0);
        fac.len() == 1 && fac[0].1 == 1
    }
}

fn prime_of(ring: &Ring) -> Result<u64> {
    match ring {
        Ring::Fp(p) => Ok(*p),
        Ring::Zmod(m) if is_prime(*m) => Ok(*m),
        Ring::Zmod(m) => Err(Error::Precondition(format!("composite modulus {m}"))),
        other => Err(Error::Precondition(format!("factorisation needs a prime field, got {other}"))),
    }
}

pub(crate) fn to_dense(f: &UPoly) -> Dense {
    f.coeffs().iter().map(Elem::as_mod).collect()
}

pub(crate) fn from_dense(ring: &Ring, f: &[u64]) -> UPoly {
    UPoly::new(ring, f.iter().map(|&c| Elem::Mod(c)).collect())
}

/// Factors a monic polynomial over `F_p` into monic irreducibles with multiplicities.
pub fn factor_monic(f: &UPoly) -> Result<Vec<(UPoly, u32)>> {
    let p = prime_of(f.ring())?;
    if !f.is_monic() {
        return Err(Error::Precondition("polynomial is not monic".into()));
    }
    if f.degree() == Some(0) {
        return Err(Error::Precondition("degree 0".into()));
    }
    let fp = Fp { p };
    Ok(fp.factor(&to_dense(f), 0).into_iter().map(|(g, m)| (from_dense(f.ring(), &g), m)).collect())
}

pub fn is_irreducible_fp(f: &UPoly) -> Result<bool> {
    let p = prime_of(f.ring())?;
    Ok(Fp { p }.is_irreducible(&to_dense(f)))
}

/// Exhaustive irreducibility test: no monic divisor of degree `1..=deg/2`
/// (enumerates all of them, so only for small `p^{deg/2}`).
pub fn is_irreducible_exhaustive(fp: Fp, f: &[u64]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = fp.p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                g.push(k % fp.p);
                k /= fp.p;
            }
            g.push(1);
            if fp.rem(f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Monic irreducible polynomials of degree `d` over `F_p`, in increasing order.
pub fn irreducibles(p: u64, d: usize) -> Vec<Dense> {
    let fp = Fp { p };
    let count = p.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut g = Vec::with_capacity(d + 1);
        let mut k = idx;
        for _ in 0..d {
            g.push(k % p);
            k /= p;
        }
        g.push(1);
        if fp.is_irreducible(&g) {
            out.push(g);
        }
    }
    out
}

/// Roots of `f` in `F_p` by direct search (small `p` only).
pub fn roots_by_search(p: u64, f: &[u64]) -> Vec<u64> {
    let fp = Fp { p };
    (0..p).filter(|&x| fp.eval(f, x) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(f: &[(UPoly, u32)]) -> Vec<(String, u32)> {
        f.iter().map(|(g, m)| (g.display("x"), *m)).collect()
    }

    #[test]
    fn x2_plus_1() {
        let f = |p: u64| UPoly::parse(&Ring::Fp(p), "x", "x^2+1").unwrap();
        assert_eq!(show(&factor_monic(&f(2)).unwrap()), vec![("x + 1".into(), 2)]);
        assert_eq!(show(&factor_monic(&f(5)).unwrap()), vec![("x + 2".into(), 1), ("x + 3".into(), 1)]);
        assert_eq!(show(&factor_monic(&f(7)).unwrap()), vec![("x^2 + 1".into(), 1)]);
    }

    #[test]
    fn rejects_bad_input() {
        let f = UPoly::parse(&Ring::Fp(5), "x", "2*x^2+1").unwrap();
        assert!(factor_monic(&f).is_err());
        let g = UPoly::parse(&Ring::Zmod(6), "x", "x^2+1").unwrap();
        assert!(factor_monic(&g).is_err());
    }

    #[test]
    fn reexpansion_and_exhaustive_irreducibility() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 3, 5, 7, 11] {
            let fp = Fp { p };
            for _ in 0..60 {
                let deg = rng.gen_range(1..=8usize);
                let mut f: Dense = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                f.push(1);
                let fac = fp.factor(&f, 0);
                let mut prod: Dense = vec![1];
                for (g, m) in &fac {
                    for _ in 0..*m {
                        prod = fp.mul(&prod, g);
                    }
                    if g.len() <= 5 {
                        assert!(is_irreducible_exhaustive(fp, g), "{g:?} mod {p}");
                    }
                }
                assert_eq!(prod, f);
                for w in fac.windows(2) {
                    assert_ne!(w[0].0, w[1].0);
                }
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 2 over F_p is (p^2 - p)/2
        assert_eq!(irreducibles(5, 2).len(), 10);
        assert_eq!(irreducibles(3, 3).len(), 8);
    }
}
