//! Factorisation over ℚ for desk-scale inputs.
//!
//! Squarefree parts are factored modulo a single prime larger than twice the
//! Mignotte bound, so every true factor is the symmetric lift of a product of
//! modular factors; subsets are then recombined and checked by exact
//! division. No Hensel lifting is needed at this size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::is_prime;
use super::fp_poly::Fp;
use super::ring::{Elem, Ring};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Largest prime the modular step may use.
const PRIME_CAP: u64 = 1 << 62;

fn int_coeffs(f: &UPoly) -> Vec<BigInt> {
    // primitive integer multiple of a rational polynomial, positive leading coefficient
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.as_rat().denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c.as_rat() * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    out
}

fn to_q(c: &[BigInt]) -> UPoly {
    UPoly::new(&Ring::Q, c.iter().map(|x| Elem::Rat(BigRational::from_integer(x.clone()))).collect())
}

fn mod_p(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = c.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn symmetric_lift(c: &[u64], p: u64) -> Vec<BigInt> {
    c.iter().map(|&x| if x > p / 2 { BigInt::from(x) - BigInt::from(p) } else { BigInt::from(x) }).collect()
}

/// Factors a squarefree primitive integer polynomial of positive degree.
fn factor_squarefree_int(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    if n == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let lc = f[n].abs();
    // ||h||_inf <= 2^n ||f||_2 for any factor; candidates are scaled by lc
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << n) * &lc;
    let start = (&bound * 2u32 + 1u32).max(BigInt::from(1009));
    let mut p = start.to_u64().filter(|&s| s < PRIME_CAP).ok_or_else(|| Error::Precondition("coefficients too large for factorisation over Q".into()))?;
    let fp = loop {
        if is_prime(p) {
            let fp = Fp { p };
            let fm = mod_p(f, p);
            if fm.len() == n + 1 && fp.gcd(&fm, &fp.deriv(&fm)).len() == 1 {
                break fp;
            }
        }
        p += 1;
        if p >= PRIME_CAP {
            return Err(Error::Precondition("no suitable prime".into()));
        }
    };
    let p = fp.p;
    let modular: Vec<Vec<u64>> = fp.factor(&fp.monic(&mod_p(f, p)), 0).into_iter().map(|(g, _)| g).collect();
    let mut remaining: Vec<usize> = (0..modular.len()).collect();
    let mut g = f.to_vec();
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= remaining.len() {
        let mut found = false;
        for subset in subsets(&remaining, k) {
            let glc = BigInt::from(g[g.len() - 1].clone());
            let glc_mod = glc.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            let mut prod = vec![glc_mod];
            for &i in &subset {
                prod = fp.mul(&prod, &modular[i]);
            }
            let cand = symmetric_lift(&prod, p);
            let content = cand.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let cand: Vec<BigInt> = cand.into_iter().map(|c| c / &content).collect();
            let (q, r) = to_q(&g).divrem(&to_q(&cand))?;
            let integral = q.coeffs().iter().all(|c| c.as_rat().is_integer());
            if r.is_zero() && integral {
                let mut cand = cand;
                if cand.last().is_some_and(|c| c.is_negative()) {
                    cand.iter_mut().for_each(|c| *c = -c.clone());
                }
                out.push(cand);
                g = int_coeffs(&q);
                remaining.retain(|i| !subset.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            k += 1;
        }
    }
    out.push(g);
    Ok(out)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Factors a monic polynomial over ℚ into monic irreducibles with multiplicities,
/// sorted by degree and then by coefficients.
pub fn factor_monic_q(f: &UPoly) -> Result<Vec<(UPoly, u32)>> {
    if *f.ring() != Ring::Q {
        return Err(Error::RingMismatch(f.ring().to_string(), "Q".into()));
    }
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(Error::Precondition("expected a monic polynomial of positive degree".into()));
    }
    let mut out = Vec::new();
    for (g, m) in f.squarefree_char0()? {
        for h in factor_squarefree_int(&int_coeffs(&g))? {
            out.push((to_q(&h).monic()?, m));
        }
    }
    out.sort_by(|a, b| (a.0.degree(), a.0.coeffs().iter().rev().collect::<Vec<_>>()).cmp(&(b.0.degree(), b.0.coeffs().iter().rev().collect::<Vec<_>>())));
    Ok(out)
}

pub fn is_irreducible_q(f: &UPoly) -> Result<bool> {
    let fac = factor_monic_q(&f.monic()?)?;
    Ok(fac.len() == 1 && fac[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(f: &[(UPoly, u32)]) -> Vec<(String, u32)> {
        f.iter().map(|(g, m)| (g.display("x"), *m)).collect()
    }

    #[test]
    fn small_cases() {
        let q = Ring::Q;
        let f = UPoly::parse(&q, "x", "(x^2-1)*(x^2-4)").unwrap();
        assert_eq!(show(&factor_monic_q(&f).unwrap()), vec![("x - 2".into(), 1), ("x - 1".into(), 1), ("x + 1".into(), 1), ("x + 2".into(), 1)]);
        let g = UPoly::parse(&q, "x", "x^4 + 1").unwrap();
        assert_eq!(factor_monic_q(&g).unwrap().len(), 1);
        let h = UPoly::parse(&q, "x", "(x^2 - 2)*(x^2 + x + 1/3)^2").unwrap();
        assert_eq!(show(&factor_monic_q(&h).unwrap()), vec![("x^2 - 2".into(), 1), ("x^2 + x + 1/3".into(), 2)]);
        let swinnerton = UPoly::parse(&q, "x", "x^4 - 10*x^2 + 1").unwrap();
        assert!(is_irreducible_q(&swinnerton).unwrap());
        let split = UPoly::parse(&q, "x", "(x^3 - 2)*(x^3 - 3)").unwrap();
        assert_eq!(factor_monic_q(&split).unwrap().len(), 2);
    }
}
