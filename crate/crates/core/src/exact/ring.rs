//! Base rings and their elements.
//!
//! A [`Ring`] is a runtime tag; an [`Elem`] is a bare value that only means
//! something relative to a ring. Kernels pass the ring alongside raw values
//! for speed, while [`RingElement`] bundles the two and refuses to combine
//! values living in different rings.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::algebra::FiniteFreeAlgebra;
use super::arith;
use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Runtime ring tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
    /// ℤ/m for m ≥ 2.
    Zmod(u64),
    /// F_p, p prime.
    Fp(u64),
    /// ℤ localised at p: rationals whose denominators are prime to p.
    ZLocal(u64),
    Poly(Arc<PolyRing>),
    Alg(Arc<FiniteFreeAlgebra>),
}

/// A polynomial ring over a non-polynomial base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub base: Ring,
    pub vars: Vec<String>,
}

/// A value relative to some [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Poly(MPoly),
    Vec(Vec<Elem>),
}

impl Elem {
    pub fn int(v: i64) -> Elem {
        Elem::Int(BigInt::from(v))
    }

    pub fn as_int(&self) -> &BigInt {
        match self {
            Elem::Int(v) => v,
            other => panic!("expected an integer, got {other:?}"),
        }
    }

    pub fn as_rat(&self) -> &BigRational {
        match self {
            Elem::Rat(v) => v,
            other => panic!("expected a rational, got {other:?}"),
        }
    }

    pub fn as_mod(&self) -> u64 {
        match self {
            Elem::Mod(v) => *v,
            other => panic!("expected a residue, got {other:?}"),
        }
    }

    pub fn as_poly(&self) -> &MPoly {
        match self {
            Elem::Poly(v) => v,
            other => panic!("expected a polynomial, got {other:?}"),
        }
    }

    pub fn as_vec(&self) -> &[Elem] {
        match self {
            Elem::Vec(v) => v,
            other => panic!("expected a coordinate vector, got {other:?}"),
        }
    }
}

fn rat_to_mod(r: &BigRational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let n = r.numer().mod_floor(&mb).to_u64()?;
    let d = r.denom().mod_floor(&mb).to_u64()?;
    let di = arith::invmod(d, m)?;
    Some(arith::mulmod(n, di, m))
}

impl Ring {
    pub fn zmod(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::Precondition(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Ring::Zmod(m))
    }

    pub fn fp(p: u64) -> Result<Ring> {
        if !arith::is_prime(p) {
            return Err(Error::Precondition(format!("composite modulus {p}")));
        }
        if p >= 1 << 32 {
            return Err(Error::Precondition(format!("prime {p} too large")));
        }
        Ok(Ring::Fp(p))
    }

    pub fn zlocal(p: u64) -> Result<Ring> {
        if !arith::is_prime(p) {
            return Err(Error::Precondition(format!("composite modulus {p}")));
        }
        Ok(Ring::ZLocal(p))
    }

    pub fn poly(base: Ring, vars: &[&str]) -> Ring {
        assert!(!matches!(base, Ring::Poly(_)), "nested polynomial rings are flattened by construction");
        Ring::Poly(Arc::new(PolyRing {
            base,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }))
    }

    pub fn poly_ring(&self) -> &PolyRing {
        match self {
            Ring::Poly(pr) => pr,
            other => panic!("{other} is not a polynomial ring"),
        }
    }

    pub fn algebra(&self) -> &FiniteFreeAlgebra {
        match self {
            Ring::Alg(a) => a,
            other => panic!("{other} is not a finite free algebra"),
        }
    }

    /// Modulus of a residue ring, if any.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Zmod(m) | Ring::Fp(m) => Some(*m),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Q | Ring::Fp(_))
    }

    /// Characteristic when it is a small positive integer (0 for characteristic zero).
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Z | Ring::Q | Ring::ZLocal(_) => 0,
            Ring::Zmod(m) | Ring::Fp(m) => *m,
            Ring::Poly(pr) => pr.base.characteristic(),
            Ring::Alg(a) => a.base.characteristic(),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Z => Elem::Int(BigInt::zero()),
            Ring::Q | Ring::ZLocal(_) => Elem::Rat(BigRational::zero()),
            Ring::Zmod(_) | Ring::Fp(_) => Elem::Mod(0),
            Ring::Poly(_) => Elem::Poly(MPoly::zero()),
            Ring::Alg(a) => Elem::Vec(vec![a.base.zero(); a.rank]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self {
            Ring::Z => Elem::Int(v.clone()),
            Ring::Q | Ring::ZLocal(_) => Elem::Rat(BigRational::from_integer(v.clone())),
            Ring::Zmod(m) | Ring::Fp(m) => Elem::Mod(v.mod_floor(&BigInt::from(*m)).to_u64().unwrap()),
            Ring::Poly(pr) => {
                let c = pr.base.from_bigint(v);
                Elem::Poly(MPoly::constant(&pr.base, c, pr.vars.len()))
            }
            Ring::Alg(a) => {
                let c = a.base.from_bigint(v);
                Elem::Vec(a.unit.iter().map(|u| a.base.mul(u, &c)).collect())
            }
        }
    }

    /// Image of a rational number, when its denominator is invertible here.
    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        let fail = || Error::NotUnit(format!("denominator {} in {}", r.denom(), self));
        match self {
            Ring::Z => {
                if r.is_integer() {
                    Ok(Elem::Int(r.to_integer()))
                } else {
                    Err(fail())
                }
            }
            Ring::Q => Ok(Elem::Rat(r.clone())),
            Ring::ZLocal(p) => {
                if (r.denom() % BigInt::from(*p)).is_zero() {
                    Err(fail())
                } else {
                    Ok(Elem::Rat(r.clone()))
                }
            }
            Ring::Zmod(m) | Ring::Fp(m) => rat_to_mod(r, *m).map(Elem::Mod).ok_or_else(fail),
            Ring::Poly(pr) => {
                let c = pr.base.from_rational(r)?;
                Ok(Elem::Poly(MPoly::constant(&pr.base, c, pr.vars.len())))
            }
            Ring::Alg(a) => {
                let c = a.base.from_rational(r)?;
                Ok(Elem::Vec(a.unit.iter().map(|u| a.base.mul(u, &c)).collect()))
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(v) => v.is_zero(),
            Elem::Rat(v) => v.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Poly(p) => p.is_zero(),
            Elem::Vec(v) => {
                let base = &self.algebra().base;
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Ring::Zmod(m) | Ring::Fp(m), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(arith::addmod(*x, *y, *m)),
            (Ring::Poly(pr), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.add(&pr.base, y)),
            (Ring::Alg(al), Elem::Vec(x), Elem::Vec(y)) => {
                Elem::Vec(x.iter().zip(y).map(|(u, v)| al.base.add(u, v)).collect())
            }
            _ => panic!("value/ring mismatch in {self}: {a:?} + {b:?}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (_, Elem::Int(x)) => Elem::Int(-x),
            (_, Elem::Rat(x)) => Elem::Rat(-x),
            (Ring::Zmod(m) | Ring::Fp(m), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { m - x }),
            (Ring::Poly(pr), Elem::Poly(x)) => Elem::Poly(x.neg(&pr.base)),
            (Ring::Alg(al), Elem::Vec(x)) => Elem::Vec(x.iter().map(|u| al.base.neg(u)).collect()),
            _ => panic!("value/ring mismatch in {self}: -{a:?}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x - y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Ring::Zmod(m) | Ring::Fp(m), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(arith::submod(*x, *y, *m)),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Ring::Zmod(m) | Ring::Fp(m), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(arith::mulmod(*x, *y, *m)),
            (Ring::Poly(pr), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.mul(&pr.base, y)),
            (Ring::Alg(al), Elem::Vec(_), Elem::Vec(_)) => al.mul(a, b),
            _ => panic!("value/ring mismatch in {self}: {a:?} * {b:?}"),
        }
    }

    pub fn mul_i64(&self, a: &Elem, k: i64) -> Elem {
        self.mul(a, &self.from_i64(k))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Multiplicative inverse, when it exists.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match (self, a) {
            (Ring::Z, Elem::Int(x)) => {
                if x.is_one() || (-x).is_one() {
                    Some(Elem::Int(x.clone()))
                } else {
                    None
                }
            }
            (Ring::Q, Elem::Rat(x)) => (!x.is_zero()).then(|| Elem::Rat(x.recip())),
            (Ring::ZLocal(p), Elem::Rat(x)) => {
                let pb = BigInt::from(*p);
                (!x.is_zero() && !(x.numer() % &pb).is_zero()).then(|| Elem::Rat(x.recip()))
            }
            (Ring::Zmod(m) | Ring::Fp(m), Elem::Mod(x)) => arith::invmod(*x, *m).map(Elem::Mod),
            (Ring::Poly(pr), Elem::Poly(x)) => {
                if x.is_constant() {
                    let c = x.constant_term(&pr.base);
                    pr.base.inv(&c).map(|ci| Elem::Poly(MPoly::constant(&pr.base, ci, pr.vars.len())))
                } else {
                    None
                }
            }
            (Ring::Alg(al), Elem::Vec(_)) => al.inv(a),
            _ => panic!("value/ring mismatch in {self}: inv {a:?}"),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_some()
    }

    /// Exact division by the integer `k`, i.e. multiplication by `1/k` when
    /// `k` is invertible, or exact integral division over ℤ.
    pub fn div_int(&self, a: &Elem, k: u64) -> Option<Elem> {
        match (self, a) {
            (Ring::Z, Elem::Int(x)) => {
                let kb = BigInt::from(k);
                (x % &kb).is_zero().then(|| Elem::Int(x / kb))
            }
            (Ring::Q, Elem::Rat(x)) => Some(Elem::Rat(x / BigRational::from_integer(BigInt::from(k)))),
            (Ring::ZLocal(p), Elem::Rat(x)) => {
                if k % p == 0 {
                    let q = x / BigRational::from_integer(BigInt::from(k));
                    (!(q.denom() % BigInt::from(*p)).is_zero()).then_some(Elem::Rat(q))
                } else {
                    Some(Elem::Rat(x / BigRational::from_integer(BigInt::from(k))))
                }
            }
            (Ring::Zmod(m) | Ring::Fp(m), Elem::Mod(x)) => {
                arith::invmod(k % m, *m).map(|ki| Elem::Mod(arith::mulmod(*x, ki, *m)))
            }
            (Ring::Poly(pr), Elem::Poly(x)) => x.try_map_coeffs(&pr.base, |c| pr.base.div_int(c, k)).map(Elem::Poly),
            (Ring::Alg(al), Elem::Vec(v)) => {
                let out: Option<Vec<Elem>> = v.iter().map(|c| al.base.div_int(c, k)).collect();
                out.map(Elem::Vec)
            }
            _ => panic!("value/ring mismatch in {self}: {a:?} / {k}"),
        }
    }

    /// Whether `a` is a well-formed canonical value of this ring.
    pub fn contains(&self, a: &Elem) -> bool {
        match (self, a) {
            (Ring::Z, Elem::Int(_)) | (Ring::Q, Elem::Rat(_)) => true,
            (Ring::ZLocal(p), Elem::Rat(x)) => !(x.denom() % BigInt::from(*p)).is_zero(),
            (Ring::Zmod(m) | Ring::Fp(m), Elem::Mod(x)) => x < m,
            (Ring::Poly(pr), Elem::Poly(x)) => x.is_valid(&pr.base, pr.vars.len()),
            (Ring::Alg(al), Elem::Vec(v)) => v.len() == al.rank && v.iter().all(|c| al.base.contains(c)),
            _ => false,
        }
    }

    /// A random element; integers are drawn from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Elem {
        match self {
            Ring::Z => self.from_i64(rng.gen_range(-bound..=bound)),
            Ring::Q => {
                let n = rng.gen_range(-bound..=bound);
                let d = rng.gen_range(1..=bound.max(1));
                Elem::Rat(BigRational::new(n.into(), d.into()))
            }
            Ring::ZLocal(p) => {
                let n = rng.gen_range(-bound..=bound);
                let mut d = rng.gen_range(1..=bound.max(1));
                while d as u64 % p == 0 {
                    d += 1;
                }
                Elem::Rat(BigRational::new(n.into(), d.into()))
            }
            Ring::Zmod(m) | Ring::Fp(m) => Elem::Mod(rng.gen_range(0..*m)),
            Ring::Poly(pr) => {
                let nv = pr.vars.len();
                let mut acc = MPoly::zero();
                for _ in 0..3 {
                    let exps: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..=2)).collect();
                    let c = pr.base.random(rng, bound);
                    acc = acc.add(&pr.base, &MPoly::monomial(&pr.base, exps, c));
                }
                Elem::Poly(acc)
            }
            Ring::Alg(al) => Elem::Vec((0..al.rank).map(|_| al.base.random(rng, bound)).collect()),
        }
    }

    /// Renders a value of this ring.
    pub fn fmt_elem(&self, a: &Elem) -> String {
        match (self, a) {
            (_, Elem::Int(x)) => x.to_string(),
            (_, Elem::Rat(x)) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (_, Elem::Mod(x)) => x.to_string(),
            (Ring::Poly(pr), Elem::Poly(p)) => p.display(&pr.base, &pr.vars),
            (Ring::Alg(al), Elem::Vec(_)) => al.fmt_elem(a),
            _ => format!("{a:?}"),
        }
    }

    /// Parses a value of this ring (see [`crate::exact::parse`]).
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        super::parse::parse_elem(self, s)
    }

    /// Sign-aware rendering used when a coefficient is printed inside a sum:
    /// returns `(negative, magnitude)`.
    pub(crate) fn split_sign(&self, a: &Elem) -> (bool, String) {
        match a {
            Elem::Int(x) if x.is_negative() => (true, (-x).to_string()),
            Elem::Rat(x) if x.is_negative() => (true, self.fmt_elem(&Elem::Rat(-x))),
            _ => (false, self.fmt_elem(a)),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Zmod(m) => write!(f, "Z/{m}"),
            Ring::Fp(p) => write!(f, "F{p}"),
            Ring::ZLocal(p) => write!(f, "Z({p})"),
            Ring::Poly(pr) => write!(f, "{}[{}]", pr.base, pr.vars.join(",")),
            Ring::Alg(a) => write!(f, "{}", a.name),
        }
    }
}

/// A value bundled with its ring; binary operations check the tags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    value: Elem,
}

impl RingElement {
    pub fn new(ring: Ring, value: Elem) -> Result<Self> {
        if !ring.contains(&value) {
            return Err(Error::Shape(format!("{value:?} is not a value of {ring}")));
        }
        Ok(RingElement { ring, value })
    }

    pub fn parse(ring: &Ring, s: &str) -> Result<Self> {
        let value = ring.parse_elem(s)?;
        Ok(RingElement { ring: ring.clone(), value })
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Self {
        RingElement { ring: ring.clone(), value: ring.from_i64(v) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(RingElement { ring: self.ring.clone(), value: self.ring.add(&self.value, &other.value) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(RingElement { ring: self.ring.clone(), value: self.ring.sub(&self.value, &other.value) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(RingElement { ring: self.ring.clone(), value: self.ring.mul(&self.value, &other.value) })
    }

    pub fn neg(&self) -> Self {
        RingElement { ring: self.ring.clone(), value: self.ring.neg(&self.value) }
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.ring.inv(&self.value).ok_or_else(|| Error::NotUnit(self.to_string()))?;
        Ok(RingElement { ring: self.ring.clone(), value: v })
    }

    pub fn pow(&self, e: u64) -> Self {
        RingElement { ring: self.ring.clone(), value: self.ring.pow(&self.value, e) }
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.fmt_elem(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        let r = Ring::zmod(12).unwrap();
        let a = r.from_i64(-1);
        assert_eq!(a, Elem::Mod(11));
        assert_eq!(r.inv(&r.from_i64(5)), Some(Elem::Mod(5)));
        assert_eq!(r.inv(&r.from_i64(4)), None);
        assert!(Ring::fp(9).is_err());
    }

    #[test]
    fn localisation_guard() {
        let r = Ring::zlocal(3).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert!(r.from_rational(&half).is_ok());
        let third = BigRational::new(1.into(), 3.into());
        assert!(r.from_rational(&third).is_err());
        assert!(r.div_int(&r.one(), 3).is_none());
        assert!(r.div_int(&r.from_i64(6), 3).is_some());
    }

    #[test]
    fn tagged_mismatch_is_an_error() {
        let a = RingElement::from_i64(&Ring::Fp(5), 2);
        let b = RingElement::from_i64(&Ring::Fp(7), 2);
        assert!(matches!(a.add(&b), Err(Error::RingMismatch(_, _))));
        let c = RingElement::from_i64(&Ring::Fp(5), 3);
        assert_eq!(a.mul(&c).unwrap().to_string(), "1");
    }
}
