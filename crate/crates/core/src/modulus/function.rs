//! Rational functions on `ℙ¹`, `ℚ`-divisors supported on closed points and
//! `∞`, admissibility and the Chow group of relative zero-cycles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cycle::ZeroCycle;
use super::point::{check_field, ClosedPoint};
use crate::exact::{Elem, Ring, UPoly};
use crate::error::{Error, Result};
use crate::witt::{BigWittVector, HatWittVector};

/// A place of `ℙ¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(ClosedPoint),
    Infinity,
}

/// A divisor with positive rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDivisorP1 {
    field: Ring,
    coeffs: BTreeMap<Place, BigRational>,
}

impl QDivisorP1 {
    pub fn new(field: &Ring, entries: impl IntoIterator<Item = (Place, BigRational)>) -> Result<Self> {
        check_field(field)?;
        let mut coeffs = BTreeMap::new();
        for (p, c) in entries {
            if !c.is_positive() {
                return Err(Error::Precondition("divisor coefficients must be positive".into()));
            }
            if let Place::Finite(pt) = &p {
                if pt.field() != field {
                    return Err(Error::RingMismatch(pt.field().to_string(), field.to_string()));
                }
            }
            *coeffs.entry(p).or_insert_with(BigRational::zero) += c;
        }
        Ok(QDivisorP1 { field: field.clone(), coeffs })
    }

    /// `r·∞`.
    pub fn at_infinity(field: &Ring, r: BigRational) -> Result<Self> {
        Self::new(field, [(Place::Infinity, r)])
    }

    /// `ε·0 + r·∞`.
    pub fn with_origin(field: &Ring, eps: BigRational, r: BigRational) -> Result<Self> {
        let origin = ClosedPoint::rational(field, &field.zero());
        Self::new(field, [(Place::Finite(origin), eps), (Place::Infinity, r)])
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Place, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, p: &Place) -> Option<&BigRational> {
        self.coeffs.get(p)
    }

    /// Same support, coefficients rounded up.
    pub fn round_up(&self) -> Self {
        QDivisorP1 { field: self.field.clone(), coeffs: self.coeffs.iter().map(|(p, c)| (p.clone(), c.ceil())).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }
}

/// `c · num / den` with `num`, `den` monic and coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionP1 {
    scalar: Elem,
    num: UPoly,
    den: UPoly,
}

impl RationalFunctionP1 {
    pub fn new(num: &UPoly, den: &UPoly) -> Result<Self> {
        check_field(num.ring())?;
        if num.ring() != den.ring() {
            return Err(Error::RingMismatch(num.ring().to_string(), den.ring().to_string()));
        }
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let r = num.ring();
        if num.is_zero() {
            return Ok(RationalFunctionP1 { scalar: r.zero(), num: UPoly::one(r), den: UPoly::one(r) });
        }
        let g = num.gcd(den)?;
        let n = num.div_exact(&g)?;
        let d = den.div_exact(&g)?;
        let scalar = r.mul(&n.lc(), &r.inv(&d.lc()).expect("field"));
        Ok(RationalFunctionP1 { scalar, num: n.monic()?, den: d.monic()? })
    }

    pub fn polynomial(f: &UPoly) -> Result<Self> {
        Self::new(f, &UPoly::one(f.ring()))
    }

    pub fn parse(field: &Ring, num: &str, den: &str) -> Result<Self> {
        Self::new(&UPoly::parse(field, "x", num)?, &UPoly::parse(field, "x", den)?)
    }

    pub fn field(&self) -> &Ring {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.field().is_zero(&self.scalar)
    }

    pub fn is_one(&self) -> bool {
        self.field().is_one(&self.scalar) && self.num.is_constant() && self.den.is_constant()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn scalar(&self) -> &Elem {
        &self.scalar
    }

    /// `f - 1`.
    pub fn minus_one(&self) -> Result<Self> {
        let top = self.num.scale(&self.scalar).sub(&self.den);
        Self::new(&top, &self.den)
    }

    /// Order of vanishing at a place; `None` for the zero function.
    pub fn valuation(&self, p: &Place) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match p {
            Place::Infinity => self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64,
            Place::Finite(pt) => multiplicity(&self.num, pt.poly()) as i64 - multiplicity(&self.den, pt.poly()) as i64,
        })
    }

    /// `div(f)` restricted to `𝔸¹`.
    pub fn divisor(&self) -> Result<ZeroCycle> {
        if self.is_zero() {
            return Err(Error::Precondition("divisor of the zero function".into()));
        }
        ZeroCycle::of_poly(&self.num)?.sub(&ZeroCycle::of_poly(&self.den)?)
    }
}

fn multiplicity(f: &UPoly, pi: &UPoly) -> u32 {
    let mut f = f.clone();
    let mut k = 0;
    while !f.is_zero() {
        match f.divrem(pi) {
            Ok((q, r)) if r.is_zero() => {
                f = q;
                k += 1;
            }
            _ => break,
        }
    }
    k
}

/// `div(f)` on `𝔸¹`.
pub fn divisor_of(f: &RationalFunctionP1) -> Result<ZeroCycle> {
    f.divisor()
}

/// Whether `v_P(f - 1) ≥ D_P` at every place of `|D|` (this forces `f` to be
/// a unit there). `f = 1` is admissible for every `D`.
pub fn is_admissible(f: &RationalFunctionP1, d: &QDivisorP1) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Precondition("f = 0".into()));
    }
    if f.field() != d.field() {
        return Err(Error::RingMismatch(f.field().to_string(), d.field().to_string()));
    }
    let g = f.minus_one()?;
    if g.is_zero() {
        return Ok(true);
    }
    for (p, c) in d.entries() {
        let v = g.valuation(p).expect("nonzero");
        if BigRational::from_integer(BigInt::from(v)) < *c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical form of a class in `CH_0(ℙ¹, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChowClass {
    /// `D = r·∞`: `(φ(c) ∈ 𝕎_n, deg c)` with `n = ⌈r⌉ - 1`.
    Witt(BigWittVector, i64),
    /// `D = ε·0 + r·∞`: `φ̂(c) ∈ Ŵ_n`.
    Hat(HatWittVector),
}

impl ChowClass {
    pub fn is_zero(&self) -> bool {
        match self {
            ChowClass::Witt(w, d) => w.is_identity() && *d == 0,
            ChowClass::Hat(h) => h.witt.is_identity() && h.degree == 0 && h.ring().is_one(h.unit()),
        }
    }
}

/// Reduces a cycle avoiding `|D|` to its canonical form, for `D = r·∞` or
/// `D = ε·0 + r·∞`.
pub fn chow_reduce(c: &ZeroCycle, d: &QDivisorP1) -> Result<ChowClass> {
    let r = d.coeff(&Place::Infinity).ok_or_else(|| Error::Precondition("modulus must contain ∞".into()))?;
    let mut has_origin = false;
    for p in d.support() {
        match p {
            Place::Infinity => {}
            Place::Finite(pt) if pt.is_origin() => has_origin = true,
            Place::Finite(_) => return Err(Error::Precondition("modulus must be supported on 0 and ∞".into())),
        }
    }
    for (pt, _) in c.terms() {
        if d.coeff(&Place::Finite(pt.clone())).is_some() {
            return Err(Error::Precondition(format!("cycle meets the modulus at [{}]", pt.poly().display("x"))));
        }
    }
    let n = usize::try_from(r.ceil().to_integer() - BigInt::one()).map_err(|_| Error::Precondition("bad modulus".into()))?;
    if has_origin {
        Ok(ChowClass::Hat(c.phi_hat(n)?))
    } else {
        Ok(ChowClass::Witt(c.phi(n), c.degree()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn admissibility() {
        let q = Ring::Q;
        let f = RationalFunctionP1::parse(&q, "x^2+1", "x^2").unwrap();
        assert!(is_admissible(&f, &QDivisorP1::at_infinity(&q, rat(2, 1)).unwrap()).unwrap());
        assert!(!is_admissible(&f, &QDivisorP1::at_infinity(&q, rat(5, 2)).unwrap()).unwrap());
        let x = RationalFunctionP1::parse(&q, "x", "1").unwrap();
        assert!(!is_admissible(&x, &QDivisorP1::at_infinity(&q, rat(1, 1)).unwrap()).unwrap());
        let one = RationalFunctionP1::parse(&q, "1", "1").unwrap();
        assert!(is_admissible(&one, &QDivisorP1::with_origin(&q, rat(1, 2), rat(7, 1)).unwrap()).unwrap());
        let zero = RationalFunctionP1::parse(&q, "0", "1").unwrap();
        assert!(is_admissible(&zero, &QDivisorP1::at_infinity(&q, rat(1, 1)).unwrap()).is_err());
    }

    #[test]
    fn divisors() {
        let q = Ring::Q;
        let f = RationalFunctionP1::parse(&q, "x^2-1", "x^2-4").unwrap();
        assert_eq!(divisor_of(&f).unwrap(), ZeroCycle::parse(&q, "[x-1] + [x+1] - [x-2] - [x+2]").unwrap());
        let f5 = Ring::Fp(5);
        let g = RationalFunctionP1::parse(&f5, "x^2+1", "1").unwrap();
        assert_eq!(divisor_of(&g).unwrap(), ZeroCycle::parse(&f5, "[x+2] + [x+3]").unwrap());
        assert!(divisor_of(&RationalFunctionP1::parse(&f5, "1", "1").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn reductions() {
        let f5 = Ring::Fp(5);
        let c = divisor_of(&RationalFunctionP1::parse(&f5, "x^2+1", "x^2").unwrap()).unwrap();
        let d = QDivisorP1::at_infinity(&f5, rat(3, 2)).unwrap();
        assert!(chow_reduce(&c, &d).unwrap().is_zero());
        let a = ZeroCycle::parse(&f5, "[x-3]").unwrap();
        let d3 = QDivisorP1::at_infinity(&f5, rat(7, 2)).unwrap();
        assert_eq!(chow_reduce(&a, &d3).unwrap(), ChowClass::Witt(BigWittVector::teichmuller(&f5, &f5.from_i64(3), 3), 1));
        assert!(chow_reduce(&ZeroCycle::zero(&f5), &d3).unwrap().is_zero());
        let dh = QDivisorP1::with_origin(&f5, rat(1, 2), rat(3, 2)).unwrap();
        assert!(chow_reduce(&ZeroCycle::parse(&f5, "[x]").unwrap(), &dh).is_err());
    }
}
