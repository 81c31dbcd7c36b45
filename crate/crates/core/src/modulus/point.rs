//! Closed points of `𝔸¹` over `F_p` or `ℚ`.

use std::cmp::Ordering;

use crate::exact::{factor_monic, factor_monic_q, Ring, UPoly};
use crate::error::{Error, Result};

/// Irreducibility is verified up to this degree; beyond it points are
/// accepted with `certified = false`.
pub const CERTIFY_DEGREE: usize = 8;

/// A closed point, given by its monic irreducible minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedPoint {
    poly: UPoly,
    certified: bool,
}

pub(crate) fn check_field(r: &Ring) -> Result<()> {
    match r {
        Ring::Fp(_) | Ring::Q => Ok(()),
        Ring::Zmod(m) if crate::exact::arith::is_prime(*m) => Ok(()),
        other => Err(Error::Precondition(format!("base must be F_p or Q, got {other}"))),
    }
}

/// Monic irreducible factors with multiplicities over `F_p` or `ℚ`.
pub fn factor_over_field(f: &UPoly) -> Result<Vec<(UPoly, u32)>> {
    check_field(f.ring())?;
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let f = f.monic()?;
    match f.ring() {
        Ring::Q => factor_monic_q(&f),
        _ => factor_monic(&f),
    }
}

impl ClosedPoint {
    pub fn new(poly: UPoly) -> Result<Self> {
        check_field(poly.ring())?;
        if !poly.is_monic() || poly.degree() == Some(0) {
            return Err(Error::Precondition(format!("{poly} is not monic of positive degree")));
        }
        let d = poly.degree().unwrap_or(0);
        if d > CERTIFY_DEGREE {
            return Ok(ClosedPoint { poly, certified: false });
        }
        let fac = factor_over_field(&poly)?;
        if fac.len() != 1 || fac[0].1 != 1 {
            return Err(Error::Precondition(format!("{poly} is not irreducible")));
        }
        Ok(ClosedPoint { poly, certified: true })
    }

    /// Skips the irreducibility check; for factors that come out of a factorisation.
    pub(crate) fn from_factor(poly: UPoly) -> Self {
        ClosedPoint { poly, certified: true }
    }

    /// The rational point `x - a`.
    pub fn rational(field: &Ring, a: &crate::exact::Elem) -> Self {
        ClosedPoint { poly: UPoly::linear(field, a), certified: true }
    }

    pub fn parse(field: &Ring, s: &str) -> Result<Self> {
        Self::new(UPoly::parse(field, "x", s)?)
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn field(&self) -> &Ring {
        self.poly.ring()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    /// Whether this is the origin `x = 0`.
    pub fn is_origin(&self) -> bool {
        self.degree() == 1 && self.field().is_zero(&self.poly.coeff(0))
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, o: &Self) -> Ordering {
        self.poly.cmp(&o.poly)
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let f7 = Ring::Fp(7);
        assert!(ClosedPoint::parse(&f7, "x^2+1").is_ok());
        assert!(ClosedPoint::parse(&Ring::Fp(5), "x^2+1").is_err());
        assert!(ClosedPoint::parse(&Ring::Q, "x^2-2").is_ok());
        assert!(ClosedPoint::parse(&Ring::Q, "x^2-4").is_err());
        assert!(ClosedPoint::parse(&Ring::Z, "x-1").is_err());
        assert!(ClosedPoint::parse(&f7, "x").unwrap().is_origin());
    }
}
