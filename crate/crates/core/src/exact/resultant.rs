//! Resultants via the Sylvester determinant.
//!
//! Convention: for `f = Σ f_i y^i` of degree `m` and `g` of degree `n` in the
//! elimination variable, the Sylvester matrix has `n` shifted copies of `f`'s
//! coefficients (highest first) in its top rows and `m` copies of `g`'s below.
//! Its determinant is `lc(f)^n · ∏_{f(α)=0} g(α)`, so for monic `f` the
//! resultant is the product of `g` over the roots of `f`, with no extra sign.

use super::matrix::det;
use super::mpoly::MPoly;
use super::ring::{Elem, Ring};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Sylvester matrix of two coefficient lists (lowest first) with entries in `r`.
pub fn sylvester(r: &Ring, f: &[Elem], g: &[Elem]) -> Vec<Vec<Elem>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![r.zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![r.zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn res_coeffs(r: &Ring, f: &[Elem], g: &[Elem]) -> Result<Elem> {
    if f.is_empty() || g.is_empty() {
        return Ok(r.zero());
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    if m == 0 && n == 0 {
        return Err(Error::NoEliminationVariable);
    }
    if m == 0 {
        return Ok(r.pow(&f[0], n as u64));
    }
    if n == 0 {
        return Ok(r.pow(&g[0], m as u64));
    }
    Ok(det(r, &sylvester(r, f, g)))
}

/// `Res_y(f, g)` for polynomials of a [`Ring::Poly`] ring, eliminating the
/// variable named `var`. The result lies in the same ring and does not
/// involve `var`.
pub fn resultant(ring: &Ring, f: &Elem, g: &Elem, var: &str) -> Result<Elem> {
    let pr = ring.poly_ring();
    let vi = pr.vars.iter().position(|v| v == var).ok_or_else(|| Error::Parse(format!("unknown variable {var}")))?;
    let base = &pr.base;
    let split = |p: &MPoly| -> Vec<Elem> { p.coeffs_in(base, vi).into_iter().map(Elem::Poly).collect() };
    res_coeffs(ring, &split(f.as_poly()), &split(g.as_poly()))
}

/// Resultant of two univariate polynomials over their common coefficient ring.
pub fn resultant_upoly(f: &UPoly, g: &UPoly) -> Result<Elem> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch(f.ring().to_string(), g.ring().to_string()));
    }
    res_coeffs(f.ring(), f.coeffs(), g.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_elem;

    fn res(ring: &str, f: &str, g: &str, var: &str) -> String {
        let r = crate::exact::parse::parse_ring(ring).unwrap();
        let out = resultant(&r, &parse_elem(&r, f).unwrap(), &parse_elem(&r, g).unwrap(), var).unwrap();
        r.fmt_elem(&out)
    }

    #[test]
    fn examples() {
        assert_eq!(res("Q[x,y,a]", "y - a", "x - y^2", "y"), "x - a^2");
        assert_eq!(res("F7[x,y]", "y^2 + 1", "x - y^2", "y"), "x^2 + 2*x + 1");
        assert_eq!(res("Z[x,y,z]", "y^2 - x", "z - y^3", "y"), "-x^3 + z^2");
    }

    #[test]
    fn constant_inputs() {
        let r = crate::exact::parse::parse_ring("Z[x,y]").unwrap();
        let c = parse_elem(&r, "3").unwrap();
        let d = parse_elem(&r, "x + 1").unwrap();
        assert_eq!(resultant(&r, &c, &d, "y"), Err(Error::NoEliminationVariable));
        let g = parse_elem(&r, "y^2 + x").unwrap();
        assert_eq!(r.fmt_elem(&resultant(&r, &c, &g, "y").unwrap()), "9");
    }
}
