//! Boundaries of graph cycles on `(ℙ¹ ∖ {1}) × 𝔸¹`.
//!
//! For coprime `a, b` the curve `V = {t·b(y) = a(y)}` is the transposed graph
//! of `a/b : 𝔸¹ → ℙ¹`. Its fibres over `t = 0` and `t = ∞` differ by the
//! pushed-forward principal divisor `div(a/b)`. The fibres are read off the
//! defining polynomial in `F[t, y]`; the divisor is computed independently by
//! factoring `a` and `b`.

use serde::Serialize;

use super::cycle::ZeroCycle;
use super::function::{divisor_of, RationalFunctionP1};
use crate::exact::{MPoly, Ring, UPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct GraphBoundaryCheck {
    pub equation: String,
    pub boundary_zero: String,
    pub boundary_infinity: String,
    pub principal_divisor: String,
    /// `V` is finite over `ℙ¹ ∖ {1}`: the `y`-leading coefficient is a unit there.
    pub finite_away_from_one: bool,
    pub pass: bool,
}

/// The defining equation `t·b(y) - a(y)` in `F[t, y]`.
pub fn graph_equation(a: &UPoly, b: &UPoly) -> MPoly {
    let r = a.ring();
    let lift = |f: &UPoly| f.to_mpoly().remap(r, &[1], 2);
    MPoly::var(r, 0, 2).mul(r, &lift(b)).sub(r, &lift(a))
}

/// Whether a polynomial in `t` vanishes only at `t = 1` (up to a scalar it is a power of `t - 1`).
fn supported_at_one(f: &UPoly) -> bool {
    let r = f.ring();
    match f.degree() {
        None => false,
        Some(d) => {
            let m = match f.monic() {
                Ok(m) => m,
                Err(_) => return false,
            };
            m == UPoly::linear(r, &r.one()).pow(d as u64)
        }
    }
}

pub fn check_graph(a: &UPoly, b: &UPoly) -> Result<GraphBoundaryCheck> {
    let r = a.ring();
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("a and b must be nonzero".into()));
    }
    if !a.gcd(b)?.is_constant() {
        return Err(Error::Precondition("a and b must be coprime".into()));
    }
    let h = graph_equation(a, b);
    let in_t = h.coeffs_in(r, 0);
    let fibre0 = UPoly::from_mpoly(r, &in_t[0], 1)?;
    let fibre_inf = UPoly::from_mpoly(r, in_t.last().expect("nonzero"), 1)?;
    let lead_y = h.coeffs_in(r, 1).last().cloned().expect("nonzero");
    let finite = supported_at_one(&UPoly::from_mpoly(r, &lead_y, 0)?);

    let boundary0 = ZeroCycle::of_poly(&fibre0)?;
    let boundary_inf = if in_t.len() > 1 { ZeroCycle::of_poly(&fibre_inf)? } else { ZeroCycle::zero(r) };
    let expected = divisor_of(&RationalFunctionP1::new(a, b)?)?;
    let diff = boundary0.sub(&boundary_inf)?;
    let vars = ["t".to_string(), "y".to_string()];
    Ok(GraphBoundaryCheck {
        equation: h.display(r, &vars),
        boundary_zero: boundary0.display(),
        boundary_infinity: boundary_inf.display(),
        principal_divisor: expected.display(),
        finite_away_from_one: finite,
        pass: diff == expected,
    })
}

/// Ten fixed graphs over `F_p`, plus their checks.
pub fn graph_corpus(field: &Ring) -> Result<Vec<GraphBoundaryCheck>> {
    let pairs: [(&[i64], &[i64]); 10] = [
        (&[-2, 1], &[-3, 1]),
        (&[1, 0, 1], &[0, 1, 1]),
        (&[2, 0, 0, 1], &[1, 1, 0, 1]),
        (&[0, 1], &[1, 1]),
        (&[-1, 0, 1], &[3, 1, 1]),
        (&[1, 1, 1], &[2, 0, 1]),
        (&[0, 0, 1], &[1, 0, 1]),
        (&[3, 1, 0, 1], &[0, 2, 1, 1]),
        (&[2, 1], &[1]),
        (&[1, 0, 0, 0, 1], &[1, 1, 0, 0, 1]),
    ];
    let mut out = Vec::new();
    for (a, b) in pairs {
        let (a, b) = (UPoly::from_i64s(field, a), UPoly::from_i64s(field, b));
        let g = a.gcd(&b)?;
        out.push(check_graph(&a.div_exact(&g)?, &b.div_exact(&g)?)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes() {
        for p in [3, 5, 7] {
            let checks = graph_corpus(&Ring::Fp(p)).unwrap();
            assert_eq!(checks.len(), 10);
            for c in &checks {
                assert!(c.pass, "{c:?}");
            }
            assert!(checks[0].finite_away_from_one);
        }
    }

    #[test]
    fn linear_graph() {
        let f5 = Ring::Fp(5);
        let c = check_graph(&UPoly::from_i64s(&f5, &[-2, 1]), &UPoly::from_i64s(&f5, &[-3, 1])).unwrap();
        assert_eq!(c.principal_divisor, ZeroCycle::parse(&f5, "[x-2] - [x-3]").unwrap().display());
        assert!(c.pass);
    }
}
