//! Pullback along a finite correspondence `α = Σ m_i [V_i]` whose components
//! are finite free over the base: `α^* g = Σ m_i p_{i*} q_i^* g`. Here the
//! target is `𝔸¹_A`, `q_i^*` evaluates at the image `b_i ∈ B_i` of the
//! coordinate and `p_{i*}` is the transfer.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{transfer_ga, transfer_gm, transfer_witt};
use crate::error::{Error, Result};
use crate::exact::{Elem, FiniteFreeAlgebra, Ring, UPoly};
use crate::witt::BigWittVector;

#[derive(Clone, Debug)]
pub struct CycleComponent {
    pub mult: i64,
    pub algebra: Arc<FiniteFreeAlgebra>,
    /// The image of the coordinate `y` in `B_i`.
    pub point: Elem,
}

/// A point of `G(A[y])`.
#[derive(Clone, Debug)]
pub enum GroupElement {
    Ga(UPoly),
    Gm(UPoly),
    /// `1 + Σ_m g_m(y) t^m`.
    Witt(Vec<UPoly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupValue {
    Ga(Elem),
    Gm(Elem),
    Witt(BigWittVector),
}

impl GroupValue {
    pub fn to_json(&self, base: &Ring) -> Value {
        match self {
            GroupValue::Ga(e) => json!({"group": "Ga", "value": base.fmt_elem(e)}),
            GroupValue::Gm(e) => json!({"group": "Gm", "value": base.fmt_elem(e)}),
            GroupValue::Witt(w) => json!({"group": "W", "value": w.to_json()}),
        }
    }
}

/// `g(b)` for a polynomial over `A` and `b ∈ B`.
pub fn eval_in(alg: &FiniteFreeAlgebra, g: &UPoly, b: &Elem) -> Elem {
    g.coeffs().iter().rev().fold(Elem::Vec(vec![alg.base.zero(); alg.rank]), |acc, c| {
        let s = alg.mul(&acc, b);
        let k = alg.scalar(c);
        Ring::Alg(Arc::new(alg.clone())).add(&s, &k)
    })
}

pub fn transfer_cycle(comps: &[CycleComponent], g: &GroupElement) -> Result<GroupValue> {
    let base = comps.first().ok_or_else(|| Error::Precondition("empty cycle".into()))?.algebra.base.clone();
    if comps.iter().any(|c| c.algebra.base != base) {
        return Err(Error::RingMismatch(base.to_string(), "mixed bases".into()));
    }
    match g {
        GroupElement::Ga(f) => {
            let mut acc = base.zero();
            for c in comps {
                let v = transfer_ga(&c.algebra, &eval_in(&c.algebra, f, &c.point))?;
                acc = base.add(&acc, &base.mul_i64(&v, c.mult));
            }
            Ok(GroupValue::Ga(acc))
        }
        GroupElement::Gm(f) => {
            let mut acc = base.one();
            for c in comps {
                let v = transfer_gm(&c.algebra, &eval_in(&c.algebra, f, &c.point))?;
                let v = if c.mult < 0 { base.inv(&v).ok_or_else(|| Error::NotUnit(base.fmt_elem(&v)))? } else { v };
                acc = base.mul(&acc, &base.pow(&v, c.mult.unsigned_abs()));
            }
            Ok(GroupValue::Gm(acc))
        }
        GroupElement::Witt(fs) => {
            let mut acc = BigWittVector::identity(&base, fs.len());
            for c in comps {
                let br = Ring::Alg(c.algebra.clone());
                let coeffs = fs.iter().map(|f| eval_in(&c.algebra, f, &c.point)).collect();
                let w = BigWittVector::new(&br, coeffs)?;
                acc = acc.add(&transfer_witt(&c.algebra, &w)?.mul_int(c.mult))?;
            }
            Ok(GroupValue::Witt(acc))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_ring;

    fn alg(tag: &str) -> Arc<FiniteFreeAlgebra> {
        match parse_ring(tag).unwrap() {
            Ring::Alg(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn identity_component_with_multiplicity() {
        let a = alg("F7[x]/(x-2)");
        let comps = [CycleComponent { mult: 3, algebra: a.clone(), point: a.parse_elem("x").unwrap() }];
        let g = UPoly::parse(&Ring::Fp(7), "y", "y^2 + 1").unwrap();
        assert_eq!(transfer_cycle(&comps, &GroupElement::Ga(g.clone())).unwrap(), GroupValue::Ga(Ring::Fp(7).from_i64(15)));
        assert_eq!(transfer_cycle(&comps, &GroupElement::Gm(g)).unwrap(), GroupValue::Gm(Ring::Fp(7).from_i64(125)));
    }

    #[test]
    fn split_local_algebra() {
        // x^2(x - 1) splits into a double point at 0 and a simple point at 1.
        let f = Ring::Fp(5);
        let b = alg("F5[x]/(x^3-x^2)");
        let comps = [CycleComponent { mult: 1, algebra: b.clone(), point: b.parse_elem("x").unwrap() }];
        let g = UPoly::parse(&f, "y", "y^2 + 3*y + 2").unwrap();
        let expect_ga = f.add(&f.mul_i64(&g.eval(&f.zero()), 2), &g.eval(&f.one()));
        assert_eq!(transfer_cycle(&comps, &GroupElement::Ga(g.clone())).unwrap(), GroupValue::Ga(expect_ga));
        let expect_gm = f.mul(&f.pow(&g.eval(&f.zero()), 2), &g.eval(&f.one()));
        assert_eq!(transfer_cycle(&comps, &GroupElement::Gm(g.clone())).unwrap(), GroupValue::Gm(expect_gm));
        let ws = vec![g.clone(), UPoly::parse(&f, "y", "y").unwrap()];
        let at = |c: &Elem| BigWittVector::new(&f, ws.iter().map(|p| p.eval(c)).collect()).unwrap();
        let expect_w = at(&f.zero()).mul_int(2).add(&at(&f.one())).unwrap();
        assert_eq!(transfer_cycle(&comps, &GroupElement::Witt(ws)).unwrap(), GroupValue::Witt(expect_w));
    }
}
