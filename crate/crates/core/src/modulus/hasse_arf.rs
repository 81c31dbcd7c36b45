//! Rounding the modulus up does not change admissibility on `ℙ¹`:
//! `Adm(ℙ¹, r·P) = Adm(ℙ¹, ⌈r⌉·P)`, because `v_P(f - 1)` is an integer.
//! The check below evaluates both sides on functions with prescribed
//! valuation `0..=⌈r⌉+2` at `∞` and at finite points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::function::{is_admissible, Place, QDivisorP1};
use super::samples::{function_with_valuation, random_point};
use crate::exact::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct HasseArfReport {
    pub field: String,
    pub r: String,
    pub ceil_r: String,
    pub samples: usize,
    pub agreements: usize,
    pub admissible: usize,
    /// Observed `v_P(f - 1)` and how often.
    pub valuations: BTreeMap<i64, usize>,
    pub disagreements: Vec<String>,
    pub mechanism: String,
}

impl HasseArfReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.agreements == self.samples
    }
}

pub fn hasse_arf_check(field: &Ring, r: &BigRational, samples: usize, seed: u64) -> Result<HasseArfReport> {
    if !r.is_positive() {
        return Err(Error::Precondition("r must be positive".into()));
    }
    let ceil = r.ceil();
    let kmax = (ceil.to_integer() + BigInt::from(2)).try_into().unwrap_or(usize::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = HasseArfReport {
        field: field.to_string(),
        r: r.to_string(),
        ceil_r: ceil.to_string(),
        samples,
        agreements: 0,
        admissible: 0,
        valuations: BTreeMap::new(),
        disagreements: Vec::new(),
        mechanism: "valuations of f - 1 are integers, so v >= r exactly when v >= ceil(r)".into(),
    };
    for i in 0..samples {
        let k = i % (kmax + 1);
        let place = if i % 2 == 0 { Place::Infinity } else { Place::Finite(random_point(field, rng.gen_range(1..=2), &mut rng)) };
        let f = match &place {
            Place::Infinity => function_with_valuation(field, None, k, &mut rng),
            Place::Finite(p) => function_with_valuation(field, Some(p), k, &mut rng),
        };
        let v = f.minus_one()?.valuation(&place).unwrap_or(i64::MAX);
        *rep.valuations.entry(v).or_insert(0) += 1;
        let frac = QDivisorP1::new(field, [(place.clone(), r.clone())])?;
        let round = QDivisorP1::new(field, [(place.clone(), ceil.clone())])?;
        let a = is_admissible(&f, &frac)?;
        let b = is_admissible(&f, &round)?;
        if a == b && v == k as i64 {
            rep.agreements += 1;
            rep.admissible += usize::from(a);
        } else {
            rep.disagreements.push(format!("sample {i}: v = {v} (target {k}), r-admissible {a}, ceil-admissible {b}"));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulus::function::RationalFunctionP1;

    #[test]
    fn documented_cases() {
        let q = Ring::Q;
        let rat = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let f = RationalFunctionP1::parse(&q, "x^2+1", "x^2").unwrap();
        for (r, c) in [(rat(3, 2), rat(2, 1))] {
            let a = is_admissible(&f, &QDivisorP1::at_infinity(&q, r).unwrap()).unwrap();
            let b = is_admissible(&f, &QDivisorP1::at_infinity(&q, c).unwrap()).unwrap();
            assert!(a && b);
        }
        let g = RationalFunctionP1::parse(&q, "x+1", "x").unwrap();
        assert!(is_admissible(&g, &QDivisorP1::at_infinity(&q, rat(1, 2)).unwrap()).unwrap());
        assert!(is_admissible(&g, &QDivisorP1::at_infinity(&q, rat(1, 1)).unwrap()).unwrap());
    }

    #[test]
    fn sampled_agreement() {
        let rep = hasse_arf_check(&Ring::Fp(5), &BigRational::new(7.into(), 3.into()), 60, 1).unwrap();
        assert!(rep.passed(), "{:?}", rep.disagreements);
        assert!(rep.admissible > 0);
    }
}
