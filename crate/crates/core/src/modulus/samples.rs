//! Seeded generators of polynomials, closed points and admissible functions.

use rand::Rng;

use super::function::RationalFunctionP1;
use super::point::{factor_over_field, ClosedPoint};
use crate::exact::{Elem, Ring, UPoly};

/// A random field element; over `ℚ` small integers with occasional halves.
pub fn random_scalar<R: Rng + ?Sized>(field: &Ring, rng: &mut R) -> Elem {
    match field {
        Ring::Q => {
            let n = rng.gen_range(-3i64..=3);
            if rng.gen_bool(0.2) {
                field.div_int(&field.from_i64(n), 2).expect("field")
            } else {
                field.from_i64(n)
            }
        }
        _ => field.random(rng, 3),
    }
}

pub fn random_nonzero<R: Rng + ?Sized>(field: &Ring, rng: &mut R) -> Elem {
    loop {
        let c = random_scalar(field, rng);
        if !field.is_zero(&c) {
            return c;
        }
    }
}

pub fn random_monic<R: Rng + ?Sized>(field: &Ring, deg: usize, rng: &mut R) -> UPoly {
    let mut c: Vec<Elem> = (0..deg).map(|_| random_scalar(field, rng)).collect();
    c.push(field.one());
    UPoly::new(field, c)
}

/// Degree exactly `deg`.
pub fn random_poly<R: Rng + ?Sized>(field: &Ring, deg: usize, rng: &mut R) -> UPoly {
    let mut c: Vec<Elem> = (0..deg).map(|_| random_scalar(field, rng)).collect();
    c.push(random_nonzero(field, rng));
    UPoly::new(field, c)
}

/// A random closed point of the given degree.
pub fn random_point<R: Rng + ?Sized>(field: &Ring, deg: usize, rng: &mut R) -> ClosedPoint {
    loop {
        let f = random_monic(field, deg, rng);
        let fac = factor_over_field(&f).expect("field");
        if fac.len() == 1 && fac[0].1 == 1 {
            return ClosedPoint::from_factor(f);
        }
    }
}

/// `f = (D + h)/D` with `D` monic of degree `> n` and `deg h < deg D - n`,
/// so that `v_∞(f - 1) ≥ n + 1`. With `avoid_origin`, also `D(0) ≠ 0` and
/// `h(0) = 0`, so that `f ≡ 1` at the origin as well.
pub fn admissible_function<R: Rng + ?Sized>(field: &Ring, n: usize, avoid_origin: bool, rng: &mut R) -> RationalFunctionP1 {
    let extra = rng.gen_range(0..=2usize) + usize::from(avoid_origin);
    let d = n + 1 + extra;
    let den = loop {
        let den = random_monic(field, d, rng);
        if !avoid_origin || !field.is_zero(&den.coeff(0)) {
            break den;
        }
    };
    let top = d - n - 1;
    let mut h: Vec<Elem> = (0..top).map(|_| random_scalar(field, rng)).collect();
    if avoid_origin && !h.is_empty() {
        h[0] = field.zero();
    }
    let h = UPoly::new(field, h);
    RationalFunctionP1::new(&den.add(&h), &den).expect("nonzero denominator")
}

/// The rational function with prescribed `v_P(f - 1) = k` at `∞` (when
/// `point` is `None`) or at a finite point.
pub fn function_with_valuation<R: Rng + ?Sized>(field: &Ring, point: Option<&ClosedPoint>, k: usize, rng: &mut R) -> RationalFunctionP1 {
    loop {
        let j = rng.gen_range(0..=2usize);
        let (num, den) = match point {
            None => {
                let h = random_poly(field, j, rng);
                let den = random_monic(field, j + k, rng);
                (den.add(&h), den)
            }
            Some(p) => {
                let pi = p.poly();
                let h = random_poly(field, j, rng);
                let den = random_monic(field, rng.gen_range(0..=2usize), rng);
                let coprime = |g: &UPoly| g.gcd(pi).map(|c| c.is_constant()).unwrap_or(false);
                if !coprime(&h) || !coprime(&den) {
                    continue;
                }
                (den.add(&pi.pow(k as u64).mul(&h)), den)
            }
        };
        if num.is_zero() {
            continue;
        }
        if let Ok(f) = RationalFunctionP1::new(&num, &den) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulus::function::{chow_reduce, divisor_of, is_admissible, Place, QDivisorP1};
    use num_rational::BigRational;
    use rand::SeedableRng;

    #[test]
    fn generated_functions_are_admissible_and_reduce_to_zero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for field in [Ring::Fp(3), Ring::Fp(7), Ring::Q] {
            for n in 1..=3usize {
                let d = QDivisorP1::at_infinity(&field, BigRational::new((2 * n as i64 + 1).into(), 2.into())).unwrap();
                let f = admissible_function(&field, n, false, &mut rng);
                assert!(is_admissible(&f, &d).unwrap());
                assert!(chow_reduce(&divisor_of(&f).unwrap(), &d).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn prescribed_valuations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let f5 = Ring::Fp(5);
        let p = random_point(&f5, 2, &mut rng);
        for k in 0..4 {
            let f = function_with_valuation(&f5, None, k, &mut rng);
            assert_eq!(f.minus_one().unwrap().valuation(&Place::Infinity), Some(k as i64));
            let g = function_with_valuation(&f5, Some(&p), k, &mut rng);
            assert_eq!(g.minus_one().unwrap().valuation(&Place::Finite(p.clone())), Some(k as i64));
        }
    }
}
