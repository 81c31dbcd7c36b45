use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wittkit::exact::parse_ring;
use wittkit::witt::idempotent_apply;
use wittkit::{BigWittVector, HatWittVector, PTypicalWitt, Ring};

const RINGS: [&str; 5] = ["Z", "Q", "Z/12", "F7", "F5[x]"];

fn witt(r: &Ring, n: usize, g: &mut ChaCha8Rng) -> BigWittVector {
    BigWittVector::new(r, (0..n).map(|_| r.random(g, 4)).collect()).unwrap()
}

fn ptyp(p: u64, r: &Ring, n: usize, g: &mut ChaCha8Rng) -> PTypicalWitt {
    PTypicalWitt::new(p, r, (0..n).map(|_| r.random(g, 4)).collect()).unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_a_commutative_unital_product(tag in 0..RINGS.len(), n in 1usize..=6, seed in any::<u64>()) {
        let r = parse_ring(RINGS[tag]).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (witt(&r, n, &mut g), witt(&r, n, &mut g), witt(&r, n, &mut g));
        prop_assert_eq!(u.star(&v).unwrap(), v.star(&u).unwrap());
        prop_assert_eq!(u.star(&v).unwrap().star(&w).unwrap(), u.star(&v.star(&w).unwrap()).unwrap());
        prop_assert_eq!(BigWittVector::one(&r, n).star(&u).unwrap(), u.clone());
        prop_assert_eq!(u.star(&v.add(&w).unwrap()).unwrap(), u.star(&v).unwrap().add(&u.star(&w).unwrap()).unwrap());
    }

    #[test]
    fn frobenius_and_verschiebung_compose(tag in 0..RINGS.len(), n in 1usize..=3, s in 1usize..=4, r in 1usize..=4, seed in any::<u64>()) {
        let ring = parse_ring(RINGS[tag]).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let x = witt(&ring, s * r * n, &mut g);
        prop_assert_eq!(x.frobenius(r).unwrap().frobenius(s).unwrap(), x.frobenius(s * r).unwrap());
        let y = witt(&ring, n, &mut g);
        prop_assert_eq!(y.verschiebung(r).unwrap().verschiebung(s).unwrap(), y.verschiebung(s * r).unwrap());
        prop_assert_eq!(y.verschiebung(s).unwrap().frobenius(s).unwrap(), y.mul_int(s as i64));
        if gcd(s, r) == 1 {
            let z = witt(&ring, s * n, &mut g);
            prop_assert_eq!(z.verschiebung(r).unwrap().frobenius(s).unwrap(), z.frobenius(s).unwrap().verschiebung(r).unwrap());
        }
    }

    #[test]
    fn projection_formula_and_frobenius_ring_map(tag in 0..RINGS.len(), n in 1usize..=3, s in 1usize..=4, seed in any::<u64>()) {
        let ring = parse_ring(RINGS[tag]).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let u = witt(&ring, n, &mut g);
        let v = witt(&ring, s * n, &mut g);
        let w = witt(&ring, s * n, &mut g);
        let lhs = u.star(&v.frobenius(s).unwrap()).unwrap().verschiebung(s).unwrap();
        prop_assert_eq!(lhs, u.verschiebung(s).unwrap().star(&v).unwrap());
        prop_assert_eq!(v.star(&w).unwrap().frobenius(s).unwrap(), v.frobenius(s).unwrap().star(&w.frobenius(s).unwrap()).unwrap());
        prop_assert_eq!(v.add(&w).unwrap().frobenius(s).unwrap(), v.frobenius(s).unwrap().add(&w.frobenius(s).unwrap()).unwrap());
    }

    #[test]
    fn ghost_map_round_trips_over_q(n in 1usize..=10, seed in any::<u64>()) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let u = witt(&Ring::Q, n, &mut g);
        prop_assert_eq!(BigWittVector::unghost(&Ring::Q, &u.ghost()).unwrap(), u);
    }

    #[test]
    fn ghost_map_is_a_ring_map(tag in 0..2usize, n in 1usize..=8, seed in any::<u64>()) {
        let r = [Ring::Z, Ring::Q][tag].clone();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (witt(&r, n, &mut g), witt(&r, n, &mut g));
        let (gu, gv) = (u.ghost(), v.ghost());
        let prod: Vec<_> = gu.iter().zip(&gv).map(|(a, b)| r.mul(a, b)).collect();
        let sum: Vec<_> = gu.iter().zip(&gv).map(|(a, b)| r.add(a, b)).collect();
        prop_assert_eq!(u.star(&v).unwrap().ghost(), prod);
        prop_assert_eq!(u.add(&v).unwrap().ghost(), sum);
    }

    #[test]
    fn ptypical_identities(p in prop::sample::select(vec![3u64, 5]), kind in 0..3usize, n in 1usize..=3, seed in any::<u64>()) {
        let r = match kind {
            0 => Ring::Q,
            1 => Ring::fp(p).unwrap(),
            _ => Ring::zmod(p.pow(3)).unwrap(),
        };
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let x = ptyp(p, &r, n, &mut g);
        prop_assert_eq!(x.verschiebung().unwrap().frobenius().unwrap(), x.mul_int(p as i64));

        let y = ptyp(p, &r, n + 1, &mut g);
        let lhs = x.star(&y.frobenius().unwrap()).unwrap().verschiebung().unwrap();
        prop_assert_eq!(lhs, x.verschiebung().unwrap().star(&y).unwrap());

        let z = ptyp(p, &r, n + 1, &mut g);
        prop_assert_eq!(y.star(&z).unwrap().frobenius().unwrap(), y.frobenius().unwrap().star(&z.frobenius().unwrap()).unwrap());
        prop_assert_eq!(y.add(&z).unwrap().frobenius().unwrap(), y.frobenius().unwrap().add(&z.frobenius().unwrap()).unwrap());
        prop_assert_eq!(PTypicalWitt::one(p, &r, n + 1).frobenius().unwrap(), PTypicalWitt::one(p, &r, n));
    }

    #[test]
    fn ptypical_ghost_components(p in prop::sample::select(vec![2u64, 3, 5]), n in 1usize..=3, seed in any::<u64>()) {
        let r = Ring::Z;
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let x = ptyp(p, &r, n, &mut g);
        let expect: Vec<_> = (0..n)
            .map(|i| {
                (0..=i).fold(r.zero(), |acc, j| {
                    let term = r.mul_i64(&r.pow(&x.comps()[j], p.pow((i - j) as u32)), p.pow(j as u32) as i64);
                    r.add(&acc, &term)
                })
            })
            .collect();
        prop_assert_eq!(x.ghost(), expect);
    }

    #[test]
    fn projection_kills_prime_to_p_idempotents(p in prop::sample::select(vec![2u64, 3, 5]), l in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(l != p);
        let r = Ring::fp(p).unwrap();
        let len = p.pow(n as u32 - 1) as usize;
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let u = witt(&r, len, &mut g);
        let e = idempotent_apply(l, &u).unwrap();
        prop_assert!(PTypicalWitt::project(p, &e, n).unwrap().is_zero());
        // Projection is additive, so u and u - e(u) have the same class.
        prop_assert_eq!(PTypicalWitt::project(p, &u.sub(&e).unwrap(), n).unwrap(), PTypicalWitt::project(p, &u, n).unwrap());
    }

    #[test]
    fn hat_projection_ignores_unit_and_degree(p in prop::sample::select(vec![3u64, 5]), n in 1usize..=3, unit in 1i64..5, degree in -3i64..=3, seed in any::<u64>()) {
        let r = Ring::fp(7).unwrap();
        let len = p.pow(n as u32 - 1) as usize;
        let u = witt(&r, len, &mut ChaCha8Rng::seed_from_u64(seed));
        let a = HatWittVector::new(u.clone(), r.one(), 0).unwrap();
        let b = HatWittVector::new(u, r.from_i64(unit), degree).unwrap();
        prop_assert_eq!(PTypicalWitt::project_hat(p, &a, n).unwrap(), PTypicalWitt::project_hat(p, &b, n).unwrap());
    }
}

/// Ghost components are multiplicative on generic vectors: the star product is
/// computed over `Z[a, b, c, x, y, z]` with indeterminate coordinates.
#[test]
fn ghost_multiplicative_on_indeterminates() {
    let r = parse_ring("Z[a,b,c,x,y,z]").unwrap();
    let vars = |names: &[&str]| names.iter().map(|v| r.parse_elem(v).unwrap()).collect::<Vec<_>>();
    let u = BigWittVector::new(&r, vars(&["a", "b", "c"])).unwrap();
    let v = BigWittVector::new(&r, vars(&["x", "y", "z"])).unwrap();
    let prod: Vec<_> = u.ghost().iter().zip(v.ghost()).map(|(p, q)| r.mul(p, &q)).collect();
    assert_eq!(u.star(&v).unwrap().ghost(), prod);
}
