use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittkit::exact::fp_poly::irreducibles;
use wittkit::exact::{factor_monic, parse_ring, resultant_upoly, Howell, UPoly};
use wittkit::transfers::checks::{random_algebra, standard_bases};
use wittkit::Ring;

const TAGS: [&str; 7] = ["Z", "Q", "Z/12", "Z/9", "F7", "F5[x,y]", "F3[y]/(y^2)"];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_monic(r: &Ring, deg: usize, g: &mut ChaCha8Rng) -> UPoly {
    let mut c: Vec<_> = (0..deg).map(|_| r.random(g, 4)).collect();
    c.push(r.one());
    UPoly::new(r, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(tag in 0..TAGS.len(), seed in any::<u64>()) {
        let r = parse_ring(TAGS[tag]).unwrap();
        let mut g = rng(seed);
        let (a, b, c) = (r.random(&mut g, 5), r.random(&mut g, 5), r.random(&mut g, 5));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert_eq!(r.add(&a, &r.zero()), a.clone());
        prop_assert!(r.is_zero(&r.sub(&a, &a)));
        if let Some(inv) = r.inv(&a) {
            prop_assert!(r.is_one(&r.mul(&a, &inv)));
        }
    }

    #[test]
    fn resultant_is_multiplicative(p in prop::sample::select(vec![0u64, 3, 7]), df in 1usize..=4, dg in 1usize..=4, dh in 1usize..=4, seed in any::<u64>()) {
        let r = if p == 0 { Ring::Z } else { Ring::fp(p).unwrap() };
        let mut g = rng(seed);
        let (f, gg, h) = (random_monic(&r, df, &mut g), random_monic(&r, dg, &mut g), random_monic(&r, dh, &mut g));
        let lhs = resultant_upoly(&f.mul(&gg), &h).unwrap();
        let rhs = r.mul(&resultant_upoly(&f, &h).unwrap(), &resultant_upoly(&gg, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorisation_reexpands_to_irreducibles(p in prop::sample::select(vec![2u64, 3, 5, 7]), deg in 1usize..=8, seed in any::<u64>()) {
        let r = Ring::fp(p).unwrap();
        let f = random_monic(&r, deg, &mut rng(seed));
        let factors = factor_monic(&f).unwrap();
        let mut prod = UPoly::one(&r);
        for (q, m) in &factors {
            prod = prod.mul(&q.pow(*m as u64));
            let d = q.degree().unwrap();
            prop_assert!(q.is_monic());
            if d <= 4 {
                // Irreducible iff no monic irreducible of degree ≤ d/2 divides it.
                for k in 1..=d / 2 {
                    for cand in irreducibles(p, k) {
                        let c = UPoly::new(&r, cand.iter().map(|&x| r.from_i64(x as i64)).collect());
                        prop_assert!(!q.rem(&c).unwrap().is_zero(), "{:?} divides {:?}", c, q);
                    }
                }
            }
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn howell_form_is_canonical(p in prop::sample::select(vec![2u64, 3, 5]), k in 1u32..=3, rows in 1usize..=4, cols in 1usize..=5, seed in any::<u64>()) {
        let m = p.pow(k);
        let mut g = rng(seed);
        let a: Vec<Vec<u64>> = (0..rows).map(|_| (0..cols).map(|_| g.gen_range(0..m)).collect()).collect();
        let mut b = a.clone();
        for _ in 0..8 {
            let i = g.gen_range(0..rows);
            let j = g.gen_range(0..rows);
            if i != j {
                let c = g.gen_range(0..m);
                let src = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(src) {
                    *x = (*x + c * y) % m;
                }
            } else {
                // Multiply a row by a unit.
                let u = loop {
                    let u = g.gen_range(1..m);
                    if u % p != 0 { break u; }
                };
                for x in b[i].iter_mut() {
                    *x = *x * u % m;
                }
            }
        }
        b.reverse();
        let (ha, hb) = (Howell::new(m, cols, a), Howell::new(m, cols, b));
        prop_assert_eq!(ha.rows(), hb.rows());
    }

    #[test]
    fn cayley_hamilton(base in 0usize..3, rank in 1usize..=4, seed in any::<u64>()) {
        let a = standard_bases().unwrap().swap_remove(base);
        let mut g = rng(seed);
        let alg = random_algebra(&a, rank, &mut g).unwrap();
        let b = Ring::Alg(alg.clone());
        let x = b.random(&mut g, 4);
        let chi = alg.mult_char_poly(&x).unwrap();
        let mut acc = b.zero();
        let mut pw = alg.one();
        for c in &chi {
            acc = b.add(&acc, &alg.mul(&alg.scalar(c), &pw));
            pw = alg.mul(&pw, &x);
        }
        prop_assert!(b.is_zero(&acc));
    }
}
