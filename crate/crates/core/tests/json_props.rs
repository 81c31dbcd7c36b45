use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittkit::exact::parse_ring;
use wittkit::modulus::samples::random_point;
use wittkit::{BigWittVector, HatWittVector, PTypicalWitt, Ring, ZeroCycle};

const RINGS: [&str; 6] = ["Z", "Q", "Z/12", "F7", "F5[x,y]", "F3[y]/(y^2+1)"];

fn coeffs(r: &Ring, n: usize, g: &mut ChaCha8Rng) -> Vec<wittkit::Elem> {
    (0..n).map(|_| r.random(g, 6)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witt_vectors_round_trip(tag in 0..RINGS.len(), n in 0usize..=6, seed in any::<u64>()) {
        let r = parse_ring(RINGS[tag]).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let u = BigWittVector::new(&r, coeffs(&r, n, &mut g)).unwrap();
        prop_assert_eq!(BigWittVector::from_json(&u.to_json()).unwrap(), u.clone());

        let unit = loop {
            let a = r.random(&mut g, 6);
            if r.is_unit(&a) {
                break a;
            }
        };
        let h = HatWittVector::new(u, unit, g.gen_range(-5..=5)).unwrap();
        prop_assert_eq!(HatWittVector::from_json(&h.to_json()).unwrap(), h);

        let p = [2u64, 3, 5][g.gen_range(0..3)];
        let w = PTypicalWitt::new(p, &r, coeffs(&r, n.min(3), &mut g)).unwrap();
        prop_assert_eq!(PTypicalWitt::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn cycles_round_trip(f in prop::sample::select(vec!["F3", "F7", "Q"]), seed in any::<u64>()) {
        let field = parse_ring(f).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let mut c = ZeroCycle::zero(&field);
        for _ in 0..g.gen_range(0..=3) {
            let pt = random_point(&field, g.gen_range(1..=3), &mut g);
            c = c.add(&ZeroCycle::point(pt, g.gen_range(-3..=3))).unwrap();
        }
        prop_assert_eq!(ZeroCycle::from_json(&field, &c.to_json()).unwrap(), c.clone());
        prop_assert_eq!(ZeroCycle::parse(&field, &c.display()).unwrap(), c);
    }
}
