use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittkit::correspondences::{compose, same_cycle, PlaneCorrespondence};
use wittkit::Ring;

/// A correspondence `src → tgt` monic in `tgt` of degree at most 3, with
/// coefficients of degree at most 1 in `src`.
fn random_corr(field: &Ring, p: u64, src: &str, tgt: &str, g: &mut ChaCha8Rng) -> PlaneCorrespondence {
    let h = random_equation(p, g);
    corr(field, &h, src, tgt)
}

/// Equation in placeholders `S` (source) and `X` (target).
fn random_equation(p: u64, g: &mut ChaCha8Rng) -> String {
    let d = g.gen_range(1..=3);
    let mut h = format!("X^{d}");
    for i in 0..d {
        let (a, b) = (g.gen_range(0..p), g.gen_range(0..p));
        h.push_str(&format!(" + ({a}*S + {b})*X^{i}"));
    }
    h
}

fn corr(field: &Ring, h: &str, src: &str, tgt: &str) -> PlaneCorrespondence {
    PlaneCorrespondence::new(field, &h.replace('S', src).replace('X', tgt), &[src], &[], None, tgt, false).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn composition_is_associative(p in prop::sample::select(vec![3u64, 5, 7]), seed in any::<u64>()) {
        let field = Ring::fp(p).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let a = random_corr(&field, p, "x", "y", &mut g);
        let b = random_corr(&field, p, "y", "z", &mut g);
        let c = random_corr(&field, p, "z", "w", &mut g);
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert!(same_cycle(&field, left.poly(), right.poly(), "w").unwrap(), "{} vs {}", left.display(), right.display());
    }

    #[test]
    fn graph_of_identity_is_neutral(p in prop::sample::select(vec![3u64, 5, 7]), seed in any::<u64>()) {
        let field = Ring::fp(p).unwrap();
        let h = random_equation(p, &mut ChaCha8Rng::seed_from_u64(seed));
        let a = corr(&field, &h, "x", "y");
        let id_x = PlaneCorrespondence::new(&field, "x - T", &["T"], &[], None, "x", false).unwrap();
        let id_y = PlaneCorrespondence::new(&field, "z - y", &["y"], &[], None, "z", false).unwrap();
        let before = compose(&id_x, &a).unwrap();
        prop_assert!(same_cycle(&field, before.poly(), corr(&field, &h, "T", "y").poly(), "y").unwrap());
        let after = compose(&a, &id_y).unwrap();
        prop_assert!(same_cycle(&field, after.poly(), corr(&field, &h, "x", "z").poly(), "z").unwrap());
    }
}
