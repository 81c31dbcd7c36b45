use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wittkit::transfers::checks::{basis_independence, collapse_checks, oracle_checks, random_algebra, standard_bases};
use wittkit::transfers::{transfer_ptypical, transfer_ptypical_native};
use wittkit::{PTypicalWitt, Ring};

fn failures(checks: &[wittkit::transfers::checks::TransferCheck]) -> Vec<String> {
    checks.iter().filter(|c| !c.ok).map(|c| format!("{} over {}: {:?}", c.check, c.algebra, c.detail)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transfers_match_their_oracles(base in 0usize..3, rank in 1usize..=4, seed in any::<u64>()) {
        let a = standard_bases().unwrap().swap_remove(base);
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&a, rank, &mut g).unwrap();
        let mut checks = oracle_checks(&alg, 3, &mut g).unwrap();
        checks.extend(basis_independence(&alg, 2, &mut g).unwrap());
        prop_assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn transfer_collapses_on_nilpotent_thickenings(base in 0usize..3, d in 1usize..=4, seed in any::<u64>()) {
        let a = standard_bases().unwrap().swap_remove(base);
        let checks = collapse_checks(&a, d, 3, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
    }

    #[test]
    fn ptypical_transfer_routes_agree(p in prop::sample::select(vec![3u64, 5]), rank in 1usize..=3, n in 1usize..=3, seed in any::<u64>()) {
        let a = Ring::fp(p).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&a, rank, &mut g).unwrap();
        let b = Ring::Alg(alg.clone());
        let w = PTypicalWitt::new(p, &b, (0..n).map(|_| b.random(&mut g, 4)).collect()).unwrap();
        prop_assert_eq!(transfer_ptypical(&alg, &w).unwrap(), transfer_ptypical_native(&alg, &w).unwrap());
    }
}
