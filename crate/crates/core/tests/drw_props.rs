use proptest::prelude::*;

use wittkit::drw::{evaluate, fd_power_reduce, BoundedPresentation, DrwRing, PresentationParams};

fn params(p: u64, n: u32, q: usize, dr: u32) -> PresentationParams {
    PresentationParams { ring: format!("F{p}[t]"), n, q, dx: 0, dr }
}

/// Residue of `s` in a presentation grown just enough to contain it.
fn vanishes(p: u64, n: u32, q: usize, s: &str) -> bool {
    let ring = DrwRing::parse(&format!("F{p}[t]")).unwrap();
    let e = evaluate(&ring, n, s).unwrap();
    let mut pres = BoundedPresentation::empty(&params(p, n, q, 1)).unwrap();
    pres.extend_for(&e).unwrap();
    pres.reduce(&e).unwrap().is_zero()
}

fn poly(c: &[u64]) -> String {
    let terms: Vec<String> = c.iter().enumerate().filter(|(_, &a)| a != 0).map(|(k, a)| format!("{a}*t^{k}")).collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn differentials_anticommute(f in prop::collection::vec(0u64..3, 1..=3), g in prop::collection::vec(0u64..3, 1..=3)) {
        let (f, g) = (poly(&f), poly(&g));
        let s = format!("d[{f}]*d[{g}] + d[{g}]*d[{f}]");
        prop_assert!(vanishes(3, 2, 2, &s), "{}", s);
    }

    #[test]
    fn leibniz_on_monomials(p in prop::sample::select(vec![3u64, 5]), a in 1u32..=3, b in 1u32..=3) {
        let s = format!("d([t^{a}]*[t^{b}]) - [t^{a}]*d[t^{b}] - [t^{b}]*d[t^{a}]");
        prop_assert!(vanishes(p, 2, 1, &s), "{}", s);
    }

    #[test]
    fn frobenius_of_d_on_teichmuller(k in 1u32..=2, c in 1u64..3) {
        // F dλ[a] = λ[a]^{p-1} dλ[a] with p = 3.
        let a = format!("{c}*t^{k}");
        let s = format!("F(d[{a}]) - [{a}]*[{a}]*d[{a}]");
        prop_assert!(vanishes(3, 2, 1, &s), "{}", s);
    }

    #[test]
    fn equality_survives_deeper_relations(p in prop::sample::select(vec![3u64, 5]), m in 1u32..=2, e in 1u32..=2) {
        // Depth-one blocks grow quickly with the weight m·p^e; keep it at most 10.
        prop_assume!(m as u64 * p.pow(e) <= 10);
        prop_assume!(m as u64 % p != 0);
        let shallow = fd_power_reduce(p, m, e, 2, 0).unwrap();
        if shallow.verdict.is_equal() {
            prop_assert!(fd_power_reduce(p, m, e, 2, 1).unwrap().verdict.is_equal());
        }
    }
}

#[test]
fn presentation_json_round_trip() {
    let mut pres = BoundedPresentation::build(&PresentationParams { ring: "F3[t]".into(), n: 2, q: 1, dx: 3, dr: 1 }).unwrap();
    let v = pres.to_json().unwrap();
    let mut back = BoundedPresentation::from_json(&v).unwrap();
    assert_eq!(back.to_json().unwrap(), v);
    let mut tampered = v.clone();
    tampered["blocks"][0]["quotient_length"] = serde_json::json!(999);
    assert!(BoundedPresentation::from_json(&tampered).is_err());
}
