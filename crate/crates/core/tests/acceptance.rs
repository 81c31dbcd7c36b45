//! Acceptance run: one line per criterion with the elapsed time against its bound.

use std::time::{Duration, Instant};

use wittkit::suite::{self, VerificationReport};
use wittkit::witt::universal::{UniversalFrobeniusTable, UniversalStarTable};

const SEED: u64 = 20240601;

struct Line {
    id: u32,
    name: &'static str,
    bound: Duration,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u32, name: &'static str, bound_secs: u64, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (pass, detail) = f();
    let elapsed = t.elapsed();
    let bound = Duration::from_secs(bound_secs);
    Line { id, name, bound, pass: pass && elapsed <= bound, detail, elapsed }
}

fn counts(r: &VerificationReport) -> String {
    format!("{} cases, {} failed, {} inconclusive", r.cases, r.failed, r.inconclusive)
}

fn first_failure(r: &VerificationReport) -> String {
    r.failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
}

fn suite_line(r: wittkit::Result<VerificationReport>, extra: impl FnOnce(&VerificationReport) -> Option<String>) -> (bool, String) {
    match r {
        Ok(r) => {
            let problem = extra(&r);
            let pass = r.pass() && problem.is_none();
            let mut d = counts(&r);
            if let Some(p) = problem {
                d.push_str(&format!("; {p}"));
            }
            d.push_str(&first_failure(&r));
            (pass, d)
        }
        Err(e) => (false, format!("error: {e}")),
    }
}

fn at_least(r: &VerificationReport, section: &str, n: usize) -> Option<String> {
    let c = r.section(section).cases;
    (c < n).then(|| format!("section {section:?} has {c} cases, need {n}"))
}

fn main() {
    let mut lines = Vec::new();

    lines.push(run(1, "Witt relations on Z, Z/12, F7", 30, || {
        suite_line(suite::witt_laws(SEED), |r| {
            let need = 3 * suite::WITT_TRIPLES_PER_RING;
            ["star commutative", "star associative", "star unital", "F_s F_r = F_sr", "V_s V_r = V_sr", "F_s V_s = s", "F_s V_r = V_r F_s", "projection formula", "F_s multiplicative"]
                .iter()
                .find_map(|s| at_least(r, s, need))
        })
    }));

    lines.push(run(2, "universal star and Frobenius tables are integral", 60, || {
        let mut built = 0;
        for n in 0..=6 {
            if let Err(e) = UniversalStarTable::build(n) {
                return (false, format!("star table n = {n}: {e}"));
            }
            built += 1;
            for s in 1..=4 {
                if let Err(e) = UniversalFrobeniusTable::build(s, n) {
                    return (false, format!("Frobenius table s = {s}, n = {n}: {e}"));
                }
                built += 1;
            }
        }
        (true, format!("{built} tables built with integer coefficients"))
    }));

    lines.push(run(3, "cycle maps intertwine the operations; principal divisors vanish", 60, || {
        let (pass, mut d) = suite_line(suite::comparison(SEED), |r| at_least(r, "principal divisor", 3 * suite::DIVISOR_SAMPLES));
        d.push_str("; hat Verschiebung compared with the cycle-level unit (-1)^((s-1) deg) a");
        (pass, d)
    }));

    lines.push(run(4, "fractional moduli agree with their round-up", 30, || {
        suite_line(suite::hasse_arf(SEED), |r| {
            let bad = suite::hasse_arf_moduli().iter().any(|q| *q.denom() > 5.into());
            if r.cases < 1000 {
                Some(format!("only {} pairs", r.cases))
            } else if bad {
                Some("a modulus has denominator above 5".into())
            } else {
                None
            }
        })
    }));

    lines.push(run(5, "transfers match trace, norm and truncated norm; collapse; base change", 60, || {
        suite_line(suite::transfers(SEED), |r| {
            ["Ga = trace", "Gm = norm", "W = norm over A[t]", "Ga collapse", "Gm collapse", "W collapse", "W base change", "W disjoint union"].iter().find_map(|s| at_least(r, s, 1))
        })
    }));

    lines.push(run(6, "homotopy corpus over F5, F7, Q with even-s rejection", 30, || {
        suite_line(suite::homotopy_corpus(SEED), |r| ["gm1", "gm2", "gm3", "gm4", "dv", "fdv", "witt", "even s rejected"].iter().find_map(|s| at_least(r, s, 1)))
    }));

    lines.push(run(7, "de Rham-Witt axioms, injectivity, level one, F^e d, negative control", 300, || {
        suite_line(suite::drw_axioms(SEED, None), |r| {
            [
                ("axiom instances reduce to zero", 1),
                ("lambda injectivity", 6),
                ("level one dimensions", 1),
                ("Frobenius of d on powers", 12),
                ("known Witt complexes", 1),
                ("negative control rejected", 2),
            ]
            .iter()
            .find_map(|(s, n)| at_least(r, s, *n))
        })
    }));

    lines.push(run(8, "reruns with the same seed are byte-identical", 300, || {
        for name in suite::SUITES {
            let opts = suite::SuiteOptions { seed: SEED, p: None };
            let a = suite::run_suite(name, &opts).map(|r| serde_json::to_vec(&r).unwrap());
            let b = suite::run_suite(name, &opts).map(|r| serde_json::to_vec(&r).unwrap());
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(_), Ok(_)) => return (false, format!("{name} differs between runs")),
                (Err(e), _) | (_, Err(e)) => return (false, format!("{name}: {e}")),
            }
        }
        (true, format!("{} suites compared", suite::SUITES.len()))
    }));

    let mut all = true;
    for l in &lines {
        all &= l.pass;
        println!(
            "[{}] {}. {} ({:.2}s / {}s): {}",
            if l.pass { "PASS" } else { "FAIL" },
            l.id,
            l.name,
            l.elapsed.as_secs_f64(),
            l.bound.as_secs(),
            l.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
