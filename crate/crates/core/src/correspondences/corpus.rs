//! The explicit cycle corpus: cube homotopies whose fibres at `t = 0, 1` are
//! compared with the stated cycles, and pairs of composition routes that
//! must both land on one stated cycle.
//!
//! | family | cycle |
//! |--------|-------|
//! | `gm1`  | `(1-t)(y-x^s)(y-1)^{s-1} + t(y-x)^s` |
//! | `gm2`  | `(1-t)(y^s-x) + t(y-x)(y-1)^{s-1}`, flat only for odd `s` |
//! | `gm3`  | `(1-t)(x-a)(x-b) + t(x-ab)(x-1)` |
//! | `gm4`  | `z+w = (1-t)(x+y) + t(xy+1)`, `zw = xy`, in coordinates `T² - (z+w)T + zw` |
//! | `dv`   | `x^ℓ = y^ℓ = z` |
//! | `fdv`  | `x = y = z^p` |
//! | `witt` | `x^s = y^r` (with `r`) or `xy^s = z^s` (without) |
//!
//! For route families `boundary0`/`boundary1` hold the two computed routes.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_components, compose, merge_components, parse_poly, show, show_components, var_index, GraphCycle, PlaneCorrespondence, VARS};
use crate::error::{Error, Result};
use crate::exact::{MPoly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gm1,
    Gm2,
    Gm3,
    Gm4,
    Dv,
    Fdv,
    Witt,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::Gm1, Family::Gm2, Family::Gm3, Family::Gm4, Family::Dv, Family::Fdv, Family::Witt];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gm1 => "gm1",
            Family::Gm2 => "gm2",
            Family::Gm3 => "gm3",
            Family::Gm4 => "gm4",
            Family::Dv => "dv",
            Family::Fdv => "fdv",
            Family::Witt => "witt",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::Parse(format!("unknown family {s}")))
    }
}

#[derive(Clone, Debug)]
pub enum ItemKind {
    Homotopy { gamma: PlaneCorrespondence, expected0: Vec<(MPoly, u32)>, expected1: Vec<(MPoly, u32)> },
    Routes { route_a: GraphCycle, route_b: GraphCycle, expected: GraphCycle },
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub family: Family,
    pub params: BTreeMap<String, i64>,
    pub field: Ring,
    pub kind: ItemKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyReport {
    pub family: Family,
    pub params: BTreeMap<String, i64>,
    pub field: String,
    pub cycle: String,
    pub certificate: Option<String>,
    pub boundary0: String,
    pub boundary1: String,
    pub expected0: String,
    pub expected1: String,
    pub witnesses: Vec<String>,
    pub failure: Option<String>,
    pub pass: bool,
}

fn comps(field: &Ring, list: &[(&str, u32)]) -> Result<Vec<(MPoly, u32)>> {
    list.iter().filter(|(_, m)| *m > 0).map(|(s, m)| Ok((parse_poly(field, s)?, *m))).collect()
}

fn homotopy(field: &Ring, family: Family, params: BTreeMap<String, i64>, gamma: PlaneCorrespondence, e0: &[(&str, u32)], e1: &[(&str, u32)]) -> Result<CorpusItem> {
    let t = gamma.target().to_string();
    let expected0 = merge_components(field, &comps(field, e0)?, &t)?;
    let expected1 = merge_components(field, &comps(field, e1)?, &t)?;
    Ok(CorpusItem { family, params, field: field.clone(), kind: ItemKind::Homotopy { gamma, expected0, expected1 } })
}

fn corr(field: &Ring, h: &str, source: &[&str], target: &str) -> Result<PlaneCorrespondence> {
    PlaneCorrespondence::new(field, h, source, source, None, target, true)
}

/// `ρ_s : x ↦ x^s` as a correspondence `src → tgt`.
fn rho(field: &Ring, s: i64, src: &str, tgt: &str) -> Result<PlaneCorrespondence> {
    corr(field, &format!("{tgt} - {src}^{s}"), &[src], tgt)
}

/// The transpose of `ρ_s`: `tgt^s = src`.
fn rho_t(field: &Ring, s: i64, src: &str, tgt: &str) -> Result<PlaneCorrespondence> {
    corr(field, &format!("{tgt}^{s} - {src}"), &[src], tgt)
}

fn param(k: &str, v: i64) -> BTreeMap<String, i64> {
    BTreeMap::from([(k.to_string(), v)])
}

fn need(params: &BTreeMap<String, i64>, k: &str) -> Result<i64> {
    let v = *params.get(k).ok_or_else(|| Error::Precondition(format!("missing parameter {k}")))?;
    if !(1..=64).contains(&v) {
        return Err(Error::Precondition(format!("{k} = {v} is out of range")));
    }
    Ok(v)
}

/// Instantiates one corpus family.
pub fn family_item(field: &Ring, family: Family, params: &BTreeMap<String, i64>) -> Result<CorpusItem> {
    let f = field;
    let ps = params.clone();
    match family {
        Family::Gm1 => {
            let s = need(params, "s")?;
            let g = PlaneCorrespondence::new(f, &format!("(1-t)*(y-x^{s})*(y-1)^{} + t*(y-x)^{s}", s - 1), &["x"], &["x"], Some("t"), "y", true)?;
            let e0 = format!("y - x^{s}");
            homotopy(f, family, ps, g, &[(&e0, 1), ("y - 1", (s - 1) as u32)], &[("y - x", s as u32)])
        }
        Family::Gm2 => {
            let s = need(params, "s")?;
            let g = PlaneCorrespondence::new(f, &format!("(1-t)*(y^{s}-x) + t*(y-x)*(y-1)^{}", s - 1), &["x"], &["x"], Some("t"), "y", true)?;
            let e0 = format!("y^{s} - x");
            homotopy(f, family, ps, g, &[(&e0, 1)], &[("y - x", 1), ("y - 1", (s - 1) as u32)])
        }
        Family::Gm3 => match (params.get("a"), params.get("b")) {
            (Some(&a), Some(&b)) => {
                let g = PlaneCorrespondence::new(f, &format!("(1-t)*(x-({a}))*(x-({b})) + t*(x-({a})*({b}))*(x-1)"), &[], &[], Some("t"), "x", true)?;
                let (ea, eb, eab) = (format!("x - ({a})"), format!("x - ({b})"), format!("x - ({a})*({b})"));
                homotopy(f, family, ps, g, &[(&ea, 1), (&eb, 1)], &[(&eab, 1), ("x - 1", 1)])
            }
            _ => {
                let g = PlaneCorrespondence::new(f, "(1-t)*(x-a)*(x-b) + t*(x-a*b)*(x-1)", &["a", "b"], &["a", "b"], Some("t"), "x", true)?;
                homotopy(f, family, ps, g, &[("x - a", 1), ("x - b", 1)], &[("x - a*b", 1), ("x - 1", 1)])
            }
        },
        Family::Gm4 => {
            let g = PlaneCorrespondence::new(f, "T^2 - ((1-t)*(x+y) + t*(x*y+1))*T + x*y", &["x", "y"], &["x", "y"], Some("t"), "T", true)?;
            homotopy(f, family, ps, g, &[("T - x", 1), ("T - y", 1)], &[("T - x*y", 1), ("T - 1", 1)])
        }
        Family::Dv => {
            let l = need(params, "l")?;
            // ᵗρ_ℓ ∘ ρ_ℓ, computed by a resultant.
            let c = compose(&rho(f, l, "x", "u")?, &rho_t(f, l, "u", "y")?)?;
            let xl = parse_poly(f, &format!("x^{l}"))?;
            let yl = parse_poly(f, &format!("y^{l}"))?;
            // Δ, id × ρ_ℓ, then (ᵗρ_ℓ ∘ ρ_ℓ) × id: (x, x) ↦ (x, x^ℓ) ↦ (y, x^ℓ).
            let route_a = GraphCycle::of(&c, BTreeMap::from([("z".to_string(), xl)]));
            // ᵗρ_ℓ ∘ ρ_ℓ, Δ, then id × ρ_ℓ: x ↦ y ↦ (y, y) ↦ (y, y^ℓ).
            let route_b = GraphCycle::of(&c, BTreeMap::from([("z".to_string(), yl)]));
            let expected = GraphCycle::new(f, "y", &format!("y^{l} - x^{l}"), &[("z", &format!("x^{l}"))])?;
            Ok(CorpusItem { family, params: ps, field: f.clone(), kind: ItemKind::Routes { route_a, route_b, expected } })
        }
        Family::Fdv => {
            let p = need(params, "p")?;
            let tr = rho_t(f, p, "x", "z")?;
            // ᵗρ_p, Δ, then F_p ⊗ id: x ↦ z ↦ (z, z) ↦ (z^p, z).
            let route_a = GraphCycle::of(&tr, BTreeMap::from([("y".to_string(), parse_poly(f, &format!("z^{p}"))?)]));
            // Δ then id ⊗ ᵗρ_p: x ↦ (x, x) ↦ (x, z).
            let route_b = GraphCycle::of(&tr, BTreeMap::from([("y".to_string(), parse_poly(f, "x")?)]));
            let expected = GraphCycle::new(f, "z", &format!("z^{p} - x"), &[("y", "x")])?;
            Ok(CorpusItem { family, params: ps, field: f.clone(), kind: ItemKind::Routes { route_a, route_b, expected } })
        }
        Family::Witt => {
            let s = need(params, "s")?;
            let (route_a, route_b, expected) = match params.get("r") {
                Some(_) => {
                    let r = need(params, "r")?;
                    if num_integer::gcd(s, r) != 1 {
                        return Err(Error::Precondition(format!("x^s = y^r needs coprime s, r; got {s}, {r}")));
                    }
                    // ρ_s ∘ ᵗρ_r and ᵗρ_r ∘ ρ_s.
                    let a = compose(&rho_t(f, r, "x", "u")?, &rho(f, s, "u", "y")?)?;
                    let b = compose(&rho(f, s, "x", "u")?, &rho_t(f, r, "u", "y")?)?;
                    (a, b, format!("y^{r} - x^{s}"))
                }
                None => {
                    // μ ∘ (ᵗρ_s × id) and ᵗρ_s ∘ μ ∘ (id × ρ_s) on (x, y).
                    let a = compose(&corr(f, &format!("u^{s} - x"), &["x", "y"], "u")?, &corr(f, "z - u*y", &["u", "y"], "z")?)?;
                    let b = compose(&corr(f, &format!("w - x*y^{s}"), &["x", "y"], "w")?, &rho_t(f, s, "w", "z")?)?;
                    (a, b, format!("z^{s} - x*y^{s}"))
                }
            };
            let target = route_a.target().to_string();
            let expected = GraphCycle::new(f, &target, &expected, &[])?;
            Ok(CorpusItem {
                family,
                params: ps,
                field: f.clone(),
                kind: ItemKind::Routes { route_a: GraphCycle::of(&route_a, BTreeMap::new()), route_b: GraphCycle::of(&route_b, BTreeMap::new()), expected },
            })
        }
    }
}

/// All seven families over `field` with the default parameter ranges:
/// `s, r ≤ 4`, `ℓ ∈ {2, 3}`, `p ∈ {3, 5}`. Items of `gm2` with even `s` are
/// included; verifying them reports the certificate failure.
pub fn builtin_corpus(field: &Ring) -> Result<Vec<CorpusItem>> {
    let mut out = Vec::new();
    for s in 1..=4 {
        out.push(family_item(field, Family::Gm1, &param("s", s))?);
    }
    for s in 1..=4 {
        out.push(family_item(field, Family::Gm2, &param("s", s))?);
    }
    out.push(family_item(field, Family::Gm3, &BTreeMap::new())?);
    out.push(family_item(field, Family::Gm3, &BTreeMap::from([("a".to_string(), 2), ("b".to_string(), 3)]))?);
    out.push(family_item(field, Family::Gm4, &BTreeMap::new())?);
    for l in [2, 3] {
        out.push(family_item(field, Family::Dv, &param("l", l))?);
    }
    for p in [3, 5] {
        out.push(family_item(field, Family::Fdv, &param("p", p))?);
    }
    for s in 1..=4 {
        for r in 1..=4 {
            if num_integer::gcd(s, r) == 1 {
                out.push(family_item(field, Family::Witt, &BTreeMap::from([("s".to_string(), s), ("r".to_string(), r)]))?);
            }
        }
        out.push(family_item(field, Family::Witt, &param("s", s))?);
    }
    Ok(out)
}

/// Checks one corpus item. A homotopy whose flatness certificate fails is an
/// error naming the offending coefficient.
pub fn verify_homotopy(item: &CorpusItem) -> Result<HomotopyReport> {
    let f = &item.field;
    match &item.kind {
        ItemKind::Homotopy { gamma, expected0, expected1 } => {
            let cert = gamma.certificate()?;
            let b0 = gamma.boundary(0)?;
            let b1 = gamma.boundary(1)?;
            let coeff_vars = gamma.source().to_vec();
            let t = gamma.target();
            let mut witnesses = Vec::new();
            let mut failure = None;
            for (b, e) in [(&b0, expected0), (&b1, expected1)] {
                match check_components(f, b.poly(), t, e, &coeff_vars)? {
                    Ok(w) => witnesses.extend(w),
                    Err(m) => failure = failure.or(Some(m)),
                }
            }
            if item.family == Family::Gm4 {
                witnesses.push(diagonal_note(f, b0.poly())?);
            }
            Ok(HomotopyReport {
                family: item.family,
                params: item.params.clone(),
                field: f.to_string(),
                cycle: gamma.display(),
                certificate: Some(format!("degree {}, leading {}, constant {}", cert.degree, cert.lead, cert.constant.unwrap_or_default())),
                boundary0: b0.display(),
                boundary1: b1.display(),
                expected0: show_components(f, expected0),
                expected1: show_components(f, expected1),
                witnesses,
                pass: failure.is_none(),
                failure,
            })
        }
        ItemKind::Routes { route_a, route_b, expected } => {
            let a = route_a.same_as(expected)?;
            let b = route_b.same_as(expected)?;
            let failure = match (a, b) {
                (true, true) => None,
                (false, _) => Some("first route differs from the stated cycle".to_string()),
                (_, false) => Some("second route differs from the stated cycle".to_string()),
            };
            Ok(HomotopyReport {
                family: item.family,
                params: item.params.clone(),
                field: f.to_string(),
                cycle: expected.display(),
                certificate: None,
                boundary0: route_a.display(),
                boundary1: route_b.display(),
                expected0: expected.display(),
                expected1: expected.display(),
                witnesses: Vec::new(),
                pass: failure.is_none(),
                failure,
            })
        }
    }
}

/// On the diagonal `y = x` the `t = 0` fibre of `gm4` is `2[T - x]`, i.e.
/// `(id + τ)∘δ = 2δ`, while the `t = 1` fibre is degenerate; hence `2δ = 0`.
fn diagonal_note(f: &Ring, b0: &MPoly) -> Result<String> {
    let yi = var_index("y")?;
    let diag = b0.subst(f, yi, &MPoly::var(f, var_index("x")?, VARS.len()));
    let expect = parse_poly(f, "(T - x)^2")?;
    Ok(if diag == expect { format!("diagonal t=0 fibre {} = 2[T - x]", show(f, &diag)) } else { format!("diagonal t=0 fibre {} (unexpected)", show(f, &diag)) })
}

/// Re-verifies a homotopy after adjoining a transcendental `u` to the base
/// field: boundaries are taken over `F(u)` and the component witnesses must
/// hold with `u` as an extra coefficient.
pub fn verify_base_change(item: &CorpusItem) -> Result<bool> {
    match &item.kind {
        ItemKind::Homotopy { gamma, expected0, expected1 } => {
            let g = gamma.with_coefficient("u")?;
            let coeff = g.source().to_vec();
            let f = &item.field;
            for (eps, e) in [(0, expected0), (1, expected1)] {
                let direct = gamma.boundary(eps)?;
                let lifted = g.boundary(eps)?;
                if direct.poly() != lifted.poly() || check_components(f, lifted.poly(), g.target(), e, &coeff)?.is_err() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ItemKind::Routes { .. } => Ok(verify_homotopy(item)?.pass),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_over_small_fields() {
        for field in [Ring::Fp(5), Ring::Fp(7), Ring::Q] {
            let items = builtin_corpus(&field).unwrap();
            let families: std::collections::BTreeSet<_> = items.iter().map(|i| i.family).collect();
            assert_eq!(families.len(), 7);
            for item in &items {
                let even_gm2 = item.family == Family::Gm2 && item.params["s"] % 2 == 0;
                match verify_homotopy(item) {
                    Ok(rep) => {
                        assert!(!even_gm2, "even s accepted");
                        assert!(rep.pass, "{field}: {rep:?}");
                    }
                    Err(Error::Certificate(_)) => assert!(even_gm2),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn documented_boundaries() {
        let f7 = Ring::Q;
        let rep = verify_homotopy(&family_item(&f7, Family::Gm2, &param("s", 3)).unwrap()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.expected1, "[-x + y] + 2[y - 1]");
        let rep = verify_homotopy(&family_item(&f7, Family::Gm1, &param("s", 2)).unwrap()).unwrap();
        assert_eq!(rep.expected0, "[-x^2 + y] + [y - 1]");
        assert_eq!(rep.expected1, "2[-x + y]");
    }

    #[test]
    fn base_change_to_rational_function_field() {
        for item in builtin_corpus(&Ring::Fp(5)).unwrap() {
            if item.family == Family::Gm2 && item.params["s"] % 2 == 0 {
                continue;
            }
            assert!(verify_base_change(&item).unwrap());
        }
    }
}
