//! Finite correspondences between (punctured) affine lines cut out by one
//! polynomial that is monic in the target variable up to a unit, their
//! composition by resultants, boundaries at `t = 0, 1`, and the corpus of
//! explicit homotopies.
//!
//! All correspondences over a field live in one polynomial ring whose
//! variables are [`VARS`]; a correspondence records which of them play the
//! role of source coordinates (and which of those are inverted), the cube
//! parameter and the target.

pub mod corpus;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{pre, Error, Result};
use crate::exact::{factor_monic, factor_monic_q, parse_elem, resultant, Elem, MPoly, Ring, UPoly};

pub use corpus::{builtin_corpus, verify_homotopy, CorpusItem, Family, HomotopyReport};

pub const VARS: [&str; 9] = ["x", "y", "z", "w", "t", "u", "a", "b", "T"];

pub fn pool_ring(field: &Ring) -> Ring {
    Ring::poly(field.clone(), &VARS)
}

pub(crate) fn var_index(name: &str) -> Result<usize> {
    VARS.iter().position(|v| *v == name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))
}

fn var_names() -> Vec<String> {
    VARS.iter().map(|s| s.to_string()).collect()
}

pub(crate) fn show(field: &Ring, f: &MPoly) -> String {
    f.display(field, &var_names())
}

pub(crate) fn parse_poly(field: &Ring, s: &str) -> Result<MPoly> {
    Ok(parse_elem(&pool_ring(field), s)?.as_poly().clone())
}

/// The leading and (for punctured targets) constant coefficients in the
/// target variable, both verified to be units of the source coordinate ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessCertificate {
    pub degree: u32,
    pub lead: String,
    pub constant: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCorrespondence {
    field: Ring,
    h: MPoly,
    source: Vec<String>,
    units: Vec<String>,
    param: Option<String>,
    target: String,
    punctured: bool,
}

impl PlaneCorrespondence {
    /// `units` lists the inverted source coordinates; `punctured` says the
    /// target is `𝔸¹ ∖ {0}` rather than `𝔸¹`.
    pub fn new(field: &Ring, h: &str, source: &[&str], units: &[&str], param: Option<&str>, target: &str, punctured: bool) -> Result<Self> {
        Self::from_poly(field, parse_poly(field, h)?, source, units, param, target, punctured)
    }

    pub fn from_poly(field: &Ring, h: MPoly, source: &[&str], units: &[&str], param: Option<&str>, target: &str, punctured: bool) -> Result<Self> {
        crate::modulus::point::check_field(field)?;
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let c = PlaneCorrespondence {
            field: field.clone(),
            h,
            source: own(source),
            units: own(units),
            param: param.map(str::to_string),
            target: target.to_string(),
            punctured,
        };
        for u in &c.units {
            pre(c.source.contains(u), || format!("inverted coordinate {u} is not a source coordinate"))?;
        }
        let mut allowed = c.source.clone();
        allowed.extend(c.param.clone());
        allowed.push(c.target.clone());
        for (i, v) in VARS.iter().enumerate() {
            if c.h.involves(i) && !allowed.iter().any(|a| a == v) {
                return Err(Error::Precondition(format!("{v} is not a coordinate of this correspondence")));
            }
        }
        pre(c.h.involves(var_index(target)?), || format!("{target} does not appear"))?;
        Ok(c)
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn poly(&self) -> &MPoly {
        &self.h
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn param(&self) -> Option<&str> {
        self.param.as_deref()
    }

    pub fn display(&self) -> String {
        show(&self.field, &self.h)
    }

    fn target_coeffs(&self) -> Vec<MPoly> {
        self.h.coeffs_in(&self.field, var_index(&self.target).expect("pool variable"))
    }

    /// A unit of `k[units^±, other coordinates]`: one term whose monomial
    /// only involves inverted coordinates.
    fn is_unit(&self, c: &MPoly) -> bool {
        if c.len() != 1 {
            return false;
        }
        let inv: Vec<usize> = self.units.iter().map(|u| var_index(u).expect("pool variable")).collect();
        c.terms().all(|(e, _)| e.iter().enumerate().all(|(i, &k)| k == 0 || inv.contains(&i)))
    }

    pub fn certificate(&self) -> Result<FlatnessCertificate> {
        let cs = self.target_coeffs();
        let lead = cs.last().expect("target appears");
        if !self.is_unit(lead) {
            return Err(Error::Certificate(format!("leading {}-coefficient {} is not a unit", self.target, show(&self.field, lead))));
        }
        let constant = if self.punctured {
            let c0 = &cs[0];
            if !self.is_unit(c0) {
                return Err(Error::Certificate(format!("constant {}-coefficient {} is not a unit", self.target, show(&self.field, c0))));
            }
            Some(show(&self.field, c0))
        } else {
            None
        };
        Ok(FlatnessCertificate { degree: (cs.len() - 1) as u32, lead: show(&self.field, lead), constant })
    }

    /// Divides by the leading coefficient when it is a scalar.
    fn normalized(mut self) -> Self {
        let cs = self.target_coeffs();
        if let Some(lead) = cs.last() {
            if lead.is_constant() {
                let c = lead.constant_term(&self.field);
                if let Some(ci) = self.field.inv(&c) {
                    self.h = self.h.scale(&self.field, &ci);
                }
            }
        }
        self
    }

    /// Restriction to `t = ε`.
    pub fn boundary(&self, eps: i64) -> Result<Self> {
        let t = self.param.as_deref().ok_or_else(|| Error::Precondition("no cube parameter".into()))?;
        let ti = var_index(t)?;
        let f = &self.field;
        let val = MPoly::constant(f, f.from_i64(eps), VARS.len());
        let h = self.h.subst(f, ti, &val);
        let source: Vec<&str> = self.source.iter().map(String::as_str).collect();
        let units: Vec<&str> = self.units.iter().map(String::as_str).collect();
        let b = Self::from_poly(f, h, &source, &units, None, &self.target, self.punctured)
            .map_err(|e| Error::Certificate(format!("fibre {t} = {eps}: {e}")))?;
        let deg = self.target_coeffs().len();
        if b.target_coeffs().len() != deg {
            return Err(Error::Certificate(format!("fibre {t} = {eps}: {}-degree drops below {}", self.target, deg - 1)));
        }
        b.certificate().map_err(|e| match e {
            Error::Certificate(m) => Error::Certificate(format!("fibre {t} = {eps}: {m}")),
            other => other,
        })?;
        Ok(b.normalized())
    }

    /// Adjoins an extra coefficient variable to the base field, e.g. passing
    /// from `F_p` to `F_p(u)`. The equation is unchanged; `u` becomes a
    /// coefficient that irreducibility witnesses must specialise as well.
    pub fn with_coefficient(&self, name: &str) -> Result<Self> {
        var_index(name)?;
        let mut c = self.clone();
        if !c.source.iter().any(|s| s == name) {
            c.source.push(name.to_string());
        }
        Ok(c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "h": self.display(),
            "source": self.source,
            "units": self.units,
            "param": self.param,
            "target": self.target,
            "punctured": self.punctured,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let s = |k: &str| v.get(k).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing {k}")));
        let list = |k: &str| -> Result<Vec<String>> {
            v.get(k)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("missing {k}")))?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse(format!("bad {k}"))))
                .collect()
        };
        let field = crate::exact::parse_ring(s("field")?)?;
        let source = list("source")?;
        let units = list("units")?;
        let src: Vec<&str> = source.iter().map(String::as_str).collect();
        let un: Vec<&str> = units.iter().map(String::as_str).collect();
        let param = v.get("param").and_then(Value::as_str);
        let punctured = v.get("punctured").and_then(Value::as_bool).unwrap_or(false);
        Self::new(&field, s("h")?, &src, &un, param, s("target")?, punctured)
    }
}

/// `β ∘ α = Res_y(α(x, y), β(y, z))` where `y` is the target of `α` and a
/// source coordinate of `β`. With `α` monic in `y` this is `∏ β(y_i)` over
/// the roots of `α`.
pub fn compose(alpha: &PlaneCorrespondence, beta: &PlaneCorrespondence) -> Result<PlaneCorrespondence> {
    if alpha.field != beta.field {
        return Err(Error::RingMismatch(alpha.field.to_string(), beta.field.to_string()));
    }
    alpha.certificate()?;
    let y = &alpha.target;
    pre(beta.source.contains(y), || format!("{y} is not a source coordinate of the second correspondence"))?;
    let ring = pool_ring(&alpha.field);
    let r = resultant(&ring, &Elem::Poly(alpha.h.clone()), &Elem::Poly(beta.h.clone()), y)?;
    let mut source: Vec<&str> = alpha.source.iter().map(String::as_str).collect();
    let mut units: Vec<&str> = alpha.units.iter().map(String::as_str).collect();
    for s in beta.source.iter().filter(|s| *s != y) {
        if !source.contains(&s.as_str()) {
            source.push(s);
        }
    }
    for u in beta.units.iter().filter(|s| *s != y) {
        if !units.contains(&u.as_str()) {
            units.push(u);
        }
    }
    let param = alpha.param.as_deref().or(beta.param.as_deref());
    Ok(PlaneCorrespondence::from_poly(&alpha.field, r.as_poly().clone(), &source, &units, param, &beta.target, beta.punctured)?.normalized())
}

/// Whether `a` and `b` cut out the same cycle: `a·lc(b) = b·lc(a)` in the
/// target variable (both are monic up to a unit).
pub fn same_cycle(field: &Ring, a: &MPoly, b: &MPoly, target: &str) -> Result<bool> {
    let i = var_index(target)?;
    let lc = |f: &MPoly| f.coeffs_in(field, i).last().cloned().unwrap_or_else(MPoly::zero);
    Ok(a.mul(field, &lc(b)) == b.mul(field, &lc(a)))
}

/// Remainder of `f` modulo `p`, whose leading coefficient in `var` is a scalar unit.
pub fn reduce_mod(field: &Ring, f: &MPoly, p: &MPoly, var: &str) -> Result<MPoly> {
    let i = var_index(var)?;
    let pc = p.coeffs_in(field, i);
    let d = pc.len().checked_sub(1).ok_or_else(|| Error::Precondition("zero modulus".into()))?;
    let lead = pc.last().expect("nonzero");
    pre(lead.is_constant(), || "leading coefficient must be a scalar".into())?;
    let li = field.inv(&lead.constant_term(field)).ok_or_else(|| Error::NotUnit(field.fmt_elem(&lead.constant_term(field))))?;
    let nv = VARS.len();
    let mut f = f.clone();
    loop {
        let fc = f.coeffs_in(field, i);
        if fc.len() <= d {
            return Ok(f);
        }
        let k = fc.len() - 1;
        let mut e = vec![0u32; nv];
        e[i] = (k - d) as u32;
        let shift = MPoly::monomial(field, e, li.clone());
        f = f.sub(field, &fc[k].mul(field, &shift).mul(field, p));
    }
}

/// A cycle in `source × 𝔸^k` given by a primary coordinate cut out by `p`
/// (monic up to a scalar) and the remaining coordinates as functions of the
/// source and the primary coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCycle {
    pub field: Ring,
    pub primary: String,
    pub p: MPoly,
    pub coords: BTreeMap<String, MPoly>,
}

impl GraphCycle {
    pub fn new(field: &Ring, primary: &str, p: &str, coords: &[(&str, &str)]) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (v, g) in coords {
            m.insert(v.to_string(), parse_poly(field, g)?);
        }
        Ok(GraphCycle { field: field.clone(), primary: primary.into(), p: parse_poly(field, p)?, coords: m })
    }

    pub fn of(c: &PlaneCorrespondence, coords: BTreeMap<String, MPoly>) -> Self {
        GraphCycle { field: c.field.clone(), primary: c.target.clone(), p: c.h.clone(), coords }
    }

    pub fn same_as(&self, o: &GraphCycle) -> Result<bool> {
        if self.primary != o.primary || self.coords.keys().ne(o.coords.keys()) {
            return Ok(false);
        }
        if !same_cycle(&self.field, &self.p, &o.p, &self.primary)? {
            return Ok(false);
        }
        for (k, g) in &self.coords {
            let diff = g.sub(&self.field, &o.coords[k]);
            if !reduce_mod(&self.field, &diff, &self.p, &self.primary)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn display(&self) -> String {
        let mut parts = vec![format!("{} = 0", show(&self.field, &self.p))];
        for (k, g) in &self.coords {
            parts.push(format!("{k} = {}", show(&self.field, g)));
        }
        parts.join(", ")
    }
}

/// Formats a multiset of components as `[f] + 2[g]`.
pub fn show_components(field: &Ring, comps: &[(MPoly, u32)]) -> String {
    if comps.is_empty() {
        return "0".into();
    }
    comps
        .iter()
        .map(|(f, m)| if *m == 1 { format!("[{}]", show(field, f)) } else { format!("{m}[{}]", show(field, f)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Why a component is irreducible over the function field of the source.
fn irreducibility_witness(field: &Ring, g: &MPoly, target: &str, coeff_vars: &[String]) -> Option<String> {
    let ti = var_index(target).ok()?;
    let cs = g.coeffs_in(field, ti);
    let deg = cs.len().checked_sub(1)?;
    if deg == 1 {
        return Some("linear".into());
    }
    let lead = cs.last()?;
    // Eisenstein at a coefficient variable v: lead prime to v, all lower
    // coefficients divisible by v, constant not divisible by v².
    for v in coeff_vars {
        let vi = var_index(v).ok()?;
        let min_exp = |c: &MPoly| c.terms().map(|(e, _)| e[vi]).min();
        let lower_ok = cs[..deg].iter().all(|c| c.is_zero() || min_exp(c).unwrap_or(0) >= 1);
        if lead.is_constant() && lower_ok && min_exp(&cs[0]) == Some(1) {
            return Some(format!("Eisenstein at {v}"));
        }
    }
    // Specialisation: a full-degree irreducible specialisation forces
    // irreducibility of the monic generic polynomial.
    if !lead.is_constant() {
        return None;
    }
    let vals: Vec<i64> = vec![2, 3, 1, 5, 6, -1, -2, 4, 7, -3];
    let idx: Vec<usize> = coeff_vars.iter().filter_map(|v| var_index(v).ok()).filter(|&i| g.involves(i)).collect();
    let total = vals.len().pow(idx.len() as u32).min(200);
    for code in 0..total {
        let mut h = g.clone();
        let mut c = code;
        let mut point = Vec::new();
        for &i in &idx {
            let v = vals[c % vals.len()];
            c /= vals.len();
            point.push(format!("{}={v}", VARS[i]));
            h = h.subst(field, i, &MPoly::constant(field, field.from_i64(v), VARS.len()));
        }
        let u = match UPoly::from_mpoly(field, &h, ti) {
            Ok(u) => u,
            Err(_) => continue,
        };
        if u.degree() != Some(deg) {
            continue;
        }
        let u = u.monic().ok()?;
        let fac = match field {
            Ring::Q => factor_monic_q(&u),
            _ => factor_monic(&u),
        };
        if let Ok(fac) = fac {
            if fac.len() == 1 && fac[0].1 == 1 {
                return Some(format!("irreducible specialisation at {}", point.join(",")));
            }
        }
    }
    None
}

/// Verifies that the cycle of `h` is `Σ m_i [g_i]` with pairwise distinct
/// irreducible components over the function field of the coefficient
/// variables. Returns one witness per component.
pub fn check_components(field: &Ring, h: &MPoly, target: &str, comps: &[(MPoly, u32)], coeff_vars: &[String]) -> Result<std::result::Result<Vec<String>, String>> {
    let ring = pool_ring(field);
    let nv = VARS.len();
    let mut prod = MPoly::constant(field, field.one(), nv);
    for (g, m) in comps {
        prod = prod.mul(field, &g.pow(field, *m as u64, nv));
    }
    if !same_cycle(field, &prod, h, target)? {
        return Ok(Err(format!("product of components is {}", show(field, &prod))));
    }
    for (i, (a, _)) in comps.iter().enumerate() {
        for (b, _) in &comps[i + 1..] {
            let r = resultant(&ring, &Elem::Poly(a.clone()), &Elem::Poly(b.clone()), target)?;
            if r.as_poly().is_zero() {
                return Ok(Err(format!("[{}] and [{}] share a component", show(field, a), show(field, b))));
            }
        }
    }
    let mut witnesses = Vec::new();
    for (g, _) in comps {
        match irreducibility_witness(field, g, target, coeff_vars) {
            Some(w) => witnesses.push(format!("[{}]: {w}", show(field, g))),
            None => return Ok(Err(format!("no irreducibility witness for [{}]", show(field, g)))),
        }
    }
    Ok(Ok(witnesses))
}

/// Merges equal components (up to scalars) of a multiset.
pub fn merge_components(field: &Ring, comps: &[(MPoly, u32)], target: &str) -> Result<Vec<(MPoly, u32)>> {
    let mut out: Vec<(MPoly, u32)> = Vec::new();
    for (g, m) in comps {
        if *m == 0 {
            continue;
        }
        let mut found = false;
        for (h, k) in out.iter_mut() {
            if same_cycle(field, g, h, target)? {
                *k += m;
                found = true;
                break;
            }
        }
        if !found {
            out.push((g.clone(), *m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_by_resultant() {
        let q = Ring::Q;
        let a = PlaneCorrespondence::new(&q, "y^2 - x", &["x"], &[], None, "y", false).unwrap();
        let b = PlaneCorrespondence::new(&q, "z - y^3", &["y"], &[], None, "z", false).unwrap();
        let c = compose(&a, &b).unwrap();
        assert!(same_cycle(&q, c.poly(), &parse_poly(&q, "z^2 - x^3").unwrap(), "z").unwrap());
        let id = PlaneCorrespondence::new(&q, "y - x", &["x"], &[], None, "y", false).unwrap();
        let b2 = PlaneCorrespondence::new(&q, "z^2 - y*z + 1", &["y"], &[], None, "z", false).unwrap();
        let c2 = compose(&id, &b2).unwrap();
        assert!(same_cycle(&q, c2.poly(), &parse_poly(&q, "z^2 - x*z + 1").unwrap(), "z").unwrap());
    }

    #[test]
    fn boundaries() {
        let f7 = Ring::Fp(7);
        let g = PlaneCorrespondence::new(&f7, "(1-t)*(y-x^2)*(y-1) + t*(y-x)^2", &["x"], &["x"], Some("t"), "y", true).unwrap();
        assert!(g.certificate().is_ok());
        let b0 = g.boundary(0).unwrap();
        assert!(same_cycle(&f7, b0.poly(), &parse_poly(&f7, "(y-x^2)*(y-1)").unwrap(), "y").unwrap());
        let b1 = g.boundary(1).unwrap();
        assert!(same_cycle(&f7, b1.poly(), &parse_poly(&f7, "(y-x)^2").unwrap(), "y").unwrap());
        let g3 = PlaneCorrespondence::new(&f7, "(1-t)*(x-2)*(x-3) + t*(x-6)*(x-1)", &[], &[], Some("t"), "x", true).unwrap();
        assert!(same_cycle(&f7, g3.boundary(1).unwrap().poly(), &parse_poly(&f7, "(x-6)*(x-1)").unwrap(), "x").unwrap());
        let flat = PlaneCorrespondence::new(&f7, "y^2 - x", &["x"], &["x"], Some("t"), "y", true).unwrap();
        assert_eq!(flat.boundary(0).unwrap().poly(), flat.boundary(1).unwrap().poly());
        let degenerate = PlaneCorrespondence::new(&f7, "t*y^2 + y - x", &["x"], &["x"], Some("t"), "y", true).unwrap();
        assert!(degenerate.boundary(0).is_err());
    }

    #[test]
    fn even_s_fails_certificate() {
        let f5 = Ring::Fp(5);
        let g = PlaneCorrespondence::new(&f5, "(1-t)*(y^2-x) + t*(y-x)*(y-1)", &["x"], &["x"], Some("t"), "y", true).unwrap();
        match g.certificate() {
            Err(Error::Certificate(m)) => assert!(m.contains("constant")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let f5 = Ring::Fp(5);
        let g = PlaneCorrespondence::new(&f5, "(1-t)*(y^3-x) + t*(y-x)*(y-1)^2", &["x"], &["x"], Some("t"), "y", true).unwrap();
        assert_eq!(PlaneCorrespondence::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn reduction_modulo_monic() {
        let q = Ring::Q;
        let p = parse_poly(&q, "y^2 - x").unwrap();
        let f = parse_poly(&q, "y^3 + y^2").unwrap();
        assert_eq!(reduce_mod(&q, &f, &p, "y").unwrap(), parse_poly(&q, "x*y + x").unwrap());
    }
}
