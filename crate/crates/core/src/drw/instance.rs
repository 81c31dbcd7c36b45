//! Witt complexes given by evaluable operations on finite sample sets, and a
//! checker for the axioms
//!
//! * `R`, `F` are maps of graded rings, `V` is additive, `R` commutes with
//!   `d`, `F` and `V`;
//! * `V(x ⋆ F y) = V(x) ⋆ y`, `FdV = d`, `FV = p`,
//!   `F dλ[a] = λ[a^{p-1}] ⋆ dλ[a]`;
//! * `d² = 0`, graded Leibniz and graded commutativity;
//! * `λ` is a ring map compatible with `R`, `F` and `V`.
//!
//! Also generates axiom instances inside a [`BoundedPresentation`] and checks
//! that each one reduces to zero there.

use std::fmt::Debug;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::kahler::{KahlerForm, KahlerModule};
use super::presentation::{lambda_teich, BoundedPresentation};
use super::word::{teichmuller_lift, DRWExpression, Factor, WittWord};
use crate::error::{Error, Result};
use crate::exact::{Elem, MPoly, Ring};
use crate::witt::PTypicalWitt;

/// Operations of a Witt complex `(E_l^q)`, `1 ≤ l ≤ levels`, `0 ≤ q ≤ max_degree`.
/// `r` and `f` go from level `l` to `l - 1`, `v` from `l` to `l + 1`; `λ` maps
/// `W_l(A)` into `E_l^0`.
pub trait WittComplexInstance {
    type Elem: Clone + PartialEq + Debug;

    fn name(&self) -> String;
    fn p(&self) -> u64;
    fn levels(&self) -> u32;
    fn max_degree(&self) -> usize;
    fn base_ring(&self) -> Ring;
    /// Elements `a ∈ A` used for `λ[a]` and Witt vector samples.
    fn base_samples(&self) -> Vec<Elem>;
    fn samples(&self, level: u32, degree: usize) -> Vec<Self::Elem>;

    fn zero(&self, level: u32, degree: usize) -> Self::Elem;
    fn one(&self, level: u32) -> Self::Elem;
    fn add(&self, level: u32, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, level: u32, a: &Self::Elem, k: i64) -> Self::Elem;
    fn mul(&self, level: u32, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn d(&self, level: u32, a: &Self::Elem) -> Self::Elem;
    fn r(&self, level: u32, a: &Self::Elem) -> Self::Elem;
    fn f(&self, level: u32, a: &Self::Elem) -> Self::Elem;
    fn v(&self, level: u32, a: &Self::Elem) -> Self::Elem;
    fn lambda(&self, w: &PTypicalWitt) -> Self::Elem;
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub instance: String,
    pub checks: Vec<AxiomCheck>,
    pub pass: bool,
}

impl AxiomReport {
    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }
}

const MAX_LISTED: usize = 5;

#[derive(Default)]
struct Tally {
    checks: Vec<AxiomCheck>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool, what: impl FnOnce() -> String) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(AxiomCheck { name: name.into(), cases: 0, failed: 0, failures: vec![] });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[idx];
        c.cases += 1;
        if !ok {
            c.failed += 1;
            if c.failures.len() < MAX_LISTED {
                c.failures.push(what());
            }
        }
    }

    fn finish(self, instance: String) -> AxiomReport {
        let pass = !self.checks.is_empty() && self.checks.iter().all(|c| c.failed == 0);
        AxiomReport { instance, checks: self.checks, pass }
    }
}

fn witt_samples<I: WittComplexInstance + ?Sized>(inst: &I, level: u32) -> Result<Vec<PTypicalWitt>> {
    let base = inst.base_samples();
    let r = inst.base_ring();
    let mut out = Vec::new();
    for (i, a) in base.iter().enumerate() {
        let mut comps = vec![r.zero(); level as usize];
        comps[0] = a.clone();
        if level > 1 {
            comps[level as usize - 1] = base[(i + 1) % base.len()].clone();
        }
        out.push(PTypicalWitt::new(inst.p(), &r, comps)?);
    }
    Ok(out)
}

/// Evaluates every axiom on all samples.
pub fn axioms_check<I: WittComplexInstance + ?Sized>(inst: &I) -> Result<AxiomReport> {
    let p = inst.p();
    let top = inst.levels();
    let qmax = inst.max_degree();
    if top == 0 || (1..=top).all(|l| inst.samples(l, 0).is_empty()) {
        return Err(Error::Precondition("empty sample domain".into()));
    }
    let mut t = Tally::default();
    let pp = p as i64;
    for l in 1..=top {
        for q in 0..=qmax {
            for x in inst.samples(l, q) {
                if q + 2 <= qmax {
                    t.record("d squared", inst.d(l, &inst.d(l, &x)) == inst.zero(l, q + 2), || format!("level {l}: {x:?}"));
                }
                if l < top {
                    let fv = inst.f(l + 1, &inst.v(l, &x));
                    t.record("FV = p", fv == inst.scale(l, &x, pp), || format!("level {l}: {x:?} -> {fv:?}"));
                    if q < qmax {
                        let fdv = inst.f(l + 1, &inst.d(l + 1, &inst.v(l, &x)));
                        t.record("FdV = d", fdv == inst.d(l, &x), || format!("level {l}: {x:?}"));
                    }
                    let rv = inst.r(l + 1, &inst.v(l, &x));
                    if l > 1 {
                        t.record("RV = VR", rv == inst.v(l - 1, &inst.r(l, &x)), || format!("level {l}: {x:?}"));
                    }
                }
                if l > 1 && q < qmax {
                    t.record("Rd = dR", inst.r(l, &inst.d(l, &x)) == inst.d(l - 1, &inst.r(l, &x)), || format!("level {l}: {x:?}"));
                }
                if l > 2 {
                    t.record("RF = FR", inst.r(l - 1, &inst.f(l, &x)) == inst.f(l - 1, &inst.r(l, &x)), || format!("level {l}: {x:?}"));
                }
                for q2 in 0..=qmax - q {
                    for y in inst.samples(l, q2) {
                        let xy = inst.mul(l, &x, &y);
                        let yx = inst.mul(l, &y, &x);
                        let sign = if q * q2 % 2 == 1 { -1 } else { 1 };
                        t.record("graded commutativity", xy == inst.scale(l, &yx, sign), || format!("level {l}: {x:?}, {y:?}"));
                        if q + q2 < qmax {
                            let lhs = inst.d(l, &xy);
                            let s = if q % 2 == 1 { -1 } else { 1 };
                            let rhs = inst.add(l, &inst.mul(l, &inst.d(l, &x), &y), &inst.scale(l, &inst.mul(l, &x, &inst.d(l, &y)), s));
                            t.record("Leibniz", lhs == rhs, || format!("level {l}: {x:?}, {y:?}"));
                        }
                        if l > 1 && q == q2 {
                            let r_mul = inst.r(l, &xy) == inst.mul(l - 1, &inst.r(l, &x), &inst.r(l, &y));
                            let r_add = inst.r(l, &inst.add(l, &x, &y)) == inst.add(l - 1, &inst.r(l, &x), &inst.r(l, &y));
                            t.record("R ring map", r_mul && r_add, || format!("level {l}: {x:?}, {y:?}"));
                            let f_mul = inst.f(l, &xy) == inst.mul(l - 1, &inst.f(l, &x), &inst.f(l, &y));
                            let f_add = inst.f(l, &inst.add(l, &x, &y)) == inst.add(l - 1, &inst.f(l, &x), &inst.f(l, &y));
                            t.record("F ring map", f_mul && f_add, || format!("level {l}: {x:?}, {y:?}"));
                        }
                        if l < top {
                            let v_add = inst.v(l, &inst.add(l, &x, &y)) == inst.add(l + 1, &inst.v(l, &x), &inst.v(l, &y));
                            if q == q2 {
                                t.record("V additive", v_add, || format!("level {l}: {x:?}, {y:?}"));
                            }
                        }
                    }
                }
                if l < top {
                    // V(x ⋆ F y) = V(x) ⋆ y with y at level l + 1
                    for q2 in 0..=qmax - q {
                        for y in inst.samples(l + 1, q2) {
                            let lhs = inst.v(l, &inst.mul(l, &x, &inst.f(l + 1, &y)));
                            let rhs = inst.mul(l + 1, &inst.v(l, &x), &y);
                            t.record("V(x F(y)) = V(x) y", lhs == rhs, || format!("level {l}: {x:?}, {y:?}"));
                        }
                    }
                }
            }
        }
        if l > 1 {
            let one = inst.one(l);
            t.record("R ring map", inst.r(l, &one) == inst.one(l - 1), || "R(1)".into());
            t.record("F ring map", inst.f(l, &one) == inst.one(l - 1), || "F(1)".into());
        }
        // λ
        let ws = witt_samples(inst, l)?;
        t.record("lambda ring map", inst.lambda(&PTypicalWitt::one(p, &inst.base_ring(), l as usize)) == inst.one(l), || "λ(1)".into());
        for a in &ws {
            for b in &ws {
                let sum = a.add(b)?;
                let prod = a.star(b)?;
                let ok = inst.lambda(&sum) == inst.add(l, &inst.lambda(a), &inst.lambda(b)) && inst.lambda(&prod) == inst.mul(l, &inst.lambda(a), &inst.lambda(b));
                t.record("lambda ring map", ok, || format!("{}, {}", a.display(), b.display()));
            }
            if l > 1 {
                let la = inst.lambda(a);
                t.record("R lambda = lambda R", inst.r(l, &la) == inst.lambda(&a.restrict(l as usize - 1)?), || a.display());
                t.record("F lambda = lambda F", inst.f(l, &la) == inst.lambda(&a.frobenius()?), || a.display());
            }
            if l < top {
                t.record("V lambda = lambda V", inst.v(l, &inst.lambda(a)) == inst.lambda(&a.verschiebung()?), || a.display());
            }
        }
        if l < top && qmax >= 1 {
            let r = inst.base_ring();
            for a in inst.base_samples() {
                let lam = |lv: u32, x: &Elem| inst.lambda(&PTypicalWitt::teichmuller(p, &r, x, lv as usize));
                let lhs = inst.f(l + 1, &inst.d(l + 1, &lam(l + 1, &a)));
                let rhs = inst.mul(l, &lam(l, &r.pow(&a, p - 1)), &inst.d(l, &lam(l, &a)));
                t.record("F d lambda[a] = lambda[a^(p-1)] d lambda[a]", lhs == rhs, || format!("level {l}: a = {}", r.fmt_elem(&a)));
            }
        }
    }
    Ok(t.finish(inst.name()))
}

/// `A = F_p`: `E_l^0 = ℤ/p^l`, higher degrees zero, `F = R` = reduction,
/// `V` = multiplication by `v_factor` (`p` for the genuine complex).
#[derive(Clone, Debug)]
pub struct DegenerateInstance {
    pub p: u64,
    pub levels: u32,
    pub v_factor: u64,
}

/// `(degree, residue)`; every positive-degree element is zero.
pub type ScalarElem = (usize, u64);

impl DegenerateInstance {
    pub fn new(p: u64, levels: u32) -> Self {
        DegenerateInstance { p, levels, v_factor: p }
    }

    /// The negative control `V = p + 1`.
    pub fn mutated(p: u64, levels: u32) -> Self {
        DegenerateInstance { p, levels, v_factor: p + 1 }
    }

    fn m(&self, level: u32) -> u64 {
        self.p.pow(level)
    }

    fn mk(&self, level: u32, q: usize, x: i128) -> ScalarElem {
        if q > 0 {
            return (q, 0);
        }
        (0, x.rem_euclid(self.m(level) as i128) as u64)
    }
}

impl WittComplexInstance for DegenerateInstance {
    type Elem = ScalarElem;

    fn name(&self) -> String {
        if self.v_factor == self.p {
            format!("constant field F{}", self.p)
        } else {
            format!("constant field F{} with V = {}", self.p, self.v_factor)
        }
    }
    fn p(&self) -> u64 {
        self.p
    }
    fn levels(&self) -> u32 {
        self.levels
    }
    fn max_degree(&self) -> usize {
        2
    }
    fn base_ring(&self) -> Ring {
        Ring::Fp(self.p)
    }
    fn base_samples(&self) -> Vec<Elem> {
        (0..self.p).map(|c| Elem::Mod(c)).collect()
    }
    fn samples(&self, level: u32, degree: usize) -> Vec<ScalarElem> {
        if degree > 0 {
            return vec![(degree, 0)];
        }
        let m = self.m(level);
        let step = (m / 12).max(1);
        (0..m).step_by(step as usize).map(|x| (0, x)).collect()
    }
    fn zero(&self, _: u32, degree: usize) -> ScalarElem {
        (degree, 0)
    }
    fn one(&self, level: u32) -> ScalarElem {
        self.mk(level, 0, 1)
    }
    fn add(&self, level: u32, a: &ScalarElem, b: &ScalarElem) -> ScalarElem {
        self.mk(level, a.0, a.1 as i128 + b.1 as i128)
    }
    fn scale(&self, level: u32, a: &ScalarElem, k: i64) -> ScalarElem {
        self.mk(level, a.0, a.1 as i128 * k as i128)
    }
    fn mul(&self, level: u32, a: &ScalarElem, b: &ScalarElem) -> ScalarElem {
        self.mk(level, a.0 + b.0, a.1 as i128 * b.1 as i128)
    }
    fn d(&self, _: u32, a: &ScalarElem) -> ScalarElem {
        (a.0 + 1, 0)
    }
    fn r(&self, level: u32, a: &ScalarElem) -> ScalarElem {
        self.mk(level - 1, a.0, a.1 as i128)
    }
    fn f(&self, level: u32, a: &ScalarElem) -> ScalarElem {
        self.mk(level - 1, a.0, a.1 as i128)
    }
    fn v(&self, level: u32, a: &ScalarElem) -> ScalarElem {
        self.mk(level + 1, a.0, a.1 as i128 * self.v_factor as i128)
    }
    fn lambda(&self, w: &PTypicalWitt) -> ScalarElem {
        let l = w.level() as u32;
        let x: i128 = w.comps().iter().enumerate().map(|(j, c)| self.p.pow(j as u32) as i128 * teichmuller_lift(c.as_mod(), self.p, l) as i128).sum();
        self.mk(l, 0, x)
    }
}

/// `Ω^*` of `F_p[x]` as a single-level Witt complex; only the axioms that
/// stay inside level one apply.
#[derive(Clone, Debug)]
pub struct KahlerInstance {
    pub module: KahlerModule,
    pub p: u64,
}

impl KahlerInstance {
    pub fn new(p: u64) -> Result<Self> {
        Ok(KahlerInstance { module: KahlerModule::new(&Ring::fp(p)?, &["x"])?, p })
    }

    fn poly(&self, coeffs: &[i64]) -> MPoly {
        let f = Ring::Fp(self.p);
        MPoly::from_terms(&f, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], f.from_i64(c))))
    }
}

impl WittComplexInstance for KahlerInstance {
    type Elem = KahlerForm;

    fn name(&self) -> String {
        format!("Kahler differentials of F{}[x]", self.p)
    }
    fn p(&self) -> u64 {
        self.p
    }
    fn levels(&self) -> u32 {
        1
    }
    fn max_degree(&self) -> usize {
        2
    }
    fn base_ring(&self) -> Ring {
        Ring::poly(Ring::Fp(self.p), &["x"])
    }
    fn base_samples(&self) -> Vec<Elem> {
        [[1, 0, 0], [0, 1, 0], [1, 1, 0], [2, 0, 1], [0, 3, 1]].iter().map(|c| Elem::Poly(self.poly(c))).collect()
    }
    fn samples(&self, _: u32, degree: usize) -> Vec<KahlerForm> {
        let km = &self.module;
        let fs: Vec<KahlerForm> = self.base_samples().iter().map(|a| km.function(a.as_poly())).collect();
        match degree {
            0 => fs,
            1 => fs.iter().map(|f| km.wedge(f, &km.dx(0))).chain(fs.iter().map(|f| km.d(f))).collect(),
            _ => vec![km.zero()],
        }
    }
    fn zero(&self, _: u32, _: usize) -> KahlerForm {
        self.module.zero()
    }
    fn one(&self, _: u32) -> KahlerForm {
        self.module.monomial(&[0])
    }
    fn add(&self, _: u32, a: &KahlerForm, b: &KahlerForm) -> KahlerForm {
        self.module.add(a, b)
    }
    fn scale(&self, _: u32, a: &KahlerForm, k: i64) -> KahlerForm {
        self.module.scale(a, &Ring::Fp(self.p).from_i64(k))
    }
    fn mul(&self, _: u32, a: &KahlerForm, b: &KahlerForm) -> KahlerForm {
        self.module.wedge(a, b)
    }
    fn d(&self, _: u32, a: &KahlerForm) -> KahlerForm {
        self.module.d(a)
    }
    fn r(&self, _: u32, _: &KahlerForm) -> KahlerForm {
        unreachable!("single level")
    }
    fn f(&self, _: u32, _: &KahlerForm) -> KahlerForm {
        unreachable!("single level")
    }
    fn v(&self, _: u32, _: &KahlerForm) -> KahlerForm {
        unreachable!("single level")
    }
    fn lambda(&self, w: &PTypicalWitt) -> KahlerForm {
        self.module.function(w.comps()[0].as_poly())
    }
}

/// Instances of the axioms among words of a presentation, each checked to
/// reduce to zero. Instances whose terms leave the presentation are skipped.
pub fn presentation_self_check(pres: &mut BoundedPresentation, per_family: usize, seed: u64) -> Result<AxiomReport> {
    let (p, n) = (pres.p(), pres.n());
    let ring = pres.ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    let keys: Vec<_> = pres.blocks().map(|b| (b.weight, b.degree)).collect();
    let word = |w: &WittWord| DRWExpression::word(p, n, w.clone(), 1);
    let check = |pres: &BoundedPresentation, t: &mut Tally, name: &str, e: DRWExpression| -> Result<()> {
        match pres.reduce(&e) {
            Ok(r) => t.record(name, r.is_zero(), || format!("{} leaves {}", e.display(ring.var_name()), r.display(ring.var_name()))),
            Err(Error::Precondition(_)) => {}
            Err(other) => return Err(other),
        }
        Ok(())
    };
    let mut pick = |ws: &[WittWord], k: usize| -> Vec<WittWord> {
        let mut v: Vec<WittWord> = ws.to_vec();
        v.shuffle(&mut rng);
        v.truncate(k);
        v
    };
    let mut all_words = Vec::new();
    for &(w, q) in &keys {
        let ws = pres.words(w, q);
        all_words.push((w, q, ws.clone()));
        for x in pick(&ws, per_family) {
            let x = word(&x);
            check(pres, &mut t, "FV = p", x.verschiebung().frobenius().sub(&x.scale(p as i64)))?;
            check(pres, &mut t, "d squared", x.d().d())?;
            check(pres, &mut t, "FdV = d", x.verschiebung().d().frobenius().sub(&x.d()))?;
        }
    }
    for (i, (w1, q1, ws1)) in all_words.iter().enumerate() {
        for (w2, q2, ws2) in &all_words[i..] {
            if !keys.contains(&(*w1 + *w2, q1 + q2)) {
                continue;
            }
            for (x, y) in pick(ws1, per_family).into_iter().zip(pick(ws2, per_family)) {
                let (x, y) = (word(&x), word(&y));
                let s = if q1 % 2 == 1 { -1 } else { 1 };
                check(pres, &mut t, "Leibniz", x.mul(&y).d().sub(&x.d().mul(&y)).sub(&x.mul(&y.d()).scale(s)))?;
                let c = if q1 * q2 % 2 == 1 { -1 } else { 1 };
                check(pres, &mut t, "graded commutativity", x.mul(&y).sub(&y.mul(&x).scale(c)))?;
            }
            // V(x ⋆ F y) = V(x) ⋆ y with x of weight p·w1
            let xs = pres.words(*w1 * p, *q1);
            for (x, y) in pick(&xs, per_family).into_iter().zip(pick(ws2, per_family)) {
                let (x, y) = (word(&x), word(&y));
                check(pres, &mut t, "V(x F(y)) = V(x) y", x.mul(&y.frobenius()).verschiebung().sub(&x.verschiebung().mul(&y)))?;
            }
        }
    }
    // λ: monomials and additivity for a·m + b·m.
    let fp = Ring::Fp(p);
    for &(w, q) in &keys {
        if q != 1 || !w.is_integer() {
            continue;
        }
        let k = w.to_integer() as u32;
        if k % p as u32 != 0 || (k == 0 && ring.has_var()) {
            continue;
        }
        let km = k / p as u32;
        for c in 1..p {
            let a = ring.monomial(c, km);
            if km == 0 {
                continue;
            }
            let lhs = lambda_teich(&ring, &a, n, n + 1)?.d().frobenius().project();
            let ap = ring.ring().pow(&a, p - 1);
            let rhs = lambda_teich(&ring, &ap, n, n)?.mul(&lambda_teich(&ring, &a, n, n)?.d());
            check(pres, &mut t, "F d lambda[a] = lambda[a^(p-1)] d lambda[a]", lhs.sub(&rhs))?;
        }
    }
    for &(w, q) in &keys {
        if q != 0 || !w.is_integer() {
            continue;
        }
        let k = w.to_integer() as u32;
        for a in 1..p {
            for b in 1..p {
                let wa = PTypicalWitt::teichmuller(p, &ring.ring(), &ring.monomial(a, k), n as usize);
                let wb = PTypicalWitt::teichmuller(p, &ring.ring(), &ring.monomial(b, k), n as usize);
                let lhs = super::presentation::lambda_of(&ring, &wa.add(&wb)?, n)?;
                let rhs = lambda_teich(&ring, &ring.monomial(a, k), n, n)?.add(&lambda_teich(&ring, &ring.monomial(b, k), n, n)?);
                check(pres, &mut t, "lambda additive", lhs.sub(&rhs))?;
                let prod = lambda_teich(&ring, &fp.mul(&fp.from_i64(a as i64), &fp.from_i64(b as i64)), n, n)?
                    .mul(&DRWExpression::word(p, n, WittWord::head(Factor { j: 0, k }), 1));
                let lhs = lambda_teich(&ring, &ring.monomial(a, 0), n, n)?.mul(&lambda_teich(&ring, &ring.monomial(b, k), n, n)?);
                check(pres, &mut t, "lambda multiplicative", lhs.sub(&prod))?;
            }
        }
    }
    Ok(t.finish(format!("presentation of W{}Ω over {}", n, ring.tag())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drw::presentation::PresentationParams;

    #[test]
    fn constant_field_passes() {
        for p in [3, 5] {
            let r = axioms_check(&DegenerateInstance::new(p, 3)).unwrap();
            assert!(r.pass, "{r:#?}");
        }
    }

    #[test]
    fn mutated_verschiebung_fails() {
        let r = axioms_check(&DegenerateInstance::mutated(3, 3)).unwrap();
        assert!(!r.pass);
        let fv = r.checks.iter().find(|c| c.name == "FV = p").unwrap();
        assert!(fv.failed > 0);
    }

    #[test]
    fn kahler_level_one() {
        let r = axioms_check(&KahlerInstance::new(5).unwrap()).unwrap();
        assert!(r.pass, "{r:#?}");
        assert!(r.checks.iter().all(|c| c.name != "FV = p"));
    }

    #[test]
    fn self_check_small() {
        let params = PresentationParams { ring: "F3[x]".into(), n: 2, q: 2, dx: 3, dr: 0 };
        let mut pres = BoundedPresentation::build(&params).unwrap();
        let r = presentation_self_check(&mut pres, 4, 1).unwrap();
        assert!(r.pass, "{r:#?}");
        assert!(r.cases() > 50);
    }
}
