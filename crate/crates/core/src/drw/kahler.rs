//! Kähler differentials of `R[x_1, …, x_r]` for `R = F_p` or `ℤ/m`: the free
//! module on `f·dx_I`, `I` increasing, with the Leibniz differential. This is
//! the level-one instance `W₁Ω = Ω`.

use std::collections::BTreeMap;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::exact::{Elem, MPoly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerModule {
    pub base: Ring,
    pub vars: Vec<String>,
}

/// `Σ c · x^e dx_{i_1} ∧ ⋯ ∧ dx_{i_q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerForm {
    terms: BTreeMap<(Vec<u32>, Vec<usize>), Elem>,
}

/// Sorts wedge indices with sign; `None` on a repeat.
fn sort_wedge(mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut k = i;
        while k > 0 && idx[k - 1] > idx[k] {
            idx.swap(k - 1, k);
            odd = !odd;
            k -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((idx, odd))
    }
}

impl KahlerModule {
    pub fn new(base: &Ring, vars: &[&str]) -> Result<Self> {
        match base {
            Ring::Fp(_) | Ring::Zmod(_) => Ok(KahlerModule { base: base.clone(), vars: vars.iter().map(|v| v.to_string()).collect() }),
            other => Err(Error::RingMismatch(other.to_string(), "F_p or Z/m".into())),
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn zero(&self) -> KahlerForm {
        KahlerForm { terms: BTreeMap::new() }
    }

    fn push(&self, f: &mut KahlerForm, key: (Vec<u32>, Vec<usize>), c: Elem) {
        let b = &self.base;
        let e = f.terms.entry(key.clone()).or_insert_with(|| b.zero());
        *e = b.add(e, &c);
        if b.is_zero(e) {
            f.terms.remove(&key);
        }
    }

    pub fn function(&self, f: &MPoly) -> KahlerForm {
        let mut out = self.zero();
        for (e, c) in f.terms() {
            self.push(&mut out, (e.clone(), Vec::new()), c.clone());
        }
        out
    }

    pub fn monomial(&self, exps: &[u32]) -> KahlerForm {
        self.function(&MPoly::monomial(&self.base, exps.to_vec(), self.base.one()))
    }

    pub fn dx(&self, i: usize) -> KahlerForm {
        let mut out = self.zero();
        self.push(&mut out, (vec![0; self.nvars()], vec![i]), self.base.one());
        out
    }

    pub fn add(&self, a: &KahlerForm, b: &KahlerForm) -> KahlerForm {
        let mut out = a.clone();
        for (k, c) in &b.terms {
            self.push(&mut out, k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, a: &KahlerForm, k: &Elem) -> KahlerForm {
        let mut out = self.zero();
        for (key, c) in &a.terms {
            self.push(&mut out, key.clone(), self.base.mul(c, k));
        }
        out
    }

    pub fn neg(&self, a: &KahlerForm) -> KahlerForm {
        self.scale(a, &self.base.from_i64(-1))
    }

    pub fn wedge(&self, a: &KahlerForm, b: &KahlerForm) -> KahlerForm {
        let r = &self.base;
        let mut out = self.zero();
        for ((ea, ia), ca) in &a.terms {
            for ((eb, ib), cb) in &b.terms {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                let Some((idx, odd)) = sort_wedge(idx) else { continue };
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = r.mul(ca, cb);
                self.push(&mut out, (e, idx), if odd { r.neg(&c) } else { c });
            }
        }
        out
    }

    /// `d(f dx_I) = Σ_i ∂_i f dx_i ∧ dx_I`.
    pub fn d(&self, a: &KahlerForm) -> KahlerForm {
        let r = &self.base;
        let mut out = self.zero();
        for ((e, idx), c) in &a.terms {
            for i in 0..self.nvars() {
                if e[i] == 0 {
                    continue;
                }
                let mut idx2 = vec![i];
                idx2.extend_from_slice(idx);
                let Some((idx2, odd)) = sort_wedge(idx2) else { continue };
                let mut e2 = e.clone();
                e2[i] -= 1;
                let c2 = r.mul_i64(c, e[i] as i64);
                self.push(&mut out, (e2, idx2), if odd { r.neg(&c2) } else { c2 });
            }
        }
        out
    }

    /// Rank of the weight-`w` part of `Ω^q` (`x^e dx_I` has weight `|e| + q`).
    pub fn dimension(&self, q: usize, weight: usize) -> usize {
        let r = self.nvars();
        if r == 0 {
            return usize::from(q == 0 && weight == 0);
        }
        if q > r || weight < q {
            return 0;
        }
        let deg = weight - q;
        binomial(r, q) * binomial(deg + r - 1, r - 1)
    }

    pub fn display(&self, a: &KahlerForm) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let r = &self.base;
        a.terms
            .iter()
            .map(|((e, idx), c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(&self.vars)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                    .collect();
                let mut parts = Vec::new();
                if !r.is_one(c) || (mono.is_empty() && idx.is_empty()) {
                    parts.push(r.fmt_elem(c));
                }
                parts.extend(mono);
                if !idx.is_empty() {
                    parts.push(idx.iter().map(|&i| format!("d{}", self.vars[i])).collect::<Vec<_>>().join("^"));
                }
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl KahlerForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(_, i)| i.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<u32>, Vec<usize>), Elem> {
        &self.terms
    }
}

/// The module of differentials of `base[vars]` in degree `q`, described by
/// its basis in weights up to `max_weight`.
pub fn kahler_differentials(base: &Ring, vars: &[&str], q: usize, max_weight: usize) -> Result<Vec<(usize, usize)>> {
    let m = KahlerModule::new(base, vars)?;
    Ok((0..=max_weight).map(|w| (w, m.dimension(q, w))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_on_xy() {
        let m = KahlerModule::new(&Ring::Fp(5), &["x", "y"]).unwrap();
        let x = m.monomial(&[1, 0]);
        let y = m.monomial(&[0, 1]);
        let xy = m.monomial(&[1, 1]);
        let expect = m.add(&m.wedge(&x, &m.d(&y)), &m.wedge(&y, &m.d(&x)));
        assert_eq!(m.d(&xy), expect);
        assert_eq!(m.display(&m.d(&xy)), "y*dx + x*dy");
    }

    #[test]
    fn top_degree_rank_one() {
        let m = KahlerModule::new(&Ring::Fp(3), &["x", "y"]).unwrap();
        assert_eq!(m.dimension(2, 2), 1);
        assert_eq!(m.dimension(2, 3), 2);
        assert_eq!(m.dimension(3, 5), 0);
        let w = m.wedge(&m.dx(0), &m.dx(1));
        assert_eq!(w.degree(), Some(2));
        assert!(m.wedge(&w, &m.dx(0)).is_zero());
    }

    #[test]
    fn square_over_f3() {
        let m = KahlerModule::new(&Ring::Fp(3), &["x"]).unwrap();
        let d = m.d(&m.monomial(&[2]));
        assert_eq!(d, m.scale(&m.wedge(&m.monomial(&[1]), &m.dx(0)), &Ring::Fp(3).from_i64(-1)));
    }

    #[test]
    fn d_squared_vanishes() {
        let m = KahlerModule::new(&Ring::zmod(9).unwrap(), &["x", "y", "z"]).unwrap();
        let f = m.add(&m.monomial(&[2, 1, 0]), &m.wedge(&m.monomial(&[0, 3, 1]), &m.dx(0)));
        assert!(m.d(&m.d(&f)).is_zero());
    }
}
