//! Words `V^{j₀}λ[x^{k₀}] ⋆ dV^{j₁}λ[x^{k₁}] ⋆ ⋯ ⋆ dV^{j_q}λ[x^{k_q}]` and
//! their `ℤ/pⁿ`-linear combinations.
//!
//! Constants never appear inside brackets: `λ[c·m] = ω(c)·λ[m]` with `ω` the
//! Teichmüller lift, because `λ` is a ring map and `[c] = ω(c)` in
//! `W_n(F_p) = ℤ/pⁿ`. The operators act on words by rules that are instances
//! of the Witt-complex axioms:
//!
//! * heads multiply by `V^jλ[a] ⋆ V^kλ[b] = p^j V^kλ[a^{p^{k-j}} b]` for `j ≤ k`;
//! * `d(h ⋆ t) = dh ⋆ t`, and `d` of a constant is zero;
//! * `F` is multiplicative with `FV = p`, `FdV = d`, `Fλ[a] = λ[a^p]` and
//!   `F dλ[a] = λ[a^{p-1}] dλ[a]`;
//! * `V(h ⋆ dV^{j₁}… ) = V(h) ⋆ dV^{j₁+1}…`, from `V(x ⋆ Fy) = V(x) ⋆ y` and `FdV = d`.
//!
//! Expressions live in the pro-system: nothing is truncated until
//! [`DRWExpression::project`], which drops words containing some `j ≥ n`
//! (they lie in `V^n + dV^n`).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::exact::arith::{addmod, mulmod, powmod};

/// `V^j λ[x^k]` in a head, `dV^j λ[x^k]` in a tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub j: u32,
    pub k: u32,
}

impl Factor {
    pub const ONE: Factor = Factor { j: 0, k: 0 };

    pub fn weight(&self, p: u64) -> Ratio<u64> {
        Ratio::new(self.k as u64, p.pow(self.j))
    }

    fn show(&self, var: &str) -> String {
        let v = match self.j {
            0 => String::new(),
            1 => "V".into(),
            j => format!("V^{j}"),
        };
        let inner = match self.k {
            0 => "1".to_string(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        format!("{v}[{inner}]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittWord {
    pub head: Factor,
    /// Strictly increasing.
    pub tail: Vec<Factor>,
}

/// Sorts a tail, returning the Koszul sign, or `None` when a factor repeats
/// (`ω ⋆ ω = 0` for odd `ω` since 2 is invertible) or is `d` of a constant.
pub fn canonical_tail(mut tail: Vec<Factor>) -> Option<(Vec<Factor>, bool)> {
    if tail.contains(&Factor::ONE) {
        return None;
    }
    let mut odd = false;
    for i in 1..tail.len() {
        let mut k = i;
        while k > 0 && tail[k - 1] > tail[k] {
            tail.swap(k - 1, k);
            odd = !odd;
            k -= 1;
        }
    }
    if tail.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((tail, odd))
}

impl WittWord {
    pub fn unit() -> Self {
        WittWord { head: Factor::ONE, tail: Vec::new() }
    }

    pub fn head(f: Factor) -> Self {
        WittWord { head: f, tail: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    pub fn weight(&self, p: u64) -> Ratio<u64> {
        self.tail.iter().fold(self.head.weight(p), |acc, f| acc + f.weight(p))
    }

    pub fn max_v(&self) -> u32 {
        self.tail.iter().map(|f| f.j).max().unwrap_or(0).max(self.head.j)
    }

    pub fn display(&self, var: &str) -> String {
        let mut parts = Vec::new();
        if self.head != Factor::ONE || self.tail.is_empty() {
            parts.push(if self.head == Factor::ONE { "1".to_string() } else { self.head.show(var) });
        }
        parts.extend(self.tail.iter().map(|f| format!("d{}", f.show(var))));
        parts.join("*")
    }
}

/// `ω(c) mod pⁿ`, the Teichmüller lift of `c ∈ F_p`.
pub fn teichmuller_lift(c: u64, p: u64, n: u32) -> u64 {
    let m = p.pow(n);
    let c = c % p;
    if c == 0 {
        return 0;
    }
    powmod(c, p.pow(n.saturating_sub(1)), m)
}

/// A `ℤ/pⁿ`-combination of words; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DRWExpression {
    p: u64,
    n: u32,
    terms: BTreeMap<WittWord, u64>,
}

impl DRWExpression {
    pub fn zero(p: u64, n: u32) -> Self {
        DRWExpression { p, n, terms: BTreeMap::new() }
    }

    pub fn word(p: u64, n: u32, w: WittWord, coeff: i64) -> Self {
        let mut e = Self::zero(p, n);
        e.push(w, coeff.rem_euclid(p.pow(n) as i64) as u64);
        e
    }

    pub fn scalar(p: u64, n: u32, c: i64) -> Self {
        Self::word(p, n, WittWord::unit(), c)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn terms(&self) -> &BTreeMap<WittWord, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, w: WittWord, c: u64) {
        let m = self.modulus();
        let c = c % m;
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e = addmod(*e, c, m);
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &o.terms {
            out.push(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let m = self.modulus();
        let k = k.rem_euclid(m as i64) as u64;
        let mut out = Self::zero(self.p, self.n);
        for (w, &c) in &self.terms {
            out.push(w.clone(), mulmod(c, k, m));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn map_words(&self, f: impl Fn(&WittWord) -> Vec<(WittWord, u64)>) -> Self {
        let m = self.modulus();
        let mut out = Self::zero(self.p, self.n);
        for (w, &c) in &self.terms {
            for (w2, c2) in f(w) {
                out.push(w2, mulmod(c, c2, m));
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = self.modulus();
        let mut out = Self::zero(self.p, self.n);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                if let Some((w, c)) = word_mul(self.p, m, a, b) {
                    out.push(w, mulmod(mulmod(ca, cb, m), c, m));
                }
            }
        }
        out
    }

    pub fn d(&self) -> Self {
        let m = self.modulus();
        self.map_words(|w| word_d(m, w).into_iter().collect())
    }

    pub fn frobenius(&self) -> Self {
        let (p, m) = (self.p, self.modulus());
        self.map_words(|w| word_f(p, m, w).into_iter().collect())
    }

    pub fn verschiebung(&self) -> Self {
        self.map_words(|w| vec![(word_v(w), 1)])
    }

    /// Image at level `n`: words with some `j ≥ n` vanish.
    pub fn project(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        out.terms.retain(|w, _| w.max_v() < n);
        out
    }

    /// Reinterprets the coefficients modulo `p^m`, `m ≤ n`, and truncates to level `m`.
    pub fn restrict(&self, m: u32) -> Self {
        let mut out = Self::zero(self.p, m.min(self.n));
        for (w, &c) in &self.terms {
            if w.max_v() < out.n {
                out.push(w.clone(), c);
            }
        }
        out
    }

    pub fn degree(&self) -> Option<usize> {
        let mut ds = self.terms.keys().map(WittWord::degree);
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    pub fn display(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, &c)| if c == 1 { w.display(var) } else { format!("{c}*{}", w.display(var)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for DRWExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

fn head_mul(p: u64, m: u64, a: Factor, b: Factor) -> (Factor, u64) {
    let (lo, hi) = if a.j <= b.j { (a, b) } else { (b, a) };
    let shift = p.pow(hi.j - lo.j) as u32;
    let coeff = powmod(p, lo.j as u64, m);
    (Factor { j: hi.j, k: lo.k * shift + hi.k }, coeff)
}

/// Product of two words as `(word, coefficient)`, `None` if it vanishes.
pub fn word_mul(p: u64, m: u64, a: &WittWord, b: &WittWord) -> Option<(WittWord, u64)> {
    let (head, c) = head_mul(p, m, a.head, b.head);
    let mut tail = a.tail.clone();
    tail.extend_from_slice(&b.tail);
    let (tail, odd) = canonical_tail(tail)?;
    let c = if odd { (m - c) % m } else { c };
    (c != 0).then_some((WittWord { head, tail }, c))
}

fn word_d(m: u64, w: &WittWord) -> Option<(WittWord, u64)> {
    if w.head.k == 0 && w.head.j == 0 {
        return None;
    }
    let mut tail = vec![w.head];
    tail.extend_from_slice(&w.tail);
    let (tail, odd) = canonical_tail(tail)?;
    Some((WittWord { head: Factor::ONE, tail }, if odd { m - 1 } else { 1 }))
}

fn word_f(p: u64, m: u64, w: &WittWord) -> Option<(WittWord, u64)> {
    let h = w.head;
    let (mut acc, mut coeff) = if h.j >= 1 {
        (WittWord::head(Factor { j: h.j - 1, k: h.k }), p % m)
    } else {
        (WittWord::head(Factor { j: 0, k: h.k * p as u32 }), 1)
    };
    for f in &w.tail {
        let piece = if f.j >= 1 {
            WittWord { head: Factor::ONE, tail: vec![Factor { j: f.j - 1, k: f.k }] }
        } else {
            WittWord { head: Factor { j: 0, k: f.k * (p as u32 - 1) }, tail: vec![*f] }
        };
        let (next, c) = word_mul(p, m, &acc, &piece)?;
        acc = next;
        coeff = mulmod(coeff, c, m);
    }
    (coeff != 0).then_some((acc, coeff))
}

fn word_v(w: &WittWord) -> WittWord {
    let up = |f: &Factor| Factor { j: f.j + 1, k: f.k };
    WittWord { head: up(&w.head), tail: w.tail.iter().map(up).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(p: u64, n: u32, j: u32, k: u32) -> DRWExpression {
        DRWExpression::word(p, n, WittWord::head(Factor { j, k }), 1)
    }

    #[test]
    fn teichmuller_lifts() {
        assert_eq!(teichmuller_lift(2, 3, 2), 8);
        assert_eq!(teichmuller_lift(1, 5, 3), 1);
        for c in 1..5 {
            let w = teichmuller_lift(c, 5, 3);
            assert_eq!(powmod(w, 5, 125), w);
            assert_eq!(w % 5, c);
        }
    }

    #[test]
    fn fv_and_fdv_rules() {
        let (p, n) = (3, 3);
        let x = lam(p, n, 0, 2);
        assert_eq!(x.verschiebung().frobenius(), x.scale(3));
        assert_eq!(x.verschiebung().d().frobenius(), x.d());
        // F dλ[x] = λ[x^2] dλ[x]
        let dx = lam(p, n, 0, 1).d();
        assert_eq!(dx.frobenius(), lam(p, n, 0, 2).mul(&dx));
    }

    #[test]
    fn koszul_signs() {
        let (p, n) = (5, 2);
        let a = lam(p, n, 0, 1).d();
        let b = lam(p, n, 1, 3).d();
        assert!(a.mul(&b).add(&b.mul(&a)).is_zero());
        assert!(a.mul(&a).is_zero());
        assert!(lam(p, n, 0, 0).d().is_zero());
    }

    #[test]
    fn head_products() {
        let (p, n) = (3, 3);
        // V[a] ⋆ V[b] = 3 V[ab]
        assert_eq!(lam(p, n, 1, 1).mul(&lam(p, n, 1, 2)), lam(p, n, 1, 3).scale(3));
        // λ[a] ⋆ V^2[b] = V^2[a^9 b]
        assert_eq!(lam(p, n, 0, 1).mul(&lam(p, n, 2, 1)), lam(p, n, 2, 10));
        assert!(lam(p, n, 3, 1).project().is_zero());
    }

    #[test]
    fn v_of_products_with_tails() {
        let (p, n) = (3, 3);
        let w = lam(p, n, 0, 1).mul(&lam(p, n, 0, 2).d());
        let expect = lam(p, n, 1, 1).mul(&lam(p, n, 1, 2).d());
        assert_eq!(w.verschiebung(), expect);
        assert_eq!(w.d().d(), DRWExpression::zero(p, n));
    }
}
