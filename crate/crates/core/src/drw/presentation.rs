//! Bounded presentations of `WₙΩ^q_A` for `A = F_p` or `F_p[x]`.
//!
//! Words are graded by degree and by weight (`x^k` weighs `k`, `V` divides
//! by `p`); every rewrite rule and relation is homogeneous, so the module
//! splits into finite blocks. A block is the free `ℤ/pⁿ`-module on its words
//! modulo the span of
//!
//! * λ-additivity `λ[a·m] + λ[b·m] = Σ_j V^jλ[s_j·m^{p^j}]` for `a, b ∈ F_p^*`,
//!   with `s_j` the Witt components of `[a] + [b]`;
//! * `V(h ⋆ F dλ[m]) = V(h) ⋆ dλ[m]` for heads `h`;
//! * Leibniz `d(h₁h₂) = dh₁ ⋆ h₂ + h₁ ⋆ dh₂` for heads;
//!
//! together with all their word multiples. At depth `D > 0` the images of
//! depth-`(D-1)` relations under `d` and `V` are added before multiplying.
//! `F` is never applied to relations: it lowers the level, so the image of a
//! level-`n` relation is only known at level `n - 1`.
//!
//! Every relation holds in the de Rham–Witt complex, so reduction to zero
//! proves equality. Inequality needs a separating map: the restriction to
//! level one (landing in Kähler differentials) or, in degree zero, the
//! Witt components `V^jλ[m] ↦ V^j[m] ∈ Wₙ(A)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::kahler::{KahlerForm, KahlerModule};
use super::word::{teichmuller_lift, DRWExpression, Factor, WittWord};
use crate::error::{Error, Result};
use crate::exact::arith::is_prime;
use crate::exact::howell::{Howell, HowellBuilder};
use crate::exact::{parse_ring, Elem, MPoly, Ring};
use crate::witt::PTypicalWitt;

/// `F_p` or `F_p[x]`, `p` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrwRing {
    pub p: u64,
    pub var: Option<String>,
}

impl DrwRing {
    pub fn new(p: u64, var: Option<&str>) -> Result<Self> {
        if p == 2 {
            return Err(Error::Precondition("p must be odd".into()));
        }
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::Precondition(format!("{p} is not a small odd prime")));
        }
        Ok(DrwRing { p, var: var.map(str::to_string) })
    }

    pub fn parse(tag: &str) -> Result<Self> {
        match parse_ring(tag)? {
            Ring::Fp(p) => Self::new(p, None),
            Ring::Poly(pr) => match (&pr.base, pr.vars.as_slice()) {
                (Ring::Fp(p), [v]) => Self::new(*p, Some(v)),
                _ => Err(Error::Precondition(format!("{tag}: only F_p and F_p[x] are supported"))),
            },
            other => Err(Error::Precondition(format!("{other}: only F_p and F_p[x] are supported"))),
        }
    }

    pub fn ring(&self) -> Ring {
        match &self.var {
            None => Ring::Fp(self.p),
            Some(v) => Ring::poly(Ring::Fp(self.p), &[v]),
        }
    }

    pub fn var_name(&self) -> &str {
        self.var.as_deref().unwrap_or("x")
    }

    pub fn tag(&self) -> String {
        self.ring().to_string()
    }

    pub fn has_var(&self) -> bool {
        self.var.is_some()
    }

    /// `c·x^k` as an element of the ring.
    pub fn monomial(&self, c: u64, k: u32) -> Elem {
        let f = Ring::Fp(self.p);
        match &self.var {
            None => f.from_i64(c as i64),
            Some(_) => Elem::Poly(MPoly::monomial(&f, vec![k], f.from_i64(c as i64))),
        }
    }

    /// `(c, k)` for each monomial `c·x^k` of `a`.
    pub fn monomials(&self, a: &Elem) -> Vec<(u64, u32)> {
        match a {
            Elem::Mod(c) => if *c == 0 { vec![] } else { vec![(*c, 0)] },
            Elem::Poly(f) => f.terms().map(|(e, c)| (c.as_mod(), e[0])).collect(),
            other => panic!("not an element of F_p or F_p[x]: {other:?}"),
        }
    }

    fn check_k(&self, k: u32) -> Result<()> {
        if k > 0 && !self.has_var() {
            return Err(Error::Precondition(format!("x^{k} in {}", self.tag())));
        }
        Ok(())
    }
}

/// `λ[a]` at level `n`, computed at Witt level `level ≥ n` (extra levels give
/// room for a later `F`). Non-monomial `a` is split by peeling off
/// Teichmüller summands: `[a] = Σ_j V^j Σ_m [c_m·m]` in `W(A)`.
pub fn lambda_teich(ring: &DrwRing, a: &Elem, n: u32, level: u32) -> Result<DRWExpression> {
    let mons = ring.monomials(a);
    let p = ring.p;
    if mons.len() <= 1 {
        let mut e = DRWExpression::zero(p, n);
        for (c, k) in mons {
            ring.check_k(k)?;
            e = e.add(&DRWExpression::word(p, n, WittWord::head(Factor { j: 0, k }), teichmuller_lift(c, p, n) as i64));
        }
        return Ok(e);
    }
    let r = ring.ring();
    let w = PTypicalWitt::teichmuller(p, &r, a, level as usize);
    lambda_of(ring, &w, n)
}

/// `λ(w) = Σ_j V^j λ[w_j]` with coefficients mod `pⁿ`, for `w` over the ring
/// of `ring`. Words with `j ≥ n` are kept; see [`DRWExpression::project`].
pub fn lambda_of(ring: &DrwRing, w: &PTypicalWitt, n: u32) -> Result<DRWExpression> {
    let p = ring.p;
    let r = ring.ring();
    let level = w.level();
    let mut rest = w.clone();
    let mut out = DRWExpression::zero(p, n);
    for j in 0..level {
        let comp = rest.comps()[j].clone();
        for (c, k) in ring.monomials(&comp) {
            ring.check_k(k)?;
            let word = WittWord::head(Factor { j: j as u32, k });
            out = out.add(&DRWExpression::word(p, n, word, teichmuller_lift(c, p, n) as i64));
            let mut comps = vec![r.zero(); level];
            comps[j] = ring.monomial(c, k);
            rest = rest.sub(&PTypicalWitt::new(p, &r, comps)?)?;
        }
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

/// `Σ c·V^j[x^k] ∈ Wₙ(A)` for a degree-zero expression.
pub fn witt_components(ring: &DrwRing, e: &DRWExpression) -> Result<PTypicalWitt> {
    let (p, n) = (ring.p, e.level() as usize);
    let r = ring.ring();
    let mut acc = PTypicalWitt::zero(p, &r, n);
    for (w, &c) in e.terms() {
        if w.degree() > 0 {
            return Err(Error::Precondition("Witt components are defined in degree 0".into()));
        }
        let j = w.head.j as usize;
        if j >= n {
            continue;
        }
        let mut comps = vec![r.zero(); n];
        comps[j] = ring.monomial(1, w.head.k);
        acc = acc.add(&PTypicalWitt::new(p, &r, comps)?.mul_int(c as i64))?;
    }
    Ok(acc)
}

/// `R^{n-1}` into `Ω^q_A`: words with some `V` die, coefficients reduce mod `p`.
pub fn level1_restriction(ring: &DrwRing, e: &DRWExpression) -> (KahlerModule, KahlerForm) {
    let vars: Vec<&str> = ring.var.iter().map(String::as_str).collect();
    let km = KahlerModule::new(&Ring::Fp(ring.p), &vars).expect("F_p base");
    let mono = |k: u32| if vars.is_empty() { km.monomial(&[]) } else { km.monomial(&[k]) };
    let mut out = km.zero();
    for (w, &c) in e.terms() {
        if w.max_v() > 0 || c % ring.p == 0 {
            continue;
        }
        let mut f = km.scale(&mono(w.head.k), &Ring::Fp(ring.p).from_i64((c % ring.p) as i64));
        for t in &w.tail {
            f = km.wedge(&f, &km.d(&mono(t.k)));
        }
        out = km.add(&out, &f);
    }
    (km, out)
}

fn ratio_str(w: &Ratio<u64>) -> String {
    w.to_string()
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::Parse(format!("bad weight {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(a, b))
        }
        None => Ok(Ratio::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// One `(weight, degree)` block.
#[derive(Debug)]
pub struct Block {
    pub weight: Ratio<u64>,
    pub degree: usize,
    pub depth: u32,
    pub words: Arc<Vec<WittWord>>,
    index: HashMap<WittWord, usize>,
    /// Relations that enlarged the span when inserted.
    pub relations: usize,
    pub howell: Howell,
}

impl Block {
    pub fn vector(&self, e: &DRWExpression) -> Result<Vec<u64>> {
        let mut v = vec![0; self.words.len()];
        for (w, &c) in e.terms() {
            let i = self.index.get(w).ok_or_else(|| Error::Precondition(format!("word {} outside the block", w.display("x"))))?;
            v[*i] = c;
        }
        Ok(v)
    }

    fn sparse(&self, e: &DRWExpression) -> Result<Vec<(usize, u64)>> {
        let mut v: Vec<(usize, u64)> = Vec::with_capacity(e.terms().len());
        for (w, &c) in e.terms() {
            let i = self.index.get(w).ok_or_else(|| Error::Certificate(format!("word {} escaped its block", w.display("x"))))?;
            v.push((*i, c));
        }
        v.sort_unstable();
        Ok(v)
    }

    pub fn expression(&self, p: u64, n: u32, v: &[u64]) -> DRWExpression {
        let mut e = DRWExpression::zero(p, n);
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                e = e.add(&DRWExpression::word(p, n, self.words[i].clone(), c as i64));
            }
        }
        e
    }

    /// `log_p` of the order of the block of the quotient.
    pub fn quotient_length(&self) -> u32 {
        self.howell.quotient_length().expect("prime-power modulus")
    }

    pub fn invariants(&self) -> Vec<u32> {
        self.howell.quotient_invariants().expect("prime-power modulus")
    }
}

type BlockKey = (Ratio<u64>, usize, u32);

/// Memoized relation generation; shared by all blocks of a presentation.
#[derive(Clone, Debug)]
struct RelGen {
    ring: DrwRing,
    n: u32,
    words: HashMap<(Ratio<u64>, usize), Arc<Vec<WittWord>>>,
    gens: HashMap<BlockKey, Arc<Vec<DRWExpression>>>,
    blocks: HashMap<BlockKey, Arc<Block>>,
}

impl RelGen {
    fn new(ring: DrwRing, n: u32) -> Self {
        RelGen { ring, n, words: HashMap::new(), gens: HashMap::new(), blocks: HashMap::new() }
    }

    fn p(&self) -> u64 {
        self.ring.p
    }

    fn modulus(&self) -> u64 {
        self.p().pow(self.n)
    }

    fn grid(&self) -> u64 {
        self.p().pow(self.n - 1)
    }

    /// Grid weights `0, 1/p^{n-1}, …, w`.
    fn weights_upto(&self, w: Ratio<u64>) -> Vec<Ratio<u64>> {
        if !self.ring.has_var() {
            return if w.is_zero() { vec![w] } else { vec![] };
        }
        let g = self.grid();
        let top = (w * g).to_integer();
        (0..=top).map(|i| Ratio::new(i, g)).collect()
    }

    /// Heads of weight exactly `r`.
    fn heads(&self, r: Ratio<u64>) -> Vec<Factor> {
        let p = self.p();
        (0..self.n)
            .filter_map(|j| {
                let k = r * p.pow(j);
                (k.is_integer() && (self.ring.has_var() || k.is_zero())).then(|| Factor { j, k: k.to_integer() as u32 })
            })
            .collect()
    }

    /// All canonical words of weight `w` and degree `q`.
    fn words(&mut self, w: Ratio<u64>, q: usize) -> Arc<Vec<WittWord>> {
        if let Some(ws) = self.words.get(&(w, q)) {
            return ws.clone();
        }
        let p = self.p();
        let mut factors = Vec::new();
        for j in 0..self.n {
            let top = if self.ring.has_var() { (w * p.pow(j)).to_integer() } else { 0 };
            for k in 0..=top {
                let f = Factor { j, k: k as u32 };
                if f != Factor::ONE {
                    factors.push(f);
                }
            }
        }
        factors.sort();
        let mut out = Vec::new();
        let mut tail = Vec::new();
        self.tails(&factors, 0, q, w, &mut tail, &mut out);
        out.sort();
        let out = Arc::new(out);
        self.words.insert((w, q), out.clone());
        out
    }

    fn tails(&self, fs: &[Factor], from: usize, q: usize, rem: Ratio<u64>, tail: &mut Vec<Factor>, out: &mut Vec<WittWord>) {
        let p = self.p();
        if q == 0 {
            for h in self.heads(rem) {
                out.push(WittWord { head: h, tail: tail.clone() });
            }
            return;
        }
        for i in from..fs.len() {
            let fw = fs[i].weight(p);
            if fw > rem {
                continue;
            }
            tail.push(fs[i]);
            self.tails(fs, i + 1, q - 1, rem - fw, tail, out);
            tail.pop();
        }
    }

    fn lam(&self, f: Factor) -> DRWExpression {
        DRWExpression::word(self.p(), self.n, WittWord::head(f), 1)
    }

    /// The three seed families at weight `w`, degree `q`.
    fn seeds(&self, w: Ratio<u64>, q: usize) -> Vec<DRWExpression> {
        let (p, n) = (self.p(), self.n);
        let mut out = Vec::new();
        match q {
            0 if w.is_integer() && (self.ring.has_var() || w.is_zero()) => {
                let k = w.to_integer() as u32;
                let fp = Ring::Fp(p);
                for a in 1..p {
                    for b in a..p {
                        let wa = PTypicalWitt::teichmuller(p, &fp, &fp.from_i64(a as i64), n as usize);
                        let wb = PTypicalWitt::teichmuller(p, &fp, &fp.from_i64(b as i64), n as usize);
                        let s = wa.add(&wb).expect("same shape");
                        let lhs = (teichmuller_lift(a, p, n) + teichmuller_lift(b, p, n)) as i64;
                        let mut rel = DRWExpression::word(p, n, WittWord::head(Factor { j: 0, k }), lhs);
                        for (j, c) in s.comps().iter().enumerate() {
                            let kj = k * (p as u32).pow(j as u32);
                            let t = DRWExpression::word(p, n, WittWord::head(Factor { j: j as u32, k: kj }), teichmuller_lift(c.as_mod(), p, n) as i64);
                            rel = rel.sub(&t);
                        }
                        let rel = rel.project();
                        if !rel.is_zero() {
                            out.push(rel);
                        }
                    }
                }
            }
            1 => {
                // V(h ⋆ F dλ[x^b]) - V(h) ⋆ dλ[x^b]
                if self.ring.has_var() {
                    for b in 1..=w.to_integer() {
                        let r = w - b;
                        for h in self.heads(r * p) {
                            if h.j + 1 >= n {
                                continue;
                            }
                            let db = self.lam(Factor { j: 0, k: b as u32 }).d();
                            let lhs = self.lam(h).mul(&db.frobenius()).verschiebung();
                            let rhs = self.lam(h).verschiebung().mul(&db);
                            let rel = lhs.sub(&rhs).project();
                            if !rel.is_zero() {
                                out.push(rel);
                            }
                        }
                    }
                }
                // Leibniz on pairs of heads.
                for r1 in self.weights_upto(w) {
                    let r2 = w - r1;
                    if r1 > r2 {
                        break;
                    }
                    for h1 in self.heads(r1) {
                        for h2 in self.heads(r2) {
                            if h1 == Factor::ONE || h2 == Factor::ONE || (r1 == r2 && h1 > h2) {
                                continue;
                            }
                            let (a, b) = (self.lam(h1), self.lam(h2));
                            let rel = a.mul(&b).d().sub(&a.d().mul(&b)).sub(&a.mul(&b.d())).project();
                            if !rel.is_zero() {
                                out.push(rel);
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    fn gens(&mut self, w: Ratio<u64>, q: usize, depth: u32) -> Result<Arc<Vec<DRWExpression>>> {
        if let Some(g) = self.gens.get(&(w, q, depth)) {
            return Ok(g.clone());
        }
        let mut g = self.seeds(w, q);
        if depth > 0 {
            if q > 0 {
                let b = self.block(w, q - 1, depth - 1)?;
                for row in b.howell.rows() {
                    let e = b.expression(self.p(), self.n, row).d().project();
                    if !e.is_zero() {
                        g.push(e);
                    }
                }
            }
            let b = self.block(w * self.p(), q, depth - 1)?;
            for row in b.howell.rows() {
                let e = b.expression(self.p(), self.n, row).verschiebung().project();
                if !e.is_zero() {
                    g.push(e);
                }
            }
        }
        let g = Arc::new(g);
        self.gens.insert((w, q, depth), g.clone());
        Ok(g)
    }

    fn block(&mut self, w: Ratio<u64>, q: usize, depth: u32) -> Result<Arc<Block>> {
        if let Some(b) = self.blocks.get(&(w, q, depth)) {
            return Ok(b.clone());
        }
        let words = self.words(w, q);
        let index: HashMap<WittWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let m = self.modulus();
        let mut hb = HowellBuilder::new(m, words.len());
        let mut block = Block { weight: w, degree: q, depth, words: words.clone(), index, relations: 0, howell: Howell::new(m, words.len(), Vec::<Vec<u64>>::new()) };
        for q1 in 0..=q {
            for w1 in self.weights_upto(w) {
                let g = self.gens(w1, q1, depth)?;
                if g.is_empty() {
                    continue;
                }
                let us = self.words(w - w1, q - q1);
                for u in us.iter() {
                    let ue = DRWExpression::word(self.p(), self.n, u.clone(), 1);
                    for r in g.iter() {
                        let prod = ue.mul(r).project();
                        if prod.is_zero() {
                            continue;
                        }
                        let row = block.sparse(&prod)?;
                        if hb.insert(&row) {
                            block.relations += 1;
                        }
                    }
                }
            }
        }
        block.howell = hb.finish();
        let block = Arc::new(block);
        self.blocks.insert((w, q, depth), block.clone());
        Ok(block)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationParams {
    pub ring: String,
    pub n: u32,
    /// Largest degree.
    pub q: usize,
    /// Largest block weight.
    pub dx: u32,
    /// Relation depth.
    pub dr: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub weight: String,
    pub degree: usize,
    pub generators: usize,
    pub relations: usize,
    pub quotient_length: u32,
    pub invariants: Vec<u32>,
    /// Quotient length at depths `0..=dr`.
    pub length_by_depth: Vec<u32>,
}

/// Three-valued comparison result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Equal,
    Distinct { separator: String },
    Inconclusive { residual: String },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equal => "EQUAL",
            Verdict::Distinct { .. } => "DISTINCT",
            Verdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundedPresentation {
    pub params: PresentationParams,
    ring: DrwRing,
    gen: RelGen,
    blocks: BTreeMap<(Ratio<u64>, usize), Arc<Block>>,
}

impl BoundedPresentation {
    /// All blocks of weight `≤ dx` and degree `≤ q`.
    pub fn build(params: &PresentationParams) -> Result<Self> {
        let mut pres = Self::empty(params)?;
        let weights = pres.gen.weights_upto(Ratio::from_integer(params.dx as u64));
        let keys: Vec<_> = (0..=params.q).flat_map(|q| weights.iter().map(move |&w| (w, q))).collect();
        pres.add_blocks(&keys)?;
        if !pres.blocks.get(&(Ratio::zero(), 0)).is_some_and(|b| b.words.contains(&WittWord::unit())) {
            return Err(Error::Precondition("the unit word is not among the generators".into()));
        }
        Ok(pres)
    }

    /// A presentation without blocks; see [`Self::add_blocks`].
    pub fn empty(params: &PresentationParams) -> Result<Self> {
        let ring = DrwRing::parse(&params.ring)?;
        if params.n == 0 {
            return Err(Error::Precondition("level must be at least 1".into()));
        }
        if params.n > 6 || ring.p.pow(params.n - 1) > 1 << 12 {
            return Err(Error::Precondition(format!("level {} too large for p = {}", params.n, ring.p)));
        }
        Ok(BoundedPresentation { params: params.clone(), gen: RelGen::new(ring.clone(), params.n), ring, blocks: BTreeMap::new() })
    }

    pub fn add_blocks(&mut self, keys: &[(Ratio<u64>, usize)]) -> Result<()> {
        for &(w, q) in keys {
            if self.blocks.contains_key(&(w, q)) {
                continue;
            }
            if !(w * self.gen.grid()).is_integer() || (!self.ring.has_var() && !w.is_zero()) {
                return Err(Error::Precondition(format!("no words of weight {w}")));
            }
            let b = self.gen.block(w, q, self.params.dr)?;
            self.blocks.insert((w, q), b);
        }
        Ok(())
    }

    /// Adds the blocks needed to hold `e`.
    pub fn extend_for(&mut self, e: &DRWExpression) -> Result<usize> {
        let before = self.blocks.len();
        let keys: Vec<_> = self.split(e).into_keys().collect();
        self.add_blocks(&keys)?;
        Ok(self.blocks.len() - before)
    }

    pub fn ring(&self) -> &DrwRing {
        &self.ring
    }

    /// All canonical words of weight `w` and degree `q` at this level.
    pub fn words(&mut self, w: Ratio<u64>, q: usize) -> Arc<Vec<WittWord>> {
        self.gen.words(w, q)
    }

    pub fn p(&self) -> u64 {
        self.ring.p
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.values().map(|b| b.as_ref())
    }

    pub fn block(&self, w: Ratio<u64>, q: usize) -> Option<&Block> {
        self.blocks.get(&(w, q)).map(|b| b.as_ref())
    }

    fn split(&self, e: &DRWExpression) -> BTreeMap<(Ratio<u64>, usize), DRWExpression> {
        let (p, n) = (self.p(), self.n());
        let mut parts: BTreeMap<_, DRWExpression> = BTreeMap::new();
        for (w, &c) in e.terms() {
            let key = (w.weight(p), w.degree());
            let part = parts.entry(key).or_insert_with(|| DRWExpression::zero(p, n));
            *part = part.add(&DRWExpression::word(p, n, w.clone(), c as i64));
        }
        parts
    }

    fn check_level(&self, e: &DRWExpression) -> Result<()> {
        if e.p() != self.p() || e.level() != self.n() {
            return Err(Error::Shape(format!("expression at p = {}, n = {} vs presentation at p = {}, n = {}", e.p(), e.level(), self.p(), self.n())));
        }
        Ok(())
    }

    /// Canonical residue of `e` modulo the relations, block by block.
    pub fn reduce(&self, e: &DRWExpression) -> Result<DRWExpression> {
        self.check_level(e)?;
        let (p, n) = (self.p(), self.n());
        let mut out = DRWExpression::zero(p, n);
        for ((w, q), part) in self.split(&e.project()) {
            let b = self.blocks.get(&(w, q)).ok_or_else(|| Error::Precondition(format!("words of weight {w} and degree {q} are outside the presentation")))?;
            let v = b.howell.reduce(&b.vector(&part)?);
            out = out.add(&b.expression(p, n, &v));
        }
        Ok(out)
    }

    pub fn equal_at_depth(&self, a: &DRWExpression, b: &DRWExpression) -> Result<Verdict> {
        let diff = a.sub(b).project();
        let residual = self.reduce(&diff)?;
        if residual.is_zero() {
            return Ok(Verdict::Equal);
        }
        Ok(self.separate(&diff).unwrap_or_else(|| Verdict::Inconclusive { residual: residual.display(self.ring.var_name()) }))
    }

    fn separate(&self, diff: &DRWExpression) -> Option<Verdict> {
        let (km, img) = level1_restriction(&self.ring, diff);
        if !img.is_zero() {
            return Some(Verdict::Distinct { separator: format!("level-one restriction {}", km.display(&img)) });
        }
        for ((_, q), part) in self.split(diff) {
            if q == 0 {
                let w = witt_components(&self.ring, &part).ok()?;
                if !w.is_zero() {
                    return Some(Verdict::Distinct { separator: format!("Witt components {}", w.display()) });
                }
            }
        }
        None
    }

    /// Both separating maps vanish on every relation row.
    pub fn separators_sound(&self) -> Result<bool> {
        let (p, n) = (self.p(), self.n());
        for b in self.blocks.values() {
            for row in b.howell.rows() {
                let e = b.expression(p, n, row);
                if !level1_restriction(&self.ring, &e).1.is_zero() {
                    return Ok(false);
                }
                if b.degree == 0 && !witt_components(&self.ring, &e)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn summaries(&mut self) -> Result<Vec<BlockSummary>> {
        let keys: Vec<_> = self.blocks.keys().copied().collect();
        let mut out = Vec::new();
        for (w, q) in keys {
            let b = self.blocks[&(w, q)].clone();
            let mut by_depth = Vec::new();
            for d in 0..=self.params.dr {
                by_depth.push(self.gen.block(w, q, d)?.quotient_length());
            }
            out.push(BlockSummary {
                weight: ratio_str(&w),
                degree: q,
                generators: b.words.len(),
                relations: b.relations,
                quotient_length: b.quotient_length(),
                invariants: b.invariants(),
                length_by_depth: by_depth,
            });
        }
        Ok(out)
    }

    pub fn to_json(&mut self) -> Result<Value> {
        let blocks = self.summaries()?;
        Ok(json!({
            "params": self.params,
            "blocks": blocks,
            "separators_sound": self.separators_sound()?,
        }))
    }

    /// Rebuilds from the stored parameters and checks the stored block data.
    pub fn from_json(v: &Value) -> Result<Self> {
        let params: PresentationParams = serde_json::from_value(v["params"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let stored: Vec<BlockSummary> = serde_json::from_value(v["blocks"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut pres = Self::empty(&params)?;
        let keys = stored.iter().map(|s| Ok((parse_ratio(&s.weight)?, s.degree))).collect::<Result<Vec<_>>>()?;
        pres.add_blocks(&keys)?;
        let fresh = pres.summaries()?;
        if fresh != stored {
            return Err(Error::Certificate("stored block data does not match the rebuilt presentation".into()));
        }
        Ok(pres)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub p: u64,
    pub n: u32,
    pub images: usize,
    pub pairs: usize,
    pub separated: usize,
    pub separators_sound: bool,
    pub pass: bool,
}

/// For `A = F_p`: the `pⁿ` images `λ(w)` are pairwise distinct modulo the
/// relations, and the Witt-component map recovers `w`.
pub fn lambda_injectivity(p: u64, n: u32, dr: u32) -> Result<InjectivityReport> {
    let params = PresentationParams { ring: format!("F{p}"), n, q: 0, dx: 0, dr };
    let pres = BoundedPresentation::build(&params)?;
    let ring = pres.ring().clone();
    let fp = Ring::Fp(p);
    let mut reps = Vec::new();
    let mut components_ok = true;
    for idx in 0..p.pow(n) {
        let comps: Vec<Elem> = (0..n).map(|j| fp.from_i64(((idx / p.pow(j)) % p) as i64)).collect();
        let w = PTypicalWitt::new(p, &fp, comps)?;
        let img = lambda_of(&ring, &w, n)?;
        components_ok &= witt_components(&ring, &img)? == w;
        reps.push(pres.reduce(&img)?);
    }
    let mut separated = 0;
    let mut pairs = 0;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            pairs += 1;
            if reps[i] != reps[j] {
                separated += 1;
            }
        }
    }
    let sound = pres.separators_sound()?;
    Ok(InjectivityReport { p, n, images: reps.len(), pairs, separated, separators_sound: sound, pass: sound && components_ok && separated == pairs })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelOneRow {
    pub weight: u32,
    pub degree: usize,
    pub presentation: u32,
    pub kahler: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelOneReport {
    pub ring: String,
    pub rows: Vec<LevelOneRow>,
    pub pass: bool,
}

/// Level-one block lengths against Kähler dimensions, weights `≤ dx`, degrees `≤ 2`.
pub fn level_one_dimensions(ring: &str, dx: u32, dr: u32) -> Result<LevelOneReport> {
    let params = PresentationParams { ring: ring.to_string(), n: 1, q: 2, dx, dr };
    let pres = BoundedPresentation::build(&params)?;
    let vars: Vec<&str> = pres.ring().var.iter().map(String::as_str).collect();
    let km = KahlerModule::new(&Ring::Fp(pres.p()), &vars)?;
    let mut rows = Vec::new();
    for b in pres.blocks() {
        let w = b.weight.to_integer() as u32;
        rows.push(LevelOneRow { weight: w, degree: b.degree, presentation: b.quotient_length(), kahler: km.dimension(b.degree, w as usize) });
    }
    let pass = rows.iter().all(|r| r.presentation as usize == r.kahler);
    Ok(LevelOneReport { ring: pres.ring().tag(), rows, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct FdReport {
    pub p: u64,
    pub m: u32,
    pub e: u32,
    pub n: u32,
    pub lhs: String,
    pub rhs: String,
    pub generators: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// `F^e(dλ[t^m])` against `m·λ[t^{mp^e-1}] ⋆ dλ[t]` in `WₙΩ¹_{F_p[t]}`.
pub fn fd_power_reduce(p: u64, m: u32, e: u32, n: u32, dr: u32) -> Result<FdReport> {
    if m == 0 || m as u64 % p == 0 {
        return Err(Error::Precondition(format!("p = {p} divides m = {m}")));
    }
    let params = PresentationParams { ring: format!("F{p}[t]"), n, q: 1, dx: 0, dr };
    let mut pres = BoundedPresentation::empty(&params)?;
    let weight = m as u64 * p.pow(e);
    pres.add_blocks(&[(Ratio::from_integer(weight), 1)])?;
    let lam = |k: u64| DRWExpression::word(p, n, WittWord::head(Factor { j: 0, k: k as u32 }), 1);
    let mut lhs = lam(m as u64).d();
    for _ in 0..e {
        lhs = lhs.frobenius();
    }
    let lhs = lhs.project();
    let rhs = lam(weight - 1).mul(&lam(1).d()).scale(m as i64);
    let verdict = pres.equal_at_depth(&lhs, &rhs)?;
    let generators = pres.block(Ratio::from_integer(weight), 1).map_or(0, |b| b.words.len());
    Ok(FdReport { p, m, e, n, lhs: lhs.display("t"), rhs: rhs.display("t"), generators, verdict })
}

/// `λ[a₀·(a₁⋯a_q)^{-1}] ⋆ dλ[a₁] ⋆ ⋯ ⋆ dλ[a_q]` for units `a_i`.
pub fn eta_evaluate(ring: &DrwRing, points: &[Elem], n: u32) -> Result<DRWExpression> {
    let r = ring.ring();
    let (first, rest) = points.split_first().ok_or_else(|| Error::Precondition("eta needs at least one point".into()))?;
    let mut denom = r.one();
    for a in points {
        if !r.is_unit(a) {
            return Err(Error::NotUnit(r.fmt_elem(a)));
        }
    }
    for a in rest {
        denom = r.mul(&denom, a);
    }
    let inv = r.inv(&denom).ok_or_else(|| Error::NotUnit(r.fmt_elem(&denom)))?;
    let mut out = lambda_teich(ring, &r.mul(first, &inv), n, n)?;
    for a in rest {
        out = out.mul(&lambda_teich(ring, a, n, n)?.d());
    }
    Ok(out.project())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ring: &str, n: u32, q: usize, dx: u32, dr: u32) -> PresentationParams {
        PresentationParams { ring: ring.into(), n, q, dx, dr }
    }

    #[test]
    fn constants_at_level_one() {
        let pres = BoundedPresentation::build(&params("F5", 1, 0, 0, 0)).unwrap();
        let b = pres.block(Ratio::zero(), 0).unwrap();
        assert_eq!(b.quotient_length(), 1);
    }

    #[test]
    fn verschiebung_of_one_is_p() {
        let pres = BoundedPresentation::build(&params("F3", 2, 0, 0, 0)).unwrap();
        let v1 = DRWExpression::word(3, 2, WittWord::head(Factor { j: 1, k: 0 }), 1);
        assert!(pres.equal_at_depth(&v1, &DRWExpression::scalar(3, 2, 3)).unwrap().is_equal());
        assert_eq!(pres.block(Ratio::zero(), 0).unwrap().quotient_length(), 2);
    }

    #[test]
    fn lambda_images_distinct_over_f3() {
        let r = lambda_injectivity(3, 2, 0).unwrap();
        assert_eq!(r.images, 9);
        assert_eq!(r.pairs, 36);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn kahler_dimensions_at_level_one() {
        let r = level_one_dimensions("F3[x]", 3, 0).unwrap();
        assert!(r.pass, "{:?}", r.rows);
    }

    #[test]
    fn fd_identity_small() {
        let r = fd_power_reduce(3, 2, 1, 2, 0).unwrap();
        assert!(r.verdict.is_equal(), "{r:?}");
        let r0 = fd_power_reduce(3, 2, 0, 2, 0).unwrap();
        assert!(r0.verdict.is_equal(), "{r0:?}");
        assert!(fd_power_reduce(3, 3, 1, 2, 0).is_err());
    }

    #[test]
    fn non_monomial_teichmuller_round_trip() {
        let ring = DrwRing::parse("F3[x]").unwrap();
        let r = ring.ring();
        let a = r.parse_elem("x + 1").unwrap();
        let e = lambda_teich(&ring, &a, 2, 2).unwrap();
        let w = witt_components(&ring, &e).unwrap();
        assert_eq!(w, PTypicalWitt::teichmuller(3, &r, &a, 2));
    }

    #[test]
    fn distinct_by_level_one() {
        let pres = BoundedPresentation::build(&params("F3[x]", 2, 1, 2, 0)).unwrap();
        let x = DRWExpression::word(3, 2, WittWord::head(Factor { j: 0, k: 1 }), 1);
        let v = pres.equal_at_depth(&x.d(), &DRWExpression::scalar(3, 2, 0)).unwrap();
        assert!(matches!(v, Verdict::Distinct { .. }), "{v:?}");
        assert!(pres.separators_sound().unwrap());
    }

    #[test]
    fn eta_diagonal_is_d() {
        let ring = DrwRing::parse("F5").unwrap();
        let r = ring.ring();
        let a = r.from_i64(2);
        let e = eta_evaluate(&ring, &[a.clone(), a.clone()], 2).unwrap();
        assert_eq!(e, lambda_teich(&ring, &a, 2, 2).unwrap().d());
        assert!(eta_evaluate(&ring, &[r.zero()], 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut pres = BoundedPresentation::build(&params("F3[x]", 2, 1, 1, 1)).unwrap();
        let v = pres.to_json().unwrap();
        let back = BoundedPresentation::from_json(&v).unwrap();
        assert_eq!(back.params, pres.params);
        assert!(pres.summaries().unwrap().iter().all(|s| s.length_by_depth.len() == 2));
    }
}
