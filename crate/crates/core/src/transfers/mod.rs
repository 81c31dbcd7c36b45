//! Transfers along finite free algebras `A → B` of rank `d`.
//!
//! `TS^d_A(B)` acts on the rank-one module `∧^d_A B` by
//! `e_Γ · (b_1 ∧ ⋯ ∧ b_d) = Σ_{(i_1,…,i_d) ∈ Γ} e_{i_1} b_1 ∧ ⋯ ∧ e_{i_d} b_d`,
//! and `u(x)` is the scalar by which `x` acts. The transfer of a point
//! `g ∈ G(B)` is `u` applied to the symmetric tensor obtained by putting `g`
//! in every slot and adding with the group law of `G`.
//!
//! Tensors in `B^{⊗d}` are dense coordinate vectors indexed by
//! `(i_1, …, i_d)` in mixed radix; multiplying by `b` in slot `k` is a
//! mode-`k` product with the multiplication matrix of `b`.

pub mod checks;
pub mod cycle;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::matrix::det;
use crate::exact::{Elem, FiniteFreeAlgebra, Ring};
use crate::witt::{BigWittVector, PTypicalWitt};

pub use cycle::{transfer_cycle, CycleComponent, GroupElement, GroupValue};

/// An `S_d`-orbit of multi-indices, stored as its sorted representative (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitIndex(pub Vec<usize>);

impl fmt::Display for OrbitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Multisets of size `d` over `{1..d}`, in lexicographic order.
pub fn orbit_basis(d: usize) -> Vec<OrbitIndex> {
    fn rec(d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<OrbitIndex>) {
        if cur.len() == d {
            out.push(OrbitIndex(cur.clone()));
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn digits(mut idx: usize, r: usize, d: usize) -> Vec<usize> {
    let mut v = vec![0; d];
    for k in (0..d).rev() {
        v[k] = idx % r;
        idx /= r;
    }
    v
}

fn index_of(ds: &[usize], r: usize) -> usize {
    ds.iter().fold(0, |acc, &i| acc * r + i)
}

/// A tensor in `B^{⊗d}`, `d = rank B`, in full coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullTensor {
    alg: Arc<FiniteFreeAlgebra>,
    coords: Vec<Elem>,
}

impl FullTensor {
    pub fn zero(alg: &Arc<FiniteFreeAlgebra>) -> Self {
        let r = alg.rank;
        FullTensor { alg: alg.clone(), coords: vec![alg.base.zero(); r.pow(r as u32)] }
    }

    /// `b_1 ⊗ ⋯ ⊗ b_d`.
    pub fn pure(alg: &Arc<FiniteFreeAlgebra>, factors: &[Elem]) -> Result<Self> {
        let r = alg.rank;
        if factors.len() != r {
            return Err(Error::Shape(format!("need {r} tensor factors, got {}", factors.len())));
        }
        let a = &alg.base;
        let coords = (0..r.pow(r as u32))
            .map(|idx| {
                digits(idx, r, r).iter().zip(factors).fold(a.one(), |acc, (&i, b)| a.mul(&acc, &b.as_vec()[i]))
            })
            .collect();
        Ok(FullTensor { alg: alg.clone(), coords })
    }

    pub fn one(alg: &Arc<FiniteFreeAlgebra>) -> Self {
        Self::pure(alg, &vec![alg.one(); alg.rank]).expect("rank factors")
    }

    pub fn add(&self, o: &Self) -> Self {
        let a = &self.alg.base;
        FullTensor { alg: self.alg.clone(), coords: self.coords.iter().zip(&o.coords).map(|(x, y)| a.add(x, y)).collect() }
    }

    /// Multiplication by `b` placed in slot `k`.
    pub fn mul_slot(&self, k: usize, b: &Elem) -> Self {
        let m = self.alg.mult_matrix(b).to_rows();
        self.mode_mul(k, &m)
    }

    fn mode_mul(&self, k: usize, m: &[Vec<Elem>]) -> Self {
        let a = &self.alg.base;
        let r = self.alg.rank;
        let stride = r.pow((r - 1 - k) as u32);
        let mut out = vec![a.zero(); self.coords.len()];
        for (idx, v) in self.coords.iter().enumerate() {
            if a.is_zero(v) {
                continue;
            }
            let i = (idx / stride) % r;
            let base = idx - i * stride;
            for (j, row) in m.iter().enumerate() {
                let c = &row[i];
                if !a.is_zero(c) {
                    let t = base + j * stride;
                    out[t] = a.add(&out[t], &a.mul(c, v));
                }
            }
        }
        FullTensor { alg: self.alg.clone(), coords: out }
    }

    /// Re-expresses coordinates through `q` in every slot (`q` maps old
    /// coordinates to coordinates in the target algebra's basis).
    pub fn transform(&self, target: &Arc<FiniteFreeAlgebra>, q: &[Vec<Elem>]) -> Self {
        let mut t = FullTensor { alg: target.clone(), coords: self.coords.clone() };
        for k in 0..self.alg.rank {
            t = t.mode_mul(k, q);
        }
        t
    }
}

/// An element of `TS^d_A(B)` in the basis `{e_Γ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    alg: Arc<FiniteFreeAlgebra>,
    coords: BTreeMap<OrbitIndex, Elem>,
}

impl SymTensor {
    pub fn basis_element(alg: &Arc<FiniteFreeAlgebra>, g: OrbitIndex) -> Result<Self> {
        if g.0.len() != alg.rank || g.0.iter().any(|&i| i >= alg.rank) || g.0.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Shape(format!("{g} is not an orbit for rank {}", alg.rank)));
        }
        Ok(SymTensor { alg: alg.clone(), coords: BTreeMap::from([(g, alg.base.one())]) })
    }

    /// Fails with a certificate error unless `x` is `S_d`-invariant.
    pub fn from_full(x: &FullTensor) -> Result<Self> {
        let r = x.alg.rank;
        let a = &x.alg.base;
        let mut coords = BTreeMap::new();
        for (idx, v) in x.coords.iter().enumerate() {
            let mut ds = digits(idx, r, r);
            ds.sort_unstable();
            let canon = index_of(&ds, r);
            if x.coords[canon] != *v {
                return Err(Error::Certificate(format!("tensor is not symmetric at {:?}", digits(idx, r, r))));
            }
            if canon == idx && !a.is_zero(v) {
                coords.insert(OrbitIndex(ds), v.clone());
            }
        }
        Ok(SymTensor { alg: x.alg.clone(), coords })
    }

    pub fn to_full(&self) -> FullTensor {
        let r = self.alg.rank;
        let a = &self.alg.base;
        let coords = (0..r.pow(r as u32))
            .map(|idx| {
                let mut ds = digits(idx, r, r);
                ds.sort_unstable();
                self.coords.get(&OrbitIndex(ds)).cloned().unwrap_or_else(|| a.zero())
            })
            .collect();
        FullTensor { alg: self.alg.clone(), coords }
    }

    pub fn algebra(&self) -> &Arc<FiniteFreeAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &BTreeMap<OrbitIndex, Elem> {
        &self.coords
    }

    pub fn u_map(&self) -> Elem {
        UMap::new(&self.alg).apply(self)
    }

    pub fn display(&self) -> String {
        if self.coords.is_empty() {
            return "0".into();
        }
        let a = &self.alg.base;
        self.coords.iter().map(|(g, c)| format!("({})*e{g}", a.fmt_elem(c))).collect::<Vec<_>>().join(" + ")
    }
}

/// The values `u(e_Γ)` for one algebra.
#[derive(Clone, Debug)]
pub struct UMap {
    alg: Arc<FiniteFreeAlgebra>,
    values: BTreeMap<OrbitIndex, Elem>,
}

impl UMap {
    pub fn new(alg: &Arc<FiniteFreeAlgebra>) -> Self {
        let r = alg.rank;
        let a = &alg.base;
        let basis: Vec<Elem> = (0..r).map(|i| alg.basis(i)).collect();
        let mut values: BTreeMap<OrbitIndex, Elem> = BTreeMap::new();
        for idx in 0..r.pow(r as u32) {
            let ds = digits(idx, r, r);
            // column k holds e_{i_k}·e_k
            let cols: Vec<Vec<Elem>> = ds.iter().enumerate().map(|(k, &i)| alg.mul(&basis[i], &basis[k]).as_vec().to_vec()).collect();
            let rows: Vec<Vec<Elem>> = (0..r).map(|i| (0..r).map(|k| cols[k][i].clone()).collect()).collect();
            let v = det(a, &rows);
            let mut key = ds;
            key.sort_unstable();
            let e = values.entry(OrbitIndex(key)).or_insert_with(|| a.zero());
            *e = a.add(e, &v);
        }
        UMap { alg: alg.clone(), values }
    }

    pub fn value(&self, g: &OrbitIndex) -> Elem {
        self.values.get(g).cloned().unwrap_or_else(|| self.alg.base.zero())
    }

    pub fn apply(&self, x: &SymTensor) -> Elem {
        let a = &self.alg.base;
        x.coords.iter().fold(a.zero(), |acc, (g, c)| a.add(&acc, &a.mul(c, &self.value(g))))
    }

    pub fn apply_full(&self, x: &FullTensor) -> Result<Elem> {
        Ok(self.apply(&SymTensor::from_full(x)?))
    }
}

fn check_elem(alg: &Arc<FiniteFreeAlgebra>, g: &Elem) -> Result<()> {
    if Ring::Alg(alg.clone()).contains(g) {
        Ok(())
    } else {
        Err(Error::Shape(format!("element is not in {}", alg.name)))
    }
}

/// `𝔾ₐ`: `u(Σ_k 1 ⊗ ⋯ ⊗ g ⊗ ⋯ ⊗ 1)`.
pub fn transfer_ga(alg: &Arc<FiniteFreeAlgebra>, g: &Elem) -> Result<Elem> {
    check_elem(alg, g)?;
    let one = FullTensor::one(alg);
    let mut x = FullTensor::zero(alg);
    for k in 0..alg.rank {
        x = x.add(&one.mul_slot(k, g));
    }
    UMap::new(alg).apply_full(&x)
}

/// `𝔾ₘ`: `u(g ⊗ ⋯ ⊗ g)` for a unit `g`.
pub fn transfer_gm(alg: &Arc<FiniteFreeAlgebra>, g: &Elem) -> Result<Elem> {
    check_elem(alg, g)?;
    if alg.inv(g).is_none() {
        return Err(Error::NotUnit(alg.fmt_elem(g)));
    }
    let mut x = FullTensor::one(alg);
    for k in 0..alg.rank {
        x = x.mul_slot(k, g);
    }
    UMap::new(alg).apply_full(&x)
}

/// `𝕎ₙ`: `∏_k w^{(k)}(t)` in `B^{⊗d}[t]/(t^{n+1})`, then `u` coefficientwise.
pub fn transfer_witt(alg: &Arc<FiniteFreeAlgebra>, w: &BigWittVector) -> Result<BigWittVector> {
    let b = Ring::Alg(alg.clone());
    if *w.ring() != b {
        return Err(Error::RingMismatch(w.ring().to_string(), b.to_string()));
    }
    let n = w.len();
    let mats: Vec<Vec<Vec<Elem>>> = w.coeffs().iter().map(|c| alg.mult_matrix(c).to_rows()).collect();
    let mut series: Vec<FullTensor> = vec![FullTensor::zero(alg); n + 1];
    series[0] = FullTensor::one(alg);
    for k in 0..alg.rank {
        let mut next = series.clone();
        for m in 1..=n {
            for l in 1..=m {
                if series[m - l].coords.iter().all(|c| alg.base.is_zero(c)) {
                    continue;
                }
                next[m] = next[m].add(&series[m - l].mode_mul(k, &mats[l - 1]));
            }
        }
        series = next;
    }
    let u = UMap::new(alg);
    let coeffs = series.iter().map(|x| u.apply_full(x)).collect::<Result<Vec<_>>>()?;
    BigWittVector::from_series(&alg.base, &coeffs).map_err(|_| Error::Certificate("transfer of a Witt vector has constant term ≠ 1".into()))
}

/// `W_n` (p-typical) by lifting to `𝕎_{p^{n-1}}`, transferring and projecting.
pub fn transfer_ptypical(alg: &Arc<FiniteFreeAlgebra>, w: &PTypicalWitt) -> Result<PTypicalWitt> {
    let big = transfer_witt(alg, &w.lift())?;
    PTypicalWitt::project(w.p(), &big, w.level())
}

/// `W_n` computed componentwise: `w = Σ_j V_{p^j}[x_j]`, transfers commute
/// with `V`, and the transfer of `[x]` is `det(1 - t·M_x)`.
pub fn transfer_ptypical_native(alg: &Arc<FiniteFreeAlgebra>, w: &PTypicalWitt) -> Result<PTypicalWitt> {
    let a = &alg.base;
    let p = w.p() as usize;
    let len = w.lift().len();
    let mut acc = BigWittVector::identity(a, len);
    for (j, x) in w.comps().iter().enumerate() {
        let s = p.pow(j as u32);
        let cp = alg.mult_char_poly(x)?;
        // det(1 - tM) is the reversed characteristic polynomial.
        let rev: Vec<Elem> = cp.iter().rev().cloned().collect();
        let m = len.div_ceil(s);
        let mut coeffs: Vec<Elem> = rev[1..].iter().take(m).cloned().collect();
        coeffs.resize(m, a.zero());
        let base = BigWittVector::new(a, coeffs)?;
        let shifted = base.verschiebung(s)?.truncate(len)?;
        acc = acc.add(&shifted)?;
    }
    PTypicalWitt::project(w.p(), &acc, w.level())
}

/// Trace of multiplication by `g`.
pub fn trace_oracle(alg: &FiniteFreeAlgebra, g: &Elem) -> Elem {
    alg.trace(g)
}

/// Determinant of multiplication by `g`.
pub fn norm_oracle(alg: &FiniteFreeAlgebra, g: &Elem) -> Elem {
    alg.norm(g)
}

/// The norm of `w(t)` from `B[t]/(t^{n+1})` to `A[t]/(t^{n+1})`: the
/// determinant of its multiplication matrix with entries in `A[t]/(t^{n+1})`.
pub fn witt_norm_oracle(alg: &FiniteFreeAlgebra, w: &BigWittVector) -> Result<BigWittVector> {
    let a = &alg.base;
    let n = w.len();
    let mut modulus = vec![a.zero(); n + 2];
    modulus[n + 1] = a.one();
    let trunc = Ring::Alg(Arc::new(FiniteFreeAlgebra::monogenic(a, "t", &modulus)?));
    let series = w.series();
    let mats: Vec<Vec<Vec<Elem>>> = series.iter().map(|c| alg.mult_matrix(c).to_rows()).collect();
    let r = alg.rank;
    let rows: Vec<Vec<Elem>> = (0..r).map(|i| (0..r).map(|j| Elem::Vec(mats.iter().map(|m| m[i][j].clone()).collect())).collect()).collect();
    let d = det(&trunc, &rows);
    BigWittVector::from_series(a, d.as_vec())
}

/// `s^*` for the local algebra `A[x]/(x^d)` in its power basis: reduction mod `x`.
pub fn closed_point_value(alg: &FiniteFreeAlgebra, g: &Elem) -> Result<Elem> {
    let a = &alg.base;
    match alg.generator() {
        Some((_, f)) if f[..f.len() - 1].iter().all(|c| a.is_zero(c)) => Ok(g.as_vec()[0].clone()),
        _ => Err(Error::Precondition(format!("{} is not of the form A[x]/(x^d)", alg.name))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_ring;

    fn alg(tag: &str) -> Arc<FiniteFreeAlgebra> {
        match parse_ring(tag).unwrap() {
            Ring::Alg(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_basis(1).len(), 1);
        assert_eq!(orbit_basis(2).iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["{1,1}", "{1,2}", "{2,2}"]);
        assert_eq!(orbit_basis(3).len(), 10);
        assert_eq!(orbit_basis(4).len(), 35);
    }

    #[test]
    fn u_on_split_algebra() {
        let b = alg("F5 * F5");
        let u = UMap::new(&b);
        let vals: Vec<String> = orbit_basis(2).iter().map(|g| b.base.fmt_elem(&u.value(g))).collect();
        assert_eq!(vals, ["0", "1", "0"]);
        let one = SymTensor::from_full(&FullTensor::one(&b)).unwrap();
        assert!(b.base.is_one(&one.u_map()));
    }

    #[test]
    fn u_on_dual_numbers_in_reversed_basis() {
        let b = alg("F7[x]/(x^2)");
        let a = &b.base;
        let p = vec![vec![a.zero(), a.one()], vec![a.one(), a.zero()]];
        let swapped = Arc::new(b.change_basis(&p, &p).unwrap());
        let u = UMap::new(&swapped);
        for g in orbit_basis(2) {
            let expect = if g.0 == [1, 1] { a.one() } else { a.zero() };
            assert_eq!(u.value(&g), expect, "{g}");
        }
    }

    #[test]
    fn documented_transfers() {
        let q = alg("Q[x]/(x^2-3)");
        let x = q.parse_elem("x").unwrap();
        assert_eq!(transfer_ga(&q, &x).unwrap(), Ring::Q.zero());
        assert_eq!(transfer_gm(&q, &x).unwrap(), Ring::Q.from_i64(-3));
        assert_eq!(transfer_ga(&q, &q.one()).unwrap(), Ring::Q.from_i64(2));
        let split = alg("F5 * F5");
        let g = split.parse_elem("2; 3").unwrap();
        assert_eq!(transfer_gm(&split, &g).unwrap(), Ring::Fp(5).one());
        let dual = alg("F5[x]/(x^2)");
        let g = dual.parse_elem("3 + 4*x").unwrap();
        assert_eq!(transfer_ga(&dual, &g).unwrap(), Ring::Fp(5).from_i64(6));
        assert!(transfer_gm(&dual, &dual.parse_elem("x").unwrap()).is_err());
    }

    #[test]
    fn witt_transfer_of_teichmuller() {
        let b = alg("Q[x]/(x^2-3)");
        let w = BigWittVector::teichmuller(&Ring::Alg(b.clone()), &b.parse_elem("x").unwrap(), 2);
        let t = transfer_witt(&b, &w).unwrap();
        assert_eq!(t, BigWittVector::from_i64s(&Ring::Q, &[0, -3]));
        assert_eq!(witt_norm_oracle(&b, &w).unwrap(), t);
        let id = BigWittVector::identity(&Ring::Alg(b.clone()), 3);
        assert!(transfer_witt(&b, &id).unwrap().is_identity());
    }

    #[test]
    fn ptypical_routes_agree() {
        let b = alg("F3[x]/(x^3+x^2+2)");
        let br = Ring::Alg(b.clone());
        let comps = vec![b.parse_elem("x").unwrap(), b.parse_elem("1+x^2").unwrap()];
        let w = PTypicalWitt::new(3, &br, comps).unwrap();
        assert_eq!(transfer_ptypical(&b, &w).unwrap(), transfer_ptypical_native(&b, &w).unwrap());
    }
}
