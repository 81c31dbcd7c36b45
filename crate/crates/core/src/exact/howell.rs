//! Howell normal form over `ℤ/m`.
//!
//! The row span of a matrix over `ℤ/m` is put in a canonical echelon form:
//! every pivot is a divisor of `m`, entries above a pivot `g` lie in `[0, g)`,
//! and for each pivot row `r` with pivot `g` the row `(m/g)·r` (which vanishes
//! in the pivot column) is fed back into the elimination. That last step gives
//! the Howell property: the rows below any column span every vector of the
//! module that vanishes up to that column, so membership is decided by plain
//! reduction and two matrices with equal spans produce identical forms.

use super::arith::{gcd, invmod, mulmod, prime_power, submod, xgcd};
use super::matrix::ExactMatrix;
use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Howell {
    m: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<(usize, u64)>,
}

fn axpy(m: u64, dst: &mut [u64], k: u64, src: &[u64]) {
    // dst -= k * src
    if k == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = submod(*d, mulmod(k, s, m), m);
        }
    }
}

/// A unit `w` with `x·w ≡ gcd(x, m) (mod m)`.
fn normalizing_unit(x: u64, m: u64) -> u64 {
    let g = gcd(x, m);
    let mg = m / g;
    if mg == 1 {
        return 1;
    }
    let w0 = invmod((x / g) % mg, mg).expect("x/g is a unit modulo m/g");
    let mut w = w0;
    while gcd(w, m) != 1 {
        w += mg;
    }
    w % m
}

impl Howell {
    /// Howell form of the span of `rows` in `(ℤ/m)^ncols`; entries are taken modulo `m`.
    pub fn new(m: u64, ncols: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        let mut a: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "row length");
                r.into_iter().map(|x| x % m).collect::<Vec<u64>>()
            })
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = Vec::new();
        let mut k = 0;
        for j in 0..ncols {
            let Some(first) = (k..a.len()).find(|&i| a[i][j] != 0) else { continue };
            a.swap(k, first);
            for i in k + 1..a.len() {
                if a[i][j] == 0 {
                    continue;
                }
                let (x, y) = (a[k][j] as i128, a[i][j] as i128);
                let (g, s, t) = xgcd(x, y);
                let (u, v) = (y / g, x / g);
                let (rk, ri) = (a[k].clone(), a[i].clone());
                let m128 = m as i128;
                let sm = s.rem_euclid(m128) as u64;
                let tm = t.rem_euclid(m128) as u64;
                let um = (-u).rem_euclid(m128) as u64;
                let vm = v.rem_euclid(m128) as u64;
                for c in j..ncols {
                    let (p, q) = (rk[c], ri[c]);
                    a[k][c] = (mulmod(sm, p, m) as u128 + mulmod(tm, q, m) as u128).rem_euclid(m as u128) as u64;
                    a[i][c] = (mulmod(um, p, m) as u128 + mulmod(vm, q, m) as u128).rem_euclid(m as u128) as u64;
                }
                debug_assert_eq!(a[i][j], 0);
            }
            let x = a[k][j];
            let w = normalizing_unit(x, m);
            if w != 1 {
                for c in j..ncols {
                    a[k][c] = mulmod(a[k][c], w, m);
                }
            }
            let g = a[k][j];
            debug_assert_eq!(g, gcd(x, m));
            let ann: Vec<u64> = a[k].iter().map(|&c| mulmod(c, m / g, m)).collect();
            if ann.iter().any(|&c| c != 0) {
                a.push(ann);
            }
            let pivot_row = a[k].clone();
            for row in a.iter_mut().take(k) {
                let q = row[j] / g;
                axpy(m, row, q, &pivot_row);
            }
            pivots.push((j, g));
            k += 1;
        }
        a.truncate(k);
        Howell { m, ncols, rows: a, pivots }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `(column, pivot)` for each row.
    pub fn pivots(&self) -> &[(usize, u64)] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.m;
        let mut v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        for (row, &(j, g)) in self.rows.iter().zip(&self.pivots) {
            let q = v[j] / g;
            axpy(m, &mut v, q, row);
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// `log_p` of the order of the quotient `(ℤ/p^n)^c / span`, for prime-power moduli.
    pub fn quotient_length(&self) -> Option<u32> {
        let (p, n) = prime_power(self.m)?;
        let mut len = n * self.ncols as u32;
        for &(_, g) in &self.pivots {
            let (mut g, mut e) = (g, 0);
            while g % p == 0 {
                g /= p;
                e += 1;
            }
            len -= n - e;
        }
        Some(len)
    }

    /// Invariant factors of the quotient over `ℤ/p^n`: the quotient is
    /// `⊕ ℤ/p^{e_i}` for the returned exponents (zero summands dropped).
    pub fn quotient_invariants(&self) -> Option<Vec<u32>> {
        let (p, n) = prime_power(self.m)?;
        let m = self.m;
        let val = |x: u64| -> u32 {
            if x == 0 {
                return n;
            }
            let (mut x, mut e) = (x, 0);
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            e
        };
        let mut a = self.rows.clone();
        let cols = self.ncols;
        let mut used_cols = vec![false; cols];
        let mut out = Vec::new();
        let mut r0 = 0;
        while r0 < a.len() {
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(r0) {
                for (j, &x) in row.iter().enumerate() {
                    if x != 0 && !used_cols[j] && best.is_none_or(|b| val(x) < b.0) {
                        best = Some((val(x), i, j));
                    }
                }
            }
            let Some((e, i, j)) = best else { break };
            a.swap(r0, i);
            let x = a[r0][j];
            let unit = x / p.pow(e);
            let uinv = invmod(unit % m, m).expect("unit");
            for c in a[r0].iter_mut() {
                *c = mulmod(*c, uinv, m);
            }
            let pe = p.pow(e);
            let piv = a[r0].clone();
            for row in a.iter_mut().skip(r0 + 1) {
                let q = row[j] / pe;
                axpy(m, row, q, &piv);
            }
            // column operations clear the rest of the pivot row; they do not
            // change the isomorphism type of the quotient
            for c in 0..cols {
                if c != j && a[r0][c] != 0 {
                    let q = a[r0][c] / pe;
                    for row in a.iter_mut() {
                        let d = mulmod(q, row[j], m);
                        row[c] = submod(row[c], d, m);
                    }
                }
            }
            used_cols[j] = true;
            out.push(e);
            r0 += 1;
        }
        let free = used_cols.iter().filter(|&&u| !u).count();
        let mut inv: Vec<u32> = out.into_iter().filter(|&e| e > 0).collect();
        inv.extend(std::iter::repeat_n(n, free));
        inv.sort_unstable();
        Some(inv)
    }
}

/// Incremental echelon basis over `ℤ/m` for sparse rows.
///
/// Each insertion is reduced against the current pivots; a gcd step replaces
/// a pivot row when the leading entries are not divisible, and the
/// annihilator multiple `(m/g)·r` of every new pivot row is fed back in.
/// Rows that reduce to zero are discarded, so long redundant relation lists
/// stay cheap. [`HowellBuilder::finish`] returns the canonical form.
#[derive(Clone, Debug)]
pub struct HowellBuilder {
    m: u64,
    ncols: usize,
    rows: std::collections::BTreeMap<usize, Vec<(usize, u64)>>,
}

type Sparse = std::collections::BTreeMap<usize, u64>;

fn sparse_axpy(m: u64, v: &mut Sparse, k: u64, row: &[(usize, u64)]) {
    for &(c, x) in row {
        let e = v.entry(c).or_insert(0);
        *e = submod(*e, mulmod(k, x, m), m);
        if *e == 0 {
            v.remove(&c);
        }
    }
}

fn sparse_scale(m: u64, v: &[(usize, u64)], k: u64) -> Vec<(usize, u64)> {
    v.iter().map(|&(c, x)| (c, mulmod(x, k, m))).filter(|&(_, x)| x != 0).collect()
}

fn sparse_comb(m: u64, a: u64, r: &[(usize, u64)], b: u64, v: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for &(c, x) in r {
        out.insert(c, mulmod(a, x, m));
    }
    for (&c, &x) in v {
        let e = out.entry(c).or_insert(0);
        *e = (*e + mulmod(b, x, m)) % m;
    }
    out.retain(|_, x| *x != 0);
    out
}

impl HowellBuilder {
    pub fn new(m: u64, ncols: usize) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        HowellBuilder { m, ncols, rows: Default::default() }
    }

    pub fn rank_rows(&self) -> usize {
        self.rows.len()
    }

    fn reduce_sparse(&self, v: &mut Sparse) {
        let mut from = 0;
        while let Some((&j, &x)) = v.range(from..).next() {
            if let Some(r) = self.rows.get(&j) {
                sparse_axpy(self.m, v, x / r[0].1, r);
            }
            from = j + 1;
        }
    }

    /// Whether `row` (sparse, entries modulo `m`) lies in the current span.
    pub fn contains(&self, row: &[(usize, u64)]) -> bool {
        let mut v: Sparse = row.iter().map(|&(c, x)| (c, x % self.m)).filter(|&(_, x)| x != 0).collect();
        self.reduce_sparse(&mut v);
        v.is_empty()
    }

    /// Adds a row; returns whether the span grew.
    pub fn insert(&mut self, row: &[(usize, u64)]) -> bool {
        let m = self.m;
        let mut grew = false;
        let mut stack: Vec<Sparse> = vec![row.iter().map(|&(c, x)| (c, x % m)).filter(|&(_, x)| x != 0).collect()];
        while let Some(mut v) = stack.pop() {
            while let Some((&j, &x)) = v.iter().next() {
                assert!(j < self.ncols, "column out of range");
                match self.rows.get(&j) {
                    Some(r) if x % r[0].1 == 0 => {
                        let r = r.clone();
                        sparse_axpy(m, &mut v, x / r[0].1, &r);
                    }
                    Some(r) => {
                        let g = r[0].1;
                        let (gg, s, t) = xgcd(g as i128, x as i128);
                        let sm = s.rem_euclid(m as i128) as u64;
                        let tm = t.rem_euclid(m as i128) as u64;
                        let a = ((x as i128 / gg) as u64) % m;
                        let b = (m - ((g as i128 / gg) as u64) % m) % m;
                        let newr = sparse_comb(m, sm, r, tm, &v);
                        let rest = sparse_comb(m, a, r, b, &v);
                        let newr = self.normalized(newr);
                        stack.push(self.annihilator(&newr));
                        self.rows.insert(j, newr);
                        grew = true;
                        v = rest;
                    }
                    None => {
                        let newr = self.normalized(v);
                        stack.push(self.annihilator(&newr));
                        self.rows.insert(j, newr);
                        grew = true;
                        break;
                    }
                }
            }
        }
        grew
    }

    fn normalized(&self, v: Sparse) -> Vec<(usize, u64)> {
        let row: Vec<(usize, u64)> = v.into_iter().collect();
        let w = normalizing_unit(row[0].1, self.m);
        if w == 1 {
            row
        } else {
            sparse_scale(self.m, &row, w)
        }
    }

    fn annihilator(&self, r: &[(usize, u64)]) -> Sparse {
        let k = self.m / r[0].1;
        sparse_scale(self.m, r, k).into_iter().collect()
    }

    pub fn finish(self) -> Howell {
        let ncols = self.ncols;
        let dense = self.rows.into_values().map(|r| {
            let mut d = vec![0; ncols];
            for (c, x) in r {
                d[c] = x;
            }
            d
        });
        Howell::new(self.m, ncols, dense)
    }
}

/// What the elimination proves about its output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellCertificate {
    pub pivots: Vec<(usize, u64)>,
    /// Every input row reduces to zero against the form.
    pub inputs_in_span: bool,
    pub quotient_length: Option<u32>,
}

fn modulus_of(r: &Ring) -> Result<u64> {
    match r {
        Ring::Zmod(m) | Ring::Fp(m) => Ok(*m),
        other => Err(Error::RingMismatch(other.to_string(), "Z/m".into())),
    }
}

/// Howell form of a matrix over `ℤ/m` (or `F_p`), zero rows dropped.
pub fn howell_form(mat: &ExactMatrix) -> Result<(ExactMatrix, HowellCertificate)> {
    let r = mat.ring();
    let m = modulus_of(r)?;
    let rows: Vec<Vec<u64>> = mat.to_rows().iter().map(|row| row.iter().map(Elem::as_mod).collect()).collect();
    let h = Howell::new(m, mat.ncols(), rows.clone());
    let cert = HowellCertificate {
        pivots: h.pivots.clone(),
        inputs_in_span: rows.iter().all(|row| h.contains(row)),
        quotient_length: h.quotient_length(),
    };
    let out_rows: Vec<Vec<Elem>> = h.rows.iter().map(|row| row.iter().map(|&x| Elem::Mod(x)).collect()).collect();
    let out = if out_rows.is_empty() { ExactMatrix::zeros(r, 0, mat.ncols()) } else { ExactMatrix::new(r, out_rows)? };
    Ok((out, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn builder_matches_batch_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for m in [9u64, 27, 12, 25] {
            for _ in 0..40 {
                let cols = rng.gen_range(1..7);
                let rows: Vec<Vec<u64>> =
                    (0..rng.gen_range(1..9)).map(|_| (0..cols).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0..m) } else { 0 }).collect()).collect();
                let batch = Howell::new(m, cols, rows.clone());
                let mut b = HowellBuilder::new(m, cols);
                for r in &rows {
                    let sparse: Vec<(usize, u64)> = r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect();
                    b.insert(&sparse);
                    assert!(b.contains(&sparse));
                }
                assert_eq!(b.finish(), batch);
            }
        }
    }

    #[test]
    fn examples() {
        let id = Howell::new(4, 2, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(id.rows(), &[vec![1, 0], vec![0, 1]]);
        let h = Howell::new(4, 2, vec![vec![2, 2]]);
        assert!(h.contains(&[2, 2]));
        assert!(!h.contains(&[0, 2]));
        let h = Howell::new(4, 2, vec![vec![2, 0], vec![0, 2]]);
        assert!(h.contains(&[2, 2]));
    }

    #[test]
    fn membership_matches_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for m in [4u64, 8, 9, 12, 27] {
            for _ in 0..30 {
                let nrows = rng.gen_range(1..4);
                let rows: Vec<Vec<u64>> = (0..nrows).map(|_| (0..3).map(|_| rng.gen_range(0..m)).collect()).collect();
                let h = Howell::new(m, 3, rows.clone());
                // enumerate the span by brute force
                let mut span = std::collections::BTreeSet::new();
                let total = m.pow(nrows as u32);
                for idx in 0..total {
                    let mut k = idx;
                    let mut v = vec![0u64; 3];
                    for row in &rows {
                        let c = k % m;
                        k /= m;
                        for (x, &y) in v.iter_mut().zip(row) {
                            *x = (*x + c * y) % m;
                        }
                    }
                    span.insert(v);
                }
                for a in 0..m {
                    for b in 0..m {
                        let v = vec![a, b, (a * 3 + b) % m];
                        assert_eq!(h.contains(&v), span.contains(&v), "m={m} rows={rows:?} v={v:?}");
                    }
                }
                let order: u64 = h.pivots().iter().map(|&(_, g)| m / g).product();
                assert_eq!(order as usize, span.len());
            }
        }
    }

    #[test]
    fn canonical_under_row_operations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let m = 27;
        for _ in 0..50 {
            let rows: Vec<Vec<u64>> = (0..3).map(|_| (0..4).map(|_| rng.gen_range(0..m)).collect()).collect();
            let mut mixed = rows.clone();
            for _ in 0..6 {
                let i = rng.gen_range(0..3);
                let j = rng.gen_range(0..3);
                if i != j {
                    let c = rng.gen_range(0..m);
                    let src = mixed[j].clone();
                    for (x, y) in mixed[i].iter_mut().zip(src) {
                        *x = (*x + c * y) % m;
                    }
                }
            }
            mixed.reverse();
            assert_eq!(Howell::new(m, 4, rows).rows(), Howell::new(m, 4, mixed).rows());
        }
    }

    #[test]
    fn invariants() {
        let h = Howell::new(9, 3, vec![vec![3, 0, 0], vec![0, 1, 0]]);
        assert_eq!(h.quotient_invariants().unwrap(), vec![1, 2]);
        assert_eq!(h.quotient_length(), Some(3));
    }
}
