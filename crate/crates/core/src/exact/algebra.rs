//! Commutative algebras that are free of finite rank over a base ring.

use std::sync::Arc;

use super::matrix::{berkowitz, ExactMatrix};
use super::mpoly::MPoly;
use super::parse;
use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

/// A commutative `A`-algebra `B` with basis `e_1..e_d` and structure
/// constants `e_i e_j = Σ_k table[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFreeAlgebra {
    pub name: String,
    pub base: Ring,
    pub rank: usize,
    pub labels: Vec<String>,
    table: Vec<Vec<Vec<Elem>>>,
    pub unit: Vec<Elem>,
    /// Set for `A[x]/(f)` with the power basis `1, x, …, x^{d-1}`.
    generator: Option<(String, Vec<Elem>)>,
    parts: Vec<Arc<FiniteFreeAlgebra>>,
}

impl FiniteFreeAlgebra {
    /// Builds an algebra from structure constants, checking unit,
    /// commutativity and associativity.
    pub fn from_table(base: &Ring, name: &str, labels: Vec<String>, table: Vec<Vec<Vec<Elem>>>, unit: Vec<Elem>) -> Result<Self> {
        let alg = Self::from_table_unchecked(base, name, labels, table, unit)?;
        alg.validate()?;
        Ok(alg)
    }

    fn from_table_unchecked(base: &Ring, name: &str, labels: Vec<String>, table: Vec<Vec<Vec<Elem>>>, unit: Vec<Elem>) -> Result<Self> {
        let d = labels.len();
        let shape_ok = table.len() == d
            && table.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && unit.len() == d;
        if !shape_ok {
            return Err(Error::Shape(format!("structure constants of {name} do not have rank {d}")));
        }
        Ok(FiniteFreeAlgebra {
            name: name.to_string(),
            base: base.clone(),
            rank: d,
            labels,
            table,
            unit,
            generator: None,
            parts: Vec::new(),
        })
    }

    fn validate(&self) -> Result<()> {
        let d = self.rank;
        let basis: Vec<Elem> = (0..d).map(|i| self.basis(i)).collect();
        let u = Elem::Vec(self.unit.clone());
        for i in 0..d {
            if self.mul(&u, &basis[i]) != basis[i] {
                return Err(Error::Certificate(format!("{}: unit does not act as identity on {}", self.name, self.labels[i])));
            }
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::Certificate(format!("{}: not commutative", self.name)));
                }
                let eij = self.mul(&basis[i], &basis[j]);
                for k in 0..d {
                    let l = self.mul(&eij, &basis[k]);
                    let r = self.mul(&basis[i], &self.mul(&basis[j], &basis[k]));
                    if l != r {
                        return Err(Error::Certificate(format!("{}: not associative", self.name)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `A[x]/(f)` for monic `f` given by its coefficients, lowest first.
    pub fn monogenic(base: &Ring, var: &str, f: &[Elem]) -> Result<Self> {
        let d = f.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| Error::Precondition("modulus of degree 0".into()))?;
        if !base.is_one(&f[d]) {
            return Err(Error::Precondition("modulus must be monic".into()));
        }
        let reduce = |coeffs: Vec<Elem>| reduce_mod_monic(base, coeffs, f);
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut c = vec![base.zero(); i + j + 1];
                c[i + j] = base.one();
                table[i][j] = reduce(c);
            }
        }
        let mut unit = vec![base.zero(); d];
        unit[0] = base.one();
        let labels: Vec<String> = (0..d)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            })
            .collect();
        let pr = Ring::poly(base.clone(), &[var]);
        let fpoly = MPoly::from_terms(base, f.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())));
        let name = format!("{}/({})", pr, fpoly.display(base, &[var.to_string()]).replace(' ', ""));
        let mut alg = Self::from_table_unchecked(base, &name, labels, table, unit)?;
        alg.generator = Some((var.to_string(), f.to_vec()));
        Ok(alg)
    }

    /// The product algebra `B_1 × ⋯ × B_k` over a common base.
    pub fn product(parts: &[Arc<FiniteFreeAlgebra>]) -> Result<Self> {
        let base = parts.first().ok_or_else(|| Error::Precondition("empty product".into()))?.base.clone();
        if parts.iter().any(|p| p.base != base) {
            return Err(Error::RingMismatch(parts[0].base.to_string(), "mixed bases".into()));
        }
        let d: usize = parts.iter().map(|p| p.rank).sum();
        let mut table = vec![vec![vec![base.zero(); d]; d]; d];
        let mut unit = Vec::with_capacity(d);
        let mut labels = Vec::with_capacity(d);
        let mut off = 0;
        for (pi, p) in parts.iter().enumerate() {
            for i in 0..p.rank {
                for j in 0..p.rank {
                    for k in 0..p.rank {
                        table[off + i][off + j][off + k] = p.table[i][j][k].clone();
                    }
                }
                labels.push(format!("{}#{}", p.labels[i], pi + 1));
            }
            unit.extend(p.unit.iter().cloned());
            off += p.rank;
        }
        let name = parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join("*");
        let mut alg = Self::from_table_unchecked(&base, &name, labels, table, unit)?;
        alg.parts = parts.to_vec();
        Ok(alg)
    }

    /// `B ⊗_A C` with basis `e_i ⊗ f_j` (index `i·rank(C) + j`).
    pub fn tensor(b: &FiniteFreeAlgebra, c: &FiniteFreeAlgebra) -> Result<Self> {
        if b.base != c.base {
            return Err(Error::RingMismatch(b.base.to_string(), c.base.to_string()));
        }
        let base = &b.base;
        let (db, dc) = (b.rank, c.rank);
        let d = db * dc;
        let mut table = vec![vec![vec![base.zero(); d]; d]; d];
        for i1 in 0..db {
            for j1 in 0..dc {
                for i2 in 0..db {
                    for j2 in 0..dc {
                        let x = &b.table[i1][i2];
                        let y = &c.table[j1][j2];
                        let cell = &mut table[i1 * dc + j1][i2 * dc + j2];
                        for (k, xk) in x.iter().enumerate() {
                            if base.is_zero(xk) {
                                continue;
                            }
                            for (l, yl) in y.iter().enumerate() {
                                if !base.is_zero(yl) {
                                    cell[k * dc + l] = base.mul(xk, yl);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![base.zero(); d];
        for (k, uk) in b.unit.iter().enumerate() {
            for (l, ul) in c.unit.iter().enumerate() {
                unit[k * dc + l] = base.mul(uk, ul);
            }
        }
        let labels = (0..d).map(|i| format!("{}(x){}", b.labels[i / dc], c.labels[i % dc])).collect();
        Self::from_table_unchecked(base, &format!("({})(x)({})", b.name, c.name), labels, table, unit)
    }

    /// Base change along a ring map `A → A'`.
    pub fn base_change(&self, new_base: &Ring, h: &dyn Fn(&Elem) -> Elem) -> Result<Self> {
        let table = self.table.iter().map(|row| row.iter().map(|v| v.iter().map(h).collect()).collect()).collect();
        let unit = self.unit.iter().map(h).collect();
        let mut alg = Self::from_table_unchecked(new_base, &format!("{}@{}", self.name, new_base), self.labels.clone(), table, unit)?;
        if let Some((v, f)) = &self.generator {
            alg.generator = Some((v.clone(), f.iter().map(h).collect()));
        }
        Ok(alg)
    }

    /// The same algebra in the basis `f_j = Σ_i p[i][j] e_i`; `p_inv` must be
    /// the inverse of `p`.
    pub fn change_basis(&self, p: &[Vec<Elem>], p_inv: &[Vec<Elem>]) -> Result<Self> {
        let a = &self.base;
        let d = self.rank;
        let f: Vec<Elem> = (0..d).map(|j| Elem::Vec((0..d).map(|i| p[i][j].clone()).collect())).collect();
        let to_new = |v: &[Elem]| -> Vec<Elem> {
            (0..d).map(|r| (0..d).fold(a.zero(), |acc, k| a.add(&acc, &a.mul(&p_inv[r][k], &v[k])))).collect()
        };
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                table[i][j] = to_new(self.mul(&f[i], &f[j]).as_vec());
            }
        }
        let unit = to_new(&self.unit);
        let check = to_new(&(0..d).map(|i| p[i][0].clone()).collect::<Vec<_>>());
        if check.iter().enumerate().any(|(i, c)| if i == 0 { !a.is_one(c) } else { !a.is_zero(c) }) {
            return Err(Error::Precondition("p_inv is not the inverse of p".into()));
        }
        let labels = (0..d).map(|i| format!("f{}", i + 1)).collect();
        Self::from_table(a, &format!("{}'", self.name), labels, table, unit)
    }

    /// Coordinates of a base-ring vector expressed in the old basis, mapped to a new basis.
    pub fn basis(&self, i: usize) -> Elem {
        let mut v = vec![self.base.zero(); self.rank];
        v[i] = self.base.one();
        Elem::Vec(v)
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Elem] {
        &self.table[i][j]
    }

    pub fn parts(&self) -> &[Arc<FiniteFreeAlgebra>] {
        &self.parts
    }

    pub fn generator(&self) -> Option<(&str, &[Elem])> {
        self.generator.as_ref().map(|(v, f)| (v.as_str(), f.as_slice()))
    }

    pub fn one(&self) -> Elem {
        Elem::Vec(self.unit.clone())
    }

    /// The image of a base-ring scalar.
    pub fn scalar(&self, c: &Elem) -> Elem {
        Elem::Vec(self.unit.iter().map(|u| self.base.mul(u, c)).collect())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let (x, y) = (a.as_vec(), b.as_vec());
        let base = &self.base;
        let mut out = vec![base.zero(); self.rank];
        for (i, xi) in x.iter().enumerate() {
            if base.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if base.is_zero(yj) {
                    continue;
                }
                let c = base.mul(xi, yj);
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !base.is_zero(t) {
                        out[k] = base.add(&out[k], &base.mul(&c, t));
                    }
                }
            }
        }
        Elem::Vec(out)
    }

    /// Matrix of multiplication by `b`: column `j` holds the coordinates of `b·e_j`.
    pub fn mult_matrix(&self, b: &Elem) -> ExactMatrix {
        let d = self.rank;
        let cols: Vec<Vec<Elem>> = (0..d).map(|j| self.mul(b, &self.basis(j)).as_vec().to_vec()).collect();
        let rows = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        ExactMatrix::new(&self.base, rows).expect("square by construction")
    }

    /// Characteristic polynomial of multiplication by `b`, lowest coefficient first.
    pub fn mult_char_poly(&self, b: &Elem) -> Result<Vec<Elem>> {
        if !Ring::Alg(Arc::new(self.clone())).contains(b) {
            return Err(Error::Shape(format!("element not expressed in the basis of {}", self.name)));
        }
        Ok(berkowitz(&self.base, &self.mult_matrix(b).to_rows()))
    }

    pub fn trace(&self, b: &Elem) -> Elem {
        self.mult_matrix(b).trace()
    }

    pub fn norm(&self, b: &Elem) -> Elem {
        self.mult_matrix(b).det().expect("square")
    }

    pub fn inv(&self, b: &Elem) -> Option<Elem> {
        let base = &self.base;
        let cp = berkowitz(base, &self.mult_matrix(b).to_rows());
        let c0inv = base.inv(&cp[0])?;
        // b^{-1} = -c0^{-1} (b^{d-1} + c_{d-1} b^{d-2} + ... + c_1)
        let d = self.rank;
        let mut acc = self.one();
        for k in (1..d).rev() {
            acc = self.mul(&acc, b);
            let ck = self.scalar(&cp[k]);
            acc = Elem::Vec(acc.as_vec().iter().zip(ck.as_vec()).map(|(x, y)| base.add(x, y)).collect());
        }
        let s = base.neg(&c0inv);
        let out = Elem::Vec(acc.as_vec().iter().map(|x| base.mul(x, &s)).collect());
        debug_assert_eq!(self.mul(&out, b), self.one());
        Some(out)
    }

    /// Element `Σ c_i x^i` of a monogenic algebra.
    pub fn from_poly_coeffs(&self, coeffs: &[Elem]) -> Result<Elem> {
        let (_, f) = self.generator.as_ref().ok_or_else(|| Error::Precondition(format!("{} is not monogenic", self.name)))?;
        Ok(Elem::Vec(reduce_mod_monic(&self.base, coeffs.to_vec(), f)))
    }

    pub fn fmt_elem(&self, a: &Elem) -> String {
        let v = a.as_vec();
        if let Some((var, _)) = &self.generator {
            let p = MPoly::from_terms(&self.base, v.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())));
            return p.display(&self.base, &[var.clone()]);
        }
        if !self.parts.is_empty() {
            let mut off = 0;
            let mut out = Vec::new();
            for p in &self.parts {
                out.push(p.fmt_elem(&Elem::Vec(v[off..off + p.rank].to_vec())));
                off += p.rank;
            }
            return out.join("; ");
        }
        format!("({})", v.iter().map(|c| self.base.fmt_elem(c)).collect::<Vec<_>>().join(", "))
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        if let Some((var, f)) = &self.generator {
            let pr = Ring::poly(self.base.clone(), &[var]);
            let e = parse::parse_elem(&pr, s)?;
            let coeffs = parse::univariate_coeffs(&pr, &e);
            return Ok(Elem::Vec(reduce_mod_monic(&self.base, coeffs, f)));
        }
        if !self.parts.is_empty() {
            let pieces: Vec<&str> = s.split(';').collect();
            if pieces.len() != self.parts.len() {
                return Err(Error::Parse(format!("expected {} components separated by ';'", self.parts.len())));
            }
            let mut out = Vec::new();
            for (p, piece) in self.parts.iter().zip(pieces) {
                out.extend(p.parse_elem(piece.trim())?.as_vec().iter().cloned());
            }
            return Ok(Elem::Vec(out));
        }
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| Error::Parse(format!("expected coordinates (c1, ..., c{})", self.rank)))?;
        let coords: Result<Vec<Elem>> = inner.split(',').map(|c| self.base.parse_elem(c.trim())).collect();
        let coords = coords?;
        if coords.len() != self.rank {
            return Err(Error::Parse(format!("expected {} coordinates", self.rank)));
        }
        Ok(Elem::Vec(coords))
    }
}

/// Reduces `Σ c_i x^i` modulo the monic polynomial `f` (lowest first).
pub(crate) fn reduce_mod_monic(base: &Ring, mut c: Vec<Elem>, f: &[Elem]) -> Vec<Elem> {
    let d = f.len() - 1;
    while c.len() > d {
        let top = c.pop().unwrap();
        if base.is_zero(&top) {
            continue;
        }
        let shift = c.len() - d;
        for i in 0..d {
            c[shift + i] = base.sub(&c[shift + i], &base.mul(&top, &f[i]));
        }
    }
    c.resize(d, base.zero());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_ring;

    #[test]
    fn char_poly_examples() {
        let b = parse_ring("F5[x]/(x^2+1)").unwrap();
        let alg = b.algebra();
        let e = b.parse_elem("x+1").unwrap();
        let f5 = Ring::Fp(5);
        assert_eq!(alg.mult_char_poly(&e).unwrap(), vec![f5.from_i64(2), f5.from_i64(-2), f5.one()]);
        let q = parse_ring("Q[x]/(x^2-3)").unwrap();
        let x = q.parse_elem("x").unwrap();
        assert_eq!(q.algebra().mult_char_poly(&x).unwrap(), vec![Ring::Q.from_i64(-3), Ring::Q.zero(), Ring::Q.one()]);
    }

    #[test]
    fn inverse_in_product() {
        let b = parse_ring("F5[x]/(x^2-2)*F5[x]/(x-1)").unwrap();
        let g = b.parse_elem("x+1; 3").unwrap();
        let gi = b.inv(&g).unwrap();
        assert_eq!(b.mul(&g, &gi), b.one());
        assert_eq!(b.fmt_elem(&g), "x + 1; 3");
    }

    #[test]
    fn tensor_is_valid() {
        let b = parse_ring("F3[x]/(x^2+1)").unwrap();
        let t = FiniteFreeAlgebra::tensor(b.algebra(), b.algebra()).unwrap();
        t.validate().unwrap();
        assert_eq!(t.rank, 4);
    }
}
