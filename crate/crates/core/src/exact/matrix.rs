//! Dense matrices over a runtime ring, with division-free determinants.
//!
//! Determinants and characteristic polynomials use Berkowitz's algorithm,
//! which needs only ring operations and therefore works over ℤ/m, finite
//! free algebras and polynomial rings alike.

use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl ExactMatrix {
    pub fn new(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        if rows.iter().flatten().any(|e| !ring.contains(e)) {
            return Err(Error::Shape(format!("entry outside {ring}")));
        }
        Ok(ExactMatrix { ring: ring.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = r.zero();
                for k in 0..self.cols {
                    acc = r.add(&acc, &r.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = r.zero();
                for k in 0..self.cols {
                    acc = r.add(&acc, &r.mul(self.get(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    /// Coefficients of `det(y·I - M)`, lowest degree first (monic).
    pub fn charpoly(&self) -> Result<Vec<Elem>> {
        if self.rows != self.cols {
            return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
        }
        Ok(berkowitz(&self.ring, &self.to_rows()))
    }

    pub fn det(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        Ok(det(&self.ring, &self.to_rows()))
    }

    pub fn trace(&self) -> Elem {
        let r = &self.ring;
        (0..self.rows.min(self.cols)).fold(r.zero(), |acc, i| r.add(&acc, self.get(i, i)))
    }
}

/// Berkowitz: coefficients of `det(y·I - A)`, lowest degree first.
pub fn berkowitz(ring: &Ring, a: &[Vec<Elem>]) -> Vec<Elem> {
    let n = a.len();
    if n == 0 {
        return vec![ring.one()];
    }
    // v holds the characteristic polynomial of the leading block, highest degree first.
    let mut v = vec![ring.one(), ring.neg(&a[0][0])];
    for r in 1..n {
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(ring.neg(&a[r][r]));
        // powers A_r^k R, starting from R = column r above the diagonal
        let mut w: Vec<Elem> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let dot = (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&a[r][j], &w[j])));
            t.push(ring.neg(&dot));
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&a[i][j], &w[j]))))
                    .collect();
            }
        }
        let mut nv = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = ring.zero();
            for j in 0..=i.min(r) {
                if !ring.is_zero(&v[j]) && !ring.is_zero(&t[i - j]) {
                    acc = ring.add(&acc, &ring.mul(&t[i - j], &v[j]));
                }
            }
            nv.push(acc);
        }
        v = nv;
    }
    v.reverse();
    v
}

/// Division-free determinant.
pub fn det(ring: &Ring, a: &[Vec<Elem>]) -> Elem {
    let n = a.len();
    let cp = berkowitz(ring, a);
    if n % 2 == 0 {
        cp[0].clone()
    } else {
        ring.neg(&cp[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(ring: &Ring, a: &[Vec<Elem>]) -> Elem {
        let n = a.len();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let minor: Vec<Vec<Elem>> =
                a[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect()).collect();
            let term = ring.mul(&a[0][j], &cofactor_det(ring, &minor));
            acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for ring in [Ring::Z, Ring::Zmod(12), Ring::Fp(7)] {
            for n in 0..6 {
                let a: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|_| ring.random(&mut rng, 9)).collect()).collect();
                assert_eq!(det(&ring, &a), cofactor_det(&ring, &a), "n={n} over {ring}");
            }
        }
    }

    #[test]
    fn charpoly_of_companion() {
        let z = Ring::Z;
        let m = ExactMatrix::new(&z, vec![vec![z.from_i64(0), z.from_i64(5)], vec![z.from_i64(1), z.from_i64(0)]]).unwrap();
        assert_eq!(m.charpoly().unwrap(), vec![z.from_i64(-5), z.from_i64(0), z.from_i64(1)]);
    }
}
