//! Randomised property checks for transfers: oracle agreement, basis
//! independence of `u`, the collapse `f_* = d·s^*` for `k[x]/(x^d)`, base
//! change along `A → A'` and additivity over disjoint unions.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::*;
use crate::exact::ExactMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct TransferCheck {
    pub check: String,
    pub base: String,
    pub algebra: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn record(out: &mut Vec<TransferCheck>, check: &str, alg: &FiniteFreeAlgebra, ok: bool, detail: impl FnOnce() -> String) {
    out.push(TransferCheck {
        check: check.into(),
        base: alg.base.to_string(),
        algebra: alg.name.clone(),
        ok,
        detail: if ok { None } else { Some(detail()) },
    });
}

/// `F_5`, `ℤ/9` and `F_3[y]/(y²)`.
pub fn standard_bases() -> Result<Vec<Ring>> {
    let f3 = Ring::fp(3)?;
    let dual = FiniteFreeAlgebra::monogenic(&f3, "y", &[f3.zero(), f3.zero(), f3.one()])?;
    Ok(vec![Ring::fp(5)?, Ring::zmod(9)?, Ring::Alg(Arc::new(dual))])
}

pub fn random_unit<R: Rng + ?Sized>(a: &Ring, rng: &mut R) -> Elem {
    for _ in 0..64 {
        let c = a.random(rng, 4);
        if a.is_unit(&c) {
            return c;
        }
    }
    a.one()
}

/// A random invertible matrix together with its inverse, built from
/// transvections, a unit diagonal and a transposition.
pub fn random_unimodular<R: Rng + ?Sized>(a: &Ring, d: usize, rng: &mut R) -> (Vec<Vec<Elem>>, Vec<Vec<Elem>>) {
    let mut p = ExactMatrix::identity(a, d);
    let mut q = ExactMatrix::identity(a, d);
    let steps = if d > 1 { 2 * d + 1 } else { 1 };
    for _ in 0..steps {
        let mut e = ExactMatrix::identity(a, d);
        let mut e_inv = ExactMatrix::identity(a, d);
        match rng.gen_range(0..3) {
            0 if d > 1 => {
                let i = rng.gen_range(0..d);
                let j = (i + rng.gen_range(1..d)) % d;
                let c = a.random(rng, 4);
                e.set(i, j, c.clone());
                e_inv.set(i, j, a.neg(&c));
            }
            1 if d > 1 => {
                let i = rng.gen_range(0..d);
                let j = (i + rng.gen_range(1..d)) % d;
                for m in [&mut e, &mut e_inv] {
                    m.set(i, i, a.zero());
                    m.set(j, j, a.zero());
                    m.set(i, j, a.one());
                    m.set(j, i, a.one());
                }
            }
            _ => {
                let i = rng.gen_range(0..d);
                let c = random_unit(a, rng);
                e_inv.set(i, i, a.inv(&c).expect("unit"));
                e.set(i, i, c);
            }
        }
        p = p.mul(&e).expect("square");
        q = e_inv.mul(&q).expect("square");
    }
    (p.to_rows(), q.to_rows())
}

fn random_monic<R: Rng + ?Sized>(a: &Ring, d: usize, rng: &mut R) -> Vec<Elem> {
    let mut f: Vec<Elem> = (0..d).map(|_| a.random(rng, 4)).collect();
    f.push(a.one());
    f
}

/// A monogenic algebra or a product of smaller ones, sometimes presented in a
/// scrambled basis.
pub fn random_algebra<R: Rng + ?Sized>(a: &Ring, rank: usize, rng: &mut R) -> Result<Arc<FiniteFreeAlgebra>> {
    let plain = if rank >= 2 && rng.gen_bool(0.35) {
        let k = rng.gen_range(1..rank);
        let left = Arc::new(FiniteFreeAlgebra::monogenic(a, "x", &random_monic(a, k, rng))?);
        let right = Arc::new(FiniteFreeAlgebra::monogenic(a, "x", &random_monic(a, rank - k, rng))?);
        Arc::new(FiniteFreeAlgebra::product(&[left, right])?)
    } else {
        Arc::new(FiniteFreeAlgebra::monogenic(a, "x", &random_monic(a, rank, rng))?)
    };
    if rng.gen_bool(0.5) {
        let (p, q) = random_unimodular(a, rank, rng);
        Ok(Arc::new(plain.change_basis(&p, &q)?))
    } else {
        Ok(plain)
    }
}

fn random_elem<R: Rng + ?Sized>(alg: &Arc<FiniteFreeAlgebra>, rng: &mut R) -> Elem {
    Ring::Alg(alg.clone()).random(rng, 4)
}

fn random_witt<R: Rng + ?Sized>(alg: &Arc<FiniteFreeAlgebra>, n: usize, rng: &mut R) -> Result<BigWittVector> {
    let coeffs = (0..n).map(|_| random_elem(alg, rng)).collect();
    BigWittVector::new(&Ring::Alg(alg.clone()), coeffs)
}

fn show_w(w: &BigWittVector) -> String {
    w.to_json().to_string()
}

/// Oracle agreement and the homomorphism property on one algebra.
pub fn oracle_checks<R: Rng + ?Sized>(alg: &Arc<FiniteFreeAlgebra>, n: usize, rng: &mut R) -> Result<Vec<TransferCheck>> {
    let a = &alg.base;
    let mut out = Vec::new();
    let g = random_elem(alg, rng);
    let h = random_elem(alg, rng);
    let (tg, th) = (transfer_ga(alg, &g)?, transfer_ga(alg, &h)?);
    let oracle = trace_oracle(alg, &g);
    record(&mut out, "Ga = trace", alg, tg == oracle, || format!("g = {}: {} vs {}", alg.fmt_elem(&g), a.fmt_elem(&tg), a.fmt_elem(&oracle)));
    let sum = transfer_ga(alg, &Ring::Alg(alg.clone()).add(&g, &h))?;
    record(&mut out, "Ga additive", alg, sum == a.add(&tg, &th), || format!("g = {}, h = {}", alg.fmt_elem(&g), alg.fmt_elem(&h)));

    let ring_b = Ring::Alg(alg.clone());
    let v = random_unit(&ring_b, rng);
    let (tv, nv) = (transfer_gm(alg, &v)?, norm_oracle(alg, &v));
    record(&mut out, "Gm = norm", alg, tv == nv, || format!("g = {}: {} vs {}", alg.fmt_elem(&v), a.fmt_elem(&tv), a.fmt_elem(&nv)));
    let v2 = random_unit(&ring_b, rng);
    let prod = transfer_gm(alg, &alg.mul(&v, &v2))?;
    record(&mut out, "Gm multiplicative", alg, prod == a.mul(&tv, &transfer_gm(alg, &v2)?), || {
        format!("g = {}, h = {}", alg.fmt_elem(&v), alg.fmt_elem(&v2))
    });

    let w1 = random_witt(alg, n, rng)?;
    let w2 = random_witt(alg, n, rng)?;
    let (t1, o1) = (transfer_witt(alg, &w1)?, witt_norm_oracle(alg, &w1)?);
    record(&mut out, "W = norm over A[t]", alg, t1 == o1, || format!("{} vs {}", show_w(&t1), show_w(&o1)));
    let t12 = transfer_witt(alg, &w1.add(&w2)?)?;
    let t2 = transfer_witt(alg, &w2)?;
    record(&mut out, "W additive", alg, t12 == t1.add(&t2)?, || format!("{} vs {} + {}", show_w(&t12), show_w(&t1), show_w(&t2)));
    Ok(out)
}

/// Recomputes `u` and the transfers after `trials` random changes of basis.
pub fn basis_independence<R: Rng + ?Sized>(alg: &Arc<FiniteFreeAlgebra>, trials: usize, rng: &mut R) -> Result<Vec<TransferCheck>> {
    let a = &alg.base;
    let coords = orbit_basis(alg.rank).into_iter().map(|g| (g, a.random(rng, 4))).filter(|(_, c)| !a.is_zero(c)).collect();
    let x = SymTensor { alg: alg.clone(), coords };
    let ux = x.u_map();
    let g = random_elem(alg, rng);
    let (ga, gm) = (transfer_ga(alg, &g)?, trace_and_det(alg, &g));
    let mut ok = true;
    let mut detail = String::new();
    for _ in 0..trials {
        let (p, q) = random_unimodular(a, alg.rank, rng);
        let other = Arc::new(alg.change_basis(&p, &q)?);
        let x2 = SymTensor::from_full(&x.to_full().transform(&other, &q))?;
        let g2 = Elem::Vec(ExactMatrix::new(a, q.clone())?.mul_vec(g.as_vec()));
        let same = x2.u_map() == ux && transfer_ga(&other, &g2)? == ga && trace_and_det(&other, &g2) == gm;
        if !same && ok {
            ok = false;
            detail = format!("x = {} in basis {:?}", x.display(), p.iter().map(|r| r.iter().map(|c| a.fmt_elem(c)).collect::<Vec<_>>()).collect::<Vec<_>>());
        }
    }
    let mut out = Vec::new();
    record(&mut out, "u basis independent", alg, ok, || detail);
    Ok(out)
}

/// The `𝔾ₘ`-side value used for basis comparisons: `u(g⊗⋯⊗g)` even for non-units.
fn trace_and_det(alg: &Arc<FiniteFreeAlgebra>, g: &Elem) -> Elem {
    let mut x = FullTensor::one(alg);
    for k in 0..alg.rank {
        x = x.mul_slot(k, g);
    }
    UMap::new(alg).apply_full(&x).unwrap_or_else(|_| alg.base.zero())
}

/// `f_* = d·s^*` on `A[x]/(x^d)` for all three groups.
pub fn collapse_checks<R: Rng + ?Sized>(a: &Ring, d: usize, n: usize, rng: &mut R) -> Result<Vec<TransferCheck>> {
    let mut f = vec![a.zero(); d + 1];
    f[d] = a.one();
    let alg = Arc::new(FiniteFreeAlgebra::monogenic(a, "x", &f)?);
    let mut out = Vec::new();
    let g = random_elem(&alg, rng);
    let s = closed_point_value(&alg, &g)?;
    let ga = transfer_ga(&alg, &g)?;
    record(&mut out, "Ga collapse", &alg, ga == a.mul_i64(&s, d as i64), || alg.fmt_elem(&g));
    let v = random_unit(&Ring::Alg(alg.clone()), rng);
    let gm = transfer_gm(&alg, &v)?;
    let sv = closed_point_value(&alg, &v)?;
    record(&mut out, "Gm collapse", &alg, gm == a.pow(&sv, d as u64), || alg.fmt_elem(&v));
    let w = random_witt(&alg, n, rng)?;
    let at0 = BigWittVector::new(a, w.coeffs().iter().map(|c| closed_point_value(&alg, c)).collect::<Result<_>>()?)?;
    let tw = transfer_witt(&alg, &w)?;
    let expect = at0.mul_int(d as i64);
    record(&mut out, "W collapse", &alg, tw == expect, || format!("{} vs {}", show_w(&tw), show_w(&expect)));
    Ok(out)
}

/// `h^* f_* = f'_* h'^*` for the base change `B' = B ⊗_A A'` along `h`.
pub fn base_change_checks<R: Rng + ?Sized>(
    alg: &Arc<FiniteFreeAlgebra>,
    target: &Ring,
    h: &dyn Fn(&Elem) -> Elem,
    n: usize,
    rng: &mut R,
) -> Result<Vec<TransferCheck>> {
    let moved = Arc::new(alg.base_change(target, h)?);
    let hb = |b: &Elem| Elem::Vec(b.as_vec().iter().map(h).collect());
    let mut out = Vec::new();
    let g = random_elem(alg, rng);
    let ok = h(&transfer_ga(alg, &g)?) == transfer_ga(&moved, &hb(&g))?;
    record(&mut out, "Ga base change", alg, ok, || format!("g = {} to {target}", alg.fmt_elem(&g)));
    let v = random_unit(&Ring::Alg(alg.clone()), rng);
    let ok = h(&transfer_gm(alg, &v)?) == transfer_gm(&moved, &hb(&v))?;
    record(&mut out, "Gm base change", alg, ok, || format!("g = {} to {target}", alg.fmt_elem(&v)));
    let w = random_witt(alg, n, rng)?;
    let left = transfer_witt(alg, &w)?;
    let left = BigWittVector::new(target, left.coeffs().iter().map(h).collect())?;
    let right = transfer_witt(&moved, &BigWittVector::new(&Ring::Alg(moved.clone()), w.coeffs().iter().map(hb).collect())?)?;
    record(&mut out, "W base change", alg, left == right, || format!("{} vs {}", show_w(&left), show_w(&right)));
    Ok(out)
}

/// `f_{1*} g_1 + f_{2*} g_2 = (f_1, f_2)_* (g_1, g_2)` on `B_1 × B_2`.
pub fn disjoint_union_checks<R: Rng + ?Sized>(
    b1: &Arc<FiniteFreeAlgebra>,
    b2: &Arc<FiniteFreeAlgebra>,
    n: usize,
    rng: &mut R,
) -> Result<Vec<TransferCheck>> {
    let a = &b1.base;
    let prod = Arc::new(FiniteFreeAlgebra::product(&[b1.clone(), b2.clone()])?);
    let pair = |x: &Elem, y: &Elem| Elem::Vec(x.as_vec().iter().chain(y.as_vec()).cloned().collect());
    let mut out = Vec::new();
    let (g1, g2) = (random_elem(b1, rng), random_elem(b2, rng));
    let ok = transfer_ga(&prod, &pair(&g1, &g2))? == a.add(&transfer_ga(b1, &g1)?, &transfer_ga(b2, &g2)?);
    record(&mut out, "Ga disjoint union", &prod, ok, || format!("({}, {})", b1.fmt_elem(&g1), b2.fmt_elem(&g2)));
    let (v1, v2) = (random_unit(&Ring::Alg(b1.clone()), rng), random_unit(&Ring::Alg(b2.clone()), rng));
    let ok = transfer_gm(&prod, &pair(&v1, &v2))? == a.mul(&transfer_gm(b1, &v1)?, &transfer_gm(b2, &v2)?);
    record(&mut out, "Gm disjoint union", &prod, ok, || format!("({}, {})", b1.fmt_elem(&v1), b2.fmt_elem(&v2)));
    let (w1, w2) = (random_witt(b1, n, rng)?, random_witt(b2, n, rng)?);
    let joint = BigWittVector::new(&Ring::Alg(prod.clone()), w1.coeffs().iter().zip(w2.coeffs()).map(|(x, y)| pair(x, y)).collect())?;
    let lhs = transfer_witt(&prod, &joint)?;
    let rhs = transfer_witt(b1, &w1)?.add(&transfer_witt(b2, &w2)?)?;
    record(&mut out, "W disjoint union", &prod, lhs == rhs, || format!("{} vs {}", show_w(&lhs), show_w(&rhs)));
    Ok(out)
}

/// Specialisations used for base change: `ℤ/9 → F_3`, `F_3[y]/(y²) → F_3`
/// (`y ↦ 0`) and `F_5 → F_25`.
pub fn specialisation(a: &Ring) -> Result<(Ring, Box<dyn Fn(&Elem) -> Elem>)> {
    match a {
        Ring::Zmod(9) => Ok((Ring::fp(3)?, Box::new(|c: &Elem| Elem::Mod(c.as_mod() % 3)))),
        Ring::Alg(al) if al.base == Ring::Fp(3) => Ok((Ring::Fp(3), Box::new(|c: &Elem| c.as_vec()[0].clone()))),
        Ring::Fp(5) => {
            let f5 = Ring::Fp(5);
            let f25 = Ring::Alg(Arc::new(FiniteFreeAlgebra::monogenic(&f5, "u", &[f5.from_i64(-2), f5.zero(), f5.one()])?));
            Ok((f25, Box::new(|c: &Elem| Elem::Vec(vec![c.clone(), Elem::Mod(0)]))))
        }
        _ => Err(Error::Precondition(format!("no specialisation registered for {a}"))),
    }
}

/// The full transfer suite: for each standard base, `per_rank` random
/// algebras of each rank 1..=4 with Witt length `n`, plus the structural checks.
pub fn transfer_suite(seed: u64, per_rank: usize, n: usize) -> Result<Vec<TransferCheck>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for a in standard_bases()? {
        let (target, h) = specialisation(&a)?;
        for rank in 1..=4 {
            for _ in 0..per_rank {
                let alg = random_algebra(&a, rank, &mut rng)?;
                out.extend(oracle_checks(&alg, n, &mut rng)?);
                out.extend(basis_independence(&alg, 20, &mut rng)?);
                out.extend(base_change_checks(&alg, &target, h.as_ref(), n, &mut rng)?);
            }
            out.extend(collapse_checks(&a, rank, n, &mut rng)?);
        }
        for (r1, r2) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
            let b1 = random_algebra(&a, r1, &mut rng)?;
            let b2 = random_algebra(&a, r2, &mut rng)?;
            out.extend(disjoint_union_checks(&b1, &b2, n, &mut rng)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn unimodular_pair_is_inverse() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for a in standard_bases().unwrap() {
            let (p, q) = random_unimodular(&a, 3, &mut rng);
            let pq = ExactMatrix::new(&a, p).unwrap().mul(&ExactMatrix::new(&a, q).unwrap()).unwrap();
            assert_eq!(pq, ExactMatrix::identity(&a, 3));
        }
    }

    #[test]
    fn small_suite_passes() {
        let checks = transfer_suite(7, 1, 3).unwrap();
        let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert!(checks.len() > 100);
    }
}
