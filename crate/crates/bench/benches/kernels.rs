use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use wittkit::drw::{BoundedPresentation, PresentationParams};
use wittkit::exact::parse_ring;
use wittkit::modulus::{chow_reduce, QDivisorP1};
use wittkit::transfers::{transfer_gm, transfer_witt};
use wittkit::witt::star_table;
use wittkit::{BigWittVector, Ring, ZeroCycle};

fn witt(c: &mut Criterion) {
    let z12 = Ring::zmod(12).unwrap();
    let u = BigWittVector::from_i64s(&z12, &[5, 7, 1, 11, 3, 2]);
    let v = BigWittVector::from_i64s(&z12, &[2, 11, 4, 9, 6, 1]);
    c.bench_function("star n=6 over Z/12", |b| b.iter(|| black_box(&u).star(black_box(&v)).unwrap()));
    let table = star_table(6).unwrap();
    c.bench_function("star n=6 via universal table", |b| b.iter(|| table.eval(black_box(&u), black_box(&v)).unwrap()));

    let long = BigWittVector::from_i64s(&Ring::Z, &(1..=24).map(|k| k % 5 - 2).collect::<Vec<_>>());
    c.bench_function("F_4 from length 24 over Z", |b| b.iter(|| black_box(&long).frobenius(4).unwrap()));
    let short = BigWittVector::from_i64s(&Ring::Z, &[3, -1, 2, 0, 1, -2]);
    c.bench_function("V_4 to length 24 over Z", |b| b.iter(|| black_box(&short).verschiebung(4).unwrap()));
}

fn modulus(c: &mut Criterion) {
    let f7 = Ring::fp(7).unwrap();
    let cyc = ZeroCycle::parse(&f7, "2[x^3+x+1] - [x^2+1] + [x-3]").unwrap();
    c.bench_function("phi of a degree-6 cycle, n=8", |b| b.iter(|| black_box(&cyc).phi(8)));
    let other = ZeroCycle::parse(&f7, "[x^2+x+3] + [x-2]").unwrap();
    c.bench_function("cycle star product", |b| b.iter(|| black_box(&cyc).star(black_box(&other)).unwrap()));
    let d = QDivisorP1::at_infinity(&f7, Ring::Q.parse_elem("7/2").unwrap().as_rat().clone()).unwrap();
    c.bench_function("chow_reduce at 7/2 infinity", |b| b.iter(|| chow_reduce(black_box(&cyc), &d).unwrap()));
}

fn transfers(c: &mut Criterion) {
    let Ring::Alg(alg) = parse_ring("F5[x]/(x^4+x+2)").unwrap() else { unreachable!() };
    let b = Ring::Alg(Arc::clone(&alg));
    let g = b.parse_elem("x^3 + 2*x + 1").unwrap();
    c.bench_function("Gm transfer, rank 4", |bch| bch.iter(|| transfer_gm(&alg, black_box(&g)).unwrap()));
    let w = BigWittVector::new(&b, vec![g.clone(), b.parse_elem("x").unwrap(), b.one()]).unwrap();
    c.bench_function("W transfer, rank 4, n=3", |bch| bch.iter(|| transfer_witt(&alg, black_box(&w)).unwrap()));
}

fn drw(c: &mut Criterion) {
    let params = PresentationParams { ring: "F3[x]".into(), n: 2, q: 1, dx: 3, dr: 2 };
    let mut g = c.benchmark_group("drw");
    g.sample_size(10);
    g.bench_function("present F3[x] n=2 q=1 dx=3 dr=2", |b| b.iter(|| BoundedPresentation::build(black_box(&params)).unwrap()));
    g.finish();
}

criterion_group!(benches, witt, modulus, transfers, drw);
criterion_main!(benches);
