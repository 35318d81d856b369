use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use leafalg::{coinvariants_truncated, colength_local, milnor_number, Family, GroebnerBasis, PolyRing, Structure, Variety};

fn buchberger(c: &mut Criterion) {
    let r = PolyRing::new(&["x", "y", "z"], &[1, 1, 1]).unwrap();
    let f = r.parse("x^3 + y^3 + z^3 + x*y*z").unwrap();
    let jac: Vec<_> = (0..3).map(|i| f.derivative(i)).collect();
    c.bench_function("gb jacobian ideal of a cubic", |b| b.iter(|| GroebnerBasis::new(&r, black_box(&jac)).unwrap()));

    let r = PolyRing::new(&["x", "y", "z", "w"], &[1, 1, 1, 1]).unwrap();
    let gens: Vec<_> = ["x^2 + y*z - w^2", "x*y - z^2 + w", "y^3 - x*z*w"].iter().map(|s| r.parse(s).unwrap()).collect();
    c.bench_function("gb three generators in four variables", |b| b.iter(|| GroebnerBasis::new(&r, black_box(&gens)).unwrap()));
}

fn colength(c: &mut Criterion) {
    let r = PolyRing::new(&["x", "y", "z"], &[1, 1, 1]).unwrap();
    let f = r.parse("x^4 + y^4 + z^4 + x^2*y*z").unwrap();
    let jac: Vec<_> = (0..3).map(|i| f.derivative(i)).collect();
    let gb = GroebnerBasis::new(&r, &jac).unwrap();
    c.bench_function("local colength of a quartic jacobian ideal", |b| b.iter(|| colength_local(black_box(&gb)).unwrap()));

    let x = Variety::parse(&r, &["x^2 + y^2 + z^2", "x^2 + 2*y^2 + 3*z^2"], Structure::Jacobian).unwrap();
    c.bench_function("milnor number of two quadrics", |b| b.iter(|| milnor_number(black_box(&x)).unwrap()));
}

fn coinvariants(c: &mut Criterion) {
    let r = PolyRing::new(&["x", "y", "z"], &[1, 1, 1]).unwrap();
    let x = Variety::parse(&r, &["x^3 + y^3 + z^3"], Structure::Jacobian).unwrap();
    c.bench_function("fermat coinvariants to degree 6", |b| {
        b.iter(|| coinvariants_truncated(black_box(&x), &Family::Hamiltonian, 6).unwrap())
    });
}

criterion_group!(benches, buchberger, colength, coinvariants);
criterion_main!(benches);
