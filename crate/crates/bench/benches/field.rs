use std::hint::black_box;

use bpir_core::gf::{dual_basis, find_irreducibles, power_basis};
use bpir_core::rscodes::GrsCode;
use bpir_core::{grs_decode, ExtField, Field, Poly, PrimeField};
use criterion::{criterion_group, criterion_main, Criterion};

fn tower(q: u64, s: usize) -> ExtField {
    let base = PrimeField::new(q).unwrap();
    let modulus = find_irreducibles(&base, s, 1).unwrap().remove(0);
    ExtField::new(base, &modulus).unwrap()
}

fn bench_arith(c: &mut Criterion) {
    let mut group = c.benchmark_group("ext_arith");
    for (q, s) in [(7u64, 2usize), (11, 4), (251, 4)] {
        let ext = tower(q, s);
        let x = ext.from_index(ext.order() / 3);
        let y = ext.from_index(ext.order() / 5 + 1);
        group.bench_function(format!("mul_q{q}_s{s}"), |b| b.iter(|| ext.mul(black_box(&x), black_box(&y))));
        group.bench_function(format!("inv_q{q}_s{s}"), |b| b.iter(|| ext.inv(black_box(&x))));
        group.bench_function(format!("trace_q{q}_s{s}"), |b| b.iter(|| ext.trace(black_box(&x))));
    }
    group.finish();
}

fn bench_setup(c: &mut Criterion) {
    c.bench_function("dual_basis_q11_s4", |b| {
        let ext = tower(11, 4);
        let theta = power_basis(&ext);
        b.iter(|| dual_basis(&ext, black_box(&theta)).unwrap())
    });
    c.bench_function("find_irreducibles_q7_s3_x8", |b| {
        let base = PrimeField::new(7).unwrap();
        b.iter(|| find_irreducibles(&base, 3, black_box(8)).unwrap())
    });
}

fn bench_decode(c: &mut Criterion) {
    let f = PrimeField::new(101).unwrap();
    let mut group = c.benchmark_group("bw_decode");
    for (n, dim) in [(7usize, 5usize), (16, 8), (32, 16)] {
        let code = GrsCode::reed_solomon(f, (0..n as u32).collect(), dim).unwrap();
        let msg = Poly::new(&f, (1..=dim as u32).collect());
        let mut word = code.encode(&msg).unwrap();
        for e in 0..code.radius() {
            word[2 * e] = f.add(&word[2 * e], &1);
        }
        group.bench_function(format!("n{n}_k{dim}"), |b| b.iter(|| grs_decode(&code, black_box(&word)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_arith, bench_setup, bench_decode);
criterion_main!(benches);
