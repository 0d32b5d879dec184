use std::hint::black_box;

use bpir_core::pir::{Answer, FieldRng};
use bpir_core::{
    gen_queries, retrieve_from_k, server_answer, AnswerMode, Database, SchemeParams, SetupRequest,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn trace_answers(p: &SchemeParams, db: &Database, seed: u64) -> Vec<u32> {
    let qs = gen_queries(p, 1, &mut FieldRng::new(seed)).unwrap();
    (1..=p.k)
        .map(|j| match server_answer(p, j, qs.query(j), db, AnswerMode::Trace).unwrap() {
            Answer::Trace(a) => a,
            Answer::Full(_) => unreachable!(),
        })
        .collect()
}

fn bench_protocol(c: &mut Criterion) {
    let shapes = [(4, 1, 1, 4), (7, 1, 1, 5), (9, 2, 1, 5), (13, 1, 2, 6)];
    let mut group = c.benchmark_group("protocol");
    for (k, t, b, r) in shapes {
        let p = SchemeParams::setup(&SetupRequest::new(k, t, b, r, 64)).unwrap();
        let db = Database::random(&p, &mut FieldRng::new(1));
        let label = format!("k{k}_t{t}_b{b}_r{r}_s{}", p.s);
        group.bench_with_input(BenchmarkId::new("setup", &label), &p.request(), |bch, req| {
            bch.iter(|| SchemeParams::setup(black_box(req)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("queries", &label), &p, |bch, p| {
            let mut rng = FieldRng::new(2);
            bch.iter(|| gen_queries(p, 1, &mut rng).unwrap())
        });
        let qs = gen_queries(&p, 1, &mut FieldRng::new(3)).unwrap();
        group.bench_with_input(BenchmarkId::new("answer", &label), &p, |bch, p| {
            bch.iter(|| server_answer(p, 1, black_box(qs.query(1)), &db, AnswerMode::Trace).unwrap())
        });
        let mut answers = trace_answers(&p, &db, 4);
        answers[0] = (answers[0] + 1) % p.q() as u32;
        group.bench_with_input(BenchmarkId::new("retrieve", &label), &p, |bch, p| {
            bch.iter(|| retrieve_from_k(p, black_box(&answers)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_protocol);
criterion_main!(benches);
