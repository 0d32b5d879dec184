use std::sync::OnceLock;

use bpir_core::gf::find_irreducibles;
use bpir_core::pir::FieldRng;
use bpir_core::rscodes::GrsCode;
use bpir_core::{
    capacity, capacity_finite, gen_queries, grs_decode, lagrange_interpolate, retrieve_from_k, retrieve_from_r,
    server_answer, AnswerMode, Database, ExtElem, ExtField, Field, Poly, PrimeField, SchemeParams, SetupRequest,
};
use proptest::prelude::*;

fn ext(q: u64, s: usize) -> ExtField {
    let base = PrimeField::new(q).unwrap();
    let f = find_irreducibles(&base, s, 1).unwrap().remove(0);
    ExtField::new(base, &f).unwrap()
}

fn fields() -> &'static [ExtField] {
    static FIELDS: OnceLock<Vec<ExtField>> = OnceLock::new();
    FIELDS.get_or_init(|| vec![ext(7, 2), ext(11, 3), ext(3, 4), ext(13, 1)])
}

fn trace_instance() -> &'static SchemeParams {
    static P: OnceLock<SchemeParams> = OnceLock::new();
    P.get_or_init(|| SchemeParams::setup(&SetupRequest::new(7, 1, 2, 6, 3).with_q(11)).unwrap())
}

fn ext_instance() -> &'static SchemeParams {
    static P: OnceLock<SchemeParams> = OnceLock::new();
    P.get_or_init(|| SchemeParams::setup(&SetupRequest::new(7, 1, 1, 5, 3)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(which in 0usize..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &fields()[which];
        let (a, b, c) = (f.from_index(a % f.order()), f.from_index(b % f.order()), f.from_index(c % f.order()));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        prop_assert_eq!(f.parse_elem(&f.format_elem(&a)).unwrap(), a);
    }

    #[test]
    fn trace_is_linear_and_frobenius_is_additive(which in 0usize..4, a in any::<u64>(), b in any::<u64>(), c in 0u32..100) {
        let f = &fields()[which];
        let q = f.characteristic() as u32;
        let (a, b) = (f.from_index(a % f.order()), f.from_index(b % f.order()));
        let c = c % q;
        let lhs = f.trace(&f.add(&f.mul(&f.embed(c), &a), &b));
        prop_assert_eq!(lhs, (c * f.trace(&a) + f.trace(&b)) % q);
        prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        prop_assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
    }

    #[test]
    fn interpolation_recovers_the_polynomial(coeffs in prop::collection::vec(0u32..13, 1..8)) {
        let f = PrimeField::new(13).unwrap();
        let p = Poly::new(&f, coeffs);
        let n = p.coeffs().len().max(1);
        let pts: Vec<(u32, u32)> = (0..n as u32).map(|x| (x, p.eval(&f, &x))).collect();
        prop_assert_eq!(lagrange_interpolate(&f, &pts).unwrap(), p);
    }

    #[test]
    fn berlekamp_welch_corrects_up_to_the_radius(
        n in 3usize..12,
        dim_frac in 0.1f64..0.9,
        seed in any::<u64>(),
    ) {
        let f = PrimeField::new(13).unwrap();
        let dim = ((n as f64 * dim_frac) as usize).clamp(1, n);
        let mut rng = FieldRng::new(seed);
        let mults = (0..n).map(|_| rng.nonzero_element(&f)).collect();
        let code = GrsCode::new(f, (0..n as u32).collect(), mults, dim).unwrap();
        let msg = Poly::new(&f, (0..dim).map(|_| rng.element(&f)).collect());
        let cw = code.encode(&msg).unwrap();
        let errors = rng.below(code.radius() as u64 + 1) as usize;
        let mut word = cw.clone();
        let mut positions: Vec<usize> = (0..n).collect();
        for i in 0..errors {
            let pick = i + rng.below((n - i) as u64) as usize;
            positions.swap(i, pick);
            word[positions[i]] = f.add(&word[positions[i]], &rng.nonzero_element(&f));
        }
        let got = grs_decode(&code, &word).unwrap();
        prop_assert_eq!(got.corrected_word, cw);
        prop_assert_eq!(got.message_poly, msg);
        prop_assert_eq!(got.error_positions.len(), errors);
    }

    #[test]
    fn trace_retrieval_survives_b_errors(seed in any::<u64>(), iota in 1usize..=3) {
        let p = trace_instance();
        let mut rng = FieldRng::new(seed);
        let db = Database::random(p, &mut rng);
        let qs = gen_queries(p, iota, &mut rng).unwrap();
        let mut answers: Vec<u32> = (1..=p.k)
            .map(|j| match server_answer(p, j, qs.query(j), &db, AnswerMode::Trace).unwrap() {
                bpir_core::pir::Answer::Trace(a) => a,
                bpir_core::pir::Answer::Full(_) => unreachable!(),
            })
            .collect();
        let bad = rng.below(p.b as u64 + 1) as usize;
        for _ in 0..bad {
            let j = rng.below(p.k as u64) as usize;
            answers[j] = (answers[j] + 1 + rng.below(p.q() - 1) as u32) % p.q() as u32;
        }
        let got = retrieve_from_k(p, &answers).unwrap();
        prop_assert_eq!(got.file, db.file(iota).unwrap().to_vec());
    }

    #[test]
    fn full_retrieval_from_any_r_servers(seed in any::<u64>(), iota in 1usize..=3) {
        let p = ext_instance();
        let ext = *p.ext();
        let mut rng = FieldRng::new(seed);
        let db = Database::random(p, &mut rng);
        let qs = gen_queries(p, iota, &mut rng).unwrap();
        let mut ids: Vec<usize> = (1..=p.k).collect();
        for i in 0..p.r {
            let pick = i + rng.below((p.k - i) as u64) as usize;
            ids.swap(i, pick);
        }
        let mut answers: Vec<(usize, ExtElem)> = ids[..p.r]
            .iter()
            .map(|&j| match server_answer(p, j, qs.query(j), &db, AnswerMode::Full).unwrap() {
                bpir_core::pir::Answer::Full(a) => (j, a),
                bpir_core::pir::Answer::Trace(_) => unreachable!(),
            })
            .collect();
        let pos = rng.below(p.r as u64) as usize;
        answers[pos].1 = ext.add(&answers[pos].1, &rng.nonzero_element(&ext));
        let got = retrieve_from_r(p, &answers).unwrap();
        prop_assert_eq!(got.file, db.file(iota).unwrap().to_vec());
        prop_assert_eq!(got.error_servers, vec![answers[pos].0]);
    }

    #[test]
    fn database_text_round_trip(seed in any::<u64>()) {
        let p = ext_instance();
        let db = Database::random(p, &mut FieldRng::new(seed));
        let back = Database::parse(&db.to_text(p.ext()), p.ext(), p.delta).unwrap();
        prop_assert_eq!(back, db);
    }

    #[test]
    fn finite_capacity_exceeds_the_limit(t in 1usize..4, b in 0usize..3, extra in 1usize..6, m in 1usize..40) {
        let k = 2 * b + t + extra;
        let cm = capacity_finite(t, b, k, m).unwrap();
        let next = capacity_finite(t, b, k, m + 1).unwrap();
        let c = capacity(t, b, k).unwrap();
        let c = num_rational::BigRational::new((*c.numer()).into(), (*c.denom()).into());
        prop_assert!(cm > c);
        prop_assert!(next < cm);
    }
}
