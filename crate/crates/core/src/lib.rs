//! Byzantine-resistant multi-server private information retrieval.
//!
//! The client spreads a query for file `ι` over `k` replicated servers using a
//! random curve through indicator points; each server answers with a single
//! base-field symbol (the trace of a scaled inner product), and the client
//! decodes the `k` symbols as a Generalized Reed-Solomon codeword, correcting
//! up to `b` wrong answers while staying private against `t` colluders.
//!
//! * [`gf`]: the field tower `F_q ⊂ F_{q^s}`, traces, dual bases.
//! * [`rscodes`]: interpolation, GRS codes and a Berlekamp-Welch decoder.
//! * [`pir`]: parameter setup, queries, answers and both retrieval paths.
//! * [`harness`]: simulated servers, adversaries, audits and reports.
//!
//! ```
//! use bpir_core::pir::FieldRng;
//! use bpir_core::{run_session, AdversaryModel, AnswerMode, Database, SchemeParams, SetupRequest, Strategy};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let params = SchemeParams::setup(&SetupRequest::new(7, 1, 1, 5, 4))?;
//! assert_eq!((params.delta, params.s, params.q()), (2, 2, 7));
//! let db = Database::random(&params, &mut FieldRng::new(1));
//! let adversary = AdversaryModel::byzantine([3], Strategy::QueryAware);
//! let report = run_session(&params, &db, 2, &adversary, AnswerMode::Trace, 42)?;
//! assert!(report.succeeded());
//! assert_eq!(report.identified_error_positions, vec![3]);
//! assert_eq!(report.measured_rate, "4/7");
//! # Ok(())
//! # }
//! ```

pub mod acceptance;
pub mod gf;
pub mod harness;
pub mod pir;
pub mod rscodes;

pub use gf::{ExtElem, ExtField, Field, GfError, Poly, PrimeField};
pub use harness::{
    byzantine_sweep, comparison_table, privacy_audit, run_session, AdversaryModel, SessionReport,
    Strategy,
};
pub use pir::{
    capacity, capacity_finite, gen_queries, retrieve_from_k, retrieve_from_r, server_answer,
    validate_optimality, AnswerMode, Database, PirError, QuerySet, SchemeParams, SetupRequest,
};
pub use rscodes::{grs_decode, lagrange_interpolate, oracle_decode, DecodeResult, GrsCode, RsError};
