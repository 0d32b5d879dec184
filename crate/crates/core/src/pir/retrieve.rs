use super::{PirError, SchemeParams};
use crate::gf::{ExtElem, Field};
use crate::rscodes::{grs_decode, GrsCode};

/// A recovered file together with the servers whose answers were corrected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retrieved {
    pub file: Vec<ExtElem>,
    /// One-based server ids, ascending.
    pub error_servers: Vec<usize>,
}

/// Decode `r` full-mode answers `(server id, φ(β_j))` as a Reed-Solomon
/// word of dimension `r − 2b` and evaluate `φ` at the `α` points.
pub fn retrieve_from_r(params: &SchemeParams, answers: &[(usize, ExtElem)]) -> Result<Retrieved, PirError> {
    let ext = params.ext();
    let mut ids: Vec<usize> = answers.iter().map(|a| a.0).collect();
    ids.sort_unstable();
    ids.dedup();
    if answers.len() != params.r || ids.len() != params.r {
        return Err(PirError::WrongResponderCount {
            expected: params.r,
            got: ids.len(),
        });
    }
    if let Some(&bad) = ids.iter().find(|&&j| j == 0 || j > params.k) {
        return Err(PirError::DimensionMismatch(format!(
            "server id {bad} outside [1, {}]",
            params.k
        )));
    }
    for (_, a) in answers {
        ext.validate(a)?;
    }
    let points = answers.iter().map(|(j, _)| params.beta_ext()[j - 1]).collect();
    let word: Vec<ExtElem> = answers.iter().map(|a| a.1).collect();
    let code = GrsCode::reed_solomon(*ext, points, params.r - 2 * params.b)?;
    let decoded = grs_decode(&code, &word)?;
    let file = params
        .omega_alpha()
        .iter()
        .map(|alpha| decoded.message_poly.eval(ext, alpha))
        .collect();
    let mut error_servers: Vec<usize> = decoded.error_positions.iter().map(|&p| answers[p].0).collect();
    error_servers.sort_unstable();
    Ok(Retrieved { file, error_servers })
}

/// Correct and decode the `k` trace-mode answers `a_j = Tr(v_j φ(β_j))`.
///
/// `c_j = P(β_j) a_j` with `P = ∏_ℓ f̃_ℓ` lies in the base-field GRS code
/// of dimension `k − 2b` on `Ω_β`; after correction each file symbol is
/// `x_i = −Σ_δ θ_δ Σ_j h_{iδ}(β_j) ∏_{ℓ≠i} f̃_ℓ(β_j) a_j`.
pub fn retrieve_from_k(params: &SchemeParams, answers: &[u32]) -> Result<Retrieved, PirError> {
    if answers.len() != params.k {
        return Err(PirError::WrongResponderCount {
            expected: params.k,
            got: answers.len(),
        });
    }
    let base = params.base();
    let ext = params.ext();
    let q = params.q();
    if let Some(bad) = answers.iter().find(|&&a| a as u64 >= q) {
        return Err(PirError::Field(crate::gf::GfError::Parse {
            what: "base-field answer",
            input: bad.to_string(),
        }));
    }
    let locator = params.locator_at_beta();
    let word: Vec<u32> = answers.iter().zip(locator).map(|(a, p)| base.mul(a, p)).collect();
    let decoded = grs_decode(params.check_code(), &word)?;
    let corrected: Vec<u32> = decoded
        .corrected_word
        .iter()
        .zip(locator)
        .map(|(c, p)| base.div(c, p).expect("locator is nonzero on Ω_β"))
        .collect();

    let theta = &params.dual_pair().theta;
    let file = params
        .recovery_coeffs()
        .iter()
        .map(|per_delta| {
            let sum = per_delta.iter().zip(theta).fold(ext.zero(), |acc, (coeffs, th)| {
                let tr = base.sum(
                    coeffs
                        .iter()
                        .zip(&corrected)
                        .map(|(c, a)| base.mul(c, a))
                        .collect::<Vec<_>>()
                        .iter(),
                );
                ext.add(&acc, &ext.mul(th, &ext.embed(tr)))
            });
            ext.neg(&sum)
        })
        .collect();
    Ok(Retrieved {
        file,
        error_servers: decoded.error_positions.iter().map(|p| p + 1).collect(),
    })
}
