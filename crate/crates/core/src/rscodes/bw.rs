//! Errors-only Berlekamp-Welch decoding.

use super::{distance, DecodeResult, GrsCode, RsError};
use crate::gf::{linalg, Field, Poly};

/// Bounded-distance decoding up to `τ = ⌊(n - κ)/2⌋` errors.
///
/// The received word is unscaled by the column multipliers, then the key
/// equation `E(x_i) r_i = N(x_i)` is solved with `E` monic of degree `τ'`
/// and `deg N < κ + τ'`, for `τ' = τ, τ-1, ..., 0`. A candidate is accepted
/// only if `E | N` and the re-encoded word is within distance `τ`.
pub fn grs_decode<F: Field>(
    code: &GrsCode<F>,
    received: &[F::Elem],
) -> Result<DecodeResult<F::Elem>, RsError> {
    code.check_len(received)?;
    let field = code.field();
    let radius = code.radius();
    let unscaled: Vec<F::Elem> = received
        .iter()
        .zip(code.multipliers())
        .map(|(y, m)| field.div(y, m).expect("multipliers are nonzero"))
        .collect();

    for tau in (0..=radius).rev() {
        let Some(message) = solve_key_equation(code, &unscaled, tau) else {
            continue;
        };
        let corrected = code.encode(&message)?;
        let d = distance(&corrected, received);
        if d > radius {
            continue;
        }
        let error_positions = corrected
            .iter()
            .zip(received)
            .enumerate()
            .filter(|(_, (c, r))| c != r)
            .map(|(i, _)| i)
            .collect();
        return Ok(DecodeResult {
            message_poly: message,
            error_positions,
            corrected_word: corrected,
        });
    }
    Err(RsError::DecodeFailure { radius })
}

/// One Berlekamp-Welch attempt with locator degree `tau`; returns `N / E`
/// when the system is consistent and the division is exact.
fn solve_key_equation<F: Field>(
    code: &GrsCode<F>,
    unscaled: &[F::Elem],
    tau: usize,
) -> Option<Poly<F::Elem>> {
    let field = code.field();
    let dim = code.dim();
    let n_unknowns = tau + dim + tau;
    let mut rows = Vec::with_capacity(code.len());
    let mut rhs = Vec::with_capacity(code.len());
    for (x, r) in code.points().iter().zip(unscaled) {
        let powers: Vec<F::Elem> = std::iter::successors(Some(field.one()), |p| Some(field.mul(p, x)))
            .take(dim + tau + 1)
            .collect();
        let mut row = Vec::with_capacity(n_unknowns);
        // -r · x^d for the non-leading locator coefficients
        for p in powers.iter().take(tau) {
            row.push(field.neg(&field.mul(r, p)));
        }
        // x^l for the N coefficients
        row.extend(powers.iter().take(dim + tau).copied());
        rows.push(row);
        rhs.push(field.mul(r, &powers[tau]));
    }
    let sol = linalg::solve(field, &rows, &rhs)?;
    let mut locator: Vec<F::Elem> = sol[..tau].to_vec();
    locator.push(field.one());
    let locator = Poly::new(field, locator);
    let numerator = Poly::new(field, sol[tau..].to_vec());
    let (quot, rem) = numerator.div_rem(field, &locator).ok()?;
    if !rem.is_zero() || quot.degree().is_some_and(|d| d >= dim) {
        return None;
    }
    Some(quot)
}
