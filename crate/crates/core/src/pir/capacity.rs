use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow};

use super::PirError;

fn check(t: usize, b: usize, k: usize) -> Result<(), PirError> {
    if 2 * b + t >= k {
        return Err(PirError::InvalidParameters(format!(
            "2b + t < k violated (2b+t={}, k={k})",
            2 * b + t
        )));
    }
    Ok(())
}

/// Asymptotic capacity `C(t, b, k) = (k − 2b − t)/k`.
pub fn capacity(t: usize, b: usize, k: usize) -> Result<Ratio<u64>, PirError> {
    check(t, b, k)?;
    Ok(Ratio::new((k - 2 * b - t) as u64, k as u64))
}

/// Capacity with `m` files:
/// `C_m = ((k−2b)/k) · (1 − ρ)/(1 − ρ^m)` with `ρ = t/(k−2b)`, exact.
pub fn capacity_finite(t: usize, b: usize, k: usize, m: usize) -> Result<BigRational, PirError> {
    check(t, b, k)?;
    if m == 0 {
        return Err(PirError::InvalidParameters("m ≥ 1 violated".into()));
    }
    let kb = BigInt::from(k - 2 * b);
    let one = BigRational::one();
    let rho = BigRational::new(BigInt::from(t), kb.clone());
    let lead = BigRational::new(kb, BigInt::from(k));
    let denom = &one - Pow::pow(&rho, m as u32);
    Ok(lead * (&one - &rho) / denom)
}
