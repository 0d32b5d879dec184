//! Exhaustive nearest-codeword search, used only to cross-check the decoder.

use super::{DecodeResult, GrsCode, RsError};
use crate::gf::{Field, Poly};

/// Upper bound on the number of codewords the oracle will enumerate.
pub const MAX_ORACLE_CODEWORDS: u128 = 1 << 20;

/// Precomputed codebook of a small code.
pub struct OracleDecoder<'a, F: Field> {
    code: &'a GrsCode<F>,
    /// `order^κ` codewords of length `n`, flattened; codeword `m` encodes the
    /// message whose coefficients are the base-`order` digits of `m`.
    codebook: Vec<F::Elem>,
}

impl<'a, F: Field> OracleDecoder<'a, F> {
    pub fn new(code: &'a GrsCode<F>) -> Result<Self, RsError> {
        let field = code.field();
        let count = (field.order() as u128).checked_pow(code.dim() as u32);
        let count = match count {
            Some(c) if c <= MAX_ORACLE_CODEWORDS => c as u64,
            Some(c) => return Err(RsError::EnumerationTooLarge(c)),
            None => return Err(RsError::EnumerationTooLarge(u128::MAX)),
        };
        let mut codebook = Vec::with_capacity(count as usize * code.len());
        for m in 0..count {
            let word = code.encode(&Self::message(field, code.dim(), m))?;
            codebook.extend(word);
        }
        Ok(Self { code, codebook })
    }

    fn message(field: &F, dim: usize, mut idx: u64) -> Poly<F::Elem> {
        let order = field.order();
        let coeffs = (0..dim)
            .map(|_| {
                let c = field.from_index(idx % order);
                idx /= order;
                c
            })
            .collect();
        Poly::new(field, coeffs)
    }

    /// The unique codeword within the decoding radius, if any.
    pub fn decode(&self, received: &[F::Elem]) -> Result<DecodeResult<F::Elem>, RsError> {
        self.code.check_len(received)?;
        let n = self.code.len();
        let radius = self.code.radius();
        let mut hit = None;
        for (m, word) in self.codebook.chunks_exact(n).enumerate() {
            let mut d = 0;
            for (a, b) in word.iter().zip(received) {
                if a != b {
                    d += 1;
                    if d > radius {
                        break;
                    }
                }
            }
            if d <= radius {
                // minimum distance n-κ+1 > 2τ rules out a second hit
                assert!(hit.is_none(), "two codewords within the unique-decoding radius");
                hit = Some(m);
            }
        }
        let m = hit.ok_or(RsError::DecodeFailure { radius })?;
        let corrected_word = self.codebook[m * n..(m + 1) * n].to_vec();
        let error_positions = corrected_word
            .iter()
            .zip(received)
            .enumerate()
            .filter(|(_, (c, r))| c != r)
            .map(|(i, _)| i)
            .collect();
        Ok(DecodeResult {
            message_poly: Self::message(self.code.field(), self.code.dim(), m as u64),
            error_positions,
            corrected_word,
        })
    }
}

/// One-shot oracle decode (builds the codebook each call).
pub fn oracle_decode<F: Field>(
    code: &GrsCode<F>,
    received: &[F::Elem],
) -> Result<DecodeResult<F::Elem>, RsError> {
    OracleDecoder::new(code)?.decode(received)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;

    #[test]
    fn all_zero_received_decodes_to_zero() {
        let f7 = PrimeField::new(7).unwrap();
        let code = GrsCode::reed_solomon(f7, vec![0, 1, 2, 3, 4], 3).unwrap();
        let res = oracle_decode(&code, &[0; 5]).unwrap();
        assert!(res.message_poly.is_zero());
        assert!(res.error_positions.is_empty());
    }

    #[test]
    fn refuses_large_enumerations() {
        let f = PrimeField::new(65537).unwrap();
        let code = GrsCode::reed_solomon(f, (0..8).collect(), 4).unwrap();
        assert!(matches!(
            OracleDecoder::new(&code),
            Err(RsError::EnumerationTooLarge(_))
        ));
    }

    #[test]
    fn midpoint_between_codewords_fails() {
        let f7 = PrimeField::new(7).unwrap();
        let code = GrsCode::reed_solomon(f7, vec![0, 1, 2, 3, 4], 3).unwrap();
        // two codewords at minimum distance 3: 0 and ξ(ξ-1) which vanishes at 0, 1
        let c1 = vec![0u32; 5];
        let c2 = code.encode(&Poly::from_roots(&f7, &[0, 1])).unwrap();
        assert_eq!(super::super::distance(&c1, &c2), 3);
        // distance 2 from c1 and 3 from c2: neither is within radius 1
        let mut mid = c1.clone();
        mid[0] = 1;
        mid[2] = c2[2];
        assert_eq!(super::super::distance(&mid, &c1), 2);
        assert_eq!(super::super::distance(&mid, &c2), 3);
        let oracle = oracle_decode(&code, &mid);
        assert_eq!(oracle, super::super::grs_decode(&code, &mid));
    }
}
