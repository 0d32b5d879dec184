//! Reed-Solomon and Generalized Reed-Solomon codes over any [`Field`].

mod bw;
mod oracle;

pub use bw::grs_decode;
pub use oracle::{oracle_decode, OracleDecoder, MAX_ORACLE_CODEWORDS};

use thiserror::Error;

use crate::gf::{Field, GfError, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsError {
    #[error("evaluation points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("column multiplier {0} is zero")]
    ZeroMultiplier(usize),
    #[error("invalid code dimension {dim} for length {len}")]
    InvalidDimension { dim: usize, len: usize },
    #[error("message polynomial degree {degree} is not below the dimension {dim}")]
    DegreeTooHigh { degree: usize, dim: usize },
    #[error("word length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no codeword within distance {radius} of the received word")]
    DecodeFailure { radius: usize },
    #[error("oracle enumeration of {0} codewords is too large")]
    EnumerationTooLarge(u128),
    #[error("at least one interpolation point is required")]
    NoPoints,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Outcome of bounded-distance decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult<E> {
    pub message_poly: Poly<E>,
    /// Zero-based coordinates where the received word was wrong.
    pub error_positions: Vec<usize>,
    pub corrected_word: Vec<E>,
}

/// `GRS_κ(x, m) = {(m_1 h(x_1), ..., m_n h(x_n)) : deg h < κ}`.
#[derive(Debug, Clone)]
pub struct GrsCode<F: Field> {
    field: F,
    points: Vec<F::Elem>,
    multipliers: Vec<F::Elem>,
    dim: usize,
}

fn check_distinct<F: Field>(field: &F, points: &[F::Elem]) -> Result<(), RsError> {
    let mut seen = std::collections::HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if let Some(j) = seen.insert(field.index_of(p), i) {
            return Err(RsError::DuplicatePoint(j, i));
        }
    }
    Ok(())
}

impl<F: Field> GrsCode<F> {
    pub fn new(
        field: F,
        points: Vec<F::Elem>,
        multipliers: Vec<F::Elem>,
        dim: usize,
    ) -> Result<Self, RsError> {
        let n = points.len();
        if multipliers.len() != n {
            return Err(RsError::LengthMismatch {
                expected: n,
                got: multipliers.len(),
            });
        }
        if dim == 0 || dim > n || n as u64 > field.order() {
            return Err(RsError::InvalidDimension { dim, len: n });
        }
        check_distinct(&field, &points)?;
        if let Some(i) = multipliers.iter().position(|m| field.is_zero(m)) {
            return Err(RsError::ZeroMultiplier(i));
        }
        Ok(Self {
            field,
            points,
            multipliers,
            dim,
        })
    }

    /// Plain Reed-Solomon code (all multipliers one).
    pub fn reed_solomon(field: F, points: Vec<F::Elem>, dim: usize) -> Result<Self, RsError> {
        let ones = vec![field.one(); points.len()];
        Self::new(field, points, ones, dim)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn points(&self) -> &[F::Elem] {
        &self.points
    }

    pub fn multipliers(&self) -> &[F::Elem] {
        &self.multipliers
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Unique-decoding radius `⌊(n - κ) / 2⌋`.
    pub fn radius(&self) -> usize {
        (self.len() - self.dim) / 2
    }

    pub fn encode(&self, message: &Poly<F::Elem>) -> Result<Vec<F::Elem>, RsError> {
        if let Some(d) = message.degree().filter(|&d| d >= self.dim) {
            return Err(RsError::DegreeTooHigh {
                degree: d,
                dim: self.dim,
            });
        }
        Ok(self
            .points
            .iter()
            .zip(&self.multipliers)
            .map(|(x, m)| self.field.mul(m, &message.eval(&self.field, x)))
            .collect())
    }

    /// Is `word` a codeword? Checked by interpolating the first `κ`
    /// unscaled coordinates and re-encoding.
    pub fn contains(&self, word: &[F::Elem]) -> bool {
        if word.len() != self.len() {
            return false;
        }
        let pts: Vec<_> = (0..self.dim)
            .map(|i| {
                let y = self
                    .field
                    .div(&word[i], &self.multipliers[i])
                    .expect("multipliers are nonzero");
                (self.points[i], y)
            })
            .collect();
        let h = lagrange_interpolate(&self.field, &pts).expect("points are distinct");
        self.encode(&h).is_ok_and(|c| c == word)
    }

    pub(crate) fn check_len(&self, word: &[F::Elem]) -> Result<(), RsError> {
        if word.len() != self.len() {
            return Err(RsError::LengthMismatch {
                expected: self.len(),
                got: word.len(),
            });
        }
        Ok(())
    }
}

/// Hamming distance.
pub fn distance<E: PartialEq>(a: &[E], b: &[E]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Lagrange weights `L_i(x) = ∏_{ℓ≠i} (x - x_ℓ)/(x_i - x_ℓ)` for all nodes.
pub fn lagrange_weights<F: Field>(
    field: &F,
    nodes: &[F::Elem],
    x: &F::Elem,
) -> Result<Vec<F::Elem>, RsError> {
    check_distinct(field, nodes)?;
    Ok(nodes
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut num = field.one();
            let mut den = field.one();
            for (l, xl) in nodes.iter().enumerate() {
                if l != i {
                    num = field.mul(&num, &field.sub(x, xl));
                    den = field.mul(&den, &field.sub(xi, xl));
                }
            }
            field.div(&num, &den).expect("distinct nodes")
        })
        .collect())
}

/// The unique polynomial of degree `< n` through `n` points.
pub fn lagrange_interpolate<F: Field>(
    field: &F,
    points: &[(F::Elem, F::Elem)],
) -> Result<Poly<F::Elem>, RsError> {
    if points.is_empty() {
        return Err(RsError::NoPoints);
    }
    let xs: Vec<F::Elem> = points.iter().map(|p| p.0).collect();
    check_distinct(field, &xs)?;
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if field.is_zero(yi) {
            continue;
        }
        let others: Vec<F::Elem> = xs
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != i)
            .map(|(_, x)| *x)
            .collect();
        let basis = Poly::from_roots(field, &others);
        let denom = basis.eval(field, xi);
        let scale = field.div(yi, &denom)?;
        acc = acc.add(field, &basis.scale(field, &scale));
    }
    Ok(acc)
}

/// Column multipliers of the dual of `RS_κ(Ω_α ∪ Ω_β)`:
/// `u_i = ∏_{ℓ≠i}(α_i-α_ℓ)^{-1} ∏_j (α_i-β_j)^{-1}` and
/// `v_j = ∏_ℓ (β_j-α_ℓ)^{-1} ∏_{ℓ≠j}(β_j-β_ℓ)^{-1}`.
pub fn dual_multipliers<F: Field>(
    field: &F,
    alphas: &[F::Elem],
    betas: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>), RsError> {
    let all: Vec<F::Elem> = alphas.iter().chain(betas).copied().collect();
    check_distinct(field, &all)?;
    let w: Vec<F::Elem> = all
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let prod = all
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != i)
                .fold(field.one(), |acc, (_, xl)| {
                    field.mul(&acc, &field.sub(xi, xl))
                });
            field.inv(&prod).expect("distinct points")
        })
        .collect();
    let (u, v) = w.split_at(alphas.len());
    Ok((u.to_vec(), v.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn interpolate_identity_line() {
        let f7 = f(7);
        let p = lagrange_interpolate(&f7, &[(1, 1), (2, 2)]).unwrap();
        assert_eq!(p.coeffs(), &[0, 1]);
    }

    #[test]
    fn interpolate_single_point_is_constant() {
        let f7 = f(7);
        let p = lagrange_interpolate(&f7, &[(4, 6)]).unwrap();
        assert_eq!(p.coeffs(), &[6]);
    }

    #[test]
    fn interpolate_quadratic_over_f5_matches_brute_force() {
        let f5 = f(5);
        let pts = [(0u32, 1u32), (1, 0), (2, 0)];
        let p = lagrange_interpolate(&f5, &pts).unwrap();
        // brute-force search over all 125 polynomials of degree < 3
        let mut hits = Vec::new();
        for c0 in 0..5u32 {
            for c1 in 0..5u32 {
                for c2 in 0..5u32 {
                    let cand = Poly::new(&f5, vec![c0, c1, c2]);
                    if pts.iter().all(|(x, y)| cand.eval(&f5, x) == *y) {
                        hits.push(cand);
                    }
                }
            }
        }
        assert_eq!(hits, vec![p.clone()]);
        // (ξ-1)(ξ-2)/2 = 3ξ^2 + ξ + 1 over F_5
        assert_eq!(p.coeffs(), &[1, 1, 3]);
    }

    #[test]
    fn duplicate_points_rejected() {
        let f7 = f(7);
        assert_eq!(
            lagrange_interpolate(&f7, &[(1, 1), (1, 2)]),
            Err(RsError::DuplicatePoint(0, 1))
        );
        assert_eq!(lagrange_interpolate::<PrimeField>(&f7, &[]), Err(RsError::NoPoints));
    }

    #[test]
    fn encode_identity_poly() {
        let f7 = f(7);
        let code = GrsCode::reed_solomon(f7, vec![1, 2, 3, 4], 2).unwrap();
        assert_eq!(code.encode(&Poly::x(&f7)).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(code.encode(&Poly::zero()).unwrap(), vec![0; 4]);
        assert!(matches!(
            code.encode(&Poly::new(&f7, vec![0, 0, 1])),
            Err(RsError::DegreeTooHigh { degree: 2, dim: 2 })
        ));
    }

    #[test]
    fn full_dimension_round_trip() {
        let f7 = f(7);
        let code = GrsCode::new(f7, vec![0, 1, 2], vec![3, 5, 6], 3).unwrap();
        let msg = Poly::new(&f7, vec![4, 0, 2]);
        let word = code.encode(&msg).unwrap();
        let pts: Vec<(u32, u32)> = (0..3)
            .map(|i| (code.points()[i], f7.div(&word[i], &code.multipliers()[i]).unwrap()))
            .collect();
        assert_eq!(lagrange_interpolate(&f7, &pts).unwrap(), msg);
    }

    #[test]
    fn code_construction_guards() {
        let f7 = f(7);
        assert!(matches!(
            GrsCode::new(f7, vec![1, 2], vec![1, 0], 1),
            Err(RsError::ZeroMultiplier(1))
        ));
        assert!(matches!(
            GrsCode::reed_solomon(f7, vec![1, 2], 3),
            Err(RsError::InvalidDimension { .. })
        ));
        assert!(matches!(
            GrsCode::reed_solomon(f7, vec![1, 1], 1),
            Err(RsError::DuplicatePoint(0, 1))
        ));
    }

    #[test]
    fn dual_multipliers_small_example() {
        let f5 = f(5);
        let (u, v) = dual_multipliers(&f5, &[2], &[0, 1]).unwrap();
        assert_eq!(u, vec![3]);
        assert_eq!(v, vec![3, 4]);
    }

    #[test]
    fn dual_multipliers_without_alphas_are_classical() {
        let f7 = f(7);
        let betas = [0u32, 1, 3, 5];
        let (u, v) = dual_multipliers(&f7, &[], &betas).unwrap();
        assert!(u.is_empty());
        for (j, bj) in betas.iter().enumerate() {
            let prod = betas
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .fold(1u32, |acc, (_, bl)| f7.mul(&acc, &f7.sub(bj, bl)));
            assert_eq!(f7.mul(&v[j], &prod), 1);
        }
        assert!(dual_multipliers(&f7, &[1], &[1, 2]).is_err());
    }

    #[test]
    fn contains_recognizes_codewords() {
        let f11 = f(11);
        let code = GrsCode::new(f11, vec![1, 2, 3, 4, 5], vec![2, 3, 4, 5, 6], 3).unwrap();
        let w = code.encode(&Poly::new(&f11, vec![1, 2, 3])).unwrap();
        assert!(code.contains(&w));
        let mut bad = w.clone();
        bad[4] = f11.add(&bad[4], &1);
        assert!(!code.contains(&bad));
    }
}
