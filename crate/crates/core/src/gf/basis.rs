use super::linalg::{self, Matrix};
use super::{ExtElem, ExtField, Field, GfError};

/// A basis `θ` of `F_{q^s}` over `F_q` together with its trace-orthogonal
/// dual `η`: `Tr(θ_i η_j) = [i = j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasisPair {
    pub theta: Vec<ExtElem>,
    pub eta: Vec<ExtElem>,
}

impl DualBasisPair {
    /// `x = Σ_δ θ_δ · Tr(η_δ x)`.
    pub fn reconstruct(&self, field: &ExtField, x: &ExtElem) -> ExtElem {
        self.reconstruct_from_traces(field, |eta| field.trace(&field.mul(eta, x)))
    }

    /// Rebuild an element from its dual coordinates `c_δ = Tr(η_δ x)`.
    pub fn combine(&self, field: &ExtField, coords: &[u32]) -> ExtElem {
        self.theta
            .iter()
            .zip(coords)
            .fold(field.zero(), |acc, (t, c)| {
                field.add(&acc, &field.mul(t, &field.embed(*c)))
            })
    }

    fn reconstruct_from_traces(&self, field: &ExtField, tr: impl Fn(&ExtElem) -> u32) -> ExtElem {
        let coords: Vec<u32> = self.eta.iter().map(tr).collect();
        self.combine(field, &coords)
    }

    /// Full Gram identity check.
    pub fn is_trace_orthogonal(&self, field: &ExtField) -> bool {
        self.theta.iter().enumerate().all(|(i, t)| {
            self.eta
                .iter()
                .enumerate()
                .all(|(j, e)| field.trace(&field.mul(t, e)) == (i == j) as u32)
        })
    }
}

/// Power basis `{1, γ, ..., γ^{s-1}}` of the construction generator `γ`.
pub fn power_basis(field: &ExtField) -> Vec<ExtElem> {
    let g = field.generator();
    (0..field.degree())
        .map(|d| field.pow(&g, d as u64))
        .collect()
}

/// Trace-orthogonal dual of `theta`: invert the Gram matrix
/// `G_ij = Tr(θ_i θ_j)` over `F_q` and set `η_j = Σ_i (G^{-1})_{ij} θ_i`.
pub fn dual_basis(field: &ExtField, theta: &[ExtElem]) -> Result<DualBasisPair, GfError> {
    let s = field.degree();
    if theta.len() != s {
        return Err(GfError::FieldMismatch(format!(
            "basis needs {s} elements, got {}",
            theta.len()
        )));
    }
    for t in theta {
        field.validate(t)?;
    }
    let base = field.base();
    let gram: Matrix<u32> = theta
        .iter()
        .map(|a| theta.iter().map(|b| field.trace(&field.mul(a, b))).collect())
        .collect();
    let ginv = linalg::inverse(base, &gram)?;
    let eta = (0..s)
        .map(|j| {
            (0..s).fold(field.zero(), |acc, i| {
                field.add(&acc, &field.mul(&theta[i], &field.embed(ginv[i][j])))
            })
        })
        .collect();
    Ok(DualBasisPair {
        theta: theta.to_vec(),
        eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{find_irreducibles, Poly, PrimeField};

    fn ext(q: u64, s: usize) -> ExtField {
        let base = PrimeField::new(q).unwrap();
        let m = find_irreducibles(&base, s, 1).unwrap().remove(0);
        ExtField::new(base, &m).unwrap()
    }

    #[test]
    fn dual_of_power_basis_in_gf4() {
        let f2 = PrimeField::new(2).unwrap();
        let f = ExtField::new(f2, &Poly::new(&f2, vec![1, 1, 1])).unwrap();
        let omega = f.generator();
        let pair = dual_basis(&f, &[f.one(), omega]).unwrap();
        let omega_sq = f.mul(&omega, &omega);
        assert_eq!(pair.eta, vec![omega_sq, f.one()]);
        assert!(pair.is_trace_orthogonal(&f));
    }

    #[test]
    fn degree_one_dual_is_inverse() {
        let f7 = PrimeField::new(7).unwrap();
        let f = ExtField::trivial(f7);
        let pair = dual_basis(&f, &[f.embed(3)]).unwrap();
        assert_eq!(pair.eta, vec![f.embed(5)]);
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let f = ext(7, 2);
        let g = f.generator();
        let two_g = f.mul(&g, &f.embed(2));
        assert_eq!(dual_basis(&f, &[g, two_g]), Err(GfError::SingularBasis));
        assert!(dual_basis(&f, &[g]).is_err());
    }

    #[test]
    fn gram_identity_for_several_towers() {
        for (q, s) in [(2, 3), (3, 3), (5, 2), (7, 2), (7, 3), (11, 2), (2, 8)] {
            let f = ext(q, s);
            let pair = dual_basis(&f, &power_basis(&f)).unwrap();
            assert!(pair.is_trace_orthogonal(&f), "q={q} s={s}");
        }
    }

    #[test]
    fn reconstruction_identity_exhaustive_gf49() {
        let f = ext(7, 2);
        let pair = dual_basis(&f, &power_basis(&f)).unwrap();
        for x in f.elements() {
            assert_eq!(pair.reconstruct(&f, &x), x);
        }
    }
}
