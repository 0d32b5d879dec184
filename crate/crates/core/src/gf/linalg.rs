//! Dense Gaussian elimination over any [`Field`].

use super::{Field, GfError};

/// Row-major dense matrix.
pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>, cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let factor = m[i][c];
                for j in 0..m[i].len() {
                    let t = field.mul(&factor, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve `A x = b`. Returns one solution (free variables set to zero) or
/// `None` when the system is inconsistent.
pub fn solve<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, cols);
    // a pivot-free row with nonzero rhs means inconsistency
    for row in aug.iter().skip(pivots.len()) {
        if !field.is_zero(&row[cols]) {
            return None;
        }
    }
    let mut x = vec![field.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols];
    }
    Some(x)
}

pub fn rank<F: Field>(field: &F, a: &Matrix<F::Elem>) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    rref(field, &mut m, cols).len()
}

/// Inverse of a square matrix.
pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>, GfError> {
    let n = a.len();
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, n);
    if pivots.len() < n {
        return Err(GfError::SingularBasis);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by elimination.
pub fn determinant<F: Field>(field: &F, a: &Matrix<F::Elem>) -> F::Elem {
    let n = a.len();
    let mut m = a.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return field.zero();
        };
        if p != c {
            m.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[c][c]);
        let inv = field.inv(&m[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = field.mul(&m[i][c], &inv);
            for j in c..n {
                let t = field.mul(&factor, &m[c][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
    }
    det
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(field.zero(), |acc, (r, v)| field.add(&acc, &field.mul(r, v)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;

    #[test]
    fn solves_small_system() {
        let f7 = PrimeField::new(7).unwrap();
        let a = vec![vec![1, 2], vec![3, 4]];
        let b = vec![5, 6];
        let x = solve(&f7, &a, &b).unwrap();
        assert_eq!(mat_vec(&f7, &a, &x), b);
    }

    #[test]
    fn detects_inconsistency() {
        let f7 = PrimeField::new(7).unwrap();
        let a = vec![vec![1, 2], vec![2, 4]];
        assert!(solve(&f7, &a, &[1, 3]).is_none());
        assert!(solve(&f7, &a, &[1, 2]).is_some());
        assert_eq!(rank(&f7, &a), 1);
    }

    #[test]
    fn inverse_and_determinant() {
        let f11 = PrimeField::new(11).unwrap();
        let a = vec![vec![2, 3, 1], vec![4, 1, 5], vec![7, 0, 9]];
        let inv = inverse(&f11, &a).unwrap();
        for (i, row) in a.iter().enumerate() {
            for j in 0..3 {
                let col: Vec<u32> = inv.iter().map(|r| r[j]).collect();
                let v = mat_vec(&f11, &vec![row.clone()], &col)[0];
                assert_eq!(v, (i == j) as u32);
            }
        }
        // det = 2(9-0) - 3(36-35) + 1(0-7) = 18 - 3 - 7 = 8
        assert_eq!(determinant(&f11, &a), 8);
        let singular = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(determinant(&f11, &singular), 0);
        assert_eq!(inverse(&f11, &singular), Err(GfError::SingularBasis));
    }
}
