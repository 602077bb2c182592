//! Exact dense linear algebra over the rationals.

mod inertia;
mod lp;
mod matrix;

use num_traits::{One, Zero};
use thiserror::Error;

pub use inertia::{inertia, Inertia};
pub use lp::{lp_feasible, solve_lp, Bound, LinearProgram, LpSolution, Objective};
pub use matrix::{RatMatrix, RatVector};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty principal subset")]
    EmptySubset,
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
pub(crate) fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<RatVector> {
    let n = m.cols();
    let mut rows = m.to_rows();
    let pivots = rref(&mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); n];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -rows[r][f].clone();
            }
            RatVector::new(x, m.col_labels().to_vec())
        })
        .collect()
}

/// A kernel vector with no zero coordinate, if one exists.
///
/// Such a vector exists iff every coordinate is nonzero on some basis vector.
/// The combination `Σ tʲ·basisⱼ` is then nowhere zero for all but finitely
/// many `t`; the smallest positive integer `t` that works is used.
pub fn nowhere_zero_kernel_vector(m: &RatMatrix) -> Option<RatVector> {
    let basis = kernel_basis(m);
    let n = m.cols();
    if basis.is_empty() && n > 0 {
        return None;
    }
    if (0..n).any(|i| basis.iter().all(|b| b.entries[i].is_zero())) {
        return None;
    }
    // Each coordinate is a nonzero polynomial in t of degree < basis.len(),
    // so at most n * basis.len() integers can fail.
    for t in 1u64.. {
        let t = Rational::from_integer(t.into());
        let mut x = vec![Rational::zero(); n];
        let mut power = Rational::one();
        for b in &basis {
            for (xi, bi) in x.iter_mut().zip(&b.entries) {
                if !bi.is_zero() {
                    *xi += &power * bi;
                }
            }
            power *= &t;
        }
        if x.iter().all(|xi| !xi.is_zero()) {
            return Some(RatVector::new(x, m.col_labels().to_vec()).normalized());
        }
    }
    unreachable!()
}

/// Principal submatrix on the labels in `keep`, preserving the matrix's label order.
pub fn principal_submatrix(m: &RatMatrix, keep: &[&str]) -> Result<RatMatrix, LinalgError> {
    if keep.is_empty() {
        return Err(LinalgError::EmptySubset);
    }
    if let Some(bad) = keep.iter().find(|k| !m.row_labels().iter().any(|l| l == *k)) {
        return Err(LinalgError::UnknownLabel(bad.to_string()));
    }
    let idx: Vec<usize> = m
        .row_labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| keep.contains(&l.as_str()))
        .map(|(i, _)| i)
        .collect();
    m.principal_by_index(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RatMatrix::identity(2)).is_empty());
        let k = kernel_basis(&m(&[&[1, -1], &[-1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].entries, vec![int(1), int(1)]);
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 2)).len(), 2);
    }

    #[test]
    fn nowhere_zero_examples() {
        let x = nowhere_zero_kernel_vector(&m(&[&[1, -1], &[-1, 1]])).unwrap();
        assert_eq!(x.entries, vec![int(1), int(1)]);
        assert!(nowhere_zero_kernel_vector(&m(&[&[0, 0], &[0, 1]])).is_none());
        let x = nowhere_zero_kernel_vector(&RatMatrix::zeros(1, 1)).unwrap();
        assert_eq!(x.entries, vec![int(1)]);
        assert!(nowhere_zero_kernel_vector(&RatMatrix::identity(3)).is_none());
    }

    #[test]
    fn nowhere_zero_needs_combination() {
        // kernel spanned by (1,0,-1) and (0,1,-1): the first basis vector alone
        // and the sum (1,1,-2) are fine, but t must dodge (1,-1,0) style cancellation
        let a = m(&[&[1, 1, 1]]);
        let x = nowhere_zero_kernel_vector(&a).unwrap();
        assert!(x.is_nowhere_zero());
        assert!(a.mul_vec(&x.entries).iter().all(Zero::is_zero));

        let b = m(&[&[1, -1, 0], &[0, 0, 0]]);
        let x = nowhere_zero_kernel_vector(&RatMatrix::from_rows(b.to_rows())).unwrap();
        assert!(x.is_nowhere_zero());
    }

    #[test]
    fn principal_submatrix_examples() {
        let a = m(&[&[0, -1], &[-1, 1]]).with_labels(vec!["x".into(), "y".into()]);
        assert_eq!(principal_submatrix(&a, &["x"]).unwrap().get(0, 0), &int(0));
        assert_eq!(principal_submatrix(&a, &["y"]).unwrap().get(0, 0), &int(1));
        assert_eq!(principal_submatrix(&a, &["y", "x"]).unwrap(), a);
        assert_eq!(principal_submatrix(&a, &[]), Err(LinalgError::EmptySubset));
        assert!(matches!(
            principal_submatrix(&a, &["z"]),
            Err(LinalgError::UnknownLabel(_))
        ));
    }
}
