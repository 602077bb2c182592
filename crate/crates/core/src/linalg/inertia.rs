use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{LinalgError, RatMatrix};
use crate::rational::Rational;

/// Signature of a symmetric matrix: counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Inertia {
    pub fn dimension(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    /// No negative eigenvalue (weak definiteness).
    pub fn is_positive_semidefinite(&self) -> bool {
        self.n_minus == 0
    }

    pub fn is_singular(&self) -> bool {
        self.n_zero > 0
    }

    pub fn has_negative(&self) -> bool {
        self.n_minus > 0
    }
}

/// Exact inertia by symmetric congruence elimination.
///
/// Each step either pivots on a nonzero diagonal entry or, when the remaining
/// diagonal vanishes, replaces basis vector `i` by `eᵢ + eⱼ` for some nonzero
/// `a_ij`, which produces the diagonal entry `2·a_ij`. Congruence preserves
/// inertia (Sylvester), so the signs of the pivots are the answer.
pub fn inertia(m: &RatMatrix) -> Result<Inertia, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut a = m.to_rows();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let mut out = Inertia {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
    };
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => active[p],
            None => {
                let pair = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = pair else {
                    out.n_zero += active.len();
                    break;
                };
                // row_i += row_j, col_i += col_j
                let row_j = a[j].clone();
                for (x, v) in a[i].iter_mut().zip(row_j) {
                    *x += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            out.n_plus += 1;
        } else {
            out.n_minus += 1;
        }
        active.retain(|&i| i != pivot);
        let pivot_row: Vec<Rational> = a[pivot].clone();
        for &i in &active {
            if pivot_row[i].is_zero() {
                continue;
            }
            let f = &pivot_row[i] / &d;
            for &j in &active {
                if !pivot_row[j].is_zero() {
                    let delta = &f * &pivot_row[j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn tri(i: &Inertia) -> (usize, usize, usize) {
        (i.n_plus, i.n_zero, i.n_minus)
    }

    #[test]
    fn examples() {
        let d = RatMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(-1)]]);
        assert_eq!(tri(&inertia(&d).unwrap()), (1, 0, 1));
        let l = RatMatrix::from_rows(vec![vec![int(1), int(-1)], vec![int(-1), int(1)]]);
        assert_eq!(tri(&inertia(&l).unwrap()), (1, 1, 0));
        let h = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), int(-1)],
            vec![int(-1), ratio(1, 2)],
        ]);
        assert_eq!(tri(&inertia(&h).unwrap()), (1, 0, 1));
    }

    #[test]
    fn zero_diagonal_needs_off_diagonal_pivot() {
        let m = RatMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(tri(&inertia(&m).unwrap()), (1, 0, 1));
        assert_eq!(tri(&inertia(&RatMatrix::zeros(3, 3)).unwrap()), (0, 3, 0));
        assert_eq!(tri(&inertia(&RatMatrix::zeros(0, 0)).unwrap()), (0, 0, 0));
    }

    #[test]
    fn rejects_nonsymmetric() {
        let m = RatMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(2), int(0)]]);
        assert_eq!(inertia(&m), Err(LinalgError::NotSymmetric));
        assert!(matches!(
            inertia(&RatMatrix::zeros(1, 2)),
            Err(LinalgError::NotSquare { .. })
        ));
    }
}
