use bkn_core::linalg::{
    inertia, kernel_basis, lp_feasible, nowhere_zero_kernel_vector, Bound, LinearProgram, RatMatrix,
};
use bkn_core::rational::{ratio, to_f64, Rational};
use nalgebra::DMatrix;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(entry(), c), r).prop_map(RatMatrix::from_rows)
    })
}

/// Symmetric, optionally with the last row and column copied from the first.
fn symmetric(max_n: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max_n, any::<bool>()).prop_flat_map(|(n, duplicate)| {
        proptest::collection::vec(entry(), n * n).prop_map(move |xs| {
            let mut rows = vec![vec![Rational::zero(); n]; n];
            for i in 0..n {
                for j in i..n {
                    rows[i][j] = xs[i * n + j].clone();
                    rows[j][i] = xs[i * n + j].clone();
                }
            }
            if duplicate && n > 1 {
                for j in 0..n {
                    let x = if j == n - 1 { rows[0][0].clone() } else { rows[0][j].clone() };
                    rows[n - 1][j] = x.clone();
                    rows[j][n - 1] = x;
                }
            }
            RatMatrix::from_rows(rows)
        })
    })
}

/// Rank by plain Gaussian elimination, written separately from the library's RREF.
fn rank(rows: Vec<Vec<Rational>>) -> usize {
    let mut m = rows;
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            let f = &m[i][c] / &m[rank][c];
            for j in c..cols {
                let d = &f * &m[rank][j];
                m[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

fn float_inertia(m: &RatMatrix) -> (usize, usize, usize) {
    let n = m.rows();
    let f = DMatrix::from_fn(n, n, |i, j| to_f64(m.get(i, j)));
    let eig = f.symmetric_eigen().eigenvalues;
    let tol = 1e-9;
    (
        eig.iter().filter(|&&x| x > tol).count(),
        eig.iter().filter(|&&x| x.abs() <= tol).count(),
        eig.iter().filter(|&&x| x < -tol).count(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_basis_spans_the_null_space(m in matrix(5, 6)) {
        let basis = kernel_basis(&m);
        prop_assert_eq!(basis.len(), m.cols() - rank(m.transpose().to_rows()));
        for b in &basis {
            prop_assert!(m.mul_vec(&b.entries).iter().all(Zero::is_zero));
        }
        let stacked: Vec<Vec<Rational>> = basis.iter().map(|b| b.entries.clone()).collect();
        prop_assert_eq!(rank(stacked), basis.len());
    }

    #[test]
    fn nowhere_zero_vectors_are_in_the_kernel(m in matrix(4, 5)) {
        if let Some(x) = nowhere_zero_kernel_vector(&m) {
            prop_assert!(x.is_nowhere_zero());
            prop_assert!(m.mul_vec(&x.entries).iter().all(Zero::is_zero));
            prop_assert!(x.entries.iter().all(|e| e.is_integer()));
        } else {
            // some coordinate vanishes on the whole kernel
            let basis = kernel_basis(&m);
            prop_assert!((0..m.cols()).any(|i| basis.iter().all(|b| b.entries[i].is_zero())));
        }
    }

    #[test]
    fn inertia_matches_float_eigenvalues(m in symmetric(6)) {
        let exact = inertia(&m).unwrap();
        prop_assert_eq!((exact.n_plus, exact.n_zero, exact.n_minus), float_inertia(&m));
        prop_assert_eq!(exact.n_zero, m.rows() - rank(m.to_rows()));
    }

    #[test]
    fn inertia_is_permutation_invariant(m in symmetric(6), seed in any::<u64>()) {
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(inertia(&m).unwrap(), inertia(&m.permute_symmetric(&perm)).unwrap());
    }

    #[test]
    fn lp_points_are_feasible(
        x0 in proptest::collection::vec(entry(), 1..=4),
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..=3),
        radii in proptest::collection::vec((0i64..=2, 0i64..=2, any::<bool>()), 4),
    ) {
        let n = x0.len();
        let mut lp = LinearProgram::new(n);
        for r in &rows {
            let coeffs: Vec<Rational> = r[..n].iter().map(|&c| Rational::from_integer(c.into())).collect();
            let rhs = coeffs.iter().zip(&x0).fold(Rational::zero(), |acc, (c, x)| acc + c * x);
            lp = lp.equality(coeffs, rhs);
        }
        for (i, &(lo, hi, strict)) in radii[..n].iter().enumerate() {
            let mk = |v: Rational, open: bool| if open { Bound::open(v) } else { Bound::closed(v) };
            let lower = (lo > 0 || !strict).then(|| mk(&x0[i] - Rational::from_integer(lo.into()), strict && lo > 0));
            let upper = (hi > 0).then(|| mk(&x0[i] + Rational::from_integer(hi.into()), strict));
            lp = lp.bounds(i, lower, upper);
        }
        let x = lp_feasible(&lp);
        prop_assert!(x.is_some(), "x0 is feasible");
        prop_assert!(lp.is_satisfied_by(&x.unwrap().entries));

        let mut contradiction = vec![Rational::zero(); n];
        contradiction[0] = Rational::one();
        let broken = lp
            .equality(contradiction.clone(), x0[0].clone())
            .equality(contradiction, &x0[0] + Rational::one());
        prop_assert!(lp_feasible(&broken).is_none());
    }
}
