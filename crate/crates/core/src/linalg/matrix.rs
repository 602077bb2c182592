use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LinalgError;
use crate::rational::{format_rational, Rational};

/// Dense rational matrix with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

/// Rational vector whose coordinates are labelled like the columns of its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatVector {
    pub entries: Vec<Rational>,
    pub labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
            row_labels: default_labels(rows),
            col_labels: default_labels(cols),
        }
    }

    /// Square zero matrix whose rows and columns share `labels`.
    pub fn square(labels: Vec<String>) -> Self {
        let n = labels.len();
        RatMatrix {
            rows: n,
            cols: n,
            data: vec![Rational::zero(); n * n],
            row_labels: labels.clone(),
            col_labels: labels,
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            row_labels: default_labels(r),
            col_labels: default_labels(c),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert!(self.rows == self.cols && labels.len() == self.rows);
        self.row_labels = labels.clone();
        self.col_labels = labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &Rational) {
        self.data[i * self.cols + j] += value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `P m Pᵗ` where row `i` of the result is row `perm[i]` of `m`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                out.set(i, j, self.get(pi, pj).clone());
            }
        }
        let labels: Vec<String> = perm.iter().map(|&p| self.row_labels[p].clone()).collect();
        out.with_labels(labels)
    }

    /// Restriction to the rows and columns at `keep`, in the given order.
    pub fn principal_by_index(&self, keep: &[usize]) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if keep.is_empty() {
            return Err(LinalgError::EmptySubset);
        }
        if let Some(&bad) = keep.iter().find(|&&k| k >= self.rows) {
            return Err(LinalgError::UnknownLabel(bad.to_string()));
        }
        let mut out = RatMatrix::zeros(keep.len(), keep.len());
        for (i, &ki) in keep.iter().enumerate() {
            for (j, &kj) in keep.iter().enumerate() {
                out.set(i, j, self.get(ki, kj).clone());
            }
        }
        let labels = keep.iter().map(|&k| self.row_labels[k].clone()).collect();
        Ok(out.with_labels(labels))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RatVector {
    pub fn new(entries: Vec<Rational>, labels: Vec<String>) -> Self {
        assert_eq!(entries.len(), labels.len());
        RatVector { entries, labels }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.entries.iter().all(|x| !x.is_zero())
    }

    /// Rescales to a primitive integer vector whose first nonzero entry is positive.
    pub fn normalized(&self) -> Self {
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if gcd.is_zero() {
            return self.clone();
        }
        let flip = ints
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        let scale = if flip { -gcd } else { gcd };
        RatVector {
            entries: ints
                .into_iter()
                .map(|x| Rational::from_integer(x / &scale))
                .collect(),
            labels: self.labels.clone(),
        }
    }
}

/// Serialized as an ordered map from label to `"p/q"`.
impl serde::Serialize for RatVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.len()))?;
        for (label, x) in self.labels.iter().zip(&self.entries) {
            map.serialize_entry(label, &format_rational(x))?;
        }
        map.end()
    }
}
