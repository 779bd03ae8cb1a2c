//! Dense exact linear algebra used by the rank-based oracles.
//!
//! This is deliberately separate from the column reduction in
//! [`crate::reduction`]: pivots here are the first nonzero coordinate, with no
//! reference to the filtration, so the two routes share no elimination order.

use crate::scalar::{FieldSpec, Scalar};

/// Incrementally maintained row-echelon basis of a subspace of `F^dim`.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: FieldSpec,
    dim: usize,
    // Each row is zero at the pivots of all earlier rows, and 1 at its own.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
    }

    /// Adds `v` to the spanning set. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inverse().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Scalar::is_zero)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}

/// Rank of the span of `vectors` (all of length `dim`).
pub fn rank<'a>(field: FieldSpec, dim: usize, vectors: impl IntoIterator<Item = &'a Vec<Scalar>>) -> usize {
    let mut basis = EchelonBasis::new(field, dim);
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Basis of `{ x : sum_j x_j * columns[j] = 0 }`, where each column has length `rows`.
pub fn nullspace(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = columns.len();
    // Row-major copy of the matrix.
    let mut m: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(found) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, found);
        let inv = m[r][col].inverse().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let c = m[i][col].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&c * p);
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![field.zero(); n];
        x[free] = field.one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = m[row][free].neg();
        }
        basis.push(x);
    }
    basis
}
