//! Column-sparse complex matrices.

use std::collections::BTreeMap;

use num_complex::Complex64;

/// Sparse vector with sorted, unique indices.
pub type SparseVec = BTreeMap<usize, Complex64>;

/// Square column-sparse matrix. Each column is kept sorted by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `value` at `(row, col)`. Exact zeros are not stored.
    pub fn add(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(
            row < self.dim && col < self.dim,
            "entry ({row},{col}) out of range {}",
            self.dim
        );
        if value == Complex64::new(0.0, 0.0) {
            return;
        }
        let column = &mut self.cols[col];
        match column.binary_search_by_key(&row, |&(r, _)| r) {
            Ok(pos) => column[pos].1 += value,
            Err(pos) => column.insert(pos, (row, value)),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let column = &self.cols[col];
        match column.binary_search_by_key(&row, |&(r, _)| r) {
            Ok(pos) => column[pos].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn column(&self, col: usize) -> &[(usize, Complex64)] {
        &self.cols[col]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn max_column_nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Column-major `(row, col, value)` triplets.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut m = Self::zeros(dim);
        for (r, c, v) in triplets {
            m.add(r, c, v);
        }
        m
    }

    pub fn column_vec(&self, col: usize) -> SparseVec {
        self.cols[col].iter().copied().collect()
    }

    /// `self · v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&c, &x) in v {
            for &(r, a) in &self.cols[c] {
                *out.entry(r).or_insert(Complex64::new(0.0, 0.0)) += a * x;
            }
        }
        out
    }

    pub fn adjoint(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn map_entries(
        &self,
        mut f: impl FnMut(usize, usize, Complex64) -> Complex64,
    ) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.dim,
            self.triplets().map(|(r, c, v)| (r, c, f(r, c, v))),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.triplets()
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference, counting entries missing on either side.
    pub fn max_abs_diff(&self, other: &SparseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut worst: f64 = 0.0;
        for (r, c, v) in self.triplets() {
            worst = worst.max((v - other.get(r, c)).norm());
        }
        for (r, c, v) in other.triplets() {
            worst = worst.max((v - self.get(r, c)).norm());
        }
        worst
    }
}

/// `Σ coeffᵢ · vᵢ`.
pub fn combine(terms: &[(Complex64, &SparseVec)]) -> SparseVec {
    let mut out = SparseVec::new();
    for (coeff, v) in terms {
        for (&i, &x) in v.iter() {
            *out.entry(i).or_insert(Complex64::new(0.0, 0.0)) += coeff * x;
        }
    }
    out
}

/// Largest magnitude entry and its index.
pub fn max_entry(v: &SparseVec) -> (f64, Option<usize>) {
    v.iter().fold((0.0, None), |(best, at), (&i, x)| {
        let n = x.norm();
        if n > best {
            (n, Some(i))
        } else {
            (best, at)
        }
    })
}
