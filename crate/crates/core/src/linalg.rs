//! Exact dense linear algebra over the Gaussian rationals: row
//! reduction, rank, kernel bases and linear solves. Sizes stay tiny
//! (dimensions are groupoid arrow counts), so a plain Gaussian
//! elimination is all that is needed.

use crate::scalar::GaussianRational;

/// Dense row-major matrix over [`GaussianRational`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inv();
            for c in col..self.cols {
                let v = self.at(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c) - &(&factor * self.at(row, c));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<GaussianRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![GaussianRational::zero(); self.cols];
            x[free] = GaussianRational::one();
            for (&pc, r) in pivots.iter().zip(0..) {
                x[pc] = -m.at(r, free).clone();
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `Ax = b`, if the system is consistent.
    pub fn solve(&self, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for c in 0..self.cols {
                    if !x[c].is_zero() && !self.at(r, c).is_zero() {
                        acc += &(self.at(r, c) * &x[c]);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Incremental rank tracker: feed vectors, learn whether each enlarges
/// the span. Used to stop normalizer-span searches as soon as the span
/// is full.
pub struct SpanTracker {
    dim: usize,
    /// rows kept in echelon form, tagged with their leading column
    rows: Vec<(usize, Vec<GaussianRational>)>,
}

impl SpanTracker {
    pub fn new(dim: usize) -> Self {
        SpanTracker {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Returns true when the vector was independent of the current span.
    ///
    /// Stored rows are kept mutually reduced (zero at every other row's
    /// leading column), so one elimination pass suffices.
    pub fn insert(&mut self, mut v: Vec<GaussianRational>) -> bool {
        assert_eq!(v.len(), self.dim);
        for (lead, row) in &self.rows {
            if !v[*lead].is_zero() {
                let factor = v[*lead].clone();
                for (c, rv) in row.iter().enumerate() {
                    if !rv.is_zero() {
                        let delta = &factor * rv;
                        v[c] = &v[c] - &delta;
                    }
                }
            }
        }
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let factor = row[lead].clone();
                for (c, nv) in v.iter().enumerate() {
                    if !nv.is_zero() {
                        let delta = &factor * nv;
                        row[c] = &row[c] - &delta;
                    }
                }
            }
        }
        self.rows.push((lead, v));
        true
    }

    /// Whether `v` already lies in the tracked span.
    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        let mut v = v.to_vec();
        for (lead, row) in &self.rows {
            if !v[*lead].is_zero() {
                let factor = v[*lead].clone();
                for (c, rv) in row.iter().enumerate() {
                    if !rv.is_zero() {
                        let delta = &factor * rv;
                        v[c] = &v[c] - &delta;
                    }
                }
            }
        }
        v.iter().all(GaussianRational::is_zero)
    }
}
