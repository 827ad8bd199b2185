//! Collocated differentiation matrices on uniform grids.
//!
//! Rows hold the banded stencil of a [`crate::weights::WeightTable`], closed
//! at the ends either periodically or by mirror extension through fictitious
//! nodes. Matrices act on 1-D vectors or lane-by-lane along one axis of an
//! n-D field.

use crate::boundary::{boundary_coeffs, BoundaryKind};
use crate::error::{DscError, Result};
use crate::weights::WeightTable;
use ndarray::{Array1, Array2, ArrayD, ArrayView1, Axis};

/// One matrix row: `coeffs[c]` multiplies unknown `start + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandRow {
    pub start: usize,
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix {
    pub n: usize,
    pub order: usize,
    rows: Vec<BandRow>,
}

impl DiffMatrix {
    fn from_dense_rows(n: usize, order: usize, dense_rows: Vec<Vec<f64>>) -> Self {
        let rows = dense_rows
            .into_iter()
            .map(|row| {
                let first = row.iter().position(|v| *v != 0.0).unwrap_or(0);
                let last = row.iter().rposition(|v| *v != 0.0).unwrap_or(first);
                BandRow { start: first, coeffs: row[first..=last].to_vec() }
            })
            .collect();
        DiffMatrix { n, order, rows }
    }

    pub fn rows(&self) -> &[BandRow] {
        &self.rows
    }

    pub fn to_dense(&self) -> Array2<f64> {
        let mut out = Array2::zeros((self.n, self.n));
        for (k, row) in self.rows.iter().enumerate() {
            for (c, w) in row.coeffs.iter().enumerate() {
                out[[k, row.start + c]] = *w;
            }
        }
        out
    }

    pub fn apply(&self, f: &ArrayView1<f64>) -> Result<Array1<f64>> {
        if f.len() != self.n {
            return Err(DscError::ShapeMismatch(format!(
                "vector length {} does not match matrix size {}",
                f.len(),
                self.n
            )));
        }
        let mut out = Array1::zeros(self.n);
        for (k, row) in self.rows.iter().enumerate() {
            let mut acc = 0.0;
            for (c, w) in row.coeffs.iter().enumerate() {
                acc += w * f[row.start + c];
            }
            out[k] = acc;
        }
        Ok(out)
    }

    /// Apply the matrix to every 1-D lane of `field` along `axis`.
    pub fn apply_axis(&self, field: &ArrayD<f64>, axis: usize) -> Result<ArrayD<f64>> {
        if axis >= field.ndim() {
            return Err(DscError::InvalidArgument(format!(
                "axis {axis} out of range for {}-d field",
                field.ndim()
            )));
        }
        if field.shape()[axis] != self.n {
            return Err(DscError::ShapeMismatch(format!(
                "field extent {} along axis {axis} does not match matrix size {}",
                field.shape()[axis],
                self.n
            )));
        }
        let mut out = field.clone();
        let mut buf = Array1::zeros(self.n);
        for (lane_in, mut lane_out) in field
            .lanes(Axis(axis))
            .into_iter()
            .zip(out.lanes_mut(Axis(axis)))
        {
            buf.assign(&lane_in);
            let d = self.apply(&buf.view())?;
            lane_out.assign(&d);
        }
        Ok(out)
    }

    /// Gershgorin bound on the spectral radius.
    pub fn gershgorin_radius(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.coeffs.iter().map(|w| w.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Assemble the n x n differentiation matrix for a grid of `n` nodes with
/// the given end closure applied at both ends.
///
/// Mirror closures fold each out-of-range stencil leg once, which requires
/// the half bandwidth to stay below the node count.
pub fn build_diff_matrix(table: &WeightTable, n: usize, kind: &BoundaryKind) -> Result<DiffMatrix> {
    let m = table.half_bandwidth() as i64;
    if n < 2 {
        return Err(DscError::Geometry(format!("matrix needs at least 2 nodes, got {n}")));
    }
    let mut dense_rows = vec![vec![0.0; n]; n];

    match kind {
        BoundaryKind::Periodic => {
            for (k, row) in dense_rows.iter_mut().enumerate() {
                for j in -m..=m {
                    let col = (k as i64 + j).rem_euclid(n as i64) as usize;
                    row[col] += table.get(j);
                }
            }
        }
        _ => {
            if m as usize > n - 1 {
                return Err(DscError::Geometry(format!(
                    "half bandwidth {m} exceeds n - 1 = {}; the mirror closure would fold outside the grid",
                    n - 1
                )));
            }
            let a = boundary_coeffs(kind, &table.params)?;
            for (k, row) in dense_rows.iter_mut().enumerate() {
                for j in -m..=m {
                    let w = table.get(j);
                    let t = k as i64 + j;
                    if t < 0 {
                        let i = (-t) as usize;
                        row[i] += w * a[i - 1];
                        row[0] += w * (1.0 - a[i - 1]);
                    } else if t as usize > n - 1 {
                        let i = t as usize - (n - 1);
                        row[n - 1 - i] += w * a[i - 1];
                        row[n - 1] += w * (1.0 - a[i - 1]);
                    } else {
                        row[t as usize] += w;
                    }
                }
            }
        }
    }
    Ok(DiffMatrix::from_dense_rows(n, table.order, dense_rows))
}

/// Fold an arbitrary stencil index onto a grid of `n_interior` unknowns
/// flanked by homogeneous Dirichlet values at virtual nodes 0 and
/// n_interior + 1, using odd reflection about both zeros.
///
/// Returns the interior column (0-based) and the reflection sign, or `None`
/// when the index lands on a zero-valued virtual node.
pub fn fold_odd(t: i64, n_interior: usize) -> Option<(usize, f64)> {
    let period_half = n_interior as i64 + 1;
    let r = t.rem_euclid(2 * period_half);
    let (idx, sign) = if r <= period_half { (r, 1.0) } else { (2 * period_half - r, -1.0) };
    if idx == 0 || idx == period_half {
        None
    } else {
        Some(((idx - 1) as usize, sign))
    }
}

/// Differentiation matrix restricted to the interior unknowns of a line
/// whose two end values vanish (homogeneous Dirichlet). Works for any half
/// bandwidth thanks to the recursive odd reflection.
pub fn build_dirichlet_interior_matrix(table: &WeightTable, n_interior: usize) -> Result<DiffMatrix> {
    if n_interior < 1 {
        return Err(DscError::Geometry("need at least one interior node".into()));
    }
    let m = table.half_bandwidth() as i64;
    let mut dense_rows = vec![vec![0.0; n_interior]; n_interior];
    for (k, row) in dense_rows.iter_mut().enumerate() {
        let node = k as i64 + 1;
        for j in -m..=m {
            if let Some((col, sign)) = fold_odd(node + j, n_interior) {
                row[col] += sign * table.get(j);
            }
        }
    }
    Ok(DiffMatrix::from_dense_rows(n_interior, table.order, dense_rows))
}
