//! Uniform tensor-product grids in one to three dimensions, with an
//! optional node mask for non-rectangular domains.

use crate::error::{DscError, Result};
use ndarray::{ArrayD, Dimension, IxDyn};

/// One uniform axis: nodes origin + i * spacing, i = 0..len-1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis1 {
    pub origin: f64,
    pub spacing: f64,
    pub len: usize,
}

impl Axis1 {
    pub fn new(origin: f64, spacing: f64, len: usize) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(DscError::Geometry(format!("axis spacing must be > 0, got {spacing}")));
        }
        if len < 2 {
            return Err(DscError::Geometry(format!("axis needs at least 2 nodes, got {len}")));
        }
        Ok(Axis1 { origin, spacing, len })
    }

    /// Axis covering [lo, hi] with `len` nodes including both ends.
    pub fn from_span(lo: f64, hi: f64, len: usize) -> Result<Self> {
        if !(hi > lo) {
            return Err(DscError::Geometry(format!("axis span must be increasing: [{lo}, {hi}]")));
        }
        if len < 2 {
            return Err(DscError::Geometry(format!("axis needs at least 2 nodes, got {len}")));
        }
        Axis1::new(lo, (hi - lo) / (len - 1) as f64, len)
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    pub fn last(&self) -> f64 {
        self.coord(self.len - 1)
    }
}

/// Tensor-product grid with an optional boolean mask marking active nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub axes: Vec<Axis1>,
    pub mask: Option<ArrayD<bool>>,
}

impl Grid {
    pub fn new(axes: Vec<Axis1>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(DscError::Geometry(format!(
                "grid must have 1 to 3 axes, got {}",
                axes.len()
            )));
        }
        Ok(Grid { axes, mask: None })
    }

    pub fn with_mask(mut self, mask: ArrayD<bool>) -> Result<Self> {
        if mask.shape() != self.shape().as_slice() {
            return Err(DscError::ShapeMismatch(format!(
                "mask shape {:?} does not match grid shape {:?}",
                mask.shape(),
                self.shape()
            )));
        }
        self.mask = Some(mask);
        Ok(self)
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len).collect()
    }

    pub fn node_count(&self) -> usize {
        self.axes.iter().map(|a| a.len).product()
    }

    /// Number of active nodes (all nodes when there is no mask).
    pub fn active_count(&self) -> usize {
        match &self.mask {
            Some(m) => m.iter().filter(|&&b| b).count(),
            None => self.node_count(),
        }
    }

    pub fn is_active(&self, idx: &[usize]) -> bool {
        match &self.mask {
            Some(m) => m[IxDyn(idx)],
            None => true,
        }
    }

    /// Physical coordinates of the node at multi-index `idx`.
    pub fn coords(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter().zip(&self.axes).map(|(&i, a)| a.coord(i)).collect()
    }
}

/// A scalar field sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSamples {
    pub grid: Grid,
    pub values: ArrayD<f64>,
}

impl FieldSamples {
    pub fn new(grid: Grid, values: ArrayD<f64>) -> Result<Self> {
        if values.shape() != grid.shape().as_slice() {
            return Err(DscError::ShapeMismatch(format!(
                "values shape {:?} does not match grid shape {:?}",
                values.shape(),
                grid.shape()
            )));
        }
        Ok(FieldSamples { grid, values })
    }

    /// Sample a closure at every grid node.
    pub fn from_fn<F: Fn(&[f64]) -> f64>(grid: Grid, f: F) -> Self {
        let shape = grid.shape();
        let values = ArrayD::from_shape_fn(IxDyn(&shape), |idx| {
            let idx: Vec<usize> = idx.slice().to_vec();
            f(&grid.coords(&idx))
        });
        FieldSamples { grid, values }
    }
}
