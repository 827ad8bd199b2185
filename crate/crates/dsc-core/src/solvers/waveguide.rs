//! TM eigenmodes of uniform hollow waveguides.
//!
//! With propagation along z separated out, the transverse field solves the
//! Helmholtz eigenproblem -laplacian(E) = k^2 E with E = 0 on the
//! perfectly conducting wall. The cross-section is the square [0, 10 pi]^2
//! or a masked (T- or E-shaped) subset of it; the analytic square spectrum
//! is k^2 = (m^2 + n^2) / 100.

use crate::error::{DscError, Result};
use crate::kernel::KernelParams;
use crate::matrix::fold_odd;
use crate::weights::{build_weights, WeightTable};
use ndarray::{Array2, Axis};
use ndarray_linalg::Eig;
use std::collections::VecDeque;
use std::f64::consts::PI;

pub const SQUARE_SIDE: f64 = 10.0 * PI;

#[derive(Debug, Clone, PartialEq)]
pub enum GuideGeometry {
    /// Full square cross-section split into `intervals` per axis; the
    /// unknowns are the (intervals - 1)^2 interior nodes.
    Square { intervals: usize },
    /// Arbitrary cross-section: `mask` marks interior collocation nodes on
    /// a uniform lattice of the given spacing; everything outside is wall.
    Masked { mask: Array2<bool>, spacing: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveguideProblem {
    pub geometry: GuideGeometry,
    pub kernel: KernelParams,
    pub n_modes: usize,
    /// Optional (omega, eps*nu) pair; when present the report carries the
    /// squared propagation constant alpha^2 = omega^2 eps nu - k^2.
    pub dispersion: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    /// Ascending eigenvalues k^2.
    pub eigenvalues: Vec<f64>,
    /// Analytic values and absolute errors (square cross-section only).
    pub analytic: Option<Vec<f64>>,
    pub abs_errors: Option<Vec<f64>>,
    /// Largest |Im(lambda)| / max(|lambda|, 1) over the returned modes.
    pub max_imag_residue: f64,
    /// alpha^2 per mode when dispersion data was supplied.
    pub alpha_squared: Option<Vec<f64>>,
}

/// First `count` analytic square-guide eigenvalues (m^2 + n^2)/100, m,n >= 1.
pub fn square_spectrum(count: usize) -> Vec<f64> {
    let mut vals = Vec::new();
    // enough index range to cover `count` sorted sums of two squares
    let top = (2.0 * (count as f64).sqrt()).ceil() as i64 + 2;
    for m in 1..=top {
        for n in 1..=top {
            vals.push((m * m + n * n) as f64 / 100.0);
        }
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.truncate(count);
    vals
}

/// Interior mask for a T-shaped cross-section on a 50x50 lattice:
/// the full top band (upper 40 % of rows) plus a centered vertical stem
/// spanning the middle 34 % of columns.
pub fn t_shape_mask() -> Array2<bool> {
    let n = 50;
    Array2::from_shape_fn((n, n), |(ix, iy)| {
        let top_band = iy >= 30;
        let stem = (17..34).contains(&ix);
        top_band || stem
    })
}

/// Interior mask for an E-shaped cross-section on a 50x50 lattice:
/// a left vertical spine (left 20 % of columns) plus three full-width arms
/// of 20 % height at the bottom, middle, and top.
pub fn e_shape_mask() -> Array2<bool> {
    let n = 50;
    Array2::from_shape_fn((n, n), |(ix, iy)| {
        let spine = ix < 10;
        let arm = iy < 10 || (20..30).contains(&iy) || iy >= 40;
        spine || arm
    })
}

/// Spacing that embeds a 50x50 interior lattice in the square with one
/// wall interval on each side.
pub fn default_mask_spacing() -> f64 {
    SQUARE_SIDE / 51.0
}

/// Accumulate the 1-D second-derivative stencil along `axis` of the masked
/// lattice into `a`, folding stencil legs past each active run's ends by
/// odd reflection (the wall closure).
fn accumulate_axis(
    a: &mut Array2<f64>,
    mask: &Array2<bool>,
    index: &Array2<usize>,
    table: &WeightTable,
    axis: usize,
) {
    let m = table.half_bandwidth() as i64;
    let n_lines = mask.len_of(Axis(1 - axis));
    let n_along = mask.len_of(Axis(axis));
    let at = |along: usize, line: usize| -> (usize, usize) {
        if axis == 0 {
            (along, line)
        } else {
            (line, along)
        }
    };
    for line in 0..n_lines {
        let mut i = 0;
        while i < n_along {
            if !mask[at(i, line)] {
                i += 1;
                continue;
            }
            let start = i;
            while i < n_along && mask[at(i, line)] {
                i += 1;
            }
            let len = i - start;
            for pos in 0..len {
                let row = index[at(start + pos, line)];
                for s in -m..=m {
                    if let Some((col_in_run, sign)) = fold_odd(pos as i64 + 1 + s, len) {
                        let col = index[at(start + col_in_run, line)];
                        a[[row, col]] += sign * table.get(s);
                    }
                }
            }
        }
    }
}

fn check_connected(mask: &Array2<bool>, actives: usize) -> Result<()> {
    if actives == 0 {
        return Err(DscError::Geometry("mask has no interior nodes".into()));
    }
    let (nx, ny) = mask.dim();
    let start = mask
        .indexed_iter()
        .find(|(_, &b)| b)
        .map(|((i, j), _)| (i, j))
        .unwrap();
    let mut seen = Array2::from_elem((nx, ny), false);
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut count = 0usize;
    while let Some((i, j)) = queue.pop_front() {
        count += 1;
        let mut push = |p: (usize, usize)| {
            if mask[p] && !seen[p] {
                seen[p] = true;
                queue.push_back(p);
            }
        };
        if i > 0 {
            push((i - 1, j));
        }
        if i + 1 < nx {
            push((i + 1, j));
        }
        if j > 0 {
            push((i, j - 1));
        }
        if j + 1 < ny {
            push((i, j + 1));
        }
    }
    if count != actives {
        return Err(DscError::Geometry(format!(
            "interior is disconnected: reached {count} of {actives} nodes"
        )));
    }
    Ok(())
}

/// Assemble -laplacian over the active nodes and diagonalize it.
pub fn solve_waveguide(problem: &WaveguideProblem) -> Result<EigenReport> {
    let (mask, spacing, is_square) = match &problem.geometry {
        GuideGeometry::Square { intervals } => {
            if *intervals < 2 {
                return Err(DscError::Geometry(format!(
                    "square guide needs at least 2 intervals, got {intervals}"
                )));
            }
            let interior = intervals - 1;
            (
                Array2::from_elem((interior, interior), true),
                SQUARE_SIDE / *intervals as f64,
                true,
            )
        }
        GuideGeometry::Masked { mask, spacing } => {
            if !(*spacing > 0.0) {
                return Err(DscError::Geometry(format!("spacing must be > 0, got {spacing}")));
            }
            (mask.clone(), *spacing, false)
        }
    };
    if (problem.kernel.delta - spacing).abs() > 1e-12 * spacing {
        return Err(DscError::InvalidArgument(format!(
            "kernel spacing {} does not match grid spacing {spacing}",
            problem.kernel.delta
        )));
    }

    let actives = mask.iter().filter(|&&b| b).count();
    check_connected(&mask, actives)?;
    if problem.n_modes == 0 || problem.n_modes > actives {
        return Err(DscError::InvalidArgument(format!(
            "n_modes = {} must lie in 1..={actives}",
            problem.n_modes
        )));
    }

    let mut index = Array2::zeros(mask.dim());
    let mut next = 0usize;
    for (p, &b) in mask.indexed_iter() {
        if b {
            index[p] = next;
            next += 1;
        }
    }

    let table = build_weights(&problem.kernel, 2)?;
    let mut a = Array2::zeros((actives, actives));
    accumulate_axis(&mut a, &mask, &index, &table, 0);
    accumulate_axis(&mut a, &mask, &index, &table, 1);
    a.mapv_inplace(|v| -v);

    let (eigs, _vecs) = a
        .eig()
        .map_err(|e| DscError::NumericFailure(format!("eigendecomposition failed: {e}")))?;

    let mut pairs: Vec<(f64, f64)> = eigs.iter().map(|z| (z.re, z.im)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    pairs.truncate(problem.n_modes);

    let mut max_imag_residue = 0.0f64;
    for (re, im) in &pairs {
        let scale = re.abs().max(1.0);
        max_imag_residue = max_imag_residue.max(im.abs() / scale);
    }

    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let (analytic, abs_errors) = if is_square {
        let exact = square_spectrum(problem.n_modes);
        let errs = eigenvalues
            .iter()
            .zip(&exact)
            .map(|(c, e)| (c - e).abs())
            .collect();
        (Some(exact), Some(errs))
    } else {
        (None, None)
    };
    let alpha_squared = problem
        .dispersion
        .map(|(omega, eps_nu)| eigenvalues.iter().map(|k2| omega * omega * eps_nu - k2).collect());

    Ok(EigenReport { eigenvalues, analytic, abs_errors, max_imag_residue, alpha_squared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn analytic_spectrum_starts_correctly() {
        let s = square_spectrum(6);
        assert_eq!(s, vec![0.02, 0.05, 0.05, 0.08, 0.10, 0.10]);
    }

    #[test]
    fn small_square_guide_matches_the_oracle() {
        let n = 12;
        let p = KernelParams::shannon(SQUARE_SIDE / n as f64, 2.65, n).unwrap();
        let problem = WaveguideProblem {
            geometry: GuideGeometry::Square { intervals: n },
            kernel: p,
            n_modes: 5,
            dispersion: None,
        };
        let report = solve_waveguide(&problem).unwrap();
        assert!(report.max_imag_residue < 1e-8);
        let exact = square_spectrum(5);
        for (c, e) in report.eigenvalues.iter().zip(&exact) {
            assert_relative_eq!(c, e, max_relative = 1e-4);
            assert!(*c > 0.0);
        }
    }

    #[test]
    fn dispersion_metadata_uses_the_relation() {
        let n = 8;
        let p = KernelParams::shannon(SQUARE_SIDE / n as f64, 2.5, n).unwrap();
        let problem = WaveguideProblem {
            geometry: GuideGeometry::Square { intervals: n },
            kernel: p,
            n_modes: 3,
            dispersion: Some((2.0, 1.0)),
        };
        let report = solve_waveguide(&problem).unwrap();
        let alpha2 = report.alpha_squared.unwrap();
        for (a2, k2) in alpha2.iter().zip(&report.eigenvalues) {
            assert_relative_eq!(*a2, 4.0 - k2, epsilon = 1e-12);
        }
    }

    #[test]
    fn disconnected_masks_are_rejected() {
        let mut mask = Array2::from_elem((6, 6), false);
        mask[[0, 0]] = true;
        mask[[5, 5]] = true;
        let p = KernelParams::shannon(0.1, 2.5, 4).unwrap();
        let problem = WaveguideProblem {
            geometry: GuideGeometry::Masked { mask, spacing: 0.1 },
            kernel: p,
            n_modes: 1,
            dispersion: None,
        };
        assert!(matches!(solve_waveguide(&problem), Err(DscError::Geometry(_))));
    }

    #[test]
    fn default_masks_are_connected_and_shaped() {
        for mask in [t_shape_mask(), e_shape_mask()] {
            let actives = mask.iter().filter(|&&b| b).count();
            assert!(actives > 0);
            check_connected(&mask, actives).unwrap();
        }
        // T: wide at the top, narrow at the bottom
        let t = t_shape_mask();
        let top_row: usize = (0..50).filter(|&ix| t[[ix, 45]]).count();
        let bottom_row: usize = (0..50).filter(|&ix| t[[ix, 5]]).count();
        assert!(top_row > bottom_row);
    }

    #[test]
    fn masked_strip_reproduces_rectangle_modes() {
        // A full-width strip of height h inside the lattice is a plain
        // rectangular guide; compare with separation of variables.
        let h = 0.2;
        let (nx, ny) = (30usize, 11usize);
        let mask = Array2::from_elem((nx, ny), true);
        let p = KernelParams::shannon(h, 2.65, 10).unwrap();
        let problem = WaveguideProblem {
            geometry: GuideGeometry::Masked { mask, spacing: h },
            kernel: p,
            n_modes: 3,
            dispersion: None,
        };
        let report = solve_waveguide(&problem).unwrap();
        let lx = (nx + 1) as f64 * h;
        let ly = (ny + 1) as f64 * h;
        let mut exact = Vec::new();
        for m in 1..=6 {
            for n in 1..=6 {
                exact.push((m as f64 * PI / lx).powi(2) + (n as f64 * PI / ly).powi(2));
            }
        }
        exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (c, e) in report.eigenvalues.iter().zip(&exact) {
            assert_relative_eq!(c, e, max_relative = 5e-3);
        }
    }
}
