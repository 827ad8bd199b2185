//! Electrostatic potential in a conducting unit box.
//!
//! Solves laplacian(V) = -rho / (eps0 eps_r) on [0,1m]^2 with prescribed
//! constant potentials on each wall and optional rectangular charge
//! patches. All interior unknowns are solved as one dense linear system;
//! wall values enter through the right-hand side.

use crate::boundary::BoundaryKind;
use crate::error::{DscError, Result};
use crate::grid::{Axis1, FieldSamples, Grid};
use crate::kernel::KernelParams;
use crate::matrix::build_diff_matrix;
use crate::weights::build_weights;
use ndarray::{Array1, Array2, ArrayD, IxDyn};
use ndarray_linalg::Solve;

/// Vacuum permittivity used by the box problem, (1/36 pi) * 1e-9 F/m.
pub const EPSILON_0: f64 = 1e-9 / (36.0 * std::f64::consts::PI);

/// Uniform surface charge on an axis-aligned rectangle strictly inside
/// the box. A node carries the source iff it lies in the closed rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargePatch {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    /// Charge density in C/m^2.
    pub density: f64,
    /// Relative permittivity of the patch material.
    pub epsilon_r: f64,
}

impl ChargePatch {
    fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_range.0 && x <= self.x_range.1 && y >= self.y_range.0 && y <= self.y_range.1
    }
}

/// Constant wall potentials in volts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EdgePotentials {
    pub bottom: f64,
    pub top: f64,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElectrostaticsProblem {
    /// Nodes per axis including both walls; spacing is 1/(nodes-1) m.
    pub nodes_per_axis: usize,
    pub kernel: KernelParams,
    pub edges: EdgePotentials,
    pub patches: Vec<ChargePatch>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldReport {
    /// Potential on the full node grid, walls included, in volts.
    pub field: FieldSamples,
}

impl FieldReport {
    /// Bilinear probe of the potential at (x, y) in meters.
    pub fn probe(&self, x: f64, y: f64) -> Result<f64> {
        let ax = &self.field.grid.axes[0];
        let n = ax.len;
        let h = ax.spacing;
        let locate = |c: f64| -> Result<(usize, f64)> {
            if c < -1e-12 || c > 1.0 + 1e-12 {
                return Err(DscError::OutsideDomain(format!("coordinate {c} outside [0, 1]")));
            }
            let s = (c / h).min((n - 2) as f64).max(0.0);
            let i = s.floor() as usize;
            Ok((i, s - i as f64))
        };
        let (i, fx) = locate(x)?;
        let (j, fy) = locate(y)?;
        let v = |a: usize, b: usize| self.field.values[IxDyn(&[a, b])];
        Ok(v(i, j) * (1.0 - fx) * (1.0 - fy)
            + v(i + 1, j) * fx * (1.0 - fy)
            + v(i, j + 1) * (1.0 - fx) * fy
            + v(i + 1, j + 1) * fx * fy)
    }
}

pub fn solve_electrostatics(problem: &ElectrostaticsProblem) -> Result<FieldReport> {
    let n = problem.nodes_per_axis;
    if n < 4 {
        return Err(DscError::Geometry(format!("need at least 4 nodes per axis, got {n}")));
    }
    let h = 1.0 / (n - 1) as f64;
    if (problem.kernel.delta - h).abs() > 1e-12 * h {
        return Err(DscError::InvalidArgument(format!(
            "kernel spacing {} does not match grid spacing {h}",
            problem.kernel.delta
        )));
    }
    for p in &problem.patches {
        let inside = p.x_range.0 > 0.0
            && p.x_range.1 < 1.0
            && p.y_range.0 > 0.0
            && p.y_range.1 < 1.0
            && p.x_range.0 < p.x_range.1
            && p.y_range.0 < p.y_range.1;
        if !inside {
            return Err(DscError::Geometry(format!("patch {p:?} must lie inside the open box")));
        }
        if !(p.epsilon_r > 0.0) {
            return Err(DscError::InvalidParams(format!(
                "relative permittivity must be > 0, got {}",
                p.epsilon_r
            )));
        }
    }

    let table = build_weights(&problem.kernel, 2)?;
    let d2 = build_diff_matrix(&table, n, &BoundaryKind::SimplySupported)?.to_dense();

    let ni = n - 2;
    let unknowns = ni * ni;
    let idx = |i: usize, j: usize| (i - 1) * ni + (j - 1);
    let mut a = Array2::zeros((unknowns, unknowns));
    let mut b = Array1::zeros(unknowns);

    // wall value at node (i, j) on the boundary; corners are never read
    let edge_value = |i: usize, j: usize| -> f64 {
        if j == 0 {
            problem.edges.bottom
        } else if j == n - 1 {
            problem.edges.top
        } else if i == 0 {
            problem.edges.left
        } else {
            problem.edges.right
        }
    };

    for i in 1..=ni {
        for j in 1..=ni {
            let row = idx(i, j);
            let (x, y) = (i as f64 * h, j as f64 * h);
            let mut rhs = 0.0;
            for p in &problem.patches {
                if p.contains(x, y) {
                    rhs -= p.density / (EPSILON_0 * p.epsilon_r);
                }
            }
            // d^2/dx^2 along the row y = const
            for l in 0..n {
                let w = d2[[i, l]];
                if w == 0.0 {
                    continue;
                }
                if l == 0 || l == n - 1 {
                    rhs -= w * edge_value(l, j);
                } else {
                    a[[row, idx(l, j)]] += w;
                }
            }
            // d^2/dy^2 along the column x = const
            for l in 0..n {
                let w = d2[[j, l]];
                if w == 0.0 {
                    continue;
                }
                if l == 0 || l == n - 1 {
                    rhs -= w * edge_value(i, l);
                } else {
                    a[[row, idx(i, l)]] += w;
                }
            }
            b[row] = rhs;
        }
    }

    let v = a
        .solve(&b)
        .map_err(|e| DscError::NumericFailure(format!("linear solve failed: {e}")))?;

    let axis = Axis1::from_span(0.0, 1.0, n)?;
    let grid = Grid::new(vec![axis, axis])?;
    let mut values = ArrayD::zeros(IxDyn(&[n, n]));
    for i in 0..n {
        for j in 0..n {
            values[IxDyn(&[i, j])] = if i == 0 || i == n - 1 || j == 0 || j == n - 1 {
                if (i == 0 || i == n - 1) && (j == 0 || j == n - 1) {
                    // corner: average the two meeting walls for display only
                    let jv = if j == 0 { problem.edges.bottom } else { problem.edges.top };
                    let iv = if i == 0 { problem.edges.left } else { problem.edges.right };
                    0.5 * (jv + iv)
                } else {
                    edge_value(i, j)
                }
            } else {
                v[idx(i, j)]
            };
        }
    }
    Ok(FieldReport { field: FieldSamples::new(grid, values)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn kernel(n: usize, r: f64, m: usize) -> KernelParams {
        KernelParams::shannon(1.0 / (n - 1) as f64, r, m).unwrap()
    }

    /// Fourier series for the box with V = 10 on the top wall, 0 elsewhere.
    fn series_top10(x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for k in 0..200 {
            let nn = (2 * k + 1) as f64;
            // sinh(n pi y) / sinh(n pi) evaluated without overflow
            let ratio = (nn * PI * (y - 1.0)).exp() * (1.0 - (-2.0 * nn * PI * y).exp())
                / (1.0 - (-2.0 * nn * PI).exp());
            acc += 40.0 / (nn * PI) * (nn * PI * x).sin() * ratio;
        }
        acc
    }

    #[test]
    fn laplace_box_matches_the_series_solution() {
        let n = 32;
        let problem = ElectrostaticsProblem {
            nodes_per_axis: n,
            kernel: kernel(n, 3.2, 16),
            edges: EdgePotentials { top: 10.0, ..Default::default() },
            patches: vec![],
        };
        let report = solve_electrostatics(&problem).unwrap();
        let center = report.probe(0.5, 0.5).unwrap();
        assert_relative_eq!(center, 2.5, epsilon = 1e-3);
        // compare directly on a node to keep probe error out of the check
        let (i, j) = (11usize, 20usize);
        let (x, y) = (11.0 / 31.0, 20.0 / 31.0);
        let at_node = report.field.values[ndarray::IxDyn(&[i, j])];
        assert_relative_eq!(at_node, series_top10(x, y), epsilon = 1e-3);
    }

    #[test]
    fn laplace_solution_inherits_the_left_right_symmetry() {
        let n = 16;
        let problem = ElectrostaticsProblem {
            nodes_per_axis: n,
            kernel: kernel(n, 2.8, 8),
            edges: EdgePotentials { top: 10.0, ..Default::default() },
            patches: vec![],
        };
        let report = solve_electrostatics(&problem).unwrap();
        for i in 0..n {
            for j in 1..n - 1 {
                let a = report.field.values[ndarray::IxDyn(&[i, j])];
                let b = report.field.values[ndarray::IxDyn(&[n - 1 - i, j])];
                assert_relative_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn bottom_wall_is_exactly_the_imposed_value() {
        let n = 12;
        let problem = ElectrostaticsProblem {
            nodes_per_axis: n,
            kernel: kernel(n, 2.5, 6),
            edges: EdgePotentials { top: 10.0, ..Default::default() },
            patches: vec![],
        };
        let report = solve_electrostatics(&problem).unwrap();
        for i in 1..n - 1 {
            assert_eq!(report.field.values[ndarray::IxDyn(&[i, 0])], 0.0);
        }
    }

    #[test]
    fn patch_must_stay_inside_the_box() {
        let n = 12;
        let problem = ElectrostaticsProblem {
            nodes_per_axis: n,
            kernel: kernel(n, 2.5, 6),
            edges: EdgePotentials::default(),
            patches: vec![ChargePatch {
                x_range: (0.5, 1.2),
                y_range: (0.2, 0.4),
                density: 1e-7,
                epsilon_r: 100.0,
            }],
        };
        assert!(matches!(solve_electrostatics(&problem), Err(DscError::Geometry(_))));
    }

    #[test]
    fn charge_patch_raises_the_local_potential() {
        let n = 24;
        let patch = ChargePatch {
            x_range: (0.4, 0.6),
            y_range: (0.4, 0.6),
            density: 1e-9,
            epsilon_r: 1.0,
        };
        let grounded = ElectrostaticsProblem {
            nodes_per_axis: n,
            kernel: kernel(n, 2.8, 10),
            edges: EdgePotentials::default(),
            patches: vec![patch],
        };
        let report = solve_electrostatics(&grounded).unwrap();
        let center = report.probe(0.5, 0.5).unwrap();
        assert!(center > 0.0);
        // decays toward the grounded walls
        assert!(report.probe(0.05, 0.5).unwrap() < center);
    }
}
