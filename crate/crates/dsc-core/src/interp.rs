//! Off-grid evaluation of sampled fields through the kernel's
//! interpolating form.

use crate::boundary::{boundary_coeffs, BoundaryKind};
use crate::error::{DscError, Result};
use crate::grid::Axis1;
use crate::kernel::{eval_kernel, normalization, KernelFamily, KernelParams};

/// Interpolate 1-D samples at an arbitrary abscissa `x` using the 2M+1
/// nodes nearest to it, extending past the ends with the given closure.
///
/// Points outside the closed node hull are rejected; extrapolation through
/// the closure is intentionally not offered.
pub fn interpolate(
    params: &KernelParams,
    axis: &Axis1,
    samples: &[f64],
    kind: &BoundaryKind,
    x: f64,
) -> Result<f64> {
    let n = axis.len;
    if samples.len() != n {
        return Err(DscError::ShapeMismatch(format!(
            "{} samples for an axis of {} nodes",
            samples.len(),
            n
        )));
    }
    let tol = 1e-12 * axis.spacing;
    if x < axis.origin - tol || x > axis.last() + tol {
        return Err(DscError::OutsideDomain(format!(
            "x = {x} outside [{}, {}]",
            axis.origin,
            axis.last()
        )));
    }
    let m = params.half_bandwidth as i64;
    let mirror = match kind {
        BoundaryKind::Periodic => None,
        _ => {
            if m as usize > n - 1 {
                return Err(DscError::Geometry(format!(
                    "half bandwidth {m} exceeds n - 1 = {}",
                    n - 1
                )));
            }
            Some(boundary_coeffs(kind, params)?)
        }
    };
    let norm = if params.family == KernelFamily::RegularizedShannon {
        normalization(params)?
    } else {
        1.0
    };

    let k0 = ((x - axis.origin) / axis.spacing).round() as i64;
    let mut acc = 0.0;
    for j in -m..=m {
        let t = k0 + j;
        let value = extended_sample(samples, t, mirror.as_deref());
        acc += eval_kernel(params, x - axis.coord_i64(t))? * value;
    }
    Ok(acc / norm)
}

fn extended_sample(samples: &[f64], t: i64, mirror: Option<&[f64]>) -> f64 {
    let n = samples.len() as i64;
    match mirror {
        None => samples[t.rem_euclid(n) as usize],
        Some(a) => {
            if t < 0 {
                let i = (-t) as usize;
                a[i - 1] * samples[i] + (1.0 - a[i - 1]) * samples[0]
            } else if t >= n {
                let i = (t - (n - 1)) as usize;
                a[i - 1] * samples[(n - 1) as usize - i] + (1.0 - a[i - 1]) * samples[(n - 1) as usize]
            } else {
                samples[t as usize]
            }
        }
    }
}

impl Axis1 {
    fn coord_i64(&self, i: i64) -> f64 {
        self.origin + i as f64 * self.spacing
    }
}
