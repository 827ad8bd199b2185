//! Fictitious-node boundary closures.
//!
//! Near a boundary node x_0 the stencil reaches outside the grid. Each
//! closure extends the field there as a combination of mirror values,
//! `f(x_{-i}) = a_i f(x_i) + (1 - a_i) f(x_0)`, with the coefficients a_i
//! determined by the physical edge condition.

use crate::error::{DscError, Result};
use crate::kernel::KernelParams;
use crate::weights::build_weights;

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryKind {
    /// Wrap-around closure; handled structurally, not via mirror weights.
    Periodic,
    /// f = 0 and f' = 0 at the edge: even reflection, a_i = 1.
    Clamped,
    /// f = 0 and f'' = 0 at the edge: odd reflection, a_i = -1.
    SimplySupported,
    /// f = 0 and k1 f' + f'' = 0 at the edge.
    TransverselySupported { k1: f64 },
    /// f = 0 plus sum_l coeffs[l-1] f^(l) = 0 at the edge (l = 1..=4).
    General { coeffs: Vec<f64> },
}

/// Mirror coefficients a_1..a_M for the given closure.
///
/// Periodic closures have no mirror form and return an error; handle them
/// when assembling the differentiation matrix instead.
pub fn boundary_coeffs(kind: &BoundaryKind, params: &KernelParams) -> Result<Vec<f64>> {
    let m = params.half_bandwidth;
    match kind {
        BoundaryKind::Periodic => Err(DscError::UnsupportedBoundary(
            "periodic closures have no mirror coefficients".into(),
        )),
        BoundaryKind::Clamped => Ok(vec![1.0; m]),
        BoundaryKind::SimplySupported => Ok(vec![-1.0; m]),
        BoundaryKind::TransverselySupported { k1 } => {
            general_coeffs(&[*k1, 1.0], params)
        }
        BoundaryKind::General { coeffs } => general_coeffs(coeffs, params),
    }
}

/// Solve the edge condition `sum_l K_l f^(l)(x_0) = 0` together with
/// `f(x_0) = 0` for the mirror coefficients.
///
/// Writing `C_i^l` for the weight of node i in the collocated l-th
/// derivative at the edge, the even-order weights satisfy C_{-i} = C_i and
/// the odd-order ones C_{-i} = -C_i, so the condition splits into an even
/// part E_i and an odd part O_i per mirror pair, giving
/// a_i = (E_i + O_i) / (O_i - E_i).
fn general_coeffs(k: &[f64], params: &KernelParams) -> Result<Vec<f64>> {
    if k.is_empty() || k.len() > 4 {
        return Err(DscError::UnsupportedBoundary(format!(
            "edge condition must involve derivative orders 1..=4, got {} coefficients",
            k.len()
        )));
    }
    if k.iter().all(|c| *c == 0.0) {
        return Err(DscError::DegenerateBoundary("all edge coefficients are zero".into()));
    }
    let m = params.half_bandwidth;
    let tables: Vec<_> = (1..=k.len())
        .map(|l| build_weights(params, l))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(m);
    for i in 1..=m as i64 {
        let mut even = 0.0;
        let mut odd = 0.0;
        let mut scale = 0.0f64;
        for (l, table) in tables.iter().enumerate() {
            let term = k[l] * table.get(i);
            scale = scale.max(term.abs());
            if (l + 1) % 2 == 0 {
                even += term;
            } else {
                odd += term;
            }
        }
        let den = odd - even;
        if den.abs() < 1e-14 * scale.max(1.0) {
            return Err(DscError::DegenerateBoundary(format!(
                "mirror pair {i}: edge condition cannot determine the extension (odd part {odd}, even part {even})"
            )));
        }
        out.push((even + odd) / den);
    }
    Ok(out)
}
