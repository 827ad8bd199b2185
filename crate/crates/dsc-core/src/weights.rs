//! Precomputed on-grid kernel derivative weights.
//!
//! Collocating the q-th kernel derivative on the grid gives the stencil
//! `f^(q)(x_k) ~ sum_j w_j f_{k+j}` with `w_j = delta_kernel^(q)(-j h)`,
//! j = -M..M. The table caches those 2M+1 values.

use crate::error::Result;
use crate::kernel::{eval_derivative, KernelParams};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub params: KernelParams,
    pub order: usize,
    weights: Vec<f64>,
}

impl WeightTable {
    pub fn half_bandwidth(&self) -> usize {
        self.params.half_bandwidth
    }

    /// Stencil weight for relative node index j; zero outside |j| <= M.
    pub fn get(&self, j: i64) -> f64 {
        let m = self.params.half_bandwidth as i64;
        if j.abs() > m {
            0.0
        } else {
            self.weights[(j + m) as usize]
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }
}

/// Tabulate the weights of the q-th derivative stencil for `params`.
pub fn build_weights(params: &KernelParams, q: usize) -> Result<WeightTable> {
    let m = params.half_bandwidth as i64;
    let mut weights = Vec::with_capacity((2 * m + 1) as usize);
    for j in -m..=m {
        weights.push(eval_derivative(params, q, -(j as f64) * params.delta)?);
    }
    Ok(WeightTable { params: *params, order: q, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::KernelFamily;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn interpolation_weights_are_kronecker() {
        let p = KernelParams::shannon(0.5, 3.2, 10).unwrap();
        let t = build_weights(&p, 0).unwrap();
        for j in -10i64..=10 {
            let expected = if j == 0 { 1.0 } else { 0.0 };
            assert_relative_eq!(t.get(j), expected, epsilon = 1e-12);
        }
        assert_eq!(t.get(11), 0.0);
        assert_eq!(t.get(-999), 0.0);
    }

    proptest! {
        /// Even kernels give weights with parity (-1)^q under j -> -j.
        #[test]
        fn weight_parity(
            family_idx in 0usize..5,
            r in 1.5f64..4.0,
            m in 2usize..12,
            q in 0usize..5,
            h in 0.1f64..2.0,
        ) {
            let family = [
                KernelFamily::RegularizedShannon,
                KernelFamily::RegularizedDirichlet,
                KernelFamily::RegularizedModifiedDirichlet,
                KernelFamily::RegularizedLagrange,
                KernelFamily::DeLaValleePoussin,
            ][family_idx];
            let p = KernelParams::new(family, h, r * h, m, m + 2).unwrap();
            let t = build_weights(&p, q).unwrap();
            let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
            let scale = t.as_slice().iter().fold(0.0f64, |a, b| a.max(b.abs()));
            for j in 0..=m as i64 {
                let diff = (t.get(-j) - sign * t.get(j)).abs();
                prop_assert!(diff <= 1e-12 * scale.max(1.0), "j={j}: {diff}");
            }
        }
    }

    #[test]
    fn first_derivative_weights_match_paper_closed_form() {
        // Unregularized Shannon on unit spacing: delta'(-j) = (-1)^j / j for j != 0.
        let p = KernelParams::shannon(1.0, f64::INFINITY, 8).unwrap();
        let t = build_weights(&p, 1).unwrap();
        assert_eq!(t.get(0), 0.0);
        for j in 1i64..=8 {
            let expected = if j % 2 == 0 { 1.0 } else { -1.0 } / j as f64;
            assert_relative_eq!(t.get(j), -expected, max_relative = 1e-12);
            assert_relative_eq!(t.get(-j), expected, max_relative = 1e-12);
        }
    }
}
