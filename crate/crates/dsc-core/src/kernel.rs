//! Regularized interpolating delta kernels and their analytic derivatives.
//!
//! Each kernel is an interpolating low-pass filter on a uniform grid of
//! spacing `delta`, optionally damped by a Gaussian envelope of width
//! `sigma`. Derivatives up to fourth order are evaluated in closed form;
//! removable singularities (the kernel center and, for the Dirichlet
//! families, the periodic images of the center) are handled by their limits.

use crate::error::{DscError, Result};
use crate::jet::{
    even_series_div, even_series_mul, jet_cos, jet_gauss, jet_one_minus_u2_over, jet_sin, Jet,
};

/// Relative half-width (in units of `delta`) below which an offset is
/// treated as sitting exactly on a removable singularity.
const SINGULAR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    /// sinc(pi u / delta) times the Gaussian envelope.
    RegularizedShannon,
    /// Periodic Dirichlet kernel of order L, Gaussian-damped.
    RegularizedDirichlet,
    /// Dirichlet kernel with the tangent denominator, Gaussian-damped.
    RegularizedModifiedDirichlet,
    /// Central Lagrange interpolation polynomial over 2L+1 nodes, damped.
    RegularizedLagrange,
    /// De la Vallee Poussin difference-of-cosines kernel, damped.
    DeLaValleePoussin,
}

impl KernelFamily {
    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::RegularizedShannon => "regularized-shannon",
            KernelFamily::RegularizedDirichlet => "regularized-dirichlet",
            KernelFamily::RegularizedModifiedDirichlet => "regularized-modified-dirichlet",
            KernelFamily::RegularizedLagrange => "regularized-lagrange",
            KernelFamily::DeLaValleePoussin => "de-la-vallee-poussin",
        }
    }

    fn uses_order(&self) -> bool {
        matches!(
            self,
            KernelFamily::RegularizedDirichlet
                | KernelFamily::RegularizedModifiedDirichlet
                | KernelFamily::RegularizedLagrange
        )
    }
}

/// One DSC delta kernel: family plus (delta, sigma, M, L).
///
/// `sigma = f64::INFINITY` means the Gaussian envelope is dropped exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub family: KernelFamily,
    pub delta: f64,
    pub sigma: f64,
    pub half_bandwidth: usize,
    pub order: usize,
}

impl KernelParams {
    pub fn new(
        family: KernelFamily,
        delta: f64,
        sigma: f64,
        half_bandwidth: usize,
        order: usize,
    ) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(DscError::InvalidParams(format!("delta must be > 0, got {delta}")));
        }
        if !(sigma > 0.0) {
            return Err(DscError::InvalidParams(format!("sigma must be > 0 or infinite, got {sigma}")));
        }
        if half_bandwidth < 1 {
            return Err(DscError::InvalidParams("half_bandwidth must be >= 1".into()));
        }
        if family.uses_order() && order < half_bandwidth {
            return Err(DscError::InvalidParams(format!(
                "order L = {order} must satisfy L >= M = {half_bandwidth} for {}",
                family.name()
            )));
        }
        Ok(KernelParams { family, delta, sigma, half_bandwidth, order })
    }

    /// Shorthand for a regularized Shannon kernel with `sigma = r * delta`.
    pub fn shannon(delta: f64, sigma_over_delta: f64, half_bandwidth: usize) -> Result<Self> {
        KernelParams::new(
            KernelFamily::RegularizedShannon,
            delta,
            sigma_over_delta * delta,
            half_bandwidth,
            half_bandwidth,
        )
    }

    pub fn regularized(&self) -> bool {
        self.sigma.is_finite()
    }

    /// r = sigma / delta, infinite when regularization is off.
    pub fn sigma_over_delta(&self) -> f64 {
        self.sigma / self.delta
    }
}

/// Parameter advice from the truncation-error bound: minimal `sigma/delta`
/// ratio and half bandwidth for `eta` accuracy digits at bandlimit `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterAdvice {
    pub eta: f64,
    pub bandlimit: f64,
    pub r_min: f64,
    pub m_min: usize,
}

/// Evaluate the kernel itself (order-0 derivative) at `offset = x - x_k`.
pub fn eval_kernel(params: &KernelParams, offset: f64) -> Result<f64> {
    eval_derivative(params, 0, offset)
}

/// Evaluate the q-th kernel derivative at `offset = x - x_k`, q in 0..=4.
pub fn eval_derivative(params: &KernelParams, q: usize, offset: f64) -> Result<f64> {
    if q > 4 {
        return Err(DscError::UnsupportedOrder(q));
    }
    match params.family {
        KernelFamily::RegularizedShannon => Ok(shannon_derivative(params, q, offset)),
        _ => {
            let bare = bare_jet(params, offset);
            let full = if params.regularized() {
                bare.mul(&jet_gauss(params.sigma, offset))
            } else {
                bare
            };
            Ok(full.derivative(q))
        }
    }
}

/// Integral of the regularized Shannon kernel: erf(pi sigma / (sqrt(2) delta)).
pub fn normalization(params: &KernelParams) -> Result<f64> {
    if params.family != KernelFamily::RegularizedShannon {
        return Err(DscError::UnsupportedFamily(params.family.name()));
    }
    if !params.regularized() {
        return Ok(1.0);
    }
    let z = std::f64::consts::PI * params.sigma / (std::f64::consts::SQRT_2 * params.delta);
    Ok(statrs::function::erf::erf(z))
}

/// Smallest ratio r = sigma/delta and half bandwidth M delivering `eta`
/// accuracy digits for signals bandlimited to `bandlimit` on spacing `delta`.
///
/// Both strict inequalities r (pi - B delta) > sqrt(4.61 eta) and
/// M / r > sqrt(4.61 eta) hold for the returned values; r is rounded up to
/// three decimals and M to the next integer so the inequalities survive.
pub fn advise_parameters(eta: f64, bandlimit: f64, delta: f64) -> Result<ParameterAdvice> {
    if !(eta > 0.0) {
        return Err(DscError::InvalidParams(format!("eta must be > 0, got {eta}")));
    }
    if bandlimit < 0.0 || !(delta > 0.0) {
        return Err(DscError::InvalidParams("bandlimit must be >= 0 and delta > 0".into()));
    }
    let b_delta = bandlimit * delta;
    if b_delta >= std::f64::consts::PI {
        return Err(DscError::UnderResolved { b_delta });
    }
    let s = (4.61 * eta).sqrt();
    let margin = std::f64::consts::PI - b_delta;
    let mut r = (s / margin * 1000.0).ceil() / 1000.0;
    if r * margin <= s {
        r += 0.001;
    }
    let m = min_half_bandwidth_for_ratio(eta, r);
    Ok(ParameterAdvice { eta, bandlimit, r_min: r, m_min: m })
}

/// Smallest integer M with M / r > sqrt(4.61 eta), floored at 1.
pub fn min_half_bandwidth_for_ratio(eta: f64, r: f64) -> usize {
    let s = (4.61 * eta).sqrt();
    let mut m = (r * s).floor() as i64 + 1;
    if (m as f64) / r <= s {
        m += 1;
    }
    m.max(1) as usize
}

/// Shannon's mother wavelet (sin 2 pi x - sin pi x) / (pi x), value 1 at 0.
pub fn eval_shannon_wavelet(offset: f64) -> f64 {
    if offset.abs() < SINGULAR_TOL {
        return 1.0;
    }
    let pix = std::f64::consts::PI * offset;
    ((2.0 * pix).sin() - pix.sin()) / pix
}

fn inv_sq(sigma: f64) -> f64 {
    if sigma.is_finite() {
        1.0 / (sigma * sigma)
    } else {
        0.0
    }
}

/// Explicit closed forms for the regularized Shannon kernel and its
/// derivatives, including the center limits.
fn shannon_derivative(params: &KernelParams, q: usize, u: f64) -> f64 {
    let a = std::f64::consts::PI / params.delta;
    let is2 = inv_sq(params.sigma);
    if u.abs() < SINGULAR_TOL * params.delta {
        return match q {
            0 => 1.0,
            1 | 3 => 0.0,
            2 => -(a * a / 3.0 + is2),
            4 => 3.0 * is2 * is2 + 2.0 * a * a * is2 + a.powi(4) / 5.0,
            _ => unreachable!(),
        };
    }
    let env = if params.regularized() {
        (-u * u / (2.0 * params.sigma * params.sigma)).exp()
    } else {
        1.0
    };
    let (s, c) = (a * u).sin_cos();
    let is4 = is2 * is2;
    let is6 = is4 * is2;
    let is8 = is4 * is4;
    let bare = match q {
        0 => s / (a * u),
        1 => c / u - s / (a * u * u) - s * is2 / a,
        2 => {
            -a * s / u - 2.0 * c / (u * u) - 2.0 * c * is2 + 2.0 * s / (a * u * u * u)
                + s * is2 / (a * u)
                + u * s * is4 / a
        }
        3 => {
            -a * a * c / u + 3.0 * a * s / (u * u) + 3.0 * a * s * is2
                + 6.0 * c / (u * u * u)
                + 3.0 * c * is2 / u
                + 3.0 * u * c * is4
                - 6.0 * s / (a * u.powi(4))
                - 3.0 * s * is2 / (a * u * u)
                - u * u * s * is6 / a
        }
        4 => {
            4.0 * a * a * c / (u * u) + a.powi(3) * s / u + 4.0 * a * a * c * is2
                - 12.0 * a * s / (u * u * u)
                - 6.0 * a * s * is2 / u
                - 6.0 * a * u * s * is4
                - 24.0 * c / u.powi(4)
                - 12.0 * c * is2 / (u * u)
                - 4.0 * u * u * c * is6
                + 24.0 * s / (a * u.powi(5))
                + 12.0 * s * is2 / (a * u * u * u)
                + 3.0 * s * is4 / (a * u)
                - 2.0 * u * s * is6 / a
                + u.powi(3) * s * is8 / a
        }
        _ => unreachable!(),
    };
    bare * env
}

/// Taylor coefficients (u^0, u^2, u^4) of the bare (Gaussian-free) kernel
/// around the center, used for the removable-singularity limits.
fn bare_center_series(params: &KernelParams) -> [f64; 3] {
    let a = std::f64::consts::PI / params.delta;
    let sinc = |lam: f64| [1.0, -lam * lam / 6.0, lam.powi(4) / 120.0];
    match params.family {
        KernelFamily::RegularizedShannon => sinc(a),
        KernelFamily::RegularizedDirichlet => {
            let b = a / (2 * params.order + 1) as f64;
            even_series_div(sinc(a), sinc(b))
        }
        KernelFamily::RegularizedModifiedDirichlet => {
            let b = a / (2 * params.order + 1) as f64;
            // tan(bu)/(bu) = 1 + (bu)^2/3 + 2(bu)^4/15
            even_series_div(sinc(a), [1.0, b * b / 3.0, 2.0 * b.powi(4) / 15.0])
        }
        KernelFamily::DeLaValleePoussin => {
            let c = 2.0 * std::f64::consts::PI / (3.0 * params.delta);
            [1.0, -5.0 * c * c / 12.0, 7.0 * c.powi(4) / 120.0]
        }
        KernelFamily::RegularizedLagrange => {
            let mut acc = [1.0, 0.0, 0.0];
            for j in 1..=params.order {
                let d = (j as f64 * params.delta).powi(2);
                acc = even_series_mul(acc, [1.0, -1.0 / d, 0.0]);
            }
            acc
        }
    }
}

/// Jet of an even quartic c0 + c2 v^2 + c4 v^4 at v.
fn even_poly_jet(c: [f64; 3], v: f64) -> Jet {
    Jet([
        c[0] + c[1] * v * v + c[2] * v.powi(4),
        2.0 * c[1] * v + 4.0 * c[2] * v * v * v,
        c[1] + 6.0 * c[2] * v * v,
        4.0 * c[2] * v,
        c[2],
    ])
}

/// Jet of the bare kernel at offset `u` (Gaussian envelope excluded).
fn bare_jet(params: &KernelParams, u: f64) -> Jet {
    let a = std::f64::consts::PI / params.delta;
    let tol = SINGULAR_TOL * params.delta;
    match params.family {
        KernelFamily::RegularizedShannon => {
            if u.abs() < tol {
                even_poly_jet(bare_center_series(params), u)
            } else {
                jet_sin(a, u).div(&Jet([a * u, a, 0.0, 0.0, 0.0]))
            }
        }
        KernelFamily::RegularizedDirichlet | KernelFamily::RegularizedModifiedDirichlet => {
            let n = (2 * params.order + 1) as f64;
            let b = a / n;
            // The bare kernel is periodic with period (2L+1) delta; reduce the
            // offset so denominator zeros at the periodic images of the center
            // are evaluated by the same center limit.
            let period = n * params.delta;
            let v = u - period * (u / period).round();
            if v.abs() < tol {
                even_poly_jet(bare_center_series(params), v)
            } else {
                let num = jet_sin(a, v);
                let den = match params.family {
                    KernelFamily::RegularizedDirichlet => jet_sin(b, v).scale(n),
                    _ => jet_sin(b, v).div(&jet_cos(b, v)).scale(n),
                };
                num.div(&den)
            }
        }
        KernelFamily::DeLaValleePoussin => {
            let c = 2.0 * std::f64::consts::PI / (3.0 * params.delta);
            if u.abs() < tol {
                even_poly_jet(bare_center_series(params), u)
            } else {
                let num = jet_cos(c, u).sub(&jet_cos(2.0 * c, u));
                let den = Jet([c * c * u * u, 2.0 * c * c * u, c * c, 0.0, 0.0]);
                num.div(&den).scale(2.0 / 3.0)
            }
        }
        KernelFamily::RegularizedLagrange => {
            let mut acc = Jet::constant(1.0);
            for j in 1..=params.order {
                let d = (j as f64 * params.delta).powi(2);
                acc = acc.mul(&jet_one_minus_u2_over(d, u));
            }
            acc
        }
    }
}

impl Jet {
    fn sub(&self, other: &Jet) -> Jet {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Jet(out)
    }
}
