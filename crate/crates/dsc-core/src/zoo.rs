//! Catalogue of classical delta sequences (positive and Dirichlet type)
//! with quadrature probes for their defining convergence properties.

use crate::error::{DscError, Result};
use std::f64::consts::PI;

/// Nonnegative unit-mass density used by the dilation construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilationDensity {
    /// Standard normal density.
    Gauss,
    /// Standard Cauchy density.
    Lorentz,
}

impl DilationDensity {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            DilationDensity::Gauss => (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
            DilationDensity::Lorentz => 1.0 / (PI * (1.0 + x * x)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaSequenceKind {
    /// Box of height alpha on (0, 1/alpha).
    Impulse,
    /// Gaussian of width alpha, alpha -> 0.
    Gauss,
    /// Generalized Lorentz kernel of integer order n >= 1, alpha -> 0.
    Lorentz { n: u32 },
    /// Landau polynomial kernel on (-a, a); the running parameter is n.
    Landau { a: f64 },
    /// Poisson kernel on (-pi, pi], 0 <= alpha < 1, alpha -> 1.
    PoissonKernel,
    /// Fejer arithmetic mean of Dirichlet kernels, parameter k >= 1.
    FejerDiscrete,
    /// Continuous Fejer kernel on the real line, alpha -> infinity.
    FejerContinuous,
    /// Dirichlet kernel on (-pi, pi], parameter k >= 0.
    Dirichlet,
    /// Dirichlet kernel with the last cosine halved, parameter k >= 0.
    ModifiedDirichlet,
    /// De la Vallee Poussin mean with fixed lag p; running parameter n >= p.
    DeLaValleePoussin { p: u32 },
    /// (1/alpha) rho(x/alpha) for a unit-mass density rho, alpha -> 0.
    Dilated { density: DilationDensity },
}

impl DeltaSequenceKind {
    /// Nominal support as (lo, hi); None for kinds supported on all reals.
    pub fn support(&self, param: &SequenceParam) -> Option<(f64, f64)> {
        match self {
            DeltaSequenceKind::Impulse => Some((0.0, 1.0 / param.alpha)),
            DeltaSequenceKind::Landau { a } => Some((-a, *a)),
            DeltaSequenceKind::PoissonKernel
            | DeltaSequenceKind::FejerDiscrete
            | DeltaSequenceKind::Dirichlet
            | DeltaSequenceKind::ModifiedDirichlet
            | DeltaSequenceKind::DeLaValleePoussin { .. } => Some((-PI, PI)),
            _ => None,
        }
    }

    /// Whether the kind is of positive type (values nonnegative everywhere).
    pub fn is_positive_type(&self) -> bool {
        matches!(
            self,
            DeltaSequenceKind::Impulse
                | DeltaSequenceKind::Gauss
                | DeltaSequenceKind::Lorentz { n: 1 }
                | DeltaSequenceKind::Landau { .. }
                | DeltaSequenceKind::PoissonKernel
                | DeltaSequenceKind::FejerDiscrete
                | DeltaSequenceKind::FejerContinuous
                | DeltaSequenceKind::Dilated { .. }
        )
    }

    fn validate(&self, param: &SequenceParam) -> Result<()> {
        let alpha = param.alpha;
        let bad = |msg: String| Err(DscError::InvalidParams(msg));
        match self {
            DeltaSequenceKind::Impulse => {
                if alpha < 1.0 {
                    return bad(format!("impulse parameter must be >= 1, got {alpha}"));
                }
            }
            DeltaSequenceKind::Gauss | DeltaSequenceKind::FejerContinuous | DeltaSequenceKind::Dilated { .. } => {
                if alpha <= 0.0 {
                    return bad(format!("parameter must be > 0, got {alpha}"));
                }
            }
            DeltaSequenceKind::Lorentz { n } => {
                if *n < 1 {
                    return bad("Lorentz order n must be >= 1".into());
                }
                if alpha <= 0.0 {
                    return bad(format!("parameter must be > 0, got {alpha}"));
                }
            }
            DeltaSequenceKind::Landau { a } => {
                if *a <= 0.0 {
                    return bad(format!("Landau support bound must be > 0, got {a}"));
                }
                if alpha < 0.0 || alpha.fract() != 0.0 {
                    return bad(format!("Landau parameter must be a nonnegative integer, got {alpha}"));
                }
            }
            DeltaSequenceKind::PoissonKernel => {
                if !(0.0..1.0).contains(&alpha) {
                    return bad(format!("Poisson parameter must lie in [0, 1), got {alpha}"));
                }
            }
            DeltaSequenceKind::FejerDiscrete => {
                if alpha < 1.0 || alpha.fract() != 0.0 {
                    return bad(format!("Fejer parameter must be a positive integer, got {alpha}"));
                }
            }
            DeltaSequenceKind::Dirichlet | DeltaSequenceKind::ModifiedDirichlet => {
                if alpha < 0.0 || alpha.fract() != 0.0 {
                    return bad(format!("Dirichlet parameter must be a nonnegative integer, got {alpha}"));
                }
            }
            DeltaSequenceKind::DeLaValleePoussin { p } => {
                if alpha.fract() != 0.0 || alpha < *p as f64 {
                    return bad(format!("de la Vallee Poussin requires integer n >= p = {p}, got {alpha}"));
                }
            }
        }
        Ok(())
    }
}

/// Running sequence parameter (alpha, n, or k depending on the kind).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceParam {
    pub alpha: f64,
}

impl SequenceParam {
    pub fn new(alpha: f64) -> Self {
        SequenceParam { alpha }
    }
}

/// Evaluate the delta sequence member at `x`. Compact-support kinds return
/// exactly 0 outside their nominal support.
pub fn eval_delta(kind: &DeltaSequenceKind, param: &SequenceParam, x: f64) -> Result<f64> {
    kind.validate(param)?;
    let alpha = param.alpha;
    if let Some((lo, hi)) = kind.support(param) {
        if x < lo || x > hi {
            return Ok(0.0);
        }
    }
    let v = match kind {
        DeltaSequenceKind::Impulse => {
            if x >= 0.0 && x <= 1.0 / alpha {
                alpha
            } else {
                0.0
            }
        }
        DeltaSequenceKind::Gauss => (-x * x / (2.0 * alpha * alpha)).exp() / ((2.0 * PI).sqrt() * alpha),
        DeltaSequenceKind::Lorentz { n } => {
            let n = *n as i32;
            alpha.powi(n) * x.powi(n - 1) / (PI * (x.powi(2 * n) + alpha.powi(2 * n)))
        }
        DeltaSequenceKind::Landau { a } => {
            let n = alpha as i32;
            // normalizer: int_{-a}^{a} (a^2 - y^2)^n dy via the recurrence
            // I_n = I_{n-1} * a^2 * 2n / (2n + 1), I_0 = 2a
            let mut norm = 2.0 * a;
            for k in 1..=n {
                norm *= a * a * 2.0 * k as f64 / (2.0 * k as f64 + 1.0);
            }
            (a * a - x * x).powi(n) / norm
        }
        DeltaSequenceKind::PoissonKernel => {
            (1.0 - alpha * alpha) / (2.0 * PI * (1.0 - 2.0 * alpha * x.cos() + alpha * alpha))
        }
        DeltaSequenceKind::FejerDiscrete => {
            let k = alpha;
            let s = (0.5 * x).sin();
            if s.abs() < 1e-12 {
                k / (2.0 * PI)
            } else {
                let t = (0.5 * k * x).sin();
                t * t / (2.0 * PI * k * s * s)
            }
        }
        DeltaSequenceKind::FejerContinuous => {
            if x.abs() < 1e-12 {
                2.0 * alpha / PI
            } else {
                let s = (alpha * x).sin();
                2.0 * s * s / (PI * alpha * x * x)
            }
        }
        DeltaSequenceKind::Dirichlet => {
            let k = alpha;
            let s = (0.5 * x).sin();
            if s.abs() < 1e-12 {
                (2.0 * k + 1.0) / (2.0 * PI)
            } else {
                ((k + 0.5) * x).sin() / (2.0 * PI * s)
            }
        }
        DeltaSequenceKind::ModifiedDirichlet => {
            let k = alpha;
            let t = (0.5 * x).tan();
            if t.abs() < 1e-12 {
                k / PI
            } else {
                (k * x).sin() / (2.0 * PI * t)
            }
        }
        DeltaSequenceKind::DeLaValleePoussin { p } => {
            let n = alpha;
            let p = *p as f64;
            let s = (0.5 * x).sin();
            if s.abs() < 1e-12 {
                (2.0 * n + 1.0 - p) / (2.0 * PI)
            } else {
                ((2.0 * n + 1.0 - p) * 0.5 * x).sin() * ((p + 1.0) * 0.5 * x).sin()
                    / (2.0 * PI * (p + 1.0) * s * s)
            }
        }
        DeltaSequenceKind::Dilated { density } => density.eval(x / alpha) / alpha,
    };
    Ok(v)
}

/// Composite-Simpson quadrature description.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub lo: f64,
    pub hi: f64,
    /// Number of panels; rounded up to the next even count.
    pub panels: usize,
}

impl Quadrature {
    pub fn new(lo: f64, hi: f64, panels: usize) -> Self {
        Quadrature { lo, hi, panels: panels.max(2) }
    }

    /// Composite Simpson integral of `f` over [lo, hi].
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let n = if self.panels % 2 == 0 { self.panels } else { self.panels + 1 };
        let h = (self.hi - self.lo) / n as f64;
        let mut acc = f(self.lo) + f(self.hi);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(self.lo + i as f64 * h);
        }
        acc * h / 3.0
    }
}

/// Integrate the delta member against `test_fn` for each schedule entry.
/// The tail of the result approaches `test_fn(0)` as the schedule approaches
/// the kind's limit.
pub fn convergence_probe<F: Fn(f64) -> f64>(
    kind: &DeltaSequenceKind,
    schedule: &[SequenceParam],
    test_fn: F,
    quadrature: &Quadrature,
) -> Result<Vec<f64>> {
    if schedule.is_empty() {
        return Err(DscError::InvalidArgument("empty parameter schedule".into()));
    }
    schedule
        .iter()
        .map(|p| {
            kind.validate(p)?;
            Ok(quadrature.integrate(|x| eval_delta(kind, p, x).unwrap_or(0.0) * test_fn(x)))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    pub min_value: f64,
    pub mass: f64,
}

/// Minimum sampled value and total mass over the kind's nominal support
/// (or the supplied quadrature range for kinds supported on all reals).
pub fn positivity_and_mass(
    kind: &DeltaSequenceKind,
    param: &SequenceParam,
    quadrature: &Quadrature,
) -> Result<PositivityReport> {
    kind.validate(param)?;
    let (lo, hi) = kind.support(param).unwrap_or((quadrature.lo, quadrature.hi));
    let quad = Quadrature::new(lo, hi, quadrature.panels);
    let mass = quad.integrate(|x| eval_delta(kind, param, x).unwrap_or(0.0));
    let n = quad.panels;
    let h = (hi - lo) / n as f64;
    let mut min_value = f64::INFINITY;
    for i in 0..=n {
        let v = eval_delta(kind, param, lo + i as f64 * h)?;
        if v < min_value {
            min_value = v;
        }
    }
    Ok(PositivityReport { min_value, mass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pointwise_values() {
        let p = SequenceParam::new(1.0);
        assert_relative_eq!(
            eval_delta(&DeltaSequenceKind::Gauss, &p, 0.0).unwrap(),
            1.0 / (2.0 * PI).sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            eval_delta(&DeltaSequenceKind::Lorentz { n: 1 }, &p, 0.0).unwrap(),
            1.0 / PI,
            max_relative = 1e-14
        );
        let p2 = SequenceParam::new(2.0);
        assert_relative_eq!(
            eval_delta(&DeltaSequenceKind::Dirichlet, &p2, 0.0).unwrap(),
            5.0 / (2.0 * PI),
            max_relative = 1e-14
        );
    }

    #[test]
    fn compact_support_returns_zero_outside() {
        let p = SequenceParam::new(4.0);
        assert_eq!(eval_delta(&DeltaSequenceKind::PoissonKernel, &SequenceParam::new(0.5), 4.0).unwrap(), 0.0);
        assert_eq!(eval_delta(&DeltaSequenceKind::Landau { a: 1.0 }, &p, 1.5).unwrap(), 0.0);
        assert_eq!(eval_delta(&DeltaSequenceKind::Impulse, &p, 0.5).unwrap(), 0.0);
        assert_eq!(eval_delta(&DeltaSequenceKind::Impulse, &p, 0.1).unwrap(), 4.0);
    }

    #[test]
    fn inadmissible_parameters_rejected() {
        assert!(eval_delta(&DeltaSequenceKind::PoissonKernel, &SequenceParam::new(1.0), 0.0).is_err());
        assert!(eval_delta(&DeltaSequenceKind::Gauss, &SequenceParam::new(-1.0), 0.0).is_err());
        assert!(eval_delta(&DeltaSequenceKind::DeLaValleePoussin { p: 4 }, &SequenceParam::new(2.0), 0.0).is_err());
    }

    #[test]
    fn gauss_probe_converges_monotonically() {
        let kind = DeltaSequenceKind::Gauss;
        let sched: Vec<_> = [0.5, 0.1, 0.02].iter().map(|&a| SequenceParam::new(a)).collect();
        let quad = Quadrature::new(-8.0, 8.0, 40_000);
        let vals = convergence_probe(&kind, &sched, |x| x.cos(), &quad).unwrap();
        let errs: Vec<f64> = vals.iter().map(|v| (v - 1.0).abs()).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        // error bound alpha^2/2 * sup|phi''| = alpha^2/2 for phi = cos
        for (e, a) in errs.iter().zip([0.5f64, 0.1, 0.02]) {
            assert!(*e < a * a / 2.0 + 1e-10);
        }
    }

    #[test]
    fn impulse_probe_is_exact_for_constants() {
        let kind = DeltaSequenceKind::Impulse;
        let sched: Vec<_> = [10.0, 100.0].iter().map(|&a| SequenceParam::new(a)).collect();
        // place quadrature nodes exactly on the box so Simpson is exact
        for p in &sched {
            let quad = Quadrature::new(0.0, 1.0 / p.alpha, 1000);
            let vals = convergence_probe(&kind, &[*p], |_| 1.0, &quad).unwrap();
            assert_relative_eq!(vals[0], 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn fejer_annihilates_odd_test_functions() {
        let kind = DeltaSequenceKind::FejerDiscrete;
        let sched: Vec<_> = [8.0, 64.0].iter().map(|&a| SequenceParam::new(a)).collect();
        let quad = Quadrature::new(-PI, PI, 20_000);
        let vals = convergence_probe(&kind, &sched, |x| x, &quad).unwrap();
        for v in vals {
            assert!(v.abs() < 1e-10);
        }
    }

    #[test]
    fn positivity_classification() {
        let quad = Quadrature::new(-10.0, 10.0, 20_000);
        let gauss = positivity_and_mass(&DeltaSequenceKind::Gauss, &SequenceParam::new(0.3), &quad).unwrap();
        assert!(gauss.min_value >= 0.0);
        assert_relative_eq!(gauss.mass, 1.0, epsilon = 1e-8);

        let diri = positivity_and_mass(&DeltaSequenceKind::Dirichlet, &SequenceParam::new(6.0), &quad).unwrap();
        assert!(diri.min_value < 0.0);
        assert_relative_eq!(diri.mass, 1.0, epsilon = 1e-6);

        // p = n reduces to the (positive) Fejer kernel
        let dlvp = positivity_and_mass(
            &DeltaSequenceKind::DeLaValleePoussin { p: 5 },
            &SequenceParam::new(5.0),
            &quad,
        )
        .unwrap();
        assert!(dlvp.min_value >= -1e-12);
    }

    #[test]
    fn modified_dirichlet_stays_close_to_dirichlet() {
        // |D_k - D*_k| = |cos(kx)| / (2 pi) <= 1/(2 pi)
        for k in [3.0, 8.0, 20.0] {
            let p = SequenceParam::new(k);
            let mut max_diff: f64 = 0.0;
            for i in 1..400 {
                let x = -PI + 2.0 * PI * i as f64 / 400.0;
                let d = eval_delta(&DeltaSequenceKind::Dirichlet, &p, x).unwrap();
                let m = eval_delta(&DeltaSequenceKind::ModifiedDirichlet, &p, x).unwrap();
                max_diff = max_diff.max((d - m).abs());
            }
            assert!(max_diff <= 1.0 / (2.0 * PI) + 1e-12, "k={k}: {max_diff}");
        }
    }

    #[test]
    fn landau_mass_is_one() {
        let quad = Quadrature::new(-1.0, 1.0, 4000);
        for n in [0.0, 1.0, 5.0, 12.0] {
            let rep = positivity_and_mass(&DeltaSequenceKind::Landau { a: 1.0 }, &SequenceParam::new(n), &quad).unwrap();
            assert_relative_eq!(rep.mass, 1.0, epsilon = 1e-9);
            assert!(rep.min_value >= 0.0);
        }
    }

    #[test]
    fn dilated_presets_have_unit_mass() {
        let quad = Quadrature::new(-2000.0, 2000.0, 400_000);
        for density in [DilationDensity::Gauss, DilationDensity::Lorentz] {
            let rep = positivity_and_mass(
                &DeltaSequenceKind::Dilated { density },
                &SequenceParam::new(0.5),
                &quad,
            )
            .unwrap();
            // Lorentz tails decay like 1/x^2; the finite range costs ~3e-4
            assert_relative_eq!(rep.mass, 1.0, epsilon = 1e-3);
            assert!(rep.min_value >= 0.0);
        }
    }

    #[test]
    fn empty_schedule_is_an_error() {
        let quad = Quadrature::new(-1.0, 1.0, 100);
        assert!(convergence_probe(&DeltaSequenceKind::Gauss, &[], |_| 1.0, &quad).is_err());
    }
}
