//! Order-4 Taylor arithmetic used to evaluate closed-form kernel
//! derivatives without numerical differentiation.
//!
//! A `Jet` stores the Taylor coefficients `t_k = f^(k)(u) / k!` of a scalar
//! function around the evaluation point `u`. Products and quotients of jets
//! follow the usual truncated power-series rules, so composing the factors of
//! a kernel (sine, cosine, Gaussian, polynomial) yields its exact derivatives
//! up to fourth order at `u`, to roundoff.

pub const JET_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; JET_ORDER]);

impl Jet {
    pub fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0, 0.0])
    }

    /// The k-th derivative of the represented function.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.0[k] * fact
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let mut out = [0.0; JET_ORDER];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                if i + j < JET_ORDER {
                    out[i + j] += a * b;
                }
            }
        }
        Jet(out)
    }

    /// Quotient of two jets; requires a nonzero denominator value.
    pub fn div(&self, den: &Jet) -> Jet {
        debug_assert!(den.0[0] != 0.0, "jet division by zero leading coefficient");
        let mut out = [0.0; JET_ORDER];
        for k in 0..JET_ORDER {
            let mut acc = self.0[k];
            for j in 1..=k {
                acc -= den.0[j] * out[k - j];
            }
            out[k] = acc / den.0[0];
        }
        Jet(out)
    }

    pub fn scale(&self, c: f64) -> Jet {
        let mut out = self.0;
        for v in &mut out {
            *v *= c;
        }
        Jet(out)
    }
}

/// Jet of `sin(lambda * u)` at `u`.
pub fn jet_sin(lambda: f64, u: f64) -> Jet {
    let (s, c) = (lambda * u).sin_cos();
    // derivative cycle sin -> cos -> -sin -> -cos, each picking up a factor lambda
    let derivs = [s, c, -s, -c, s];
    let mut out = [0.0; JET_ORDER];
    let mut pow = 1.0;
    let mut fact = 1.0;
    for k in 0..JET_ORDER {
        if k > 1 {
            fact *= k as f64;
        }
        out[k] = derivs[k] * pow / fact;
        pow *= lambda;
    }
    Jet(out)
}

/// Jet of `cos(lambda * u)` at `u`.
pub fn jet_cos(lambda: f64, u: f64) -> Jet {
    let (s, c) = (lambda * u).sin_cos();
    let derivs = [c, -s, -c, s, c];
    let mut out = [0.0; JET_ORDER];
    let mut pow = 1.0;
    let mut fact = 1.0;
    for k in 0..JET_ORDER {
        if k > 1 {
            fact *= k as f64;
        }
        out[k] = derivs[k] * pow / fact;
        pow *= lambda;
    }
    Jet(out)
}

/// Jet of the Gaussian regularizer `exp(-u^2 / (2 sigma^2))` at `u`.
///
/// Derivatives follow from `d^k/dx^k e^{-x^2/2} = (-1)^k He_k(x) e^{-x^2/2}`
/// with the probabilists' Hermite polynomials and `x = u / sigma`.
pub fn jet_gauss(sigma: f64, u: f64) -> Jet {
    let x = u / sigma;
    let g = (-0.5 * x * x).exp();
    let he = [
        1.0,
        x,
        x * x - 1.0,
        x * x * x - 3.0 * x,
        x * x * x * x - 6.0 * x * x + 3.0,
    ];
    let mut out = [0.0; JET_ORDER];
    let mut pow = 1.0;
    let mut fact = 1.0;
    let mut sign = 1.0;
    for k in 0..JET_ORDER {
        if k > 1 {
            fact *= k as f64;
        }
        out[k] = sign * he[k] * g / (pow * fact);
        pow *= sigma;
        sign = -sign;
    }
    Jet(out)
}

/// Jet of the linear factor `1 - u^2 / d` at `u`.
pub fn jet_one_minus_u2_over(d: f64, u: f64) -> Jet {
    Jet([1.0 - u * u / d, -2.0 * u / d, -1.0 / d, 0.0, 0.0])
}

/// Divide two even power series (coefficients of u^0, u^2, u^4) truncated
/// at fourth order. Used for removable-singularity limits at u = 0.
pub fn even_series_div(num: [f64; 3], den: [f64; 3]) -> [f64; 3] {
    let q0 = num[0] / den[0];
    let q1 = (num[1] - den[1] * q0) / den[0];
    let q2 = (num[2] - den[1] * q1 - den[2] * q0) / den[0];
    [q0, q1, q2]
}

/// Product of two even power series truncated at fourth order.
pub fn even_series_mul(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[0] * b[0],
        a[0] * b[1] + a[1] * b[0],
        a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
    ]
}
