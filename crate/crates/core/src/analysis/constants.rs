//! Critical constants of the two certificate families.

use std::f64::consts::E;

use serde::Serialize;

use super::roots::bisect;

/// `f(x) = (x + 1) x^{-1/(x+1)}`. Decreasing on `(0, 1)`, increasing on
/// `(1, inf)`, with `f(1) = 2` and `f(1/x) = f(x)`.
pub fn pow_family_f(x: f64) -> f64 {
    (x + 1.0) * x.powf(-1.0 / (x + 1.0))
}

/// The two roots `A < 1 < B` of `f(x) = e`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub product: f64,
    pub tol: f64,
}

pub fn constants_ab(tol: f64) -> Constants {
    let h = |x: f64| pow_family_f(x) - E;
    let a = bisect(h, 1e-6, 1.0, tol)
        .expect("f - e changes sign on (0, 1)")
        .midpoint();
    let b = bisect(h, 1.0, 4.0, tol)
        .expect("f - e changes sign on (1, 4]")
        .midpoint();
    Constants {
        a,
        b,
        product: a * b,
        tol,
    }
}

/// `a(t) = (2 + t) e^{-t}`, the base reached by the quadratic family at
/// parameter `t`.
pub fn quad_base_of(t: f64) -> f64 {
    (2.0 + t) * (-t).exp()
}

/// `λ(t) = (2 + t) e^{-2t} / (2 - t)`.
pub fn quad_lambda_of(t: f64) -> f64 {
    (2.0 + t) * (-2.0 * t).exp() / (2.0 - t)
}

/// Values of `a(t)` at the ends of the convex parameter range
/// `t ∈ [-√3, √3]`: `(at -√3, at +√3)`, roughly `(1.51, 0.66)`.
pub fn quad_range_endpoints() -> (f64, f64) {
    let r = 3f64.sqrt();
    (quad_base_of(-r), quad_base_of(r))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtendedScan {
    pub t_star: f64,
    pub a_low: f64,
}

/// Positive root of `t = 2 tanh t` and the base it reaches. Bases in
/// `[a_low, e]` are covered once the convexity requirement is dropped.
pub fn scan_quad_extended() -> ExtendedScan {
    let t_star = bisect(|t| t - 2.0 * t.tanh(), 1.0, 2.0, 0.0)
        .expect("t - 2 tanh t changes sign on (1, 2)")
        .midpoint();
    ExtendedScan {
        t_star,
        a_low: quad_base_of(t_star),
    }
}
