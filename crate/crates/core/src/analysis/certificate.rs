//! Contraction certificates for the two weight families.
//!
//! A weight `φ` certifies base `a` when `φ(e^{a x}) >= a e^{a x} φ(x)` for
//! all real `x`. For `φ(t) = 1 + λ t²` this reduces, with `y = a x`, to
//! positivity of
//!
//! ```text
//! F(y) = e^{-y} + λ e^y - a - λ y² / a
//! ```
//!
//! and for `φ(t) = max(1, |a t|^ν)` with `ν = 1 + 1/a` to `f(a) <= e`.

use std::f64::consts::E;

use serde::Serialize;

use super::constants::{quad_base_of, quad_lambda_of};
use super::roots::bisect;
use crate::xreal::Base;

/// Grid values of `F` may dip below zero by rounding near a double root.
pub const GRID_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            lo: -40.0,
            hi: 40.0,
            points: 100_000,
        }
    }
}

impl GridSpec {
    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.points.max(2);
        let step = (self.hi - self.lo) / (n - 1) as f64;
        (0..n).map(move |i| {
            if i == n - 1 {
                self.hi
            } else {
                self.lo + step * i as f64
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateQuad {
    pub a: Base,
    /// Parameter with `a = (2 + t) e^{-t}`; absent when λ was supplied.
    pub t_param: Option<f64>,
    pub lambda: Option<f64>,
    /// `λ <= a²`, equivalent to convexity of `F`.
    pub convex_ok: bool,
    pub grid_min: Option<f64>,
    pub tails_ok: bool,
    pub verdict: bool,
}

/// `F_{λ,a}(y)`.
pub fn quad_gap(lambda: f64, a: f64, y: f64) -> f64 {
    (-y).exp() + lambda * y.exp() - a - lambda * y * y / a
}

/// Solves `(2 + t) e^{-t} = a` on `[-√3, √3]`.
///
/// `a(t)` rises on `[-√3, -1]` to its peak `e` and falls on `[-1, √3]`;
/// the falling branch covers the wider range and is tried first.
pub fn solve_quad_parameter(a: f64) -> Option<f64> {
    let r = 3f64.sqrt();
    let h = |t: f64| quad_base_of(t) - a;
    for (lo, hi) in [(-1.0, r), (-r, -1.0)] {
        if let Ok(b) = bisect(h, lo, hi, 0.0) {
            return Some(b.midpoint());
        }
    }
    None
}

/// Sufficient conditions for `F > 0` beyond the grid.
///
/// For `y >= Y > 1`: `F(y) >= λ e^y - a - λ y²/a`, which is positive at `Y`
/// and increasing once `e^Y >= 2Y/a` (since `e^y / y` grows past 1).
/// For `y <= -Y'` the same argument applies to `e^{s} - a - λ s²/a`, `s = -y`.
fn quad_tails_ok(lambda: f64, a: f64, grid: &GridSpec) -> bool {
    let (right, left) = (grid.hi, -grid.lo);
    if right <= 1.0 || left <= 1.0 {
        return false;
    }
    let right_ok = lambda * right.exp() - a - lambda * right * right / a > 0.0
        && right.exp() >= 2.0 * right / a;
    let left_ok =
        left.exp() - a - lambda * left * left / a > 0.0 && left.exp() >= 2.0 * lambda * left / a;
    right_ok && left_ok
}

fn grid_min(lambda: f64, a: f64, grid: &GridSpec) -> f64 {
    grid.iter()
        .map(|y| quad_gap(lambda, a, y))
        .fold(f64::INFINITY, f64::min)
}

fn quad_with(base: Base, t_param: Option<f64>, lambda: f64, grid: &GridSpec) -> CertificateQuad {
    let a = base.value();
    let convex_ok = lambda <= a * a;
    let min = grid_min(lambda, a, grid);
    let tails_ok = quad_tails_ok(lambda, a, grid);
    CertificateQuad {
        a: base,
        t_param,
        lambda: Some(lambda),
        convex_ok,
        grid_min: Some(min),
        tails_ok,
        verdict: convex_ok && min >= -GRID_SLACK && tails_ok,
    }
}

/// Certificate from the quadratic family with `λ` taken from the
/// parametrization `a = (2 + t) e^{-t}`.
pub fn certify_quad(base: Base, grid: &GridSpec) -> CertificateQuad {
    match solve_quad_parameter(base.value()) {
        Some(t) => quad_with(base, Some(t), quad_lambda_of(t), grid),
        None => CertificateQuad {
            a: base,
            t_param: None,
            lambda: None,
            convex_ok: false,
            grid_min: None,
            tails_ok: false,
            verdict: false,
        },
    }
}

/// Same checks with a caller-chosen `λ` (e.g. `λ = 1` at `a = 1`).
pub fn certify_quad_with_lambda(base: Base, lambda: f64, grid: &GridSpec) -> CertificateQuad {
    quad_with(base, None, lambda, grid)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertificatePow {
    pub a: Base,
    pub nu: f64,
    pub nu_prime: f64,
    /// `ν a^{1/ν}`; must not exceed `e`.
    pub cond1_value: f64,
    /// `ν' a^{-1/ν'}`; must not exceed `e`.
    pub cond2_value: f64,
    pub cond1: bool,
    pub cond2: bool,
    pub verdict: bool,
}

pub fn certify_pow(base: Base) -> CertificatePow {
    let a = base.value();
    let nu = 1.0 + 1.0 / a;
    let nu_prime = 1.0 + a;
    let cond1_value = nu * a.powf(1.0 / nu);
    let cond2_value = nu_prime * a.powf(-1.0 / nu_prime);
    let cond1 = cond1_value <= E;
    let cond2 = cond2_value <= E;
    CertificatePow {
        a: base,
        nu,
        nu_prime,
        cond1_value,
        cond2_value,
        cond1,
        cond2,
        verdict: cond1 && cond2,
    }
}
