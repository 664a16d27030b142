//! Weighted interval measures `m(I) = ∫_I dt / φ(t)`.

use serde::Serialize;

use crate::evaluator::Interval;
use crate::xreal::{Base, Sign, XReal};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum PhiFamily {
    /// `φ(t) = 1 + λ t²`.
    Quad { lambda: f64 },
    /// `φ(t) = max(1, |a t|^ν)`.
    Pow { a: f64, nu: f64 },
}

impl PhiFamily {
    pub fn phi(&self, t: f64) -> f64 {
        match *self {
            PhiFamily::Quad { lambda } => 1.0 + lambda * t * t,
            PhiFamily::Pow { a, nu } => (a * t).abs().powf(nu).max(1.0),
        }
    }

    /// Odd antiderivative of `1/φ`, finite at `±inf`.
    pub fn antiderivative(&self, t: f64) -> f64 {
        match *self {
            PhiFamily::Quad { lambda } => {
                let s = lambda.sqrt();
                (s * t).atan() / s
            }
            PhiFamily::Pow { a, nu } => {
                let r = t.abs();
                let knee = 1.0 / a;
                let v = if r <= knee {
                    r
                } else {
                    // ∫_{1/a}^{r} (a s)^{-ν} ds
                    knee + (1.0 - (a * r).powf(1.0 - nu)) / (a * (nu - 1.0))
                };
                v.copysign(t)
            }
        }
    }

    pub fn measure(&self, interval: &Interval) -> f64 {
        if interval.is_singleton() {
            return 0.0;
        }
        let v = self.antiderivative(interval.hi.value()) - self.antiderivative(interval.lo.value());
        v.max(0.0)
    }

    /// Measure of the whole extended line.
    pub fn total(&self) -> f64 {
        self.measure(&Interval::whole_line())
    }
}

pub fn phi_measure(family: &PhiFamily, interval: &Interval) -> f64 {
    family.measure(interval)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContractionCheck {
    pub m_before: f64,
    pub m_after_plus: f64,
    pub m_after_minus: f64,
    pub contracted: bool,
}

/// Measures `I`, `f_+(I)` and `f_-(I)`. Contraction must be strict unless
/// `I` is a single point.
///
/// Only meaningful when the family certifies `base`.
pub fn contraction_check(base: Base, family: &PhiFamily, interval: &Interval) -> ContractionCheck {
    let m_before = family.measure(interval);
    let m_after_plus = family.measure(&interval.map(Sign::Plus, base));
    let m_after_minus = family.measure(&interval.map(Sign::Minus, base));
    let contracted =
        interval.is_singleton() || (m_after_plus < m_before && m_after_minus < m_before);
    ContractionCheck {
        m_before,
        m_after_plus,
        m_after_minus,
        contracted,
    }
}

/// Convenience for building finite intervals in examples and tests.
pub fn finite_interval(lo: f64, hi: f64) -> Interval {
    Interval::spanning(
        XReal::new(lo).expect("finite"),
        XReal::new(hi).expect("finite"),
    )
}
