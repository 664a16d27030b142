//! Fixed points of `f_+` for small bases, the fixed point of `f_-`, and the
//! attracting two-cycle of `f_-` past `a = e`.

use std::f64::consts::E;

use serde::Serialize;

use super::roots::bisect;
use crate::error::{Error, Result};
use crate::xreal::Base;

/// The two fixed points `m <= 1/a <= M` of `f_+`, roots of
/// `g(x) = x e^{-a x} = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlusFixedPoints {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
}

/// The unique root of `h(x) = x + e^{a x}`, i.e. the fixed point of `f_-`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinusFixedPoint {
    pub m_minus: f64,
    pub repulsive: bool,
}

/// `p < q` with `f_-(p) = q` and `f_-(q) = p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoCycle {
    pub p: f64,
    pub q: f64,
}

pub fn small_base_threshold() -> f64 {
    (-1.0f64).exp()
}

fn g(a: f64, x: f64) -> f64 {
    x * (-a * x).exp()
}

pub fn plus_fixed_points(base: Base) -> Result<PlusFixedPoints> {
    let a = base.value();
    let peak_at = 1.0 / a;
    let peak = g(a, peak_at) - 1.0;
    // At a = 1/e the peak is exactly 1 in real arithmetic; allow rounding.
    if peak < -1e-12 {
        return Err(Error::OutOfRange(format!(
            "base must satisfy a ≤ 1/e (got a = {a}); f_+ has no fixed point"
        )));
    }
    if peak <= 0.0 {
        return Ok(PlusFixedPoints {
            m: peak_at,
            big_m: peak_at,
        });
    }

    let m = bisect(|x| g(a, x) - 1.0, 0.0, peak_at, 0.0)?.midpoint();

    let mut upper = 2.0 * peak_at;
    while g(a, upper) >= 1.0 {
        upper *= 2.0;
    }
    let big_m = bisect(|x| g(a, x) - 1.0, peak_at, upper, 0.0)?.midpoint();
    Ok(PlusFixedPoints { m, big_m })
}

pub fn minus_fixed_point(base: Base) -> MinusFixedPoint {
    let a = base.value();
    // h(-1) = e^{-a} - 1 < 0 < h(0) = 1.
    let m_minus = bisect(|x| x + (a * x).exp(), -1.0, 0.0, 0.0)
        .expect("h changes sign on [-1, 0]")
        .midpoint();
    MinusFixedPoint {
        m_minus,
        // a m < -1 exactly when a > e; comparing a with e avoids a rounding
        // tie at the neutral base.
        repulsive: a > E,
    }
}

/// Iterates `I(n+1) = f_-(I(n))` from the whole line until both endpoints
/// settle, and returns them as the two-cycle.
pub fn two_cycle(base: Base, tol: f64) -> Result<TwoCycle> {
    let a = base.value();
    if a <= E {
        return Err(Error::NoCycle(format!(
            "a = {a} ≤ e: the fixed point of f_- is not repulsive"
        )));
    }
    const MAX_ITER: usize = 2_000_000;
    let f = |x: f64| -(a * x).exp();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    let stop = tol * 1e-3;
    for _ in 0..MAX_ITER {
        let (x, y) = (f(hi), f(lo));
        let settled = (x - lo).abs() <= stop && (y - hi).abs() <= stop;
        lo = x;
        hi = y;
        if settled {
            break;
        }
    }
    let fixed = minus_fixed_point(base).m_minus;
    let exchanged = (f(lo) - hi).abs() < tol && (f(hi) - lo).abs() < tol;
    if !(exchanged && lo < fixed && fixed < hi) {
        return Err(Error::NoCycle(format!(
            "endpoint iteration did not settle on an exchanged pair (lo = {lo}, hi = {hi})"
        )));
    }
    Ok(TwoCycle { p: lo, q: hi })
}
