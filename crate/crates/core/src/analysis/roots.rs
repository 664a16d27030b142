use crate::error::{Error, Result};

pub const MAX_BISECTION_STEPS: usize = 200;

/// Final bracket of a bisection run. `lo` and `hi` keep the signs of the
/// original endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Bisection on `[lo, hi]`. `f(lo)` and `f(hi)` must have opposite signs
/// (zero counts as either). Runs until the bracket stops shrinking in
/// binary64, its width drops below `width_tol`, or 200 halvings.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, width_tol: f64) -> Result<Bracket> {
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(Bracket { lo, hi: lo });
    }
    if f_hi == 0.0 {
        return Ok(Bracket { lo: hi, hi });
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { lo, hi });
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) || (hi - lo).abs() < width_tol {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(Bracket { lo: mid, hi: mid });
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Bracket { lo, hi })
}
