//! Forward evaluation of towers.
//!
//! `u_n = f_{ε_1} ∘ ... ∘ f_{ε_n}(1)` and the image intervals
//! `I(n, ε) = f_{ε_1} ∘ ... ∘ f_{ε_n}([-inf, +inf])`.
//!
//! New signs enter at the innermost position, so every `u_n` is recomputed
//! from scratch.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{FiniteWord, InfiniteWord, Signs};
use crate::xreal::{apply_sign, Base, Sign, XReal};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_STEPS: usize = 10_000;
pub const DEFAULT_WINDOW: usize = 8;

/// Separation factor between the period-2 and period-1 criteria.
const TWO_CYCLE_SEPARATION: f64 = 10.0;

/// A closed interval of the extended line, `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: XReal,
    pub hi: XReal,
}

impl Interval {
    pub fn new(lo: XReal, hi: XReal) -> Result<Interval> {
        if lo > hi {
            return Err(Error::Domain(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// Interval spanned by two points in either order.
    pub fn spanning(a: XReal, b: XReal) -> Interval {
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn whole_line() -> Interval {
        Interval {
            lo: XReal::NEG_INF,
            hi: XReal::POS_INF,
        }
    }

    pub fn singleton(x: XReal) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn width(&self) -> XReal {
        self.hi.distance(self.lo)
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: XReal) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// True when the open interiors do not meet. Shared endpoints are fine.
    pub fn interiors_disjoint(&self, other: &Interval) -> bool {
        self.is_singleton() || other.is_singleton() || self.hi <= other.lo || other.hi <= self.lo
    }

    /// Image under a single signed map, endpoints re-sorted.
    pub fn map(&self, sign: Sign, base: Base) -> Interval {
        Interval::spanning(
            apply_sign(sign, base, self.lo),
            apply_sign(sign, base, self.hi),
        )
    }
}

/// `f_γ(x)`: applies the signs of `γ` from the last (innermost) to the first.
pub fn compose(base: Base, word: &FiniteWord, x: XReal) -> XReal {
    word.signs()
        .iter()
        .rev()
        .fold(x, |acc, &s| apply_sign(s, base, acc))
}

/// `f_{n,w}(x)` for the first `n` signs of any sign source.
fn compose_prefix<W: Signs + ?Sized>(base: Base, w: &W, n: usize, x: XReal) -> Result<XReal> {
    if let Some(available) = w.available() {
        if available < n {
            return Err(Error::InsufficientSigns {
                needed: n,
                available,
            });
        }
    }
    Ok((1..=n).rev().fold(x, |acc, k| {
        apply_sign(w.get(k).expect("checked above"), base, acc)
    }))
}

/// `u_{n,w} = f_{n,w}(1)`; `u_0 = 1`.
pub fn truncation_value<W: Signs + ?Sized>(base: Base, w: &W, n: usize) -> Result<XReal> {
    compose_prefix(base, w, n, XReal::ONE)
}

/// `f_γ([-inf, +inf])`.
pub fn image_interval(base: Base, word: &FiniteWord) -> Interval {
    Interval::spanning(
        compose(base, word, XReal::NEG_INF),
        compose(base, word, XReal::POS_INF),
    )
}

/// `f_γ(I)`, both endpoints pushed through and re-sorted.
pub fn map_interval(base: Base, word: &FiniteWord, interval: &Interval) -> Interval {
    Interval::spanning(
        compose(base, word, interval.lo),
        compose(base, word, interval.hi),
    )
}

/// `[I(1, w), ..., I(n, w)]`.
pub fn interval_sequence(base: Base, w: &InfiniteWord, n: usize) -> Vec<Interval> {
    (1..=n)
        .map(|k| image_interval(base, &w.prefix(k)))
        .collect()
}

/// `I(n, w)`, the outer estimate of `I(w)` after `n` signs.
pub fn limit_interval(base: Base, w: &InfiniteWord, n: usize) -> Interval {
    image_interval(base, &w.prefix(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TowerStatus {
    ConvergedFinite,
    ConvergedPlusInf,
    ConvergedMinusInf,
    TwoCycle,
    Undetermined,
}

impl TowerStatus {
    pub fn is_converged(self) -> bool {
        matches!(
            self,
            TowerStatus::ConvergedFinite
                | TowerStatus::ConvergedPlusInf
                | TowerStatus::ConvergedMinusInf
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CyclePair {
    pub p: f64,
    pub q: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerReport {
    pub status: TowerStatus,
    pub limit: Option<XReal>,
    pub cycle: Option<CyclePair>,
    pub steps_used: usize,
    pub trace: Option<Vec<XReal>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub max_steps: usize,
    pub tol: f64,
    pub window: usize,
    pub keep_trace: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_steps: DEFAULT_MAX_STEPS,
            tol: DEFAULT_TOL,
            window: DEFAULT_WINDOW,
            keep_trace: false,
        }
    }
}

impl ClassifyOptions {
    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.keep_trace = true;
        self
    }
}

/// `|x - y|` against a tolerance scaled by `max(1, |x|)`. Unequal values
/// with an infinite member are never close.
fn close(x: XReal, y: XReal, tol: f64) -> bool {
    if x == y {
        return true;
    }
    if x.is_infinite() || y.is_infinite() {
        return false;
    }
    (x.value() - y.value()).abs() < tol * x.value().abs().max(1.0)
}

fn all_equal_to(values: &[XReal], target: XReal) -> bool {
    values.iter().all(|&v| v == target)
}

/// Classifies the truncation sequence `u_1, u_2, ...` of `w`.
///
/// Stops at the first step where one of the criteria holds, so
/// `steps_used` is usually far below `max_steps`.
pub fn classify(base: Base, w: &InfiniteWord, opts: ClassifyOptions) -> TowerReport {
    let max_steps = opts.max_steps.max(4);
    let window = opts.window.max(2);
    // A saturated value only counts as a limit once it has survived a full
    // period of the tail.
    let inf_window = window.max(w.cycle_part().len());
    let mut values: Vec<XReal> = Vec::with_capacity(max_steps.min(1 << 16));

    let finish = |status, limit, cycle, values: Vec<XReal>| TowerReport {
        status,
        limit,
        cycle,
        steps_used: values.len(),
        trace: opts.keep_trace.then_some(values),
    };

    for n in 1..=max_steps {
        values.push(truncation_value(base, w, n).expect("infinite words never run out"));
        let len = values.len();

        if len >= inf_window {
            let tail = &values[len - inf_window..];
            if all_equal_to(tail, XReal::POS_INF) {
                return finish(
                    TowerStatus::ConvergedPlusInf,
                    Some(XReal::POS_INF),
                    None,
                    values,
                );
            }
            if all_equal_to(tail, XReal::NEG_INF) {
                return finish(
                    TowerStatus::ConvergedMinusInf,
                    Some(XReal::NEG_INF),
                    None,
                    values,
                );
            }
        }

        if len >= window {
            let tail = &values[len - window..];
            let last = tail[window - 1];
            if last.is_finite() && tail.iter().all(|&v| close(v, last, opts.tol)) {
                return finish(TowerStatus::ConvergedFinite, Some(last), None, values);
            }
        }

        if len >= window + 2 {
            let tail = &values[len - window - 2..];
            let period_two = (0..window).all(|i| close(tail[i + 2], tail[i], opts.tol));
            let not_period_one = (0..window + 1)
                .all(|i| !close(tail[i + 1], tail[i], TWO_CYCLE_SEPARATION * opts.tol));
            let finite = tail.iter().all(|v| v.is_finite());
            if finite && period_two && not_period_one {
                let (a, b) = (tail[window].value(), tail[window + 1].value());
                let cycle = CyclePair {
                    p: a.min(b),
                    q: a.max(b),
                };
                return finish(TowerStatus::TwoCycle, None, Some(cycle), values);
            }
        }
    }

    finish(TowerStatus::Undetermined, None, None, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;
    use std::f64::consts::E;

    fn b(a: f64) -> Base {
        Base::new(a).unwrap()
    }

    fn iw(s: &str) -> InfiniteWord {
        parse_word(s).unwrap().as_infinite().unwrap().clone()
    }

    fn fw(s: &str) -> FiniteWord {
        parse_word(s).unwrap().as_finite().unwrap().clone()
    }

    fn x(v: f64) -> XReal {
        XReal::new(v).unwrap()
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncation_value(b(1.0), &iw("(-)"), 0).unwrap(), XReal::ONE);
        let v = truncation_value(b(1.0), &iw("(-)"), 2).unwrap().value();
        assert!((v - (-(-E).exp())).abs() < 1e-15);
        assert!((v + 0.065_988_0).abs() < 1e-6);
        let v = truncation_value(b(1.0), &iw("(+)"), 3).unwrap().value();
        assert!((v - E.exp().exp()).abs() < 1e-6 * v);
        assert!((v / 3.8143e6 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn truncation_needs_enough_signs() {
        assert_eq!(
            truncation_value(b(1.0), &fw("+-"), 3),
            Err(Error::InsufficientSigns {
                needed: 3,
                available: 2
            })
        );
        assert!(truncation_value(b(1.0), &fw("+-"), 2).is_ok());
    }

    #[test]
    fn image_interval_examples() {
        assert_eq!(image_interval(b(1.0), &fw("")), Interval::whole_line());
        assert_eq!(
            image_interval(b(2.0), &fw("+")),
            Interval::new(XReal::ZERO, XReal::POS_INF).unwrap()
        );
        assert_eq!(
            image_interval(b(1.0), &fw("+-")),
            Interval::new(XReal::ZERO, XReal::ONE).unwrap()
        );
    }

    #[test]
    fn interval_sequence_examples() {
        let seq = interval_sequence(b(3.0), &iw("(-)"), 3);
        assert_eq!(seq[0], Interval::new(XReal::NEG_INF, XReal::ZERO).unwrap());
        assert_eq!(seq[1], Interval::new(x(-1.0), XReal::ZERO).unwrap());
        assert_eq!(seq[2].lo, x(-1.0));
        assert!((seq[2].hi.value() + (-3.0f64).exp()).abs() < 1e-16);

        let seq = interval_sequence(b(1.0), &iw("(+)"), 2);
        assert_eq!(seq[0], Interval::new(XReal::ZERO, XReal::POS_INF).unwrap());
        assert_eq!(seq[1], Interval::new(XReal::ONE, XReal::POS_INF).unwrap());
    }

    #[test]
    fn limit_interval_first_step_is_first_sign_image() {
        for w in ["(+)", "-(+)", "(-+)"] {
            let w = iw(w);
            assert_eq!(
                limit_interval(b(0.7), &w, 1),
                image_interval(b(0.7), &w.prefix(1))
            );
        }
    }

    #[test]
    fn limit_interval_shrinks_for_suitable_base() {
        let i = limit_interval(b(1.0), &iw("(-)"), 200);
        assert!(i.width().value() < 1e-9);
        assert!(i.contains(x(-0.567_143_290_409_783_8)) || (i.lo.value() + 0.567_143).abs() < 1e-6);
    }

    #[test]
    fn limit_interval_stays_wide_for_large_base() {
        let w200 = limit_interval(b(3.0), &iw("(-)"), 1000).width().value();
        let w400 = limit_interval(b(3.0), &iw("(-)"), 2000).width().value();
        assert!(w200 > 0.1);
        assert!((w200 - w400).abs() < 1e-12);
    }

    #[test]
    fn classify_all_minus_at_one_converges() {
        let r = classify(b(1.0), &iw("(-)"), ClassifyOptions::default());
        assert_eq!(r.status, TowerStatus::ConvergedFinite);
        // Root of x + e^x = 0 (omega constant, negated).
        assert!((r.limit.unwrap().value() + 0.567_143_290_409_783_8).abs() < 1e-10);
        assert!(r.cycle.is_none());
    }

    #[test]
    fn classify_all_minus_at_three_is_two_cycle() {
        let r = classify(b(3.0), &iw("(-)"), ClassifyOptions::default());
        assert_eq!(r.status, TowerStatus::TwoCycle);
        assert!(r.limit.is_none());
        let c = r.cycle.unwrap();
        assert!(c.p < c.q);
        let f = |v: f64| -(3.0 * v).exp();
        assert!((f(c.p) - c.q).abs() < 1e-10);
        assert!((f(c.q) - c.p).abs() < 1e-10);
    }

    #[test]
    fn classify_all_plus_diverges_above_threshold() {
        let r = classify(b(1.0), &iw("(+)"), ClassifyOptions::default().with_trace());
        assert_eq!(r.status, TowerStatus::ConvergedPlusInf);
        assert_eq!(r.limit, Some(XReal::POS_INF));
        let trace = r.trace.unwrap();
        assert_eq!(trace.len(), r.steps_used);
        assert!(trace.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn classify_minus_infinity() {
        let r = classify(b(1.0), &iw("-(+)"), ClassifyOptions::default());
        assert_eq!(r.status, TowerStatus::ConvergedMinusInf);
    }

    #[test]
    fn classify_gives_up_when_budget_is_small() {
        // Near the neutral base the alternating sequence creeps in slowly.
        let r = classify(
            b(E * 0.999),
            &iw("(-)"),
            ClassifyOptions::default().with_max_steps(20),
        );
        assert_eq!(r.status, TowerStatus::Undetermined);
        assert_eq!(r.steps_used, 20);
    }

    #[test]
    fn prefix_functoriality() {
        let base = b(0.9);
        let g = fw("+-+");
        for h in ["", "-", "+-", "--+"] {
            let h = fw(h);
            let lhs = image_interval(base, &g.concat(&h));
            let rhs = map_interval(base, &g, &image_interval(base, &h));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn interiors() {
        let a = Interval::new(x(0.0), x(1.0)).unwrap();
        let c = Interval::new(x(1.0), x(2.0)).unwrap();
        let d = Interval::new(x(0.5), x(2.0)).unwrap();
        assert!(a.interiors_disjoint(&c));
        assert!(!a.interiors_disjoint(&d));
        assert!(Interval::singleton(x(0.5)).interiors_disjoint(&a));
        assert!(Interval::new(x(1.0), x(0.0)).is_err());
    }
}
