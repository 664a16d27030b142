//! Sign expansions of a target value.
//!
//! The expansion walks the target backwards: `u_0 = t`, then at each step
//! picks the sign whose map has `u_k` in its image and sets
//! `u_{k+1} = f_σ^{-1}(u_k)`. Every truncation interval of the resulting
//! word contains `t`.

use serde::Serialize;

use crate::evaluator::truncation_value;
use crate::words::{FiniteWord, InfiniteWord, Word};
use crate::xreal::{inverse_sign, Base, Sign, XReal};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expansion {
    /// `prefix(+)` when the orbit reached the absorbing `-inf, +inf, +inf, ...`
    /// tail, otherwise the first `n_signs` signs.
    pub word: Word,
    /// The first `n_signs` signs, whatever the form of `word`.
    pub signs: FiniteWord,
    /// `u_0 = t, u_1, ..., u_{n_signs}`.
    pub orbit: Vec<XReal>,
    /// Index `k` with `u_k = 0`, where both signs are admissible.
    pub hit_zero_at: Option<usize>,
    pub tail_periodic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Represented,
    NotRepresented,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundTrip {
    pub target: XReal,
    pub word: Word,
    /// `|u_n - t|` for `n = 1..=n_signs`.
    pub residuals: Vec<XReal>,
    pub final_residual: XReal,
    pub eventually_decreasing: bool,
    pub verdict: Verdict,
}

fn greedy_sign(u: XReal) -> Sign {
    if u >= XReal::ZERO {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Builds the expansion; `zero_choice` overrides the sign taken at an
/// exact zero of the orbit.
fn expand_with(base: Base, t: XReal, n_signs: usize, zero_choice: Sign) -> Expansion {
    let n_signs = n_signs.max(1);
    let mut signs = FiniteWord::empty();
    let mut orbit = Vec::with_capacity(n_signs + 1);
    let mut hit_zero_at = None;
    let mut periodic_from = None;
    let mut u = t;
    orbit.push(u);

    for k in 0..n_signs {
        if u == XReal::POS_INF && periodic_from.is_none() {
            // +inf only has the preimage +inf under f_+; the rest is forced.
            periodic_from = Some(k);
        }
        let sign = if u == XReal::ZERO {
            hit_zero_at.get_or_insert(k);
            zero_choice
        } else {
            greedy_sign(u)
        };
        u = inverse_sign(sign, base, u).expect("sign chosen to match the side of u");
        signs.push(sign);
        orbit.push(u);
    }
    if periodic_from.is_none() && u == XReal::POS_INF {
        periodic_from = Some(n_signs);
    }

    let word = match periodic_from {
        Some(k) => Word::Infinite(
            InfiniteWord::new(signs.prefix(k), FiniteWord::new(vec![Sign::Plus]))
                .expect("nonempty cycle"),
        ),
        None => Word::Finite(signs.clone()),
    };
    Expansion {
        word,
        signs,
        orbit,
        hit_zero_at,
        tail_periodic: periodic_from.is_some(),
    }
}

/// Canonical expansion of `t`, taking `+` at an exact zero.
pub fn expand(base: Base, t: XReal, n_signs: usize) -> Expansion {
    expand_with(base, t, n_signs, Sign::Plus)
}

/// The second expansion, which exists only when the canonical orbit passes
/// through 0: there `-` is taken instead of `+`. Both send 0 to `-inf`, so
/// the orbits agree afterwards.
pub fn alternate_expansion(base: Base, t: XReal, n_signs: usize) -> Option<Expansion> {
    let canonical = expand(base, t, n_signs);
    canonical.hit_zero_at?;
    Some(expand_with(base, t, n_signs, Sign::Minus))
}

fn residual(u: XReal, t: XReal) -> XReal {
    if t.is_infinite() {
        if u == t {
            XReal::ZERO
        } else {
            XReal::POS_INF
        }
    } else {
        u.distance(t)
    }
}

/// Checks that the residual trace has a non-increasing envelope over its
/// second half: the second half is cut into four blocks whose maxima
/// (clamped below at `floor`) must not increase.
pub fn is_eventually_decreasing(residuals: &[XReal], floor: f64) -> bool {
    let n = residuals.len();
    if n < 8 {
        return residuals
            .windows(2)
            .all(|p| p[1] <= p[0] || p[1].value() <= floor);
    }
    let tail = &residuals[n / 2..];
    let block = tail.len().div_ceil(4);
    let maxima: Vec<f64> = tail
        .chunks(block)
        .map(|c| c.iter().map(|r| r.value()).fold(floor, f64::max))
        .collect();
    maxima.windows(2).all(|p| p[1] <= p[0])
}

/// Expands `t` with `n_signs` signs, evaluates every truncation of the
/// expansion and judges whether the truncations approach `t`.
pub fn roundtrip(base: Base, t: XReal, n_signs: usize, tol: f64) -> RoundTrip {
    let expansion = expand(base, t, n_signs);
    let residuals: Vec<XReal> = (1..=expansion.signs.len())
        .map(|n| {
            let u =
                truncation_value(base, &expansion.word, n).expect("expansion has n_signs signs");
            residual(u, t)
        })
        .collect();
    let final_residual = *residuals.last().expect("at least one sign");
    let eventually_decreasing = is_eventually_decreasing(&residuals, tol * 1e-3);

    let verdict = if final_residual.value() < tol && eventually_decreasing {
        Verdict::Represented
    } else if stabilized_above(&residuals, 10.0 * tol, tol) {
        Verdict::NotRepresented
    } else {
        Verdict::Undetermined
    };

    RoundTrip {
        target: t,
        word: expansion.word,
        residuals,
        final_residual,
        eventually_decreasing,
        verdict,
    }
}

/// Last eight residuals all above `threshold` and agreeing to `tol`.
fn stabilized_above(residuals: &[XReal], threshold: f64, tol: f64) -> bool {
    const WINDOW: usize = 8;
    if residuals.len() < WINDOW {
        return false;
    }
    let tail = &residuals[residuals.len() - WINDOW..];
    let last = tail[WINDOW - 1];
    tail.iter().all(|r| r.value() > threshold)
        && (last == XReal::POS_INF && tail.iter().all(|&r| r == last)
            || last.is_finite()
                && tail
                    .iter()
                    .all(|r| (r.value() - last.value()).abs() <= tol * last.value().max(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::image_interval;
    use crate::words::parse_word;
    use crate::xreal::apply_sign;
    use std::f64::consts::E;

    fn b(a: f64) -> Base {
        Base::new(a).unwrap()
    }

    fn x(v: f64) -> XReal {
        XReal::new(v).unwrap()
    }

    #[test]
    fn expand_plus_infinity() {
        let e = expand(b(1.0), XReal::POS_INF, 5);
        assert_eq!(e.word, parse_word("(+)").unwrap());
        assert!(e.tail_periodic);
        assert!(e.orbit.iter().all(|&u| u == XReal::POS_INF));
        assert_eq!(e.orbit.len(), 6);
    }

    #[test]
    fn expand_e() {
        let e = expand(b(1.0), x(E), 6);
        assert_eq!(e.word.to_string(), "+++-(+)");
        assert_eq!(e.signs.to_string(), "+++-++");
        assert_eq!(e.hit_zero_at, Some(2));
        assert_eq!(
            e.orbit,
            vec![
                x(E),
                x(1.0),
                XReal::ZERO,
                XReal::NEG_INF,
                XReal::POS_INF,
                XReal::POS_INF,
                XReal::POS_INF
            ]
        );
    }

    #[test]
    fn expand_negative_half() {
        let e = expand(b(1.0), x(-0.5), 4);
        assert_eq!(e.signs.to_string(), "----");
        assert_eq!(expand(b(1.0), x(-0.5), 5).signs.to_string(), "----+");
        assert!(!e.tail_periodic);
        assert_eq!(e.word, Word::Finite(e.signs.clone()));
        let expected = [
            -0.5,
            -std::f64::consts::LN_2,
            -0.366_512_92,
            -1.003_721_5,
            0.003_714_6,
        ];
        for (u, want) in e.orbit.iter().zip(expected) {
            assert!((u.value() - want).abs() < 1e-7, "{u} vs {want}");
        }
        assert_eq!(alternate_expansion(b(1.0), x(-0.5), 4), None);
    }

    #[test]
    fn alternate_examples() {
        let alt = alternate_expansion(b(1.0), x(E), 6).unwrap();
        assert_eq!(alt.word.to_string(), "++--(+)");

        let alt = alternate_expansion(b(1.0), XReal::ZERO, 3).unwrap();
        assert_eq!(alt.word.to_string(), "--(+)");
        assert_eq!(expand(b(1.0), XReal::ZERO, 3).word.to_string(), "+-(+)");
    }

    #[test]
    fn expand_minus_infinity() {
        let e = expand(b(2.0), XReal::NEG_INF, 4);
        assert_eq!(e.word.to_string(), "-(+)");
    }

    #[test]
    fn orbit_is_consistent_and_contains_target() {
        let base = b(1.0);
        for t in [-3.0, -0.5, 0.2, 1.7, 40.0] {
            let t = x(t);
            let e = expand(base, t, 30);
            for (k, pair) in e.orbit.windows(2).enumerate() {
                let back = apply_sign(e.signs.sign_at(k + 1), base, pair[1]);
                if pair[0].is_finite() {
                    // exp(ln|u|) is accurate to about (1 + |ln|u||) ulp.
                    let u = pair[0].value().abs();
                    let bound = (2.0 + 2.0 * u.ln().abs()) * u * f64::EPSILON;
                    assert!(back.distance(pair[0]).value() <= bound.max(f64::MIN_POSITIVE));
                } else {
                    assert_eq!(back, pair[0]);
                }
            }
            for n in 1..=30 {
                assert!(image_interval(base, &e.signs.prefix(n)).contains(t));
            }
        }
    }

    #[test]
    fn roundtrip_plus_infinity_saturates() {
        let r = roundtrip(b(1.0), XReal::POS_INF, 10, 1e-6);
        assert_eq!(r.verdict, Verdict::Represented);
        // e, e^e, e^(e^e) are still finite; the fourth level overflows.
        assert_eq!(&r.residuals[..3], &[XReal::POS_INF; 3]);
        assert!(r.residuals[3..].iter().all(|&v| v == XReal::ZERO));
    }

    #[test]
    fn roundtrip_represented_at_one() {
        let r = roundtrip(b(1.0), x(-0.5), 200, 1e-6);
        assert_eq!(
            r.verdict,
            Verdict::Represented,
            "final {}",
            r.final_residual
        );
    }

    #[test]
    fn roundtrip_fails_for_small_base() {
        let r = roundtrip(b(0.3), XReal::ONE, 200, 1e-6);
        assert_eq!(r.word.to_string(), "++-(+)");
        assert_eq!(r.verdict, Verdict::NotRepresented);
        assert!((r.final_residual.value() - 0.2019).abs() < 1e-3);
    }

    #[test]
    fn decreasing_envelope() {
        let r: Vec<XReal> = (0..40).map(|k| x(1.0 / (k as f64 + 1.0))).collect();
        assert!(is_eventually_decreasing(&r, 0.0));
        let mut bumped = r.clone();
        bumped[39] = x(1.0);
        assert!(!is_eventually_decreasing(&bumped, 0.0));
        let noise: Vec<XReal> = (0..40)
            .map(|k| x(if k % 2 == 0 { 1e-17 } else { 2e-17 }))
            .collect();
        assert!(is_eventually_decreasing(&noise, 1e-9));
    }
}
