//! Built-in acceptance checks, run by `exptower selftest`.
//!
//! Every criterion is deterministic for a given seed.

use std::f64::consts::E;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::measure::finite_interval;
use crate::analysis::{
    atlas_build, certify_pow, certify_quad_with_lambda, constants_ab, contraction_check,
    plus_fixed_points, quad_range_endpoints, scan_quad_extended, GridSpec, Membership, PhiFamily,
    Witness,
};
use crate::evaluator::{
    classify, compose, image_interval, limit_interval, truncation_value, ClassifyOptions,
    TowerStatus,
};
use crate::representer::{expand, roundtrip};
use crate::words::{parse_word, FiniteWord, InfiniteWord};
use crate::xreal::{Base, Sign, XReal};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(id: u32, name: &'static str, passed: bool, detail: String) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
    }
}

fn base(a: f64) -> Base {
    Base::new(a).expect("positive base")
}

fn word(text: &str) -> InfiniteWord {
    parse_word(text)
        .ok()
        .and_then(|w| w.as_infinite().cloned())
        .expect("valid infinite word")
}

/// An eventually periodic word with prefix length `<= max_prefix` and cycle
/// length in `1..=max_cycle`.
pub fn random_word<R: Rng>(rng: &mut R, max_prefix: usize, max_cycle: usize) -> InfiniteWord {
    fn signs<R: Rng>(rng: &mut R, n: usize) -> FiniteWord {
        FiniteWord::new(
            (0..n)
                .map(|_| {
                    if rng.random_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect(),
        )
    }
    let p = rng.random_range(0..=max_prefix);
    let prefix = signs(rng, p);
    let c = rng.random_range(1..=max_cycle);
    let cycle = signs(rng, c);
    InfiniteWord::new(prefix, cycle).expect("nonempty cycle")
}

pub fn constants() -> CriterionOutcome {
    let c = constants_ab(1e-15);
    let passed = (c.a - 0.3942).abs() < 5e-5
        && (c.b - 2.5367).abs() < 5e-5
        && (c.product - 1.0).abs() < 1e-9;
    outcome(
        1,
        "constants A and B",
        passed,
        format!("A = {:.10}, B = {:.10}, A·B = {:.3e}", c.a, c.b, c.product),
    )
}

pub fn quad_range() -> CriterionOutcome {
    let (left, right) = quad_range_endpoints();
    let passed = (left - 1.51).abs() < 5e-3 && (right - 0.66).abs() < 5e-3;
    outcome(
        2,
        "quadratic-family range endpoints",
        passed,
        format!("(2-√3)e^√3 = {left:.6}, (2+√3)e^-√3 = {right:.6}"),
    )
}

pub fn extended_scan() -> CriterionOutcome {
    let s = scan_quad_extended();
    let passed = (s.a_low - 0.577).abs() < 5e-3;
    outcome(
        3,
        "extended quadratic scan",
        passed,
        format!("t* = {:.8}, a_low = {:.8}", s.t_star, s.a_low),
    )
}

pub fn simple_certificate() -> CriterionOutcome {
    let c = certify_quad_with_lambda(base(1.0), 1.0, &GridSpec::default());
    let min = c.grid_min.unwrap_or(f64::NEG_INFINITY);
    let passed = min >= 1.0 - 1e-12;
    outcome(
        4,
        "simple certificate a = 1, λ = 1",
        passed,
        format!("grid min of F = {min:.15}"),
    )
}

pub fn suitable_roundtrip() -> CriterionOutcome {
    let targets = [
        0.0,
        f64::INFINITY,
        f64::NEG_INFINITY,
        1.0,
        -1.0,
        E,
        -std::f64::consts::PI,
        0.5,
    ];
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for t in targets {
        let r = roundtrip(base(1.0), XReal::new(t).expect("not NaN"), 200, 1e-6);
        worst = worst.max(r.final_residual.value());
        if !(r.final_residual.value() < 1e-6 && r.eventually_decreasing) {
            failures.push(format!("t = {t}: residual {}", r.final_residual));
        }
    }
    let detail = if failures.is_empty() {
        format!("worst final residual {worst:.3e}")
    } else {
        failures.join("; ")
    };
    outcome(5, "round trip at a = 1", failures.is_empty(), detail)
}

pub fn small_base_failure() -> CriterionOutcome {
    let b = base(0.3);
    let m = match plus_fixed_points(b) {
        Ok(fp) => fp.m,
        Err(e) => return outcome(6, "small-base failure at a = 0.3", false, e.to_string()),
    };
    let expected = compose(
        b,
        &FiniteWord::new(vec![Sign::Plus, Sign::Plus, Sign::Minus]),
        XReal::new(m).expect("finite"),
    );
    let expansion = expand(b, XReal::ONE, 50);
    let report = match expansion.word.as_infinite() {
        Some(w) => classify(b, w, ClassifyOptions::default()),
        None => {
            return outcome(
                6,
                "small-base failure at a = 0.3",
                false,
                "expansion of 1 has no periodic tail".into(),
            )
        }
    };
    let limit = report.limit.unwrap_or(XReal::POS_INF);
    let witness_ok = match atlas_build(b, 1).map(|a| a.membership(XReal::ONE)) {
        Ok(Membership::InX {
            witness: Witness::Word(w),
            ..
        }) => w.to_string() == "+",
        _ => false,
    };
    let passed = report.status == TowerStatus::ConvergedFinite
        && limit.distance(expected).value() < 1e-6
        && limit.distance(XReal::ONE).value() > 0.1
        && witness_ok;
    outcome(
        6,
        "small-base failure at a = 0.3",
        passed,
        format!(
            "word {}, limit {limit}, f_(++-)(m) = {expected}, witness ok: {witness_ok}",
            expansion.word
        ),
    )
}

pub fn small_base_convergence(seed: u64) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = base(0.3);
    let opts = ClassifyOptions::default().with_max_steps(10_000);
    let mut bad = Vec::new();
    let mut max_steps = 0;
    for _ in 0..100 {
        let w = random_word(&mut rng, 6, 4);
        let r = classify(b, &w, opts);
        max_steps = max_steps.max(r.steps_used);
        if !r.status.is_converged() {
            bad.push(w.to_string());
        }
    }
    let detail = if bad.is_empty() {
        format!("100/100 converged, at most {max_steps} steps")
    } else {
        format!("not converged: {}", bad.join(", "))
    };
    outcome(7, "all words converge at a = 0.3", bad.is_empty(), detail)
}

pub fn large_base_divergence() -> CriterionOutcome {
    let b = base(3.0);
    let w = word("(-)");
    let r = classify(b, &w, ClassifyOptions::default());
    let Some(cycle) = r.cycle.filter(|_| r.status == TowerStatus::TwoCycle) else {
        return outcome(
            8,
            "two-cycle at a = 3",
            false,
            format!("status {:?}", r.status),
        );
    };
    let f = |x: f64| -(3.0 * x).exp();
    let residual = (f(cycle.p) - cycle.q)
        .abs()
        .max((f(cycle.q) - cycle.p).abs());
    let interval = limit_interval(b, &w, 2_000);
    let endpoint_gap = (interval.lo.value() - cycle.p)
        .abs()
        .max((interval.hi.value() - cycle.q).abs());
    let mid = XReal::new(0.5 * (cycle.p + cycle.q)).expect("finite");
    let e = expand(b, mid, 100);
    let leading_minus = e
        .signs
        .signs()
        .iter()
        .take_while(|&&s| s == Sign::Minus)
        .count();
    let passed = residual < 1e-10 && endpoint_gap < 1e-8 && leading_minus >= 60;
    outcome(
        8,
        "two-cycle at a = 3",
        passed,
        format!("p = {:.12}, q = {:.12}, residual {residual:.2e}, endpoint gap {endpoint_gap:.2e}, leading minus {leading_minus}", cycle.p, cycle.q),
    )
}

pub fn disjoint_interiors(seed: u64) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(9));
    let mut checked = 0;
    let mut failures = Vec::new();
    while checked < 500 {
        let a = rng.random_range(0.05..6.0);
        let w = random_word(&mut rng, 6, 4);
        let v = random_word(&mut rng, 6, 4);
        let Some(n0) = w.first_difference(&v) else {
            continue;
        };
        checked += 1;
        let b = base(a);
        for n in n0.max(1)..=30.max(n0) {
            let i = image_interval(b, &w.prefix(n));
            let j = image_interval(b, &v.prefix(n));
            if !i.interiors_disjoint(&j) {
                failures.push(format!("a = {a}, {w} vs {v} at n = {n}"));
                break;
            }
        }
    }
    let detail = if failures.is_empty() {
        "500 pairs".to_string()
    } else {
        failures.join("; ")
    };
    outcome(9, "disjoint interiors", failures.is_empty(), detail)
}

/// Draws a base from one of the three regimes `(0, 1/e]`, `(1/e, e]`, `(e, 6)`.
pub fn random_base<R: Rng>(rng: &mut R) -> Base {
    let a = match rng.random_range(0..3) {
        0 => rng.random_range(0.02..=(-1.0f64).exp()),
        1 => rng.random_range((-1.0f64).exp()..E),
        _ => rng.random_range(E..6.0),
    };
    base(a)
}

pub fn nesting_membership(seed: u64) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(10));
    let mut failures = Vec::new();
    for _ in 0..500 {
        let b = random_base(&mut rng);
        let w = random_word(&mut rng, 6, 4);
        let mut previous = image_interval(b, &FiniteWord::empty());
        for n in 1..=50 {
            let current = image_interval(b, &w.prefix(n));
            let u = truncation_value(b, &w, n).expect("infinite word");
            if !current.is_subset_of(&previous) || !current.contains(u) {
                failures.push(format!("a = {b}, {w}, n = {n}"));
                break;
            }
            previous = current;
        }
    }
    let detail = if failures.is_empty() {
        "500 (a, word) pairs, n ≤ 50".to_string()
    } else {
        failures.join("; ")
    };
    outcome(10, "nesting and membership", failures.is_empty(), detail)
}

pub fn measure_contraction(seed: u64) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(11));
    let family = PhiFamily::Quad { lambda: 1.0 };
    let b = base(1.0);
    let mut failures = 0;
    let mut worst_ratio = 0.0f64;
    for _ in 0..1000 {
        let x = rng.random_range(-10.0..10.0);
        let y = rng.random_range(-10.0..10.0);
        if x == y {
            continue;
        }
        let c = contraction_check(b, &family, &finite_interval(x, y));
        worst_ratio = worst_ratio.max(c.m_after_plus / c.m_before);
        if !(c.m_after_plus < c.m_before
            && c.m_after_minus < c.m_before
            && c.m_after_plus == c.m_after_minus)
        {
            failures += 1;
        }
    }
    outcome(
        11,
        "measure contraction a = 1, λ = 1",
        failures == 0,
        format!("{failures} failures, worst ratio {worst_ratio:.6}"),
    )
}

pub fn certificate_boundary() -> CriterionOutcome {
    let expect_true = [0.40, 1.0, 2.0, 2.53];
    let expect_false = [0.39, 2.54];
    let wrong: Vec<String> = expect_true
        .iter()
        .filter(|&&a| !certify_pow(base(a)).verdict)
        .chain(
            expect_false
                .iter()
                .filter(|&&a| certify_pow(base(a)).verdict),
        )
        .map(|a| a.to_string())
        .collect();
    let detail = if wrong.is_empty() {
        "all verdicts as expected".to_string()
    } else {
        format!("wrong verdict at {}", wrong.join(", "))
    };
    outcome(12, "power-family boundary", wrong.is_empty(), detail)
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        constants(),
        quad_range(),
        extended_scan(),
        simple_certificate(),
        suitable_roundtrip(),
        small_base_failure(),
        small_base_convergence(seed),
        large_base_divergence(),
        disjoint_interiors(seed),
        nesting_membership(seed),
        measure_contraction(seed),
        certificate_boundary(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_criteria_pass() {
        for o in run_all(DEFAULT_SEED) {
            assert!(o.passed, "criterion {} ({}): {}", o.id, o.name, o.detail);
        }
    }

    #[test]
    fn random_words_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let w = random_word(&mut rng, 6, 4);
            assert!(w.prefix_part().len() <= 6);
            assert!((1..=4).contains(&w.cycle_part().len()));
        }
    }
}
