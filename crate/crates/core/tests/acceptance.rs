//! Acceptance criteria, each checked against an oracle written here rather
//! than against the library's own helpers. Prints one line per criterion
//! and exits non-zero if any fails.

use std::f64::consts::{E, PI};
use std::process::ExitCode;

use exptower::analysis::measure::finite_interval;
use exptower::analysis::{
    atlas_build, certify_pow, certify_quad_with_lambda, constants_ab, contraction_check,
    quad_range_endpoints, scan_quad_extended, GridSpec, Membership, PhiFamily, Witness,
};
use exptower::evaluator::{classify, image_interval, limit_interval, ClassifyOptions, TowerStatus};
use exptower::representer::{expand, roundtrip};
use exptower::selftest::{run_all, DEFAULT_SEED};
use exptower::{parse_word, Base, FiniteWord, InfiniteWord, Sign, XReal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `±exp(a x)` on the extended line, straight from the definition.
fn step(sign: Sign, a: f64, x: f64) -> f64 {
    let y = (a * x).exp();
    match sign {
        Sign::Plus => y,
        Sign::Minus => -y,
    }
}

/// `f_{s_1} ∘ ... ∘ f_{s_n}(x)`.
fn compose(signs: &[Sign], a: f64, x: f64) -> f64 {
    signs.iter().rev().fold(x, |acc, &s| step(s, a, acc))
}

fn base(a: f64) -> Base {
    Base::new(a).unwrap()
}

fn infinite(text: &str) -> InfiniteWord {
    parse_word(text).unwrap().as_infinite().unwrap().clone()
}

fn random_signs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Sign> {
    (0..n)
        .map(|_| {
            if rng.random_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng) -> InfiniteWord {
    let p = rng.random_range(0..=6);
    let prefix = random_signs(rng, p);
    let c = rng.random_range(1..=4);
    let cycle = random_signs(rng, c);
    InfiniteWord::new(FiniteWord::new(prefix), FiniteWord::new(cycle)).unwrap()
}

fn random_base(rng: &mut ChaCha8Rng) -> f64 {
    match rng.random_range(0..3) {
        0 => rng.random_range(0.02..=1.0 / E),
        1 => rng.random_range(1.0 / E..E),
        _ => rng.random_range(E..6.0),
    }
}

fn signs_of(w: &InfiniteWord, n: usize) -> Vec<Sign> {
    (1..=n).map(|k| w.sign_at(k)).collect()
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_constants() -> Check {
    // f(a) = e  <=>  ln(a+1) - ln(a)/(a+1) - 1 = 0
    let g = |a: f64| (a + 1.0).ln() - a.ln() / (a + 1.0) - 1.0;
    let a_oracle = bisect(g, 1e-6, 1.0);
    let b_oracle = bisect(g, 1.0, 4.0);
    let c = constants_ab(1e-15);
    ensure(
        (c.a - 0.3942).abs() < 5e-5
            && (c.b - 2.5367).abs() < 5e-5
            && (c.a * c.b - 1.0).abs() < 1e-9
            && (c.a - a_oracle).abs() < 1e-12
            && (c.b - b_oracle).abs() < 1e-12,
        format!(
            "A = {:.8}, B = {:.8}, A·B - 1 = {:.1e}",
            c.a,
            c.b,
            c.a * c.b - 1.0
        ),
    )
}

fn c2_quad_range() -> Check {
    let s3 = 3f64.sqrt();
    let left = (2.0 - s3) * s3.exp();
    let right = (2.0 + s3) * (-s3).exp();
    let (l, r) = quad_range_endpoints();
    ensure(
        (l - 1.51).abs() < 5e-3
            && (r - 0.66).abs() < 5e-3
            && (l - left).abs() < 1e-14
            && (r - right).abs() < 1e-14,
        format!("{l:.6}, {r:.6}"),
    )
}

fn c3_extended_scan() -> Check {
    let t_star = bisect(|t: f64| t - 2.0 * t.tanh(), 1.0, 3.0);
    let a_oracle = (2.0 - t_star) * t_star.exp();
    let s = scan_quad_extended();
    ensure(
        (s.a_low - 0.577).abs() < 5e-3 && (s.a_low - a_oracle).abs() < 1e-9,
        format!("a_low = {:.6} (oracle {a_oracle:.6})", s.a_low),
    )
}

fn c4_simple_certificate() -> Check {
    let n = 100_000;
    let oracle_min = (0..n)
        .map(|k| -40.0 + 80.0 * k as f64 / (n - 1) as f64)
        .map(|y: f64| (-y).exp() + y.exp() - 1.0 - y * y)
        .fold(f64::INFINITY, f64::min);
    let cert = certify_quad_with_lambda(
        base(1.0),
        1.0,
        &GridSpec {
            lo: -40.0,
            hi: 40.0,
            points: n,
        },
    );
    let lib_min = cert.grid_min.unwrap_or(f64::NEG_INFINITY);
    ensure(
        oracle_min >= 1.0 - 1e-12 && lib_min >= 1.0 - 1e-12 && cert.verdict,
        format!("grid min {lib_min:.15} (oracle {oracle_min:.15})"),
    )
}

fn c5_roundtrip() -> Check {
    let mut worst = 0.0f64;
    for t in [
        0.0,
        f64::INFINITY,
        f64::NEG_INFINITY,
        1.0,
        -1.0,
        E,
        -PI,
        0.5,
    ] {
        let r = roundtrip(base(1.0), XReal::new(t).unwrap(), 200, 1e-6);
        let e = expand(base(1.0), XReal::new(t).unwrap(), 200);
        let u = compose(e.signs.signs(), 1.0, 1.0);
        let oracle = if u == t { 0.0 } else { (u - t).abs() };
        // The tail envelope must not rise above the middle of the trace.
        let values: Vec<f64> = r.residuals.iter().map(|v| v.value()).collect();
        let late = values[150..].iter().copied().fold(0.0, f64::max);
        let middle = values[100..150].iter().copied().fold(0.0, f64::max);
        worst = worst.max(oracle);
        if !(oracle < 1e-6
            && r.final_residual.value() < 1e-6
            && r.eventually_decreasing
            && late <= middle.max(1e-15))
        {
            return Err(format!(
                "t = {t}: oracle residual {oracle:e}, library {}",
                r.final_residual
            ));
        }
    }
    Ok(format!("worst final residual {worst:.2e}"))
}

fn c6_small_base_failure() -> Check {
    let a = 0.3;
    let m = bisect(|x: f64| (a * x).exp() - x, 0.0, 1.0 / a);
    let oracle = compose(&[Sign::Plus, Sign::Plus, Sign::Minus], a, m);
    let e = expand(base(a), XReal::ONE, 60);
    let w = e
        .word
        .as_infinite()
        .ok_or("expansion of 1 is not eventually periodic")?;
    let report = classify(base(a), w, ClassifyOptions::default());
    let limit = report.limit.map(|v| v.value()).unwrap_or(f64::NAN);
    let membership = atlas_build(base(a), 1)
        .map_err(|e| e.to_string())?
        .membership(XReal::ONE);
    let witness_plus = matches!(&membership, Membership::InX { witness: Witness::Word(g), .. } if g.to_string() == "+");
    ensure(
        (limit - oracle).abs() < 1e-6 && (limit - 1.0).abs() > 0.1 && witness_plus,
        format!(
            "word {}, limit {limit:.10}, f_(++-)(m) = {oracle:.10}, witness \"+\": {witness_plus}",
            e.word
        ),
    )
}

fn c7_small_base_convergence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let opts = ClassifyOptions::default().with_max_steps(10_000);
    let mut most = 0;
    for _ in 0..100 {
        let w = random_word(&mut rng);
        let r = classify(base(0.3), &w, opts);
        if !r.status.is_converged() || r.steps_used > 10_000 {
            return Err(format!("{w}: {:?} after {} steps", r.status, r.steps_used));
        }
        most = most.max(r.steps_used);
    }
    Ok(format!("100 words converged, at most {most} steps"))
}

fn c8_large_base_divergence() -> Check {
    let a = 3.0;
    let g = |x: f64| step(Sign::Minus, a, x);
    let mut x = 0.0;
    for _ in 0..100_000 {
        x = g(x);
    }
    let (op, oq) = (x.min(g(x)), x.max(g(x)));
    let w = infinite("(-)");
    let r = classify(base(a), &w, ClassifyOptions::default());
    if r.status != TowerStatus::TwoCycle {
        return Err(format!("status {:?}", r.status));
    }
    let c = r.cycle.ok_or("no cycle reported")?;
    let residual = (g(c.p) - c.q).abs().max((g(c.q) - c.p).abs());
    let li = limit_interval(base(a), &w, 2_000);
    let gap = (li.lo.value() - c.p).abs().max((li.hi.value() - c.q).abs());
    let oracle_gap = (c.p - op).abs().max((c.q - oq).abs());
    let mid = 0.5 * (c.p + c.q);
    let lib_minus = expand(base(a), XReal::new(mid).unwrap(), 100)
        .signs
        .signs()
        .iter()
        .take_while(|&&s| s == Sign::Minus)
        .count();
    let mut u = mid;
    let mut oracle_minus = 0;
    while u < 0.0 && oracle_minus < 100 {
        u = (-u).ln() / a;
        oracle_minus += 1;
    }
    ensure(
        residual < 1e-10 && gap < 1e-8 && oracle_gap < 1e-10 && lib_minus >= 60 && oracle_minus >= 60,
        format!("p = {:.10}, q = {:.10}, residual {residual:.1e}, interval gap {gap:.1e}, leading minus {lib_minus}", c.p, c.q),
    )
}

fn c9_disjoint_interiors() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut pairs = 0;
    while pairs < 500 {
        let a = random_base(&mut rng);
        let (w, v) = (random_word(&mut rng), random_word(&mut rng));
        let Some(n0) = (1..=60).find(|&k| w.sign_at(k) != v.sign_at(k)) else {
            continue;
        };
        pairs += 1;
        for n in n0..=30 {
            let i = image_interval(base(a), &w.prefix(n));
            let j = image_interval(base(a), &v.prefix(n));
            let disjoint = i.hi <= j.lo || j.hi <= i.lo;
            if !disjoint {
                return Err(format!("a = {a}, {w} vs {v}, n = {n}: {i:?} {j:?}"));
            }
        }
    }
    Ok("500 pairs".into())
}

fn c10_nesting() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for _ in 0..500 {
        let a = random_base(&mut rng);
        let w = random_word(&mut rng);
        let mut prev = (f64::NEG_INFINITY, f64::INFINITY);
        for n in 1..=50 {
            let i = image_interval(base(a), &w.prefix(n));
            let (lo, hi) = (i.lo.value(), i.hi.value());
            let u = compose(&signs_of(&w, n), a, 1.0);
            if !(prev.0 <= lo && hi <= prev.1 && lo <= u && u <= hi) {
                return Err(format!("a = {a}, {w}, n = {n}: u = {u}, I = [{lo}, {hi}]"));
            }
            prev = (lo, hi);
        }
    }
    Ok("500 (a, word) pairs, n ≤ 50".into())
}

fn c11_measure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let family = PhiFamily::Quad { lambda: 1.0 };
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (x, y) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let (lo, hi) = (f64::min(x, y), f64::max(x, y));
        if lo == hi {
            continue;
        }
        let before = hi.atan() - lo.atan();
        let after = hi.exp().atan() - lo.exp().atan();
        let c = contraction_check(base(1.0), &family, &finite_interval(lo, hi));
        worst = worst.max(c.m_after_plus / c.m_before);
        let agrees = (c.m_before - before).abs() < 1e-12 && (c.m_after_plus - after).abs() < 1e-12;
        if !(agrees
            && after < before
            && c.m_after_plus < c.m_before
            && c.m_after_minus < c.m_before
            && c.m_after_plus == c.m_after_minus)
        {
            return Err(format!("[{lo}, {hi}]: {c:?}, oracle {before} -> {after}"));
        }
    }
    Ok(format!("1000 intervals, worst ratio {worst:.6}"))
}

fn c12_pow_boundary() -> Check {
    let f = |a: f64| (a + 1.0) * a.powf(-1.0 / (a + 1.0));
    for (a, want) in [
        (0.40, true),
        (1.0, true),
        (2.0, true),
        (2.53, true),
        (0.39, false),
        (2.54, false),
    ] {
        let lib = certify_pow(base(a)).verdict;
        let oracle = f(a) <= E;
        if lib != want || oracle != want {
            return Err(format!(
                "a = {a}: library {lib}, oracle {oracle}, expected {want}"
            ));
        }
    }
    Ok("verdicts true at 0.40, 1, 2, 2.53 and false at 0.39, 2.54".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("constants A and B", c1_constants),
        ("quadratic range endpoints", c2_quad_range),
        ("extended scan", c3_extended_scan),
        ("simple certificate", c4_simple_certificate),
        ("round trip at a = 1", c5_roundtrip),
        ("small-base failure", c6_small_base_failure),
        ("small-base convergence", c7_small_base_convergence),
        ("large-base divergence", c8_large_base_divergence),
        ("disjoint interiors", c9_disjoint_interiors),
        ("nesting and membership", c10_nesting),
        ("measure contraction", c11_measure),
        ("power-family boundary", c12_pow_boundary),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    let selftest_failures: Vec<u32> = run_all(DEFAULT_SEED)
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    if selftest_failures.is_empty() {
        println!("selftest      PASS  built-in checks agree");
    } else {
        failed += 1;
        println!("selftest      FAIL  criteria {selftest_failures:?}");
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed.min(criteria.len()),
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
