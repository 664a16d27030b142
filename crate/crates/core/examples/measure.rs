//! Weighted measure of intervals before and after one step, a = 1, λ = 1.
//!
//!     cargo run --example measure

use exptower::analysis::measure::finite_interval;
use exptower::analysis::{contraction_check, PhiFamily};
use exptower::Base;

fn main() {
    let base = Base::new(1.0).unwrap();
    let quad = PhiFamily::Quad { lambda: 1.0 };
    let pow = PhiFamily::Pow { a: 1.0, nu: 2.0 };
    println!(
        "total measure: quad {:.6}, pow {:.6}",
        quad.total(),
        pow.total()
    );
    for (lo, hi) in [
        (-10.0, 10.0),
        (-1.0, 1.0),
        (0.0, 0.5),
        (2.0, 3.0),
        (-8.0, -7.0),
    ] {
        let i = finite_interval(lo, hi);
        for (name, family) in [("quad", quad), ("pow", pow)] {
            let c = contraction_check(base, &family, &i);
            println!(
                "[{lo:>5}, {hi:>5}] {name:>4}: {:.6} -> {:.6} (ratio {:.4})",
                c.m_before,
                c.m_after_plus,
                c.m_after_plus / c.m_before
            );
        }
    }
}
