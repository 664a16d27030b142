//! Sign expansions and round trips, for a base where they work (a = 1) and
//! one where they do not (a = 0.3).
//!
//!     cargo run --example expansions

use std::f64::consts::{E, PI};

use exptower::{alternate_expansion, expand, roundtrip, Base, XReal};

fn main() {
    let one = Base::new(1.0).unwrap();
    for t in [0.0, 1.0, -1.0, E, -PI, 0.5, f64::INFINITY] {
        let t = XReal::new(t).unwrap();
        let e = expand(one, t, 30);
        let r = roundtrip(one, t, 200, 1e-6);
        println!(
            "a = 1, t = {t}: {} ... final residual {} ({:?})",
            e.signs, r.final_residual, r.verdict
        );
        if let Some(alt) = alternate_expansion(one, t, 30) {
            println!("    second expansion {}", alt.word);
        }
    }

    let small = Base::new(0.3).unwrap();
    let r = roundtrip(small, XReal::ONE, 200, 1e-6);
    println!(
        "a = 0.3, t = 1: word {} evaluates {} away ({:?})",
        r.word, r.final_residual, r.verdict
    );
}
