//! Truncations, nested intervals and convergence classes for a few words.
//!
//!     cargo run --example towers

use exptower::{classify, interval_sequence, parse_word, truncation_value, Base, ClassifyOptions};

fn main() {
    let cases = [
        (1.0, "(-)"),
        (1.0, "(+-)"),
        (0.3, "+-(+--)"),
        (1.0, "(+)"),
        (3.0, "(-)"),
        (2.0, "-+(-)"),
    ];
    for (a, text) in cases {
        let base = Base::new(a).unwrap();
        let word = parse_word(text).unwrap().as_infinite().unwrap().clone();
        let report = classify(base, &word, ClassifyOptions::default());
        println!(
            "a = {a}, word {word}: {:?} after {} steps",
            report.status, report.steps_used
        );
        if let Some(limit) = report.limit {
            println!("    limit {limit}");
        }
        if let Some(c) = report.cycle {
            println!("    two-cycle p = {:.12}, q = {:.12}", c.p, c.q);
        }
        let first: Vec<String> = (1..=6)
            .map(|n| format!("{:.6}", truncation_value(base, &word, n).unwrap().value()))
            .collect();
        println!("    u_1..u_6: {}", first.join(", "));
        let last = interval_sequence(base, &word, 40).pop().unwrap();
        println!(
            "    I(40) = [{}, {}], width {}",
            last.lo,
            last.hi,
            last.width()
        );
    }
}
