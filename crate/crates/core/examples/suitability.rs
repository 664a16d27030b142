//! Suitability verdicts over a sweep of bases.
//!
//!     cargo run --release --example suitability

use exptower::analysis::{suitability_report, Suitability};
use exptower::Base;

fn main() {
    for k in 1..=30 {
        let a = 0.1 * k as f64;
        let verdict = match suitability_report(Base::new(a).unwrap()) {
            Suitability::SuitableCertified { pow, quad } => {
                format!("suitable (pow {}, quad {})", pow.verdict, quad.verdict)
            }
            Suitability::NotSuitableSmall => "not suitable, a <= 1/e".to_string(),
            Suitability::NotSuitableLarge => "not suitable, a > e".to_string(),
            Suitability::Unknown { .. } => "no certificate".to_string(),
        };
        println!("a = {a:.1}: {verdict}");
    }
}
