//! Infinite signed-exponential towers
//!
//! ```text
//! ε_1 exp(a ε_2 exp(a ε_3 exp(a ...)))
//! ```
//!
//! For a base exponent `a > 0` and a word of signs `ε`, the tower is the
//! limit of its truncations `u_n = f_{ε_1} ∘ ... ∘ f_{ε_n}(1)` with
//! `f_±(x) = ±exp(a x)`. This crate evaluates truncations and their image
//! intervals, classifies convergence, expands targets into sign words,
//! and checks the contraction certificates that make a base *suitable*
//! (every word converges, every extended real is a limit).
//!
//! ```
//! use exptower::{classify, parse_word, Base, ClassifyOptions, TowerStatus};
//!
//! let word = parse_word("(-)").unwrap();
//! let report = classify(Base::new(1.0).unwrap(), word.as_infinite().unwrap(), ClassifyOptions::default());
//! assert_eq!(report.status, TowerStatus::ConvergedFinite);
//! assert!((report.limit.unwrap().value() + 0.567143).abs() < 1e-6);
//! ```

pub mod analysis;
pub mod cli;
pub mod error;
pub mod evaluator;
pub mod representer;
pub mod selftest;
pub mod words;
pub mod xreal;

pub use error::{Error, Result};
pub use evaluator::{
    classify, image_interval, interval_sequence, limit_interval, truncation_value, ClassifyOptions,
    Interval, TowerReport, TowerStatus,
};
pub use representer::{alternate_expansion, expand, roundtrip, Expansion, RoundTrip, Verdict};
pub use words::{concat, parse_word, FiniteWord, InfiniteWord, Word};
pub use xreal::{apply_sign, inverse_sign, Base, Sign, XReal};
