//! Sign words over `{+, -}`.
//!
//! Text syntax:
//!
//! ```text
//! WORD  := SIGNS | SIGNS '(' SIGNS+ ')'
//! SIGNS := ('+' | '-')*
//! ```
//!
//! A parenthesized block repeats forever. `all+` and `all-` are aliases for
//! `(+)` and `(-)`. Indexing is 1-based: `sign_at(1)` is the outermost sign.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::xreal::Sign;

/// Anything that can hand out the signs `ε_1, ε_2, ...` of a tower.
pub trait Signs {
    /// Number of available signs, `None` when unbounded.
    fn available(&self) -> Option<usize>;

    /// The `n`-th sign (1-based), or `None` past the end of a finite word.
    fn get(&self, n: usize) -> Option<Sign>;
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiniteWord(Vec<Sign>);

impl FiniteWord {
    pub fn new(signs: Vec<Sign>) -> FiniteWord {
        FiniteWord(signs)
    }

    pub fn empty() -> FiniteWord {
        FiniteWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn push(&mut self, sign: Sign) {
        self.0.push(sign);
    }

    /// `ε_n`, 1-based. Panics when `n` is 0 or past the end.
    pub fn sign_at(&self, n: usize) -> Sign {
        assert!(n >= 1, "sign indices are 1-based");
        self.0[n - 1]
    }

    /// True iff the word holds an even number of `-`, i.e. `f_γ` is increasing.
    pub fn is_increasing(&self) -> bool {
        self.0.iter().filter(|s| **s == Sign::Minus).count() % 2 == 0
    }

    /// `self · other`.
    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut signs = Vec::with_capacity(self.len() + other.len());
        signs.extend_from_slice(&self.0);
        signs.extend_from_slice(&other.0);
        FiniteWord(signs)
    }

    /// `self · w` for an infinite `w`.
    pub fn concat_infinite(&self, w: &InfiniteWord) -> InfiniteWord {
        InfiniteWord {
            prefix: self.concat(&w.prefix),
            cycle: w.cycle.clone(),
        }
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord(self.0[..n.min(self.len())].to_vec())
    }
}

impl From<Vec<Sign>> for FiniteWord {
    fn from(signs: Vec<Sign>) -> FiniteWord {
        FiniteWord(signs)
    }
}

impl Signs for FiniteWord {
    fn available(&self) -> Option<usize> {
        Some(self.len())
    }

    fn get(&self, n: usize) -> Option<Sign> {
        if n == 0 {
            None
        } else {
            self.0.get(n - 1).copied()
        }
    }
}

/// An eventually periodic infinite word `prefix · cycle · cycle · ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfiniteWord {
    prefix: FiniteWord,
    cycle: FiniteWord,
}

impl InfiniteWord {
    pub fn new(prefix: FiniteWord, cycle: FiniteWord) -> Result<InfiniteWord> {
        if cycle.is_empty() {
            return Err(Error::Domain(
                "an infinite word needs a nonempty cycle".into(),
            ));
        }
        Ok(InfiniteWord { prefix, cycle })
    }

    /// `(+)`, the word whose tower is `e^{e^{e^{...}}}`.
    pub fn all_plus() -> InfiniteWord {
        InfiniteWord {
            prefix: FiniteWord::empty(),
            cycle: FiniteWord(vec![Sign::Plus]),
        }
    }

    /// `(-)`.
    pub fn all_minus() -> InfiniteWord {
        InfiniteWord {
            prefix: FiniteWord::empty(),
            cycle: FiniteWord(vec![Sign::Minus]),
        }
    }

    pub fn prefix_part(&self) -> &FiniteWord {
        &self.prefix
    }

    pub fn cycle_part(&self) -> &FiniteWord {
        &self.cycle
    }

    /// `ε_n`, 1-based; indices past the prefix wrap around the cycle.
    pub fn sign_at(&self, n: usize) -> Sign {
        assert!(n >= 1, "sign indices are 1-based");
        let p = self.prefix.len();
        if n <= p {
            self.prefix.0[n - 1]
        } else {
            self.cycle.0[(n - p - 1) % self.cycle.len()]
        }
    }

    /// The first `n` signs as a finite word.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord((1..=n).map(|k| self.sign_at(k)).collect())
    }

    /// First index where the two words differ, or `None` if they are equal
    /// as infinite sequences.
    pub fn first_difference(&self, other: &InfiniteWord) -> Option<usize> {
        // Past max(prefix) + lcm(cycles) both words are periodic with a
        // common period, so one more period decides equality.
        let horizon = self.prefix.len().max(other.prefix.len())
            + 2 * lcm(self.cycle.len(), other.cycle.len());
        (1..=horizon).find(|&n| self.sign_at(n) != other.sign_at(n))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl Signs for InfiniteWord {
    fn available(&self) -> Option<usize> {
        None
    }

    fn get(&self, n: usize) -> Option<Sign> {
        if n == 0 {
            None
        } else {
            Some(self.sign_at(n))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Finite(FiniteWord),
    Infinite(InfiniteWord),
}

impl Word {
    pub fn as_infinite(&self) -> Option<&InfiniteWord> {
        match self {
            Word::Infinite(w) => Some(w),
            Word::Finite(_) => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteWord> {
        match self {
            Word::Finite(w) => Some(w),
            Word::Infinite(_) => None,
        }
    }
}

impl Signs for Word {
    fn available(&self) -> Option<usize> {
        match self {
            Word::Finite(w) => w.available(),
            Word::Infinite(w) => w.available(),
        }
    }

    fn get(&self, n: usize) -> Option<Sign> {
        match self {
            Word::Finite(w) => w.get(n),
            Word::Infinite(w) => w.get(n),
        }
    }
}

/// `γ · w`, keeping the kind of `w`.
pub fn concat(prefix: &FiniteWord, w: &Word) -> Word {
    match w {
        Word::Finite(f) => Word::Finite(prefix.concat(f)),
        Word::Infinite(i) => Word::Infinite(prefix.concat_infinite(i)),
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    let text = text.trim();
    match text {
        "all+" => return Ok(Word::Infinite(InfiniteWord::all_plus())),
        "all-" => return Ok(Word::Infinite(InfiniteWord::all_minus())),
        _ => {}
    }

    let mut prefix = Vec::new();
    let mut cycle: Option<Vec<Sign>> = None;
    let mut in_cycle = false;
    let mut closed = false;

    for (position, ch) in text.chars().enumerate() {
        let err = |message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        if closed {
            return Err(err("trailing characters after ')'"));
        }
        match ch {
            '+' | '-' => {
                let sign = if ch == '+' { Sign::Plus } else { Sign::Minus };
                if in_cycle {
                    cycle.get_or_insert_with(Vec::new).push(sign);
                } else {
                    prefix.push(sign);
                }
            }
            '(' if !in_cycle => {
                in_cycle = true;
                cycle = Some(Vec::new());
            }
            '(' => return Err(err("nested '('")),
            ')' if in_cycle => {
                if cycle.as_ref().is_none_or(|c| c.is_empty()) {
                    return Err(err("empty cycle '()'"));
                }
                in_cycle = false;
                closed = true;
            }
            ')' => return Err(err("unmatched ')'")),
            _ => return Err(err(&format!("illegal character {ch:?}"))),
        }
    }
    if in_cycle {
        return Err(Error::Parse {
            position: text.chars().count(),
            message: "unterminated '('".into(),
        });
    }

    Ok(match cycle {
        Some(c) => Word::Infinite(InfiniteWord {
            prefix: FiniteWord(prefix),
            cycle: FiniteWord(c),
        }),
        None => Word::Finite(FiniteWord(prefix)),
    })
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.prefix, self.cycle)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Finite(w) => w.fmt(f),
            Word::Infinite(w) => w.fmt(f),
        }
    }
}

macro_rules! serialize_as_display {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}

serialize_as_display!(FiniteWord, InfiniteWord, Word);
