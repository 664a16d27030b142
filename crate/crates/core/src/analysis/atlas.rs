//! Depth-bounded picture of the non-representable set for `a <= 1/e`.
//!
//! With `m` the lower fixed point of `f_+`, the set is the union of the rays
//! `]m, +inf]`, `[-inf, -m[` and the open intervals `f_γ(]-1/m, 1/m[)` over
//! all finite words `γ`. An atlas of depth `d` keeps the words with
//! `|γ| <= d`, so it under-approximates the set and grows with `d`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::fixed_points::plus_fixed_points;
use crate::error::Result;
use crate::words::FiniteWord;
use crate::xreal::{apply_sign, Base, Sign, XReal};

/// Open interval of the extended line; an infinite endpoint belongs to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OpenInterval {
    pub lo: XReal,
    pub hi: XReal,
}

impl OpenInterval {
    pub fn contains(&self, t: XReal) -> bool {
        let above = self.lo < t || (self.lo == XReal::NEG_INF && t == XReal::NEG_INF);
        let below = t < self.hi || (self.hi == XReal::POS_INF && t == XReal::POS_INF);
        above && below
    }

    /// Whether the two open sets meet.
    pub fn overlaps(&self, other: &OpenInterval) -> bool {
        let (first, second) = if self.lo <= other.lo {
            (self, other)
        } else {
            (other, self)
        };
        second.lo < first.hi
            || (first.lo == XReal::NEG_INF && second.lo == XReal::NEG_INF)
            || (first.hi == XReal::POS_INF && second.hi == XReal::POS_INF)
    }

    pub fn covers(&self, other: &OpenInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    fn map(&self, sign: Sign, base: Base) -> OpenInterval {
        let x = apply_sign(sign, base, self.lo);
        let y = apply_sign(sign, base, self.hi);
        OpenInterval {
            lo: x.min(y),
            hi: x.max(y),
        }
    }
}

/// Why a piece belongs to the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `]m, +inf]`.
    UpperRay,
    /// `[-inf, -m[`.
    LowerRay,
    /// `f_γ(]-1/m, 1/m[)`.
    Word(FiniteWord),
}

impl Witness {
    pub fn depth(&self) -> usize {
        match self {
            Witness::UpperRay | Witness::LowerRay => 0,
            Witness::Word(w) => w.len(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::UpperRay => f.write_str("ray(m,+inf]"),
            Witness::LowerRay => f.write_str("ray[-inf,-m)"),
            Witness::Word(w) => write!(f, "\"{w}\""),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Witness::UpperRay => s.serialize_str("upper_ray"),
            Witness::LowerRay => s.serialize_str("lower_ray"),
            Witness::Word(w) => s.collect_str(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Piece {
    pub interval: OpenInterval,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Atlas {
    pub a: Base,
    pub depth: usize,
    /// Lower fixed point of `f_+`, nudged down so that `exp(a m) >= m` holds
    /// in binary64 and the upper ray maps into itself.
    pub m: f64,
    /// `exp(-a m)`, equal to `1/m` in exact arithmetic.
    pub center_radius: f64,
    /// Sorted, pairwise disjoint.
    pub components: Vec<OpenInterval>,
    #[serde(skip)]
    pieces: Vec<Piece>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Membership {
    InX {
        witness: Witness,
        component: OpenInterval,
    },
    NotInXAtDepth {
        depth: usize,
    },
}

impl Atlas {
    /// All pieces, shortest witnesses first.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Largest distance between consecutive components.
    pub fn max_gap(&self) -> f64 {
        self.components
            .windows(2)
            .map(|p| p[1].lo.value() - p[0].hi.value())
            .fold(0.0, f64::max)
    }

    pub fn covers(&self, interval: &OpenInterval) -> bool {
        self.components.iter().any(|c| c.covers(interval))
    }

    /// Shortest witness for `t`, if any piece of this depth contains it.
    pub fn membership(&self, t: XReal) -> Membership {
        match self.pieces.iter().find(|p| p.interval.contains(t)) {
            Some(piece) => Membership::InX {
                witness: piece.witness.clone(),
                component: *self
                    .components
                    .iter()
                    .find(|c| c.contains(t))
                    .expect("every piece lies inside a component"),
            },
            None => Membership::NotInXAtDepth { depth: self.depth },
        }
    }
}

pub fn atlas_membership(atlas: &Atlas, t: XReal) -> Membership {
    atlas.membership(t)
}

pub fn atlas_build(base: Base, depth: usize) -> Result<Atlas> {
    let a = base.value();
    let mut m = plus_fixed_points(base)?.m;
    while (a * m).exp() < m {
        m = m.next_down();
    }
    let center_radius = (-a * m).exp();
    let x = |v: f64| XReal::new(v).expect("finite");

    let mut pieces = vec![
        Piece {
            interval: OpenInterval {
                lo: x(m),
                hi: XReal::POS_INF,
            },
            witness: Witness::UpperRay,
        },
        Piece {
            interval: OpenInterval {
                lo: XReal::NEG_INF,
                hi: x(-m),
            },
            witness: Witness::LowerRay,
        },
    ];

    let mut level = vec![(
        FiniteWord::empty(),
        OpenInterval {
            lo: x(-center_radius),
            hi: x(center_radius),
        },
    )];
    for k in 0..=depth {
        pieces.extend(level.iter().map(|(w, i)| Piece {
            interval: *i,
            witness: Witness::Word(w.clone()),
        }));
        if k == depth {
            break;
        }
        level = level
            .iter()
            .flat_map(|(w, i)| {
                [Sign::Plus, Sign::Minus].map(|s| {
                    let word = FiniteWord::new(vec![s]).concat(w);
                    (word, i.map(s, base))
                })
            })
            .collect();
    }

    let components = merge(pieces.iter().map(|p| p.interval).collect());
    Ok(Atlas {
        a: base,
        depth,
        m,
        center_radius,
        components,
        pieces,
    })
}

fn merge(mut intervals: Vec<OpenInterval>) -> Vec<OpenInterval> {
    intervals.sort_by(|p, q| p.lo.cmp(&q.lo).then(p.hi.cmp(&q.hi)));
    let mut out: Vec<OpenInterval> = Vec::with_capacity(intervals.len());
    for i in intervals {
        match out.last_mut() {
            Some(last) if last.overlaps(&i) => last.hi = last.hi.max(i.hi),
            _ => out.push(i),
        }
    }
    out
}
