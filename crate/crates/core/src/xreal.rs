//! Extended reals and the two signed exponential maps.
//!
//! Everything runs on binary64. IEEE overflow already agrees with the
//! extended-line conventions `exp(-inf) = 0` and `exp(+inf) = +inf`, so
//! the only extra work is rejecting NaN and folding `-0.0` into `+0.0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the extended real line: a finite `f64` or one of `±inf`.
///
/// Never NaN and never negative zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XReal(f64);

impl XReal {
    pub const ZERO: XReal = XReal(0.0);
    pub const ONE: XReal = XReal(1.0);
    pub const POS_INF: XReal = XReal(f64::INFINITY);
    pub const NEG_INF: XReal = XReal(f64::NEG_INFINITY);

    pub fn new(value: f64) -> Result<XReal> {
        if value.is_nan() {
            return Err(Error::NotANumber);
        }
        Ok(XReal(normalize_zero(value)))
    }

    /// Builds from a value already known not to be NaN.
    ///
    /// Panics on NaN; only used on results of operations that cannot
    /// produce one.
    pub(crate) fn from_non_nan(value: f64) -> XReal {
        assert!(
            !value.is_nan(),
            "unexpected NaN in extended-real arithmetic"
        );
        XReal(normalize_zero(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn abs(self) -> XReal {
        XReal(self.0.abs())
    }

    /// `|self - other|` with `inf - inf` for equal infinities read as 0.
    pub fn distance(self, other: XReal) -> XReal {
        if self == other {
            XReal::ZERO
        } else {
            XReal::from_non_nan((self.0 - other.0).abs())
        }
    }

    pub fn min(self, other: XReal) -> XReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: XReal) -> XReal {
        if self >= other {
            self
        } else {
            other
        }
    }
}

#[inline]
fn normalize_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Eq for XReal {}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("XReal is never NaN")
    }
}

impl Neg for XReal {
    type Output = XReal;
    fn neg(self) -> XReal {
        XReal(normalize_zero(-self.0))
    }
}

impl TryFrom<f64> for XReal {
    type Error = Error;
    fn try_from(value: f64) -> Result<XReal> {
        XReal::new(value)
    }
}

impl From<XReal> for f64 {
    fn from(x: XReal) -> f64 {
        x.0
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("+inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

/// Accepts decimal numbers, `inf`/`+inf`/`-inf`, and the names `e` and `pi`
/// with an optional sign.
impl FromStr for XReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<XReal> {
        let text = s.trim();
        let (negative, body) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        let magnitude = match body.to_ascii_lowercase().as_str() {
            "inf" | "infinity" => f64::INFINITY,
            "e" => std::f64::consts::E,
            "pi" => std::f64::consts::PI,
            other => other.parse::<f64>().map_err(|e| Error::Parse {
                position: 0,
                message: format!("invalid extended real {text:?}: {e}"),
            })?,
        };
        if body.starts_with(['+', '-']) {
            return Err(Error::Parse {
                position: 1,
                message: format!("invalid extended real {text:?}: doubled sign"),
            });
        }
        XReal::new(if negative { -magnitude } else { magnitude })
    }
}

/// Finite values serialize as JSON numbers, infinities as `"+inf"` / `"-inf"`.
impl Serialize for XReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            serializer.serialize_str("+inf")
        } else if self.0 == f64::NEG_INFINITY {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

/// The base exponent `a` of the tower: the maps are `x -> ±exp(a x)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Base(f64);

impl Base {
    pub fn new(a: f64) -> Result<Base> {
        if a.is_finite() && a > 0.0 {
            Ok(Base(a))
        } else {
            Err(Error::InvalidBase(a))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// `f_+(x) = exp(a x)` and `f_-(x) = -exp(a x)`, saturating to `±inf`.
pub fn apply_sign(sign: Sign, base: Base, x: XReal) -> XReal {
    // a > 0 and x is never NaN, so a * x is never NaN either.
    let e = (base.0 * x.0).exp();
    match sign {
        Sign::Plus => XReal::from_non_nan(e),
        Sign::Minus => XReal::from_non_nan(-e),
    }
}

/// Inverse of [`apply_sign`]: `ln(|t|) / a`, with `ln 0 = -inf`.
///
/// `t` must lie in the image of the chosen map: `[0, +inf]` for `Plus`,
/// `[-inf, 0]` for `Minus`. Zero belongs to both.
pub fn inverse_sign(sign: Sign, base: Base, t: XReal) -> Result<XReal> {
    let ok = match sign {
        Sign::Plus => t.0 >= 0.0,
        Sign::Minus => t.0 <= 0.0,
    };
    if !ok {
        return Err(Error::Domain(format!(
            "{t} is not in the image of f{}",
            sign.as_char()
        )));
    }
    Ok(XReal::from_non_nan(t.0.abs().ln() / base.0))
}
