use std::fmt;
use std::ops::Add;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

pub type Rational = Ratio<i64>;

/// p-adic valuation normalized so that `v(p) = 1`. `Infinite` stands for
/// an element that is zero at the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub const ZERO: Valuation = Valuation::Finite(Ratio::new_raw(0, 1));

    pub fn int(v: i64) -> Self {
        Valuation::Finite(Rational::from_integer(v))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Valuation::Finite(Rational::new(n, d))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Valuation::Finite(r) => Some(*r),
            Valuation::Infinite => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        *self > Valuation::ZERO
    }

    /// `self >= bound` where an infinite valuation clears every bound.
    pub fn at_least(&self, bound: Rational) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(r) => *r >= bound,
        }
    }

    pub fn scale(&self, k: Rational) -> Valuation {
        match self {
            Valuation::Infinite => Valuation::Infinite,
            Valuation::Finite(r) => Valuation::Finite(*r * k),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => write!(f, "{r}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `"a/b"`, `"a"` or `"inf"`.
pub fn parse_valuation(text: &str) -> Option<Valuation> {
    if text == "inf" {
        return Some(Valuation::Infinite);
    }
    text.parse::<Rational>().ok().map(Valuation::Finite)
}
