//! Exact arithmetic in `Z_p[t]/(m(t))` modulo `p^N`.

mod element;
pub mod fp_poly;
mod spec;
mod valuation;

pub use element::{multiplicative_order, RingElement};
pub use spec::{same_ring, ExtensionKind, ExtensionSpec, PrimeContext};
pub use valuation::{parse_valuation, Rational, Valuation};
