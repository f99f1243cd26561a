//! Exact p-adic computer algebra for stable p-adic dynamical systems.
//!
//! The crate works at fixed absolute precision: every coefficient lives in
//! `Z/p^N` (or in `Z_p[t]/(m(t))` modulo `p^N`) and every power series is
//! truncated at a fixed x-adic order. All types are generic over the backing
//! integer [`Scalar`]; the aliases below pick the common choices.

pub mod battery;
pub mod certificate;
pub mod dynamics;
pub mod error;
pub mod formal_group;
pub mod json;
pub mod newton;
pub mod padic;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Scalar;

use num_bigint::BigInt;

/// Ring elements backed by `i128`, for `p^N < 2^62`.
pub type Element = padic::RingElement<i128>;
pub type Ring = padic::ExtensionSpec<i128>;
pub type Series = series::TruncatedSeries<i128>;
pub type Poly = newton::Polynomial<i128>;
pub type GroupLaw = formal_group::FormalGroupLaw<i128>;

/// Arbitrary precision variants.
pub type BigElement = padic::RingElement<BigInt>;
pub type BigRing = padic::ExtensionSpec<BigInt>;
pub type BigSeries = series::TruncatedSeries<BigInt>;
pub type BigPoly = newton::Polynomial<BigInt>;
pub type BigGroupLaw = formal_group::FormalGroupLaw<BigInt>;
