//! Newton polygons, root valuations, Hensel lifting and root ladders.

mod ladder;
mod poly;
mod polygon;
mod roots;

pub use ladder::{iterate_ladder, ladder_from_multisets, max_small_roots, RootLadderLevel, ValuationCount};
pub use poly::Polynomial;
pub use polygon::{to_multiset, NewtonPolygon, Segment, ValuationMultiset};
pub use roots::{
    certify_roots, hensel_lift, multiplicity_at_precision, residue_representatives, roots_in_ring, roots_in_ring_with,
    FoundRoot, RootSearch, RootSearchOptions, MAX_RESIDUE_FIELD,
};
