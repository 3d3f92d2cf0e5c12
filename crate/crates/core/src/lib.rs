//! Exact face lattices of convex polytopes and checks of the structure of
//! minimum separators in their graphs.
//!
//! The pipeline is: rational vertex coordinates ([`geometry`]) → facets and
//! the face lattice ([`lattice`]) → the abstract graph and its connectivity
//! ([`graph`]) → verdicts on Balinski's theorem and the structure of
//! `d`-separators ([`checks`]). [`generators`] builds the fixture catalog.

pub mod checks;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod lattice;

pub use checks::{
    check_balinski, check_empty_simplex, check_hyperplane_removal,
    check_separator_affine_independence, check_separator_links, check_simplicial_separators,
    full_verification, BalinskiOutcome, EmptySimplex, HyperplaneOutcome, LinkOutcome,
    SeparatorReport, SimplicialOutcome, Verdict, VerificationSummary, VerifyOptions,
};
pub use error::{Error, Result};
pub use generators::CatalogSpec;
pub use geometry::{Hyperplane, Point, Rational, Side};
pub use graph::{PolytopeGraph, Separator};
pub use lattice::{Face, LinkComplex, Polytope, VertexPolicy, VertexSet};

/// Upper bound on the number of subsets any exhaustive search may visit.
pub const SUBSET_BOUND: u128 = 10_000_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
