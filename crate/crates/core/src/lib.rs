//! Exact computations for group–graph reciprocity.
//!
//! A finite permutation group `G` on `n` points has cycle polynomial
//! `F_G(x) = Σ_{g ∈ G} x^{c(g)}`, where `c(g)` counts cycles including fixed
//! points. For a graph `Γ` with `G ≤ Aut(Γ)`, the orbital chromatic
//! polynomial `P_{Γ,G}(x) = Σ_{g ∈ G} P_{Γ/g}(x)` counts pairs of a proper
//! colouring and a group element fixing it. The pair is *reciprocal* when
//!
//! ```text
//! P_{Γ,G}(x) = (-1)^n F_G(-x).
//! ```
//!
//! Everything is computed exactly, with arbitrary-precision coefficients and
//! fully enumerated groups:
//!
//! - [`poly`]: integer polynomials and the substitutions the identities need.
//! - [`perm`]: permutations, named groups, direct and wreath products.
//! - [`graph`]: simple graphs, quotients `Γ/g`, chromatic polynomials,
//!   automorphism groups.
//! - [`reciprocity`]: orbital chromatic polynomials, the reciprocity check,
//!   the k-star family and pair combinators.
//! - [`search`]: exhaustive search over small graphs and subgroups, with
//!   classification of every reciprocal pair found.
//!
//! ```
//! use recip::graph::SimpleGraph;
//! use recip::perm::PermGroup;
//! use recip::reciprocity::is_reciprocal_pair;
//!
//! let square = SimpleGraph::cycle_graph(4)?;
//! let report = is_reciprocal_pair(&square, &PermGroup::dihedral(4)?)?;
//! assert!(report.reciprocal);
//! assert_eq!(report.orbital.to_string(), "x^4-2x^3+3x^2-2x");
//! assert_eq!(report.cycle.to_string(), "x^4+2x^3+3x^2+2x");
//! # Ok::<(), recip::Error>(())
//! ```
//!
//! The guide under `book/` walks through each concept; its code listings are
//! compiled and run as doctests of this crate.

pub mod error;
pub mod graph;
pub mod perm;
pub mod poly;
pub mod reciprocity;
pub mod search;

pub use error::{Error, Result};

// Chapters of the guide, so `cargo test --doc` runs their listings.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/reciprocity.md")]
    mod reciprocity {}
    #[doc = include_str!("../../../book/src/kstars.md")]
    mod kstars {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
