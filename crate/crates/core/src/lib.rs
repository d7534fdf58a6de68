//! Generalized multicategories over a monad on computable finite sets.
//!
//! The crate builds nerves of T-categories as truncated T-simplicial objects, checks the
//! simplicial identities and the Segal condition, and materializes hom simplicial sets,
//! 2-cells, the comonad `K`, copowers and the power by `Δ[1]`, verifying each universal
//! property by finite enumeration.

pub mod comonad;
pub mod document;
pub mod error;
pub mod hom;
pub mod ladder;
pub mod monad;
pub mod nerve;
pub mod powers;
pub mod search;
pub mod sets;
pub mod simplex;
pub mod tcat;

pub use error::{Error, Result};
pub use monad::{MonadSpec, Monoid};
pub use sets::{Element, FiniteSet, Morph, SetObj};
