//! Finite monoids, idempotent analysis, constellations, and left/right
//! restriction monoids built from an idempotent set.
//!
//! Products compose left to right: in a transformation monoid `x(st) = (xs)t`.

pub mod caps;
pub mod catalog;
pub mod constellation;
pub mod elements;
pub mod error;
pub mod families;
pub mod idempotent;
pub mod iso;
pub mod json;
pub mod laws;
pub mod modal;
pub mod report;
pub mod representations;
pub mod restriction;
pub mod semigroup;
pub mod unary;
pub mod zappa_szep;

pub use caps::Caps;
pub use constellation::{CompletionElement, Constellation};
pub use error::{Error, Result};
pub use idempotent::IdempotentSet;
pub use laws::{Law, LawOutcome, LawReport};
pub use semigroup::{FiniteMonoid, Semigroup};
pub use unary::{UnaryAlgebra, UnaryKind};
