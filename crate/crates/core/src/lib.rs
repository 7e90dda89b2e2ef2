//! Finite groupoids and the fraction calculus of meromorphisms.
//!
//! The crate works in the discrete model of smooth groupoids: embeddings are
//! injections, surmersions are surjections, and every fibred product exists.
//! Within that model it provides
//!
//! * groupoids, their validation, classification and orbits ([`groupoid`]),
//! * functors with the full T/A-square profile ([`profile`]) and exhaustive
//!   searches for isomorphisms, sections and natural isomorphisms
//!   ([`search`]),
//! * the constructions: induced groupoids, square groupoids, holographs,
//!   fibred and weak products, quotients by principal subgroupoids, subactor
//!   decompositions ([`build`]),
//! * transversality and butterfly diagrams ([`transversal`]),
//! * fractions, meromorphisms, reduction to irreducible form, composition,
//!   Morita equivalence and bibundles ([`fraction`], [`bibundle`], [`gz`]),
//! * the reflector onto plurigroups ([`reflect`]).
//!
//! Composition convention: `compose(a, b)` is "`b` then `a`".

pub mod bibundle;
pub mod build;
pub mod error;
pub mod fraction;
pub mod functor;
pub mod groupoid;
pub mod gz;
pub mod profile;
pub mod reflect;
pub mod search;
pub mod setmap;
pub mod standard;
pub mod subgroupoid;
pub mod transversal;

pub use bibundle::Bibundle;
pub use build::{FibredProduct, Holograph, SquareGroupoid, WeakPullback};
pub use error::{GpdError, Result, SizeGuard};
pub use fraction::{Fraction, Meromorphism};
pub use functor::{Functor, FunctorReport, NatTransformation};
pub use groupoid::{FiniteGroupoid, GroupoidClass, OrbitalAtlas, ValidationReport, Violation};
pub use profile::{analyze_functor, FunctorProfile};
pub use setmap::SetMap;
pub use subgroupoid::Subgroupoid;
pub use transversal::{Butterfly, Cotransversality, Transversality};

/// Shared handle to an immutable groupoid.
pub type Gpd = std::sync::Arc<FiniteGroupoid>;
