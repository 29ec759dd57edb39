//! Exact computer algebra for conic bundles over the projective plane,
//! with the degenerate characteristic-2 phenomena treated as first-class
//! citizens rather than excluded cases.
//!
//! The crate computes, over the integers, the rationals, and small finite
//! fields `F_{p^k}`:
//!
//! * discriminants of ternary quadratic forms with homogeneous polynomial
//!   coefficients, including the characteristic-2 half-discriminant,
//! * the classification of degenerate plane conics over perfect fields of
//!   characteristic 2 by the radicals of the form and its polar form,
//! * Artin-Schreier residue classes of conic bundles along components of
//!   the discriminant, with `wp`-reduction to a unique normal form,
//! * Groebner-basis certificates: singular-scheme lengths, irreducibility
//!   of plane curves, smoothness of hypersurfaces in `P^2 x P^2`,
//! * blow-up charts and resolution data for the local models
//!   `x^2 + xy + a y^2 + b u (u + v^n)`.
//!
//! Everything is exact; there is no floating point anywhere. All
//! computations are deterministic: iteration orders, normal forms and
//! reported witnesses do not depend on hashing or thread scheduling.

pub mod algebra;
pub mod artinschreier;
pub mod blowup;
pub mod bundle;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod poly;
pub mod quadform;
pub mod verify;

pub use error::{Error, Result};
