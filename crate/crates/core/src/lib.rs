//! Exact arithmetic for plane algebraic curves with one place at infinity.
//!
//! The crate is organised around a small exact kernel and the algorithms
//! built on top of it:
//!
//! - [`ringcore`]: arbitrary-precision rationals, univariate and bivariate
//!   polynomials (`y`-recursive, monic-aware), division, substitution and
//!   resultants.
//! - [`adic`]: G-adic expansions with bounded exponents, Abhyankar
//!   approximate roots via Tschirnhausen iteration, the `fint` valuation and
//!   the generalized Newton polygon edge test ("straightness").
//! - [`semigroup`]: numerical-semigroup arithmetic — gcd chains, membership,
//!   Frobenius numbers of free semigroups, and δ-sequence validation.
//! - [`criterion`]: the one-place-at-infinity decision procedure; on success
//!   it returns the value sequence and the approximate roots, on failure a
//!   diagnosed rejection reason.
//! - [`construct`]: canonical curve construction from a δ-sequence and
//!   enumeration of all δ-sequences with a given Frobenius number.
//! - [`reduce`]: reduced forms and reduced equations, with the explicit
//!   plane automorphism realizing the reduction.
//! - [`param`]: implicitization of polynomial parametrizations by resultants
//!   and intersection degrees through the parametrization.
//!
//! All coefficients are exact rationals; nothing in this crate ever rounds.

pub mod adic;
pub mod construct;
pub mod criterion;
pub mod param;
pub mod reduce;
pub mod ringcore;
pub mod semigroup;

pub use adic::{approximate_root, fint, gadic_expand, straightness, Expansion, StraightnessReport};
pub use construct::{
    count_table, curve_from_delta, delta_sequences_with_frobenius, embeddings_filter, solve_theta,
};
pub use criterion::{int_resultant, int_via_expansion, one_place_semigroup, Rejection, ValueData};
pub use param::{implicitize, int_param, semigroup_from_param, Parametrization};
pub use reduce::{rdeg, reduced_equation, reduced_form, reduction_chain, PlaneAutomorphism};
pub use ringcore::{BiPoly, Rational, UniPoly};
pub use semigroup::{
    frobenius_free, is_delta_sequence, is_free, is_polynomial_curve, membership, same_semigroup,
    DeltaSeq, GcdChain, NumSgp,
};
