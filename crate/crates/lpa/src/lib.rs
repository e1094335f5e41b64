//! Exact computation in Leavitt path algebras and Steinberg algebras.
//!
//! Given a finite directed graph `E`, this crate materializes two algebras over
//! an exact coefficient ring `R` (integers, rationals, or integers mod n):
//!
//! * the Leavitt path algebra `L_R(E)`, presented by vertex idempotents, edges,
//!   and ghost edges subject to the relations (V), (E1), (E2), (CK1), (CK2);
//! * the Steinberg algebra `A_R(G_E)` of the boundary path groupoid of `E`,
//!   realized concretely as linear combinations of indicator functions of
//!   compact open bisections, multiplied by convolution.
//!
//! The two are isomorphic as Z-graded algebras, and the crate computes the
//! isomorphism in both directions ([`leavitt::LeavittElement::steinberg_image`],
//! [`leavitt::LeavittElement::from_steinberg_image`]). Everything is exact: no
//! floating point, no approximation, equality is decidable.
//!
//! The groupoid side is driven entirely by a small computable set algebra on
//! bisection atoms `Z(alpha, beta, F)` ([`groupoid`]); the path space side by
//! generalized cylinder sets ([`pathspace`]). Finite-dimensional algebras of
//! acyclic graphs are classified into direct sums of matrix algebras
//! ([`classify`]). A command-line front end ([`cli`]) exposes the main
//! operations over a simple text format for graphs and expressions.
//!
//! With the default `parallel` feature, bulk verification sweeps (batch
//! evaluation, pairwise products, relation checking) run on rayon; disabling
//! the feature falls back to equivalent sequential loops. See [`batch`].

pub mod batch;
pub mod classify;
pub mod cli;
pub mod error;
pub mod graph;
pub mod groupoid;
pub mod leavitt;
pub mod parse;
pub mod pathspace;
pub mod sampling;
pub mod scalars;
pub mod steinberg;

pub use error::Error;
