//! Exact workbench for the affine (extended) Temperley-Lieb algebras
//! `T_N(delta)`.
//!
//! The crate provides, in dependency order:
//!
//! * [`rat`], [`poly`], [`laurent`], [`matrix`] — exact arithmetic kernels:
//!   big rationals with an inline fast path, Laurent polynomials over a
//!   pluggable coefficient domain, and Laurent-matrix algebra with
//!   fraction-free determinants.
//! * [`diagram`] — affine diagrams on the cylinder as canonical
//!   winding-annotated non-crossing matchings, with composition, twists,
//!   standardization and the normal-form factorization.
//! * [`algebra`] — formal linear combinations of diagrams with the
//!   `delta`-weighted product, degree filtration and the star involution.
//! * [`cellrep`] — cell modules, Gram and action matrices, the determinant
//!   identity `det R_k = +-G_k`, and the pure-component ideal construction.
//! * [`center`] — the polynomials `H_k`, `P_k`, ideal generator families,
//!   sheet evaluations, and the full center description for three strands
//!   with its computed gluing points.
//!
//! The loop parameter is always represented as `-q - 1/q`: symbolically in
//! the Laurent-in-`q` domain, numerically once a complex `q` is fixed.

pub mod algebra;
pub mod cellrep;
pub mod center;
pub mod diagram;
pub mod error;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod rng;
pub mod roots;
pub mod sample;

pub use algebra::AlgebraElement;
pub use diagram::{AffineDiagram, Arc, ComposeResult, Side};
pub use error::{Error, Result};
pub use laurent::{CoeffDomain, LaurentPoly, DEFAULT_TOL};
pub use matrix::LaurentMatrix;
