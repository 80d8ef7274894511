//! Mod-2 cohomology and topological-complexity bounds for small covers.
//!
//! A small cover is described by a simple polytope plus a characteristic
//! function over GF(2). From that pair the crate builds the cohomology ring,
//! computes cup-length and zero-divisor cup-length (with witnesses that can be
//! re-verified), and turns them into interval bounds for `cat`, `TC`, `TC_S`
//! and the equivariant `cat`. Dold manifolds of real torus type are handled by
//! [`bounds::dold_bounds`].
//!
//! ```
//! use smallcover::bounds::{tc_bounds, BoundsOptions, ManifoldDescription};
//! use smallcover::charfun::BottMatrix;
//!
//! let m = ManifoldDescription::bott(BottMatrix::diagonal(&[16, 8]).unwrap());
//! let tc = tc_bounds(&m, &BoundsOptions::default()).unwrap();
//! assert_eq!(tc.render_row(), "TC ∈ [47,49]");
//! ```
//!
//! Runnable programs live in `examples/`; `cargo run --example klein_bottle`
//! is a good first one.

pub mod error;
pub mod gf2;
pub mod invariants;
pub mod bounds;
pub mod cli;
pub mod charfun;
pub mod cohomology;
pub mod polytope;

pub use error::{Error, Result};
