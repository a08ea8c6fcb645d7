//! Dimer models on compact oriented surfaces.
//!
//! A dimer model is a strongly connected quiver together with two disjoint
//! families of face cycles (positive and negative) such that every arrow lies
//! in exactly one face of each sign and the neighbourhood of every vertex is
//! a disk. On the torus several a priori different consistency notions
//! coincide; this crate implements each of them as an independent executable
//! check:
//!
//! * the zigzag condition, decided exactly via integer Diophantine solving in
//!   the universal cover ([`zigzag`]);
//! * existence of a consistent R-charge, decided by exact rational linear
//!   programming and, independently, constructed from zigzag directions
//!   ([`rcharge`]);
//! * bounded algebraic consistency of the exponent-lattice algebra
//!   ([`balgebra`]);
//! * a refutation-capable cancellation oracle via bounded path rewriting
//!   ([`jacobi`]);
//! * truncated exactness of the length-3 bimodule complex ([`cy3`]).
//!
//! Geometric artifacts (embeddings with isoradial cycles, perfect matchings
//! and their interaction with zigzag paths) live in [`embed`] and
//! [`matchings`].
//!
//! The crate is `no_std` (with `alloc`); all IO and file formats belong to
//! the companion command-line crate.

#![no_std]
// indexed loops are the house style in the matrix kernels
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod balgebra;
pub mod cy3;
pub mod embed;
pub mod jacobi;
pub mod lp;
pub mod matchings;
pub mod model;
pub mod paths;
pub mod rcharge;
pub mod snf;
pub mod topology;
mod union_find;
pub mod zigzag;

pub use model::{ArrowId, DimerModel, FaceId, RotationMaps, Sign, ValidationReport, VertexId};
pub use paths::PathWord;
pub use topology::{HomologyLabeling, PathClass, Vec2};
