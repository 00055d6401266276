//! Exact computer algebra for a triangulated category of twist-graded
//! equivariant modules: weight structures, t-structures, their interaction,
//! and a weight-graded realization, all over exact rational arithmetic.
//!
//! The layers build up as follows:
//!
//! - [`exactla`]: rational matrices, elimination, kernels, Kronecker products;
//! - [`galois`]: finite groups and their rational representations;
//! - [`pure`]: twist-graded objects (the semisimple weight heart);
//! - [`mixed`]: graded objects with twist-raising operators (the mixed heart);
//! - [`derived`]: bounded complexes, cones, truncations, derived Hom;
//! - [`weights`]: the weight structure, its predicates and constructions;
//! - [`realize`]: the contravariant weight-graded realization;
//! - [`gen`]: seeded random generators used by the verification suites.

pub mod derived;
pub mod error;
pub mod exactla;
pub mod galois;
pub mod gen;
pub mod mixed;
pub mod pure;
pub mod realize;
pub mod weights;

pub use error::{Error, Result};
