//! Exact mod-2 cohomology of the orthogonal, orthogonal-similitude and
//! general-linear classifying spaces, together with the structure maps
//! between them: pullbacks, coactions, Chern-class maps, Gysin boundary
//! maps, and the primitive generator constructions built on top of them.
//!
//! Everything is exact symbolic computation over GF(2); no floats, no
//! approximations. Polynomials are sets of monomials ordered graded-lex
//! with a fixed global variable order, so all output is deterministic.

pub mod binom;
pub mod error;
pub mod gf2;
pub mod goeven;
pub mod gysin;
pub mod maps;
pub mod poly;
pub mod primitivity;
pub mod rand_poly;
pub mod ring;
pub mod selftest;
pub mod toda;
pub mod var;

pub use error::AlgebraError;
pub use poly::{Monomial, Polynomial};
pub use ring::{make_ring, RingContext, RingFamily, DEFAULT_DEGREE_CAP};
pub use var::{VarFamily, VarKey, VarSpec};
