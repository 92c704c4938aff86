//! Exact combinatorial algebra of monomial ideals and its asymptotics:
//! colon, intersection, saturation and power arithmetic; irreducible
//! decomposition and associated primes; v-numbers with witnesses; stable
//! primes, socle components and quasi-linear v-function tails along power
//! and integral-closure filtrations; Newton-polyhedron membership and
//! closure powers; and the associated asymptotic integer programs.
//!
//! All arithmetic is exact: exponents are checked 64-bit integers and every
//! rational computation (LP feasibility, facet normals) runs over
//! arbitrary-precision rationals. Nothing here uses floating point.

mod dense;
pub mod decomp;
pub mod error;
pub mod filtration;
mod ideal;
pub mod ip;
pub mod newton;
pub mod parse;
pub mod sample;
mod simplex;
mod vector;
pub mod vnum;

pub use error::{Error, Result};
pub use ideal::{quotient_alpha, ColonByIdeal, MonomialIdeal, MonomialPrime, QuotientAlpha};
pub use vector::ExponentVector;
