//! Exact computational toolkit for the Temperley-Lieb category.
//!
//! Planar diagram calculus with loop parameter delta, cell modules and
//! their Gram forms, semisimplicity certificates, induction/restriction
//! along the tower of algebras, and the Grothendieck ring with its
//! product and coproduct structure constants. All arithmetic is exact:
//! rational numbers, polynomials in delta, and rational functions.

pub mod cell;
pub mod diagram;
pub mod error;
pub mod g0;
pub mod linalg;
mod render;
pub mod rep;
pub mod tower;
pub mod verify;
pub mod scalar;

pub use diagram::{PlanarDiagram, Point, ScaledDiagram, Side};
pub use error::{Error, Result};
pub use scalar::{DeltaPoly, Mode, RatFunc, Rational, Scalar};
