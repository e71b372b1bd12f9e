//! Exact q-calculus of a single graded variable.
//!
//! The crate covers the algebra generated by `theta`, its left derivative `D`
//! and a translation parameter `eps` at generic `q` (scalars in `Q(q)`), the
//! passage to `q = exp(2 pi i / n)` for odd `n` (scalars in `Q(zeta_n)`), the
//! bosonic pair `z`, `d/dz` that emerges there, and ket representations of
//! both regimes including the `q^(1/2)`-deformed oscillator.

pub mod error;
pub mod fsusy;
pub mod gencalc;
pub mod limits;
pub mod repr;
pub mod rewrite;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{CycloNum, CyclotomicField, Field, QPoly, RatQ};
