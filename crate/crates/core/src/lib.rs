//! Exact computations on real plane projective curves: topology of the real
//! locus, certified totally real pencils, complex orientations and the
//! numerical invariants of separating curves.
//!
//! Every verdict is computed over the rationals. Floating point appears only
//! in rendering helpers.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod io;
pub mod realroots;
pub mod orientation;
pub mod pencil;
pub mod topology;

pub use error::{Error, Result};
