//! Exact computational engine for finitely generated abelian groups and the
//! homological functors needed to evaluate a Q/Z-valued torsion pairing
//! between torsion classes, in three independent pictures: an algebraic
//! extension picture, a circle spectral picture, and a logarithmic
//! determinant picture.

pub mod coeff;
pub mod detpair;
pub mod error;
pub mod functors;
pub mod group;
pub mod jsonio;
pub mod lambda;
pub mod matrix;
pub mod numeric;
pub mod pairing;
pub mod qz;
pub mod spectral;

pub use error::{Error, Result};
