//! Exact computation of Greene's rational function `Psi_P` and of the
//! integer point transform `sigma` of the root cone of a naturally labeled
//! poset, by linear extensions, root-polytope triangulations, the
//! subdivision algebra and closed product formulas.

pub mod algebra;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod format;
pub mod greene;
pub mod poset;
pub mod subdivision;
pub mod triangulation;

pub use error::{GreeneError, Result};
