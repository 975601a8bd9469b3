//! Exact polynomial and rational-function arithmetic.

mod forest;
mod frac;
mod poly;
mod text;

pub use forest::{ipt_frac, tree_psi_frac};
pub use frac::{frac_combine, frac_equal, oriented, Factor, FracOp, RatFrac};
pub use poly::{Monomial, Polynomial};
pub use text::{canonical_text, parse_frac, poly_text};
