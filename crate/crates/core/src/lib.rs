//! Decide whether a polynomial over GF(2^n) is an o-polynomial, that is,
//! whether `{(1, t, G(t))} ∪ {(0, 1, 0), (0, 0, 1)}` is a hyperoval of
//! PG(2, 2^n), and compute the Walsh spectral sums that characterize it.
//!
//! Four independent routes reach the same verdict:
//!
//! * [`checker::check_direct`]: every `F(x) + b x = a`, `b != 0`, has 0 or
//!   2 solutions;
//! * [`checker::check_slopes`]: `F` and every slope function `G_s` permute
//!   the field;
//! * [`checker::check_walsh`]: the exact spectral excess vanishes;
//! * [`geometry::is_hyperoval`]: no three of the `2^n + 2` points are
//!   collinear (small `n` only).

pub mod catalog;
pub mod checker;
pub mod cli;
pub mod error;
pub mod field;
pub mod func;
pub mod geometry;
pub mod spectrum;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use func::{PolyTerms, VecFunc};
