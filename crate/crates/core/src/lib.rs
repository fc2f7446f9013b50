//! Exact osculating geometry of the Fermat curves `x^d + y^d + z^d = 0`.
//!
//! All computations happen in `Q(u, 2^(1/d))` with `u^d = -1`; see [`Tower`].

#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod ball;
pub mod error;
pub mod fermat;
pub mod intersect;
pub mod poly;
pub mod symmetry;
pub mod tower;
mod univariate;

pub use error::{Error, Result};
pub use poly::{BinaryForm, HomPoly, ProjPoint};
pub use tower::{FieldElement, Tower};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/fermat.md")]
    mod fermat {}
    #[doc = include_str!("../../../book/src/intersection.md")]
    mod intersection {}
    #[doc = include_str!("../../../book/src/arrangements.md")]
    mod arrangements {}
    #[doc = include_str!("../../../book/src/symmetry.md")]
    mod symmetry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
