pub mod cauchy;
pub mod error;
pub mod gauss_lucas;
pub mod io;
pub mod geometry;
pub mod linalg;
pub mod operator;
pub mod poly;
pub mod search;
pub mod suite;
pub mod verdict;

pub use error::{Error, Result};
pub use num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/variance.md")]
    mod variance {}
    #[doc = include_str!("../../../book/src/gauss-lucas.md")]
    mod gauss_lucas {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
