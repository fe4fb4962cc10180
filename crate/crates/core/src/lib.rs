//! Rate regions for computing a function of correlated sources.

pub mod entropy;
pub mod error;
pub mod fixtures;
pub mod graphs;
pub mod laws;
pub mod model;
pub mod regions;
pub mod sets;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/problems.md")]
    mod problems {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/sets.md")]
    mod sets {}
    #[doc = include_str!("../../../book/src/entropy.md")]
    mod entropy {}
    #[doc = include_str!("../../../book/src/regions.md")]
    mod regions {}
    #[doc = include_str!("../../../book/src/laws.md")]
    mod laws {}
}
