//! Exact computations with preprojective algebras, quiver folding, Weyl
//! monoids and monoids of ideals. The guide in `book/` walks through the API.

pub mod algebra;
pub mod cartan;
pub mod groebner;
pub mod ideal;
pub mod io;
pub mod linalg;
pub mod path;
pub mod presentation;
pub mod quiver;
pub mod skew;
pub mod verify;
pub mod weyl;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/folding.md")]
    mod folding {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/monoids.md")]
    mod monoids {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
