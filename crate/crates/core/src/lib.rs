//! Combinatorics of Kottwitz-Rapoport and Ekedahl-Oort strata on Siegel
//! modular varieties with Iwahori level structure.
//!
//! The crate models the extended affine Weyl group of `GSp_{2g}` and the
//! μ-admissible set for `μ = (1^g, 0^g)`, and computes the invariants of the
//! corresponding strata: dimension, p-rank, support, and superspecial-ness.
//! It also carries the combinatorics behind the dimension of the p-rank zero
//! locus, with brute-force checks of each identity at small rank.
//!
//! ```
//! use siegel_kr::admissible::enumerate_adm;
//!
//! let poset = enumerate_adm(2).unwrap();
//! assert_eq!(poset.len(), 13);
//! ```

pub mod admissible;
pub mod affine;
pub mod alcove;
pub mod error;
pub mod finite;
pub mod prank0;
pub mod report;
pub mod strata;
pub mod verify;

pub use affine::{bruhat_leq, simple_affine, tau, AffineElement, ReducedWord, Root, TranslationVector};
pub use error::{Error, Result};
pub use finite::{ElementarySequence, SignedPermutation};

/// Chapters of the guide in `book/src`, compiled as doc-tests so that the
/// snippets there stay in sync with the library.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/finite-weyl-group.md")]
    pub mod finite_weyl_group {}
    #[doc = include_str!("../../../book/src/affine-weyl-group.md")]
    pub mod affine_weyl_group {}
    #[doc = include_str!("../../../book/src/alcoves.md")]
    pub mod alcoves {}
    #[doc = include_str!("../../../book/src/admissible-set.md")]
    pub mod admissible_set {}
    #[doc = include_str!("../../../book/src/kr-strata.md")]
    pub mod kr_strata {}
    #[doc = include_str!("../../../book/src/prank-zero.md")]
    pub mod prank_zero {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
