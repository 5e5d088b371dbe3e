pub mod error;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod clifford;
pub mod json;
pub mod invariants;
pub mod rmatrix;
pub mod verifier;
pub mod fixtures;
pub mod equivalence;
pub mod chain;
pub mod suite;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/gammas.md")]
    mod gammas {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/rmatrices.md")]
    mod rmatrices {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/discrepancies.md")]
    mod discrepancies {}
}
