pub mod composition;
pub mod error;
pub mod nabla;
pub mod ncsf;
pub mod poly;
pub mod qt;
pub mod structured;
pub mod table;
pub mod verify;

pub use composition::{Composition, GammaOrdering};
pub use error::{Error, Result};
pub use poly::{Assignment, LaurentPoly, Monomial, Param, Var, VarFamily};
pub use ncsf::{Basis, Flavor, NcsfElement};
pub use structured::{Factor, IndexOrdering, OperatorKind, StructuredOperator};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/compositions.md")]
    mod compositions {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/bases.md")]
    mod bases {}
    #[doc = include_str!("../../../book/src/structured.md")]
    mod structured {}
    #[doc = include_str!("../../../book/src/nabla.md")]
    mod nabla {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
