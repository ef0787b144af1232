//! Cyclotomic constructions of strongly regular graphs, skew Hadamard
//! difference sets and Paley type partial difference sets over finite
//! fields, with exact verification.
//!
//! The pipeline is: build a [`gf::FieldTable`], fix a class count `N` in a
//! [`cyclotomy::CycSetup`], sweep the field once into a
//! [`cyclotomy::PeriodTable`], then evaluate character sums of connection
//! sets from [`constructions`] exactly and certify them with [`verify`].
//!
//! ```
//! use std::sync::Arc;
//! use cyclotome::{constructions, cyclotomy, gf, verify};
//!
//! let params = constructions::IndexTwoParams::two_primes(2, 5, 3, 1, 2).unwrap();
//! let field = Arc::new(gf::field(2, 12).unwrap());
//! let setup = cyclotomy::CycSetup::new(field, params.classes).unwrap();
//! let table = cyclotomy::build_period_table(&setup);
//! let d = constructions::build_d_a(&setup, &params).unwrap();
//! let cert = verify::verify_srg(&table, &d).unwrap();
//! assert_eq!((cert.v, cert.k, cert.lambda, cert.mu), (4096, 273, 20, 18));
//! ```

pub mod arith;
pub mod constructions;
pub mod cycint;
pub mod cyclotomy;
pub mod gf;
pub mod graph6;
pub mod quadratic;
mod serde_big;
pub mod verify;

pub use constructions::{IndexTwoParams, ParamKind};
pub use cycint::{CycIntValue, ExactValue};
pub use cyclotomy::{CycSetup, PeriodTable};
pub use gf::FieldTable;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/cyclotomy.md")]
    pub mod cyclotomy {}
    #[doc = include_str!("../../../book/src/gauss-sums.md")]
    pub mod gauss_sums {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub mod constructions {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/schemes.md")]
    pub mod schemes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
