pub mod abelian;
pub mod catalog;
pub mod cohomology;
pub mod config;
pub mod corpus;
pub mod error;
pub mod group;
pub mod linalg;
pub mod module;
pub mod reductive;
pub mod resolutions;
pub mod rootdatum;
pub mod schema;

pub use config::{AuditMode, CancelToken, Config};
pub use error::{Error, ErrorClass, Result};
pub use group::{FiniteGroup, Subgroup, SubgroupLattice};
pub use linalg::{Int, Matrix};
pub use module::{DMap, DModule, PermutationTag};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;
