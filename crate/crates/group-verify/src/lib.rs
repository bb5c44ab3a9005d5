//! Exact verification of the matrix identities behind the unitary
//! Rankin–Selberg reductions: structure matrices, the embeddings j_{n,r} and
//! j^{n,r}, unipotent subgroups with their characters, a catalog of
//! conjugation and factorization identities, and Jacobians of conjugation.

pub mod catalog;
pub mod error;
pub mod identities;
pub mod jacobian;
pub mod matrix;
pub mod scalar;
pub mod structures;
pub mod subgroups;

pub use catalog::{run_catalog, run_jacobians, CatalogOptions, EntryReport, JacobianReport, Tuple};
pub use error::{GroupError, Result};
pub use matrix::{Mat, QMat};
pub use scalar::{Alg, K};
pub use subgroups::{Subgroup, SubgroupKind};
