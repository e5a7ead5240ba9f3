//! Exact machinery for twisted conjugacy in nilpotent quotients of surface
//! groups and free groups: integer linear algebra, graded free Lie rings,
//! free nilpotent group arithmetic, and the eigenvalue-one analysis that ties
//! them together.

pub mod analysis;
pub mod error;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod nilpotent;
pub mod oracle;
pub mod par;

pub use error::{Error, Result};
