//! Integral cohomology of minimal nilpotent orbits, computed from the long-root poset
//! of a root system, together with related decomposition numbers.

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod gln_springer;
pub mod int_linalg;
pub mod long_root_poset;
pub mod orbit_cohomology;
pub mod root_system;
pub mod weyl_oracle;

pub use error::{Error, Result};
