//! Crossed modules, strict 2-groups, and Čech-style transition data on
//! finite cover nerves.
//!
//! The crate is organised bottom-up: [`finset`] and [`group`] hold the
//! finite-set and finite-group plumbing, [`crossed`] the 2-group arithmetic,
//! [`shape`] the cover nerves, and [`transition1`] / [`transition2`] the
//! cocycles, their morphisms and classification. [`diagram`] evaluates
//! string-diagram terms, and [`oracle`] holds the independent checks used by
//! the acceptance suite.

pub mod crossed;
pub mod diagram;
pub mod finset;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod search;
pub mod shape;
pub mod transition1;
pub mod transition2;

pub use crossed::{Arrow, CrossedModule};
pub use finset::FinMap;
pub use group::{FiniteGroup, GroupHom, RightAction};
pub use shape::{CoverShape, NerveMap, SimplicialComplex};
