//! Coset complexes of finite groups and the combinatorial topology needed to
//! study them: permutation groups, simplicial complexes, exact homology,
//! fundamental-group presentations, Tits buildings and Cohen-Macaulay checks.

pub mod action;
pub mod buildings;
pub mod catalog;
pub mod cmcheck;
pub mod cosetcomplex;
pub mod error;
pub mod fundgroup;
pub mod homology;
pub mod permgroup;
pub mod simplicial;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{Certificate, Status, Verdict};
