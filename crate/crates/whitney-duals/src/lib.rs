//! Whitney duals of graded posets via Whitney labelings.
//!
//! Two graded posets are Whitney duals when the absolute values of their
//! Whitney numbers of the first and second kind are interchanged. This crate
//! builds the classical poset families where that happens, certifies edge and
//! chain-edge labeling axioms (ER, ER*, rank two switching, braid,
//! cancellative, EW, CW), constructs the quotient Whitney dual `Q` of a
//! labeled poset and the equivalent pair-based poset `R`, and checks the
//! numeric consequences exactly: Whitney numbers, Möbius values, flag
//! quasisymmetric functions, and the local 0-Hecke action on maximal chains.
//!
//! Everything is exact integer arithmetic; nothing is randomized.
//!
//! ```
//! use whitney_duals::dual::{build_q, BuildOptions};
//! use whitney_duals::families::partition_lattice;
//! use whitney_duals::poset::Poset;
//!
//! let (p, labeling) = partition_lattice(4)?;
//! let q = build_q(&p, &labeling, &BuildOptions::default())?;
//! assert!(Poset::is_whitney_dual_pair(&p, &q.poset));
//! # Ok::<(), whitney_duals::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod dual;
pub mod error;
pub mod families;
pub mod hecke;
pub mod io;
pub mod iso;
pub mod labeling;
pub mod poset;
pub mod qsym;
pub mod verify;

pub use error::{Error, Result};
pub use labeling::{Label, LabelOrder, LabelingKind};
pub use poset::{Poset, SaturatedChain, WhitneyVector};
