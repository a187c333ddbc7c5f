//! Exact computation with finite-dimensional Hopf algebras, comodule
//! algebras, and relative Hopf modules.
//!
//! Everything is presented by structure constants over an exact field (Q or
//! F_p) and every claim the crate makes is certified: validators return named
//! diagnostics, positive verdicts come with replayable witnesses (splitting
//! maps, integrals, decompositions), and searches that cannot conclude say
//! `unknown` rather than guessing. The organizing question is when a module
//! with compatible algebra action and Hopf coaction is projective over the
//! subalgebra of coinvariants, and when the whole category of such modules is
//! semisimple.

pub mod comodule;
pub mod diagnostics;
pub mod fixtures;
pub mod hopf;
pub mod linalg;
pub mod projcert;
pub mod relhopf;
pub mod scalar;
pub mod ssdecomp;

pub use diagnostics::Diagnostic;
pub use linalg::{Matrix, Subspace};
pub use scalar::{Field, Scalar};
