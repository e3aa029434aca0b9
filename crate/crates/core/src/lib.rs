//! Synthesis of registers with non-linear update (RNLUs) that generate a
//! given binary sequence.
//!
//! The main construction tags every `p`-bit chunk of the sequence with a
//! unique state of a small extra-bit generator (a primitive LFSR or a binary
//! counter), so that every output updating function reads the extra bits
//! only. Around it sit the comparison constructions (Berlekamp-Massey LFSRs,
//! minimal NLFSRs, minimum-stage RNLUs), a two-level minimizer with a gate
//! cost model, a cycle-accurate simulator and a benchmark harness.

pub mod baselines;
pub mod bench;
pub mod bitseq;
pub mod blif;
pub mod boolfn;
pub mod description;
mod error;
pub mod extragen;
pub mod register;
pub mod rnlu;

pub use bitseq::{BitSequence, Partition};
pub use boolfn::{CostModel, Cover, Cube, GateNetwork, IncompleteFunction, TruthTable};
pub use description::Description;
pub use error::{Error, Result};
pub use extragen::{Generator, GeneratorKind, GeneratorSpec, Polynomial};
pub use register::{GenericRegister, Logic, OutputTap, Register, SizeReport, UpdateFn};
pub use rnlu::{construct_rnlu, ConstructOptions, Rnlu};
