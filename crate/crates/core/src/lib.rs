//! Construction, classification, and verification of almost m-ary nearly
//! perfect sequences (NPS) and the partial direct product difference sets
//! they correspond to, plus cyclotomic-class constructions and a desk-scale
//! exhaustive search engine.
//!
//! Everything is exact: autocorrelation coefficients live in the ring of
//! cyclotomic integers Z[zeta_m] (module [`cyclotomic`]), never in floating
//! point. The remaining modules build on that kernel:
//!
//! - [`sequence`]: periodic almost m-ary sequences, their spectra, NPS
//!   classification, and the spectrum-preserving transforms.
//! - [`diffset`]: subsets of Z_n x Z_m, difference tables, the five-bucket
//!   partial direct product difference set verifier, and the
//!   sequence/difference-set duality.
//! - [`multiplier`]: multipliers of difference sets, orbit decomposition
//!   under x -> t*x, and orbit-union search.
//! - [`cyclotomy`]: cyclotomic classes, sigma-sequences, and the quaternary
//!   construction, with the classical cyclotomic-number identities as a
//!   verification suite.
//! - [`search`]: pruned exhaustive enumeration of sequences and difference
//!   sets with deterministic, reproducible reports.

pub mod arith;
pub mod cyclotomic;
pub mod diffset;
pub mod sequence;

pub use cyclotomic::{cyclotomic_poly, CycInt, IntPoly};
pub use diffset::{DiffSet, GroupElem, PdpdsParams};
pub use sequence::{AlmostSequence, NpsClassification, NpsKind, Symbol};
