//! Quantum information in variable-length message spaces.
//!
//! The library models messages as superpositions of basis-letter strings
//! of varying length, measures their information content through the
//! length observable, and implements coding schemes on top of that
//! picture: block translation between alphabets of different size, lossy
//! compression onto typical subspaces (fixed-length and grand-canonical
//! sources), and lossless variable-length codes built from a classical
//! prefix code on the source spectrum.
//!
//! Conventions used throughout:
//!
//! * Basis strings are ordered sector-major: by length first, then
//!   lexicographically. The empty message `|·⟩` is a valid normalized
//!   state of length zero.
//! * Information is measured in qbits: `Î = log₂(dim) L̂` where `L̂` is
//!   the length observable and `dim` the letter-space dimension.
//! * All logarithms are base 2.

pub mod alphabet;
pub mod channel;
pub mod classical;
pub mod error;
pub mod lossless;
pub mod matrix;
pub mod schumacher;
pub mod translate;
pub mod vector;

pub use alphabet::{BasisString, QuantumAlphabet, TruncationConfig};
pub use channel::{CodePair, DeviationReport, KrausChannel, SparseOperator};
pub use classical::{
    huffman_build, shannon_entropy, BlockCode, ClassicalEnsemble, LengthMode, PrefixCode,
    TypicalSet,
};
pub use error::{Error, Result};
pub use lossless::{CoreInformationObservable, GeneralLosslessCode, QuantumSymbolCode};
pub use matrix::{MessageEnsemble, MessageMatrix};
pub use schumacher::{JunkTarget, LetterEnsemble, QuantumTypicalSubspace, SchumacherCode};
pub use translate::BlockTranslator;
pub use vector::ManyLetterVector;
