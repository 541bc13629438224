//! Binary and Z4-linear Hadamard codes, PD-sets for them, and permutation
//! decoding.

pub mod code;
pub mod code_binary;
pub mod code_z4;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod golden;
pub mod io;
pub mod pdset;
pub mod pdset_binary;
pub mod pdset_z4;
pub mod perm;
pub mod z4;

pub use code::{AnyCode, CodeDescriptor, SystematicCode};
pub use code_binary::HadamardCodeBinary;
pub use code_z4::HadamardCodeZ4;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, GaloisField};
pub use pdset::{BruteForceOptions, BruteForceOutcome, PdSet, Provenance};
pub use perm::Permutation;
pub use z4::{GaloisRing, LBlockShape, Z4Matrix};
