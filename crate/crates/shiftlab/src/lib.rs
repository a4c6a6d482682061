//! Computational toolkit for symbolic dynamical systems: shifts of finite
//! type, sofic shifts, countable-state Markov shifts, and shifts presented
//! by forbidden words. Provides exact word/periodic-point censuses, entropy,
//! Parry and natural measures, and cross-checking against brute-force
//! enumeration.

pub mod cli;
pub mod countable;
pub mod error;
pub mod fixtures;
pub mod krieger;
pub mod matrix;
pub mod oracle;
pub mod sft;
pub mod sofic;
pub mod spectral;
pub mod system;

pub use error::{Result, ShiftError};
pub use matrix::{Alphabet, CylinderSpec, MeasureMethod, MeasureResult, Symbol, Word};
