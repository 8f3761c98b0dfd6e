//! The extension datum 1 → I → W̃ → W → 1 with a regular splitting, the
//! characters χ and τ of I, and evaluation on fiber-product elements.

mod character;
mod datum;
mod fiber;
mod table;
mod validate;

pub use character::{act_on_character, canonical_i_generators, tau_character, Character};
pub use datum::{Convention, DatumFile, ExtensionDatum, GroupSource, SCHEMA_VERSION};
pub use fiber::{free_reduce, invert_word, BraidWord, FiberElement};
pub use table::{CayleyTable, TableFile, WTILDE_CAP};
pub use validate::{validate, Check, Status, ValidationReport, VALIDATION_CHECKS};
