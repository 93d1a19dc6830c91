//! Scripted derivations and whole-circuit mapping passes.

pub mod adder;
pub mod amy;
pub mod builtins;
pub mod family;
pub mod mapping;
pub mod script;

pub use adder::{derive_full_adder, derive_w_adder};
pub use amy::derive_amy_toffoli;
pub use builtins::{builtin, builtin_text, BUILTIN_NAMES};
pub use family::{toffoli_family, ToffoliFamilyParams};
pub use mapping::{cleanup, expand_ncv, ncv_to_clifford_t, remove_control, translate_library};
pub use script::{Derivation, DerivationScript, ScriptBuilder, ScriptStep};
