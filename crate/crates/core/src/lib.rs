//! Rewriting toolkit for circuits built from rational roots of the Pauli
//! matrices, translation gates and negators.

pub mod algebra;
pub mod circuit;
pub mod clifford;
pub mod error;
pub mod identities;
pub mod passes;
pub mod rules;
pub mod semantics;
pub mod session;
pub mod text;

pub use algebra::{Axis, Matrix, NamedOp, RootExponent, UnitaryMatrix};
pub use circuit::{Circuit, CircuitStats, Control, Gate, Polarity, Violation};
pub use error::{Error, Result};
pub use rules::{RewriteStep, RuleId, RuleParams};
pub use session::{Session, SessionStore, SessionView};
