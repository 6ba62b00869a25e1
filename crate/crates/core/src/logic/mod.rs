//! Shared vocabulary: values, atoms, formulas, rules, programs and weights.

pub mod formula;
pub mod interp;
pub mod program;
pub mod rule;
pub mod signature;
pub mod value;
pub mod weight;

pub use formula::Formula;
pub use interp::{satisfies, AtomId, AtomSet, Interpretation, Universe};
pub use program::{AtomPattern, Builtin, CmpOp, Expr, Program, Term};
pub use rule::{Body, Rule, WeightedRule};
pub use signature::{ConstDecl, DomainSpec, Range, Signature};
pub use value::{ConstantKey, GroundAtom, Value};
pub use weight::{compare_weights, SymbolicWeight, Weight};
