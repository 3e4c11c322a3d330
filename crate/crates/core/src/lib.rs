//! Inference over syllogisms with generalized quantifiers.
//!
//! Premises are compiled into linear (or linear-fractional) programs over the
//! cardinalities of the `2^S` Venn atoms induced by `S` properties. The range
//! of the conclusion's measure over the feasible region is the inferred
//! quantifier. Fuzzy quantifiers are handled through kernel/support pairs or
//! through a grid of α-cuts, one crisp solve per level.

pub mod compile;
pub mod dsl;
pub mod inference;
pub mod interval;
pub mod optimizer;
pub mod oracle;
pub mod quantifier;
pub mod simplex;
pub mod syllogism;
pub mod term;

pub use dsl::{parse, ParseError, SyllogismDoc};
pub use inference::{infer, EngineConfig, InferenceError, InferenceResult, Mode};
pub use interval::Interval;
pub use quantifier::{Family, QuantifierSpec};
pub use syllogism::Syllogism;
