//! Sequential graph construction under bounded resources.
//!
//! A sender streams one instruction bit per vertex; a builder with no
//! memory, full label memory, fading label memory, or modifiable memory turns
//! the stream into a graph. Alongside the deterministic machines the crate
//! provides closed-form family constructors, the randomness-only vertex
//! addition process with its exact likelihood, uniform attachment trees,
//! and an exhaustive verification harness.

pub mod cli;
pub mod cost;
pub mod error;
pub mod families;
pub mod graph;
pub mod instructions;
pub mod machines;
pub mod randomness;
pub mod trees;
pub mod verify;

pub use cost::ResourceCost;
pub use error::{Error, Result};
pub use graph::{CanonicalForm, Graph, LabeledGraph};
pub use instructions::InstructionString;
pub use machines::{Action, Choice, ConstructionTrace, MemoryModel, RuleSet};
