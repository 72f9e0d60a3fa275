//! Dominating manipulations in voting when the manipulator only has partial
//! information about the other ballots.
//!
//! The crate is organised bottom-up:
//!
//! - [`order`]: alternatives, linear and partial orders, profiles.
//! - [`rules`]: the voting rules (scoring rules, Copeland, maximin, ranked
//!   pairs, STV, voting trees) and weighted majority graphs.
//! - [`extensions`]: information sets, linear-extension enumeration and
//!   brute-force possible/necessary winners.
//! - [`domination`]: exhaustive reference solvers for the domination and
//!   dominating-manipulation problems.
//! - [`flowsolver`]: polynomial max-flow algorithms for plurality and veto.
//! - [`reductions`]: generators for the hardness constructions.
//! - [`cli`]: instance file format and the command-line front end.

pub mod cli;
pub mod domination;
pub mod error;
pub mod extensions;
pub mod flowsolver;
pub mod order;
pub mod reductions;
pub mod rules;

pub use error::{Error, Result};
pub use order::{tie_break_argmax, Alternative, LinearOrder, PartialOrder, PartialProfile, Profile};
pub use rules::{evaluate, VotingRuleSpec, WeightedMajorityGraph};
