//! Exact solvers and verifiers for distance-δ defense and cover problems on
//! unit-length graphs.

pub mod budget;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod matching;
pub mod grid;
pub mod point;
pub mod rational;
pub mod solvers;
pub mod variant;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{connected_graphs, MetricGraph};
pub use point::{Point, TokenSet};
pub use rational::Rational;
pub use variant::{AttackDomain, FractionClass, Instance, Variant};
