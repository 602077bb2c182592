//! Decision engine for the BKN difference equation on labelled graphs of
//! graph manifolds.
//!
//! A [`LabeledGraph`] carries rational vertex charges and nonzero integer
//! edge indices. From it the [`criteria`] module builds the exact matrices
//! whose inertia and kernels decide the seven properties (Im, HI, F, E, VF,
//! VE, NPC) in [`decider`]; the [`oracle`] module checks and searches for
//! explicit BKN solutions certifying them, and [`census`] cross-validates the
//! two routes over every small graph.

pub mod census;
pub mod criteria;
pub mod decider;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod rational;

pub use graph::{parse_graph, serialize_graph, LabeledGraph};
pub use rational::Rational;
