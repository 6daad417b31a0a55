//! Generalized sketches over finite directed multigraphs.
//!
//! A *sketch* is a graph (its context) decorated with *statements*: predicate
//! symbols bound into the graph by graph morphisms. On top of sketches this
//! crate provides
//!
//! * first-order sketch conditions with guarded quantification along graph
//!   morphisms, and their satisfaction by morphisms into a sketch
//!   ([`condition`]),
//! * translation of conditions along context morphisms using chosen pushouts
//!   ([`translation`]),
//! * pushouts and pullbacks of graphs, sketches and multi sketches
//!   ([`category`], [`sketch`]),
//! * rule application with negative application conditions, repair loops
//!   and the deduction steps built on them ([`deduce`]),
//! * the category-theory footprint and its standard conditions as a fixture
//!   library ([`ct`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod category;
pub mod condition;
pub mod ct;
pub mod deduce;
mod error;
pub mod graph;
pub mod sketch;
pub mod translation;

pub use category::{initial_graph, initial_morphism, pullback, pushout, PullbackResult, PushoutResult};
pub use condition::{
    check_constraint, satisfies, Condition, Constraint, EvalOptions, Evaluator, Evidence, Node,
    Verdict,
};
pub use error::Error;
pub use graph::{Graph, GraphMorphism, RawGraph, Violation};
pub use sketch::{Footprint, MultiSketch, PredicateSymbol, Sketch, SketchMorphism, Statement};

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
