use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Violation;

/// Errors raised by the core operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A graph failed validation.
    InvalidGraph(Vec<Violation>),
    /// A name does not denote a node of the graph it was looked up in.
    UnknownNode(String),
    /// A name does not denote an edge of the graph it was looked up in.
    UnknownEdge(String),
    /// A node of a morphism's domain is neither given nor forced by an edge.
    UnassignedNode(String),
    /// An edge of a morphism's domain has no image.
    UnassignedEdge(String),
    /// A node or edge received two different images.
    ConflictingAssignment(String),
    /// The edge map does not respect sources and targets.
    NotHomomorphic(String),
    /// Two morphisms (or a morphism and an object) do not fit together.
    Mismatch(&'static str),
    /// `invert` was called on a morphism that is not an isomorphism.
    NotInvertible,
    /// A context morphism does not preserve statements.
    NotSketchMorphism,
    /// The identifier map of a multi-sketch morphism is not compatible.
    IncompatibleIdentifiers(String),
    /// A predicate symbol is declared twice or used with the wrong arity.
    Predicate(String),
    /// A condition violates context discipline.
    IllFormed(Vec<String>),
    /// A statement that was required to be in a sketch is missing.
    StatementNotInSketch,
    /// A deduction input is not satisfied by the sketch it refers to.
    NotCertified(String),
    /// A condition does not have the shape an operation requires.
    Shape(String),
    /// A rule was applied at a morphism that is not one of its matches.
    NotAMatch,
    /// Evaluation ran out of its step budget.
    FuelExhausted,
    /// Generated names collided.
    NameClash(String),
    /// An invariant of a construction was broken.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGraph(vs) => {
                write!(f, "invalid graph:")?;
                for v in vs {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            Error::UnknownNode(n) => write!(f, "unknown node `{n}`"),
            Error::UnknownEdge(e) => write!(f, "unknown edge `{e}`"),
            Error::UnassignedNode(n) => {
                write!(f, "node `{n}` has no image and is not forced by any edge")
            }
            Error::UnassignedEdge(e) => write!(f, "edge `{e}` has no image"),
            Error::ConflictingAssignment(x) => write!(f, "conflicting images for `{x}`"),
            Error::NotHomomorphic(e) => {
                write!(f, "edge `{e}` is mapped without preserving source and target")
            }
            Error::Mismatch(what) => write!(f, "mismatch: {what}"),
            Error::NotInvertible => write!(f, "morphism is not an isomorphism"),
            Error::NotSketchMorphism => write!(f, "context morphism does not preserve statements"),
            Error::IncompatibleIdentifiers(i) => {
                write!(f, "identifier `{i}` is not mapped compatibly with its statement")
            }
            Error::Predicate(msg) => write!(f, "predicate error: {msg}"),
            Error::IllFormed(vs) => {
                write!(f, "ill-formed condition:")?;
                for v in vs {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            Error::StatementNotInSketch => write!(f, "statement is not declared in the sketch"),
            Error::NotCertified(what) => write!(f, "not certified: {what}"),
            Error::Shape(msg) => write!(f, "unexpected condition shape: {msg}"),
            Error::NotAMatch => write!(f, "morphism is not a match of the rule"),
            Error::FuelExhausted => write!(f, "evaluation step budget exhausted"),
            Error::NameClash(n) => write!(f, "generated name `{n}` clashes"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
