//! The sketch description language and the `dsketch` command line.
//!
//! A document is a sequence of named declarations:
//!
//! ```text
//! graph G { nodes 1 2 3; edges a: 1 -> 2, b: 2 -> 3 }
//! footprint CT { pred monic arity { nodes v1 v2; edges e: v1 -> v2 } }
//! sketch S over CT on G { stmt monic via { e -> a }; }
//! condition c over G = forall extend { nodes 4; edges x: 3 -> 4 } . true
//! constraint k = (c, initial) on S
//! ```

pub mod ast;
pub mod commands;
pub mod emit;
pub mod error;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod printer;
pub mod report;
pub mod script;

pub use ast::Document;
pub use error::DslError;
pub use model::Model;
pub use parser::parse;
pub use printer::print;
