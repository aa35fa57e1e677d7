//! Kauffman bracket and Jones polynomial of oriented classical and virtual
//! links, computed from marked looped interlacement graphs.

pub mod algebra;
pub mod graph;

pub use algebra::{BracketPoly, Gf2Matrix, Laurent, Monomial, QuarterLaurent};
pub use graph::{GraphError, MarkedGraph, Vertex, VertexSubset};
pub mod bracket;
pub mod diagram;
pub mod generate;
pub mod moves;
pub mod oracle;

pub use bracket::{bracket, bracket_nullity, bracket_recursive, BracketResult, Method};
