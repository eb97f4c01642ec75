//! Combinatorial machinery for unavoidable drawings of complete multipartite
//! graphs: permutation algebra, abstract simple drawings, a rotation-system
//! realizer, templates and canonical drawings, and a desk-scale extraction
//! pipeline.

pub mod combinatorics;
pub mod drawing;
pub mod extraction;
pub mod realizer;
pub mod template;

pub use combinatorics::{CyclicOrder, Permutation, Sign, SignedClass, Vertex};
pub use drawing::{AbstractDrawing, CrossingRecord, Edge, EdgePair, OnePageDrawing};
