//! Embedded weighted graphs, electrical responses and local moves.

pub mod dual;
pub mod examples;
pub mod graph;
pub mod spanning;
pub mod transform;

pub use dual::{check_circular_planar, dual_network, trace_faces, Faces};
pub use graph::{
    laplacian, resistance_from_response, resistance_matrix, response_matrix, unit_weights, DisjointSets, Edge,
    HalfEdge, WeightedGraph,
};
pub use spanning::{
    laplacian_cofactor, resistance_oracle, resistance_oracle_capped, spanning_tree_count, spanning_tree_polynomial,
    spanning_tree_polynomial_capped,
};
pub use transform::{next_reduction, simplify, transform, Move};
