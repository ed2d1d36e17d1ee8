//! Small reference networks used across tests, benches and the CLI.

use num_traits::One;

use super::graph::{Edge, WeightedGraph};
use crate::scalar::Scalar;

fn unit() -> Scalar {
    Scalar::one()
}

/// Four-leaf tree with unit conductances: leaves 1 and 4 hang off one
/// interior vertex, leaves 2 and 3 off the other, and the two interior
/// vertices are joined. Boundary = leaves in order 1..4; embedded.
pub fn four_leaf_tree() -> WeightedGraph {
    WeightedGraph::new(
        6,
        vec![0, 1, 2, 3],
        vec![
            Edge::new(0, 4, unit()),
            Edge::new(1, 5, unit()),
            Edge::new(2, 5, unit()),
            Edge::new(3, 4, unit()),
            Edge::new(4, 5, unit()),
        ],
    )
    .and_then(|g| g.with_embedding(vec![vec![0], vec![1], vec![2], vec![3], vec![0, 4, 3], vec![1, 2, 4]]))
    .expect("valid tree")
}

/// Two boundary nodes joined by one edge.
pub fn single_edge(c: Scalar) -> WeightedGraph {
    WeightedGraph::new(2, vec![0, 1], vec![Edge::new(0, 1, c)])
        .and_then(|g| g.with_embedding(vec![vec![0], vec![0]]))
        .expect("valid edge")
}

/// Triangle on three boundary nodes, unit conductances, embedded.
pub fn unit_triangle() -> WeightedGraph {
    WeightedGraph::new(
        3,
        vec![0, 1, 2],
        vec![
            Edge::new(0, 1, unit()),
            Edge::new(1, 2, unit()),
            Edge::new(2, 0, unit()),
        ],
    )
    .and_then(|g| g.with_embedding(vec![vec![0, 2], vec![1, 0], vec![2, 1]]))
    .expect("valid triangle")
}

/// Three boundary nodes joined to one interior vertex, unit conductances.
pub fn unit_star() -> WeightedGraph {
    WeightedGraph::new(
        4,
        vec![0, 1, 2],
        vec![
            Edge::new(0, 3, unit()),
            Edge::new(1, 3, unit()),
            Edge::new(2, 3, unit()),
        ],
    )
    .and_then(|g| g.with_embedding(vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]))
    .expect("valid star")
}

/// Four-cycle on four boundary nodes, unit conductances.
pub fn unit_square() -> WeightedGraph {
    WeightedGraph::new(
        4,
        vec![0, 1, 2, 3],
        (0..4).map(|i| Edge::new(i, (i + 1) % 4, unit())).collect(),
    )
    .and_then(|g| g.with_embedding(vec![vec![0, 3], vec![1, 0], vec![2, 1], vec![3, 2]]))
    .expect("valid square")
}
