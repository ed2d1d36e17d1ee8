//! Spanning-tree generating functions and Kirchhoff's resistance formula.

use num_traits::{One, Zero};

use super::graph::{DisjointSets, Edge, WeightedGraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_EDGE_CAP: usize = 20;

/// Sum over spanning trees of the product of edge conductances, by
/// exhaustive enumeration. Cross-checked against a Laplacian cofactor.
pub fn spanning_tree_polynomial(g: &WeightedGraph) -> Result<Scalar> {
    spanning_tree_polynomial_capped(g, DEFAULT_EDGE_CAP)
}

pub fn spanning_tree_polynomial_capped(g: &WeightedGraph, cap: usize) -> Result<Scalar> {
    check_cap(g, cap)?;
    let total = enumerate(g.vertex_count(), g.edges());
    assert_eq!(
        total,
        laplacian_cofactor(g),
        "matrix-tree theorem violated: enumeration disagrees with the cofactor"
    );
    Ok(total)
}

/// Determinant of the Laplacian with the first row and column removed.
pub fn laplacian_cofactor(g: &WeightedGraph) -> Scalar {
    let l = super::graph::laplacian(g);
    let rest: Vec<usize> = (1..g.vertex_count()).collect();
    l.select(&rest, &rest).det()
}

/// `R_ij = T(G/ij) / T(G)` for boundary positions `i`, `j`.
pub fn resistance_oracle(g: &WeightedGraph, i: usize, j: usize) -> Result<Scalar> {
    resistance_oracle_capped(g, i, j, DEFAULT_EDGE_CAP)
}

pub fn resistance_oracle_capped(g: &WeightedGraph, i: usize, j: usize, cap: usize) -> Result<Scalar> {
    let n = g.n();
    if i >= n || j >= n {
        return Err(Error::InvalidInput(format!("boundary position out of range (n = {n})")));
    }
    check_cap(g, cap)?;
    g.check_connected()?;
    if i == j {
        return Ok(Scalar::zero());
    }
    let (a, b) = (g.boundary()[i], g.boundary()[j]);
    let whole = enumerate(g.vertex_count(), g.edges());
    let (merged_count, merged_edges) = contract(g, a, b);
    let merged = enumerate(merged_count, &merged_edges);
    Ok(merged / whole)
}

fn check_cap(g: &WeightedGraph, cap: usize) -> Result<()> {
    if g.edge_count() > cap {
        return Err(Error::TooLarge {
            what: "edge count for spanning-tree enumeration",
            size: g.edge_count(),
            cap,
        });
    }
    Ok(())
}

/// Identifies vertices `a` and `b`; edges between them become loops and are
/// dropped.
fn contract(g: &WeightedGraph, a: usize, b: usize) -> (usize, Vec<Edge>) {
    let (keep, gone) = (a.min(b), a.max(b));
    let relabel = |v: usize| -> usize {
        let v = if v == gone { keep } else { v };
        if v > gone {
            v - 1
        } else {
            v
        }
    };
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge::new(relabel(e.u), relabel(e.v), e.conductance.clone()))
        .filter(|e| !e.is_loop())
        .collect();
    (g.vertex_count() - 1, edges)
}

fn enumerate(vertex_count: usize, edges: &[Edge]) -> Scalar {
    let usable: Vec<&Edge> = edges.iter().filter(|e| !e.is_loop()).collect();
    if vertex_count <= 1 {
        return Scalar::one();
    }
    let mut total = Scalar::zero();
    let mut chosen: Vec<usize> = Vec::with_capacity(vertex_count - 1);
    walk(&usable, 0, vertex_count, &mut chosen, &mut total);
    total
}

fn walk(edges: &[&Edge], next: usize, vertex_count: usize, chosen: &mut Vec<usize>, total: &mut Scalar) {
    let needed = vertex_count - 1 - chosen.len();
    if needed == 0 {
        *total += chosen.iter().fold(Scalar::one(), |acc, &i| acc * &edges[i].conductance);
        return;
    }
    if edges.len() - next < needed {
        return;
    }
    for i in next..edges.len() {
        if edges.len() - i < needed {
            break;
        }
        chosen.push(i);
        if is_forest(edges, chosen, vertex_count) {
            walk(edges, i + 1, vertex_count, chosen, total);
        }
        chosen.pop();
    }
}

fn is_forest(edges: &[&Edge], chosen: &[usize], vertex_count: usize) -> bool {
    let mut ds = DisjointSets::new(vertex_count);
    chosen.iter().all(|&i| ds.union(edges[i].u, edges[i].v))
}

/// Number of spanning trees, ignoring weights.
pub fn spanning_tree_count(g: &WeightedGraph) -> Result<Scalar> {
    spanning_tree_polynomial(&super::graph::unit_weights(g))
}
