use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrices::{DistanceMatrix, ResponseMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub conductance: Scalar,
}

impl Edge {
    pub fn new(u: usize, v: usize, conductance: Scalar) -> Self {
        Edge { u, v, conductance }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// A half-edge id: `2 * edge + end`, where end 0 starts at `edge.u` and end 1
/// at `edge.v`.
pub type HalfEdge = usize;

/// An electrical network: a multigraph with positive conductances and a list
/// of boundary vertices in clockwise circular order.
///
/// Vertices are `0..vertex_count`. The optional embedding is a rotation
/// system: for each vertex, the clockwise cyclic order of its half-edges.
/// At a boundary vertex the list starts just after the boundary circle, so
/// the circle lies between the last and the first entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    vertex_count: usize,
    boundary: Vec<usize>,
    edges: Vec<Edge>,
    rotation: Option<Vec<Vec<HalfEdge>>>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize, boundary: Vec<usize>, edges: Vec<Edge>) -> Result<Self> {
        if boundary.len() < 2 {
            return Err(Error::InvalidInput("need at least two boundary nodes".into()));
        }
        let mut seen = BTreeSet::new();
        for &b in &boundary {
            if b >= vertex_count {
                return Err(Error::InvalidInput(format!("boundary vertex {b} out of range")));
            }
            if !seen.insert(b) {
                return Err(Error::InvalidInput(format!("boundary vertex {b} repeated")));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidInput(format!("edge {i} has an endpoint out of range")));
            }
            if !e.conductance.is_positive() {
                return Err(Error::InvalidInput(format!("edge {i} has non-positive conductance")));
            }
        }
        Ok(WeightedGraph {
            vertex_count,
            boundary,
            edges,
            rotation: None,
        })
    }

    /// Attaches an embedding given as clockwise edge-index lists per vertex.
    /// A loop appears twice in its vertex's list; the first occurrence is its
    /// `u` end.
    pub fn with_embedding(self, edge_rotation: Vec<Vec<usize>>) -> Result<Self> {
        if edge_rotation.len() != self.vertex_count {
            return Err(Error::InvalidInput(format!(
                "embedding lists {} vertices, graph has {}",
                edge_rotation.len(),
                self.vertex_count
            )));
        }
        let mut rotation = Vec::with_capacity(self.vertex_count);
        for (w, list) in edge_rotation.iter().enumerate() {
            let mut loop_seen = BTreeSet::new();
            let mut halves = Vec::with_capacity(list.len());
            for &e in list {
                let edge = self
                    .edges
                    .get(e)
                    .ok_or_else(|| Error::InvalidInput(format!("embedding of vertex {w} names unknown edge {e}")))?;
                let h = if edge.is_loop() {
                    if loop_seen.insert(e) {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                } else if edge.u == w {
                    2 * e
                } else if edge.v == w {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidInput(format!("edge {e} is not incident to vertex {w}")));
                };
                halves.push(h);
            }
            rotation.push(halves);
        }
        self.with_rotation(rotation)
    }

    pub fn with_rotation(mut self, rotation: Vec<Vec<HalfEdge>>) -> Result<Self> {
        let mut count = vec![0usize; 2 * self.edges.len()];
        if rotation.len() != self.vertex_count {
            return Err(Error::InvalidInput("rotation size mismatch".into()));
        }
        for (w, list) in rotation.iter().enumerate() {
            for &h in list {
                if h >= count.len() || self.origin(h) != w {
                    return Err(Error::InvalidInput(format!(
                        "half-edge {h} does not start at vertex {w}"
                    )));
                }
                count[h] += 1;
            }
        }
        if let Some(h) = count.iter().position(|&c| c != 1) {
            return Err(Error::InvalidInput(format!(
                "edge {} must appear exactly once at each end of the rotation system",
                h / 2
            )));
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn without_embedding(mut self) -> Self {
        self.rotation = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of boundary nodes.
    pub fn n(&self) -> usize {
        self.boundary.len()
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn rotation(&self) -> Option<&[Vec<HalfEdge>]> {
        self.rotation.as_deref()
    }

    /// Rotation as edge-index lists (inverse of [`Self::with_embedding`]).
    pub fn edge_rotation(&self) -> Option<Vec<Vec<usize>>> {
        self.rotation
            .as_ref()
            .map(|rot| rot.iter().map(|l| l.iter().map(|h| h / 2).collect()).collect())
    }

    pub fn origin(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h / 2];
        if h.is_multiple_of(2) {
            e.u
        } else {
            e.v
        }
    }

    /// Position of `v` in the boundary list.
    pub fn boundary_position(&self, v: usize) -> Option<usize> {
        self.boundary.iter().position(|&b| b == v)
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary.contains(&v)
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        let b: BTreeSet<usize> = self.boundary.iter().copied().collect();
        (0..self.vertex_count).filter(|v| !b.contains(v)).collect()
    }

    /// Degree counting a loop twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].u == v || self.edges[i].v == v)
            .collect()
    }

    pub fn components(&self) -> DisjointSets {
        let mut ds = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            ds.union(e.u, e.v);
        }
        ds
    }

    pub fn is_connected(&self) -> bool {
        self.check_connected().is_ok()
    }

    pub(crate) fn check_connected(&self) -> Result<()> {
        let mut ds = self.components();
        let root = ds.find(0);
        for v in 1..self.vertex_count {
            if ds.find(v) != root {
                return Err(Error::Disconnected { a: 0, b: v });
            }
        }
        Ok(())
    }

    /// Same graph with boundary list replaced; the embedding is dropped.
    pub fn with_boundary(&self, boundary: Vec<usize>) -> Result<Self> {
        WeightedGraph::new(self.vertex_count, boundary, self.edges.clone())
    }

    pub(crate) fn from_parts_unchecked(
        vertex_count: usize,
        boundary: Vec<usize>,
        edges: Vec<Edge>,
        rotation: Option<Vec<Vec<HalfEdge>>>,
    ) -> Self {
        let g = WeightedGraph {
            vertex_count,
            boundary,
            edges,
            rotation,
        };
        debug_assert!(g.clone().validate_rotation().is_ok());
        g
    }

    fn validate_rotation(self) -> Result<Self> {
        match self.rotation.clone() {
            Some(rot) => self.with_rotation(rot),
            None => Ok(self),
        }
    }
}

pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Weighted Laplacian over all vertices. Loops contribute nothing; parallel
/// edges add.
pub fn laplacian(g: &WeightedGraph) -> Matrix {
    let mut l = Matrix::zeros(g.vertex_count, g.vertex_count);
    for e in g.edges.iter().filter(|e| !e.is_loop()) {
        let c = &e.conductance;
        l[(e.u, e.u)] += c;
        l[(e.v, e.v)] += c;
        l[(e.u, e.v)] -= c;
        l[(e.v, e.u)] -= c;
    }
    l
}

/// Response matrix as the Schur complement of the interior block of the
/// Laplacian, indexed by boundary position.
pub fn response_matrix(g: &WeightedGraph) -> Result<ResponseMatrix> {
    let mut ds = g.components();
    let mut anchored = vec![false; g.vertex_count];
    for &b in &g.boundary {
        let r = ds.find(b);
        anchored[r] = true;
    }
    let interior = g.interior_vertices();
    for &v in &interior {
        if !anchored[ds.find(v)] {
            return Err(Error::InteriorSingular { vertex: v });
        }
    }
    let l = laplacian(g);
    let a = l.select(&g.boundary, &g.boundary);
    if interior.is_empty() {
        return Ok(ResponseMatrix::new_unchecked(a));
    }
    let b = l.select(&g.boundary, &interior);
    let d = l.select(&interior, &interior);
    let d_inv = d.inverse().ok_or(Error::InteriorSingular { vertex: interior[0] })?;
    let correction = &(&b * &d_inv) * &b.transpose();
    let n = g.n();
    let m = Matrix::from_fn(n, n, |i, j| &a[(i, j)] - &correction[(i, j)]);
    Ok(ResponseMatrix::new_unchecked(m))
}

/// Effective resistances between boundary nodes. For each pair the boundary
/// voltages solving `M U = e_j - e_i` are found (with the last node grounded)
/// and `R_ij = |U_i - U_j|`.
pub fn resistance_matrix(g: &WeightedGraph) -> Result<DistanceMatrix> {
    g.check_connected()?;
    let m = response_matrix(g)?;
    resistance_from_response(&m)
}

/// Resistance matrix of any connected network with response matrix `m`.
pub fn resistance_from_response(m: &ResponseMatrix) -> Result<DistanceMatrix> {
    let n = m.order();
    let reduced = m.reduced();
    let green = reduced
        .inverse()
        .ok_or_else(|| Error::InvalidResponse("reduced response matrix is singular (network disconnected)".into()))?;
    // Voltages with node n grounded: U = G (e_j - e_i) on the first n-1 nodes.
    let voltage = |i: usize, j: usize, k: usize| -> Scalar {
        if k == n - 1 {
            return Scalar::zero();
        }
        let mut u = Scalar::zero();
        if j < n - 1 {
            u += &green[(k, j)];
        }
        if i < n - 1 {
            u -= &green[(k, i)];
        }
        u
    };
    let r = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            Scalar::zero()
        } else {
            (voltage(i, j, i) - voltage(i, j, j)).abs()
        }
    });
    DistanceMatrix::new(r)
}

/// Graph with every edge conductance set to 1.
pub fn unit_weights(g: &WeightedGraph) -> WeightedGraph {
    let mut h = g.clone();
    for e in &mut h.edges {
        e.conductance = Scalar::one();
    }
    h
}

pub(crate) fn edges_mut(g: &mut WeightedGraph) -> &mut Vec<Edge> {
    &mut g.edges
}
