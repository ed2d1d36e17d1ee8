//! Random instances: embedded circular planar networks, minimal networks
//! drawn from random strand permutations, and circular split systems.

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::metrics::{chord_split, CircularOrder, WeightedSplitSystem};
use crate::netcore::dual::trace_faces;
use crate::netcore::graph::edges_mut;
use crate::netcore::{check_circular_planar, Edge, HalfEdge, WeightedGraph};
use crate::reconstruct::{arrangement_to_network, build_chord_arrangement, StrandPermutation};
use crate::scalar::Scalar;

/// A rational in `[1/5, 9]` with small numerator and denominator.
pub fn random_conductance<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=5).into())
}

/// Working copy of an embedded graph for local growth.
struct Builder {
    vertex_count: usize,
    n: usize,
    edges: Vec<Edge>,
    rotation: Vec<Vec<HalfEdge>>,
}

impl Builder {
    fn cycle<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let edges = (0..n)
            .map(|k| Edge::new(k, (k + 1) % n, random_conductance(rng)))
            .collect();
        let rotation = (0..n).map(|k| vec![2 * k, 2 * ((k + n - 1) % n) + 1]).collect();
        Builder {
            vertex_count: n,
            n,
            edges,
            rotation,
        }
    }

    fn graph(&self) -> WeightedGraph {
        WeightedGraph::new(self.vertex_count, (0..self.n).collect(), self.edges.clone())
            .and_then(|g| g.with_rotation(self.rotation.clone()))
            .expect("builder keeps a valid rotation system")
    }

    /// Corners of a random bounded face: `(vertex, half-edge leaving it)`.
    fn random_face<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<(usize, HalfEdge)> {
        let g = self.graph();
        let faces = trace_faces(&g).expect("embedded");
        let outer = faces.face_of[g.rotation().unwrap()[0][0]];
        let inner: Vec<usize> = (0..faces.cycles.len()).filter(|&f| f != outer).collect();
        let f = *inner.choose(rng).expect("a bounded face");
        faces.cycles[f].iter().map(|&h| (g.origin(h), h)).collect()
    }

    /// Inserts `new` into the rotation at the corner just before `at`.
    fn insert_before(&mut self, vertex: usize, at: HalfEdge, new: HalfEdge) {
        let list = &mut self.rotation[vertex];
        let pos = list.iter().position(|&h| h == at).expect("corner half-edge");
        list.insert(pos, new);
    }

    fn add_star<R: Rng + ?Sized>(&mut self, rng: &mut R, corners: &[(usize, HalfEdge)]) {
        let centre = self.vertex_count;
        self.vertex_count += 1;
        self.rotation.push(Vec::new());
        let mut spokes = Vec::new();
        for &(x, at) in corners {
            let e = self.edges.len();
            self.edges.push(Edge::new(x, centre, random_conductance(rng)));
            self.insert_before(x, at, 2 * e);
            spokes.push(2 * e + 1);
        }
        spokes.reverse();
        self.rotation[centre] = spokes;
    }

    fn add_chord<R: Rng + ?Sized>(&mut self, rng: &mut R, a: (usize, HalfEdge), b: (usize, HalfEdge)) {
        let e = self.edges.len();
        self.edges.push(Edge::new(a.0, b.0, random_conductance(rng)));
        self.insert_before(a.0, a.1, 2 * e);
        self.insert_before(b.0, b.1, 2 * e + 1);
    }

    fn grow<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let corners = self.random_face(rng);
        if rng.gen_bool(0.5) {
            let mut picked: Vec<usize> = (0..corners.len()).filter(|_| rng.gen_bool(0.5)).collect();
            if picked.is_empty() {
                picked.push(rng.gen_range(0..corners.len()));
            }
            let chosen: Vec<(usize, HalfEdge)> = picked.iter().map(|&k| corners[k]).collect();
            self.add_star(rng, &chosen);
        } else {
            let i = rng.gen_range(0..corners.len());
            let j = rng.gen_range(0..corners.len());
            if i != j && corners[i].0 != corners[j].0 {
                self.add_chord(rng, corners[i], corners[j]);
            }
        }
    }

    fn remove_edge(&mut self, e: usize) {
        let last = self.edges.len() - 1;
        self.edges.swap_remove(e);
        for list in &mut self.rotation {
            list.retain(|&h| h / 2 != e);
            for h in list.iter_mut() {
                if *h / 2 == last {
                    *h = 2 * e + *h % 2;
                }
            }
        }
    }

    fn connected_without(&self, e: usize) -> bool {
        let mut ds = crate::netcore::DisjointSets::new(self.vertex_count);
        let mut parts = self.vertex_count;
        for (k, edge) in self.edges.iter().enumerate() {
            if k != e && ds.union(edge.u, edge.v) {
                parts -= 1;
            }
        }
        parts == 1
    }
}

/// Connected circular planar network with `n` boundary nodes and at most
/// `max_edges` edges, embedded, with random rational conductances.
pub fn random_planar_network<R: Rng + ?Sized>(rng: &mut R, n: usize, max_edges: usize) -> WeightedGraph {
    assert!(n >= 2 && max_edges >= n.max(2) - 1);
    let mut b = Builder::cycle(rng, n);
    let target = rng.gen_range(n..=max_edges.max(n) + 2);
    let mut guard = 0;
    while b.edges.len() < target && guard < 4 * max_edges {
        b.grow(rng);
        guard += 1;
    }
    let mut order: Vec<usize> = (0..b.edges.len()).collect();
    order.shuffle(rng);
    let deletions = rng.gen_range(0..=b.edges.len() / 2);
    let mut removed = 0;
    loop {
        let over = b.edges.len() > max_edges;
        if !over && removed >= deletions {
            break;
        }
        let candidates: Vec<usize> = (0..b.edges.len()).filter(|&e| b.connected_without(e)).collect();
        match candidates.choose(rng) {
            Some(&e) => {
                b.remove_edge(e);
                removed += 1;
            }
            None => break,
        }
    }
    let g = b.graph();
    if g.edge_count() > max_edges {
        // A spanning tree still over budget: start again.
        return random_planar_network(rng, n, max_edges);
    }
    debug_assert!(check_circular_planar(&g).is_ok());
    g
}

/// Uniform fixed-point-free involution on `0..2n`.
pub fn random_matching<R: Rng + ?Sized>(rng: &mut R, n: usize) -> StrandPermutation {
    let mut points: Vec<usize> = (0..2 * n).collect();
    points.shuffle(rng);
    let mut tau = vec![0; 2 * n];
    for pair in points.chunks(2) {
        tau[pair[0]] = pair[1];
        tau[pair[1]] = pair[0];
    }
    StrandPermutation::from_tau(tau).expect("matching")
}

/// Minimal network decoded from a random strand permutation, with random
/// conductances. Draws that do not encode a connected network are redrawn.
pub fn random_minimal_network<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (StrandPermutation, WeightedGraph) {
    loop {
        let tau = random_matching(rng, n);
        let Ok(arr) = build_chord_arrangement(&tau) else {
            continue;
        };
        let Ok(mut g) = arrangement_to_network(&arr) else {
            continue;
        };
        for e in edges_mut(&mut g).iter_mut() {
            e.conductance = random_conductance(rng);
        }
        return (tau, g);
    }
}

/// Random positive weights on a random subset of the chord splits of the
/// identity order.
pub fn random_split_system<R: Rng + ?Sized>(rng: &mut R, n: usize) -> WeightedSplitSystem {
    let order = CircularOrder::identity(n);
    let density = rng.gen_range(0.2..=1.0);
    let mut splits = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                splits.push((chord_split(&order, i, j), random_conductance(rng)));
            }
        }
    }
    if splits.is_empty() {
        splits.push((chord_split(&order, 0, 1), Scalar::one()));
    }
    WeightedSplitSystem::new(order, splits).expect("chord splits are circular")
}
