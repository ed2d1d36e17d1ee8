//! Electrical transformations. Each move preserves the response matrix and
//! the boundary; when the input is embedded the output embedding is kept
//! consistent (a triangle that does not bound a face loses the embedding).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::graph::{Edge, HalfEdge, WeightedGraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    RemoveLoop { edge: usize },
    RemovePendant { vertex: usize },
    Series { vertex: usize },
    Parallel { first: usize, second: usize },
    StarToTriangle { vertex: usize },
    TriangleToStar { edges: [usize; 3] },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::RemoveLoop { .. } => "remove_loop",
            Move::RemovePendant { .. } => "remove_pendant",
            Move::Series { .. } => "series",
            Move::Parallel { .. } => "parallel",
            Move::StarToTriangle { .. } => "star_to_triangle",
            Move::TriangleToStar { .. } => "triangle_to_star",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn transform(g: &WeightedGraph, mv: Move) -> Result<WeightedGraph> {
    let mut ed = Editor::new(g);
    let bad = |why: &str| Error::BadSite {
        mv: mv.name(),
        site: format!("{mv}: {why}"),
    };
    match mv {
        Move::RemoveLoop { edge } => {
            let e = ed.edge(edge).ok_or_else(|| bad("no such edge"))?;
            if !e.is_loop() {
                return Err(bad("edge is not a loop"));
            }
            ed.remove_edge(edge);
        }
        Move::RemovePendant { vertex } => {
            ed.check_interior(vertex).map_err(&bad)?;
            let inc = ed.incident(vertex);
            if inc.len() != 1 || ed.edge(inc[0]).unwrap().is_loop() {
                return Err(bad("vertex is not a pendant"));
            }
            ed.remove_edge(inc[0]);
            ed.remove_vertex(vertex);
        }
        Move::Series { vertex } => {
            ed.check_interior(vertex).map_err(&bad)?;
            let inc = ed.incident(vertex);
            if inc.len() != 2 || inc.iter().any(|&e| ed.edge(e).unwrap().is_loop()) {
                return Err(bad("vertex does not have exactly two non-loop edges"));
            }
            let (e1, e2) = (ed.edge(inc[0]).unwrap().clone(), ed.edge(inc[1]).unwrap().clone());
            let (a, b) = (e1.other(vertex), e2.other(vertex));
            let c = (&e1.conductance * &e2.conductance) / (&e1.conductance + &e2.conductance);
            let new = ed.add_edge(Edge::new(a, b, c));
            ed.replace_half(ed.half_at_far_end(inc[0], vertex), vec![2 * new]);
            ed.replace_half(ed.half_at_far_end(inc[1], vertex), vec![2 * new + 1]);
            ed.remove_edge(inc[0]);
            ed.remove_edge(inc[1]);
            ed.remove_vertex(vertex);
        }
        Move::Parallel { first, second } => {
            let (a, b) = match (ed.edge(first), ed.edge(second)) {
                (Some(a), Some(b)) if first != second => (a.clone(), b.clone()),
                _ => return Err(bad("need two distinct existing edges")),
            };
            let same_ends = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
            if a.is_loop() || !same_ends {
                return Err(bad("edges are not parallel"));
            }
            ed.edges[first].as_mut().unwrap().conductance = &a.conductance + &b.conductance;
            ed.remove_edge(second);
        }
        Move::StarToTriangle { vertex } => {
            ed.check_interior(vertex).map_err(&bad)?;
            let inc = ed.incident(vertex);
            if inc.len() != 3 || inc.iter().any(|&e| ed.edge(e).unwrap().is_loop()) {
                return Err(bad("vertex does not have exactly three non-loop edges"));
            }
            star_to_triangle(&mut ed, vertex, &inc);
        }
        Move::TriangleToStar { edges } => {
            triangle_to_star(&mut ed, edges).map_err(bad)?;
        }
    }
    Ok(ed.finish())
}

fn star_to_triangle(ed: &mut Editor, vertex: usize, inc: &[usize]) {
    // Spokes in clockwise order around the centre when embedded.
    let spokes: Vec<usize> = match &ed.rotation {
        Some(rot) => rot[vertex].iter().map(|h| h / 2).collect(),
        None => inc.to_vec(),
    };
    let far: Vec<usize> = spokes.iter().map(|&e| ed.edge(e).unwrap().other(vertex)).collect();
    let cond: Vec<Scalar> = spokes
        .iter()
        .map(|&e| ed.edge(e).unwrap().conductance.clone())
        .collect();
    let total = cond.iter().fold(Scalar::zero(), |a, c| a + c);
    // new[k] joins spoke k and spoke k+1.
    let mut new = [0usize; 3];
    for k in 0..3 {
        let next = (k + 1) % 3;
        let c = (&cond[k] * &cond[next]) / &total;
        new[k] = ed.add_edge(Edge::new(far[k], far[next], c));
    }
    for k in 0..3 {
        let prev = (k + 2) % 3;
        // At spoke k's far end: edge to the successor first, then to the predecessor.
        let to_succ = 2 * new[k];
        let to_pred = 2 * new[prev] + 1;
        let h = ed.half_at_far_end(spokes[k], vertex);
        ed.replace_half(h, vec![to_succ, to_pred]);
    }
    for &e in &spokes {
        ed.remove_edge(e);
    }
    ed.remove_vertex(vertex);
}

fn triangle_to_star(ed: &mut Editor, edges: [usize; 3]) -> std::result::Result<(), &'static str> {
    let es: Vec<Edge> = edges
        .iter()
        .map(|&e| ed.edge(e).cloned())
        .collect::<Option<_>>()
        .ok_or("no such edge")?;
    if edges.iter().collect::<BTreeSet<_>>().len() != 3 || es.iter().any(Edge::is_loop) {
        return Err("need three distinct non-loop edges");
    }
    let corners: BTreeSet<usize> = es.iter().flat_map(|e| [e.u, e.v]).collect();
    if corners.len() != 3 {
        return Err("edges do not form a triangle");
    }
    let corners: Vec<usize> = corners.into_iter().collect();
    // Opposite edge of each corner.
    let mut opposite = [usize::MAX; 3];
    for (k, &x) in corners.iter().enumerate() {
        let hits: Vec<usize> = (0..3).filter(|&i| es[i].u != x && es[i].v != x).collect();
        if hits.len() != 1 {
            return Err("edges do not form a triangle");
        }
        opposite[k] = hits[0];
    }
    let c = |i: usize| &es[i].conductance;
    let p = c(0) * c(1) + c(1) * c(2) + c(2) * c(0);
    let centre = ed.add_vertex();
    let mut spoke = [0usize; 3];
    for k in 0..3 {
        let g = &p / c(opposite[k]);
        spoke[k] = ed.add_edge(Edge::new(corners[k], centre, g));
    }
    // Embedding: the triangle must bound a face, i.e. at every corner its two
    // triangle half-edges are adjacent (not across the boundary gap).
    let mut kept_embedding = false;
    if let Some(rot) = ed.rotation.clone() {
        let tri_half = |x: usize, i: usize| -> HalfEdge {
            let e = &es[i];
            if e.u == x {
                2 * edges[i]
            } else {
                2 * edges[i] + 1
            }
        };
        let edge_between = |x: usize, y: usize| -> usize {
            (0..3)
                .find(|&i| (es[i].u == x && es[i].v == y) || (es[i].u == y && es[i].v == x))
                .unwrap()
        };
        let is_boundary = |x: usize| ed.boundary.contains(&x);
        let adjacent = |x: usize, first: HalfEdge, second: HalfEdge| -> Option<usize> {
            let list = &rot[x];
            let pos = list.iter().position(|&h| h == first)?;
            let len = list.len();
            if len < 2 {
                return None;
            }
            if pos + 1 < len && list[pos + 1] == second {
                return Some(pos);
            }
            if pos + 1 == len && list[0] == second && !is_boundary(x) {
                return Some(pos);
            }
            None
        };
        // Try both cyclic orders of the centre: (0,1,2) and (0,2,1).
        for order in [[0usize, 1, 2], [0, 2, 1]] {
            let ok = (0..3).all(|k| {
                let x = corners[order[k]];
                let succ = corners[order[(k + 1) % 3]];
                let pred = corners[order[(k + 2) % 3]];
                adjacent(
                    x,
                    tri_half(x, edge_between(x, succ)),
                    tri_half(x, edge_between(x, pred)),
                )
                .is_some()
            });
            if ok {
                let mut rot = rot.clone();
                for k in 0..3 {
                    let x = corners[order[k]];
                    let succ = corners[order[(k + 1) % 3]];
                    let first = tri_half(x, edge_between(x, succ));
                    let pos = rot[x].iter().position(|&h| h == first).unwrap();
                    let len = rot[x].len();
                    let next = (pos + 1) % len;
                    rot[x][pos] = 2 * spoke[order[k]];
                    rot[x].remove(next);
                }
                rot[centre] = order.iter().map(|&k| 2 * spoke[k] + 1).collect();
                ed.rotation = Some(rot);
                kept_embedding = true;
                break;
            }
        }
        if !kept_embedding {
            ed.rotation = None;
        }
    }
    for &e in &edges {
        ed.edges[e] = None;
        if let Some(rot) = &mut ed.rotation {
            for list in rot.iter_mut() {
                list.retain(|&h| h / 2 != e);
            }
        }
    }
    Ok(())
}

/// Applies loops, pendants, series and parallel reductions, in that priority,
/// until none applies.
pub fn simplify(g: &WeightedGraph) -> WeightedGraph {
    let mut current = g.clone();
    while let Some(mv) = next_reduction(&current) {
        current = transform(&current, mv).expect("reduction site was validated");
    }
    current
}

/// The reduction [`simplify`] would apply next, if any.
pub fn next_reduction(g: &WeightedGraph) -> Option<Move> {
    let edges = g.edges();
    if let Some(edge) = edges.iter().position(Edge::is_loop) {
        return Some(Move::RemoveLoop { edge });
    }
    let interior = g.interior_vertices();
    let incident = |v: usize| g.incident_edges(v);
    if let Some(&vertex) = interior.iter().find(|&&v| incident(v).len() == 1) {
        return Some(Move::RemovePendant { vertex });
    }
    if let Some(&vertex) = interior.iter().find(|&&v| incident(v).len() == 2) {
        return Some(Move::Series { vertex });
    }
    for first in 0..edges.len() {
        for second in first + 1..edges.len() {
            let (a, b) = (&edges[first], &edges[second]);
            if (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u) {
                return Some(Move::Parallel { first, second });
            }
        }
    }
    None
}

/// Mutable working copy with tombstoned edges and vertices.
struct Editor {
    vertex_count: usize,
    boundary: Vec<usize>,
    edges: Vec<Option<Edge>>,
    removed: BTreeSet<usize>,
    rotation: Option<Vec<Vec<HalfEdge>>>,
}

impl Editor {
    fn new(g: &WeightedGraph) -> Self {
        Editor {
            vertex_count: g.vertex_count(),
            boundary: g.boundary().to_vec(),
            edges: g.edges().iter().cloned().map(Some).collect(),
            removed: BTreeSet::new(),
            rotation: g.rotation().map(<[_]>::to_vec),
        }
    }

    fn edge(&self, e: usize) -> Option<&Edge> {
        self.edges.get(e).and_then(Option::as_ref)
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| matches!(self.edge(e), Some(x) if x.u == v || x.v == v))
            .collect()
    }

    fn check_interior(&self, v: usize) -> std::result::Result<(), &'static str> {
        if v >= self.vertex_count || self.removed.contains(&v) {
            Err("no such vertex")
        } else if self.boundary.contains(&v) {
            Err("vertex is a boundary node")
        } else {
            Ok(())
        }
    }

    /// Half-edge of `e` at the end away from `v`.
    fn half_at_far_end(&self, e: usize, v: usize) -> HalfEdge {
        let edge = self.edge(e).unwrap();
        if edge.u == v {
            2 * e + 1
        } else {
            2 * e
        }
    }

    fn add_edge(&mut self, e: Edge) -> usize {
        self.edges.push(Some(e));
        self.edges.len() - 1
    }

    fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        if let Some(rot) = &mut self.rotation {
            rot.push(Vec::new());
        }
        self.vertex_count - 1
    }

    fn replace_half(&mut self, h: HalfEdge, with: Vec<HalfEdge>) {
        if let Some(rot) = &mut self.rotation {
            for list in rot.iter_mut() {
                if let Some(pos) = list.iter().position(|&x| x == h) {
                    list.splice(pos..=pos, with);
                    return;
                }
            }
        }
    }

    fn remove_edge(&mut self, e: usize) {
        self.edges[e] = None;
        if let Some(rot) = &mut self.rotation {
            for list in rot.iter_mut() {
                list.retain(|&h| h / 2 != e);
            }
        }
    }

    fn remove_vertex(&mut self, v: usize) {
        self.removed.insert(v);
    }

    fn finish(self) -> WeightedGraph {
        let mut vmap = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for (v, slot) in vmap.iter_mut().enumerate() {
            if !self.removed.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                emap[i] = edges.len();
                edges.push(Edge::new(vmap[e.u], vmap[e.v], e.conductance.clone()));
            }
        }
        let rotation = self.rotation.map(|rot| {
            rot.into_iter()
                .enumerate()
                .filter(|(v, _)| !self.removed.contains(v))
                .map(|(_, list)| list.into_iter().map(|h| 2 * emap[h / 2] + h % 2).collect())
                .collect()
        });
        let boundary = self.boundary.iter().map(|&b| vmap[b]).collect();
        WeightedGraph::from_parts_unchecked(next, boundary, edges, rotation)
    }
}
