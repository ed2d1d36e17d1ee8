//! Face tracing and the planar dual network.
//!
//! Faces are orbits of `h -> rot_next(twin(h))`; with clockwise rotations
//! each bounded face is walked with the face on the left, and the outer face
//! runs clockwise around the disc through the boundary nodes in order.

use super::graph::{Edge, HalfEdge, WeightedGraph};
use crate::error::{Error, Result};

/// Faces of an embedded graph.
#[derive(Clone, Debug)]
pub struct Faces {
    /// Face index of every half-edge.
    pub face_of: Vec<usize>,
    /// Half-edges of each face in walking order.
    pub cycles: Vec<Vec<HalfEdge>>,
}

pub(crate) fn rotation_successor(rotation: &[Vec<HalfEdge>], half_count: usize) -> Vec<HalfEdge> {
    let mut next = vec![usize::MAX; half_count];
    for list in rotation {
        for (k, &h) in list.iter().enumerate() {
            next[h] = list[(k + 1) % list.len()];
        }
    }
    next
}

pub fn trace_faces(g: &WeightedGraph) -> Result<Faces> {
    let rotation = g.rotation().ok_or(Error::NotEmbedded)?;
    Ok(trace_rotation(rotation, 2 * g.edge_count()))
}

pub(crate) fn trace_rotation(rotation: &[Vec<HalfEdge>], half_count: usize) -> Faces {
    let succ = rotation_successor(rotation, half_count);
    let mut face_of = vec![usize::MAX; half_count];
    let mut cycles = Vec::new();
    for start in 0..half_count {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cycle = Vec::new();
        let mut h = start;
        loop {
            face_of[h] = id;
            cycle.push(h);
            h = succ[h ^ 1];
            if h == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    Faces { face_of, cycles }
}

/// Dual network: one boundary node per boundary arc (node `k` of the dual
/// lies between primal nodes `k` and `k+1`), one interior node per bounded
/// face, and reciprocal conductances. The result is embedded.
pub fn dual_network(g: &WeightedGraph) -> Result<WeightedGraph> {
    let rotation = g.rotation().ok_or(Error::NotEmbedded)?;
    g.check_connected()?;
    let faces = trace_faces(g)?;
    let (v, e, f) = (g.vertex_count(), g.edge_count(), faces.cycles.len());
    if v + f != e + 2 {
        return Err(Error::NotPlanar(format!("V - E + F = {v} - {e} + {f}, expected 2")));
    }
    let n = g.n();
    let first: Vec<HalfEdge> = g
        .boundary()
        .iter()
        .map(|&b| rotation[b].first().copied())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::NotPlanar("a boundary node has no incident edge".into()))?;
    let outer = faces.face_of[first[0]];
    if first.iter().any(|&h| faces.face_of[h] != outer) {
        return Err(Error::NotPlanar("boundary nodes do not share one outer face".into()));
    }
    let walk = &faces.cycles[outer];
    let start = walk.iter().position(|&h| h == first[0]).unwrap();
    let walk: Vec<HalfEdge> = walk[start..].iter().chain(&walk[..start]).copied().collect();
    let marks: Vec<usize> = first
        .iter()
        .map(|h| walk.iter().position(|x| x == h).unwrap())
        .collect();
    if marks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotPlanar(
            "boundary nodes are not met in clockwise order along the outer face".into(),
        ));
    }
    // Dual vertex of every half-edge.
    let mut dual_of = vec![usize::MAX; 2 * e];
    let mut arcs: Vec<Vec<HalfEdge>> = vec![Vec::new(); n];
    for (t, &h) in walk.iter().enumerate() {
        let k = marks.iter().rposition(|&m| m <= t).unwrap();
        dual_of[h] = k;
        arcs[k].push(h);
    }
    let mut interior_faces = Vec::new();
    for (fid, cycle) in faces.cycles.iter().enumerate() {
        if fid == outer {
            continue;
        }
        let id = n + interior_faces.len();
        for &h in cycle {
            dual_of[h] = id;
        }
        interior_faces.push(cycle.clone());
    }
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, edge)| Edge::new(dual_of[2 * i], dual_of[2 * i + 1], edge.conductance.recip()))
        .collect();
    let rotation: Vec<Vec<HalfEdge>> = arcs
        .into_iter()
        .chain(interior_faces)
        .map(|mut c| {
            c.reverse();
            c
        })
        .collect();
    let vertex_count = rotation.len();
    let dual = WeightedGraph::new(vertex_count, (0..n).collect(), edges)?;
    dual.with_rotation(rotation)
}

/// Checks that an embedded graph is planar with its boundary on the outer
/// face in clockwise order.
pub fn check_circular_planar(g: &WeightedGraph) -> Result<()> {
    dual_network(g).map(|_| ())
}
