//! Chord arrangements of strand permutations and the networks they encode.
//!
//! Strand endpoints sit on a convex curve in clockwise order and chords are
//! straight segments, so two chords cross exactly when their endpoints
//! interleave. Medial points `2k` and `2k+1` (0-based) flank node `k`; the
//! face holding the arc between them is black and becomes that node.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::strands::StrandPermutation;
use crate::error::{Error, Result};
use crate::netcore::dual::{trace_rotation, Faces};
use crate::netcore::{check_circular_planar, Edge, HalfEdge, WeightedGraph};
use crate::scalar::Scalar;

/// Chord `(a, b)` with `a < b`, indexed by lower endpoint order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceColour {
    Outer,
    Black,
    White,
}

/// The medial graph: vertices `0..2n` are strand endpoints, then one vertex
/// per crossing. Edges are boundary arcs followed by chord segments.
#[derive(Clone, Debug)]
pub struct ChordArrangement {
    strands: StrandPermutation,
    chords: Vec<Chord>,
    crossings: Vec<Crossing>,
    along: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<HalfEdge>>,
    faces: Faces,
    colour: Vec<FaceColour>,
}

impl ChordArrangement {
    pub fn strands(&self) -> &StrandPermutation {
        &self.strands
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Crossing ids met along each chord, from its lower endpoint.
    pub fn along(&self, chord: usize) -> &[usize] {
        &self.along[chord]
    }

    pub fn point_count(&self) -> usize {
        self.strands.tau().len()
    }

    pub fn medial_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn medial_rotation(&self) -> &[Vec<HalfEdge>] {
        &self.rotation
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn face_colours(&self) -> &[FaceColour] {
        &self.colour
    }

    fn origin(&self, h: HalfEdge) -> usize {
        let (u, v) = self.edges[h / 2];
        if h.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    fn is_crossing(&self, vertex: usize) -> bool {
        vertex >= self.point_count()
    }

    /// Graphviz rendering of the medial graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph medial {\n");
        for p in 0..self.point_count() {
            let _ = writeln!(out, "  p{} [label=\"{}\", shape=point];", p, p + 1);
        }
        for x in 0..self.crossings.len() {
            let _ = writeln!(out, "  x{x} [label=\"\", shape=circle, width=0.1];");
        }
        let name = |v: usize| {
            if v < self.point_count() {
                format!("p{v}")
            } else {
                format!("x{}", v - self.point_count())
            }
        };
        let arcs = self.point_count();
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            let style = if k < arcs { " [style=dashed]" } else { "" };
            let _ = writeln!(out, "  {} -- {}{};", name(u), name(v), style);
        }
        out.push_str("}\n");
        out
    }
}

/// Position parameters of the endpoints on the curve `y = -x^2`. The first
/// attempt uses integers; later attempts perturb to break concurrencies.
fn parameters(size: usize, attempt: u64) -> Vec<Scalar> {
    let mut state = attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    (0..size)
        .map(|k| {
            let base = Scalar::from_integer((k as i64).into());
            if attempt == 0 {
                return base;
            }
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let jitter = (state % 997) as i64 + 1;
            base + Scalar::new(jitter.into(), (3 * 997).into())
        })
        .collect()
}

/// `x` where the chords `(a, b)` and `(c, d)` meet.
fn meeting_x(t: &[Scalar], ch: Chord, other: Chord) -> Scalar {
    let (ta, tb, tc, td) = (&t[ch.a], &t[ch.b], &t[other.a], &t[other.b]);
    (tc * td - ta * tb) / (tc + td - ta - tb)
}

fn interleave(p: Chord, q: Chord) -> bool {
    let inside = |x: usize| p.a < x && x < p.b;
    inside(q.a) != inside(q.b)
}

pub fn build_chord_arrangement(strands: &StrandPermutation) -> Result<ChordArrangement> {
    let tau = strands.tau();
    let size = tau.len();
    let chords: Vec<Chord> = strands.pairs().into_iter().map(|(a, b)| Chord { a, b }).collect();
    let mut crossings = Vec::new();
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            if interleave(chords[i], chords[j]) {
                crossings.push(Crossing { first: i, second: j });
            }
        }
    }
    let mut along = None;
    for attempt in 0..64 {
        let t = parameters(size, attempt);
        let mut lists: Vec<Vec<(Scalar, usize)>> = vec![Vec::new(); chords.len()];
        for (x, c) in crossings.iter().enumerate() {
            let at = meeting_x(&t, chords[c.first], chords[c.second]);
            lists[c.first].push((at.clone(), x));
            lists[c.second].push((at, x));
        }
        let mut concurrent = false;
        for list in &mut lists {
            list.sort();
            concurrent |= list.windows(2).any(|w| w[0].0 == w[1].0);
        }
        if !concurrent {
            along = Some(
                lists
                    .into_iter()
                    .map(|l| l.into_iter().map(|(_, x)| x).collect())
                    .collect::<Vec<Vec<usize>>>(),
            );
            break;
        }
    }
    let along = along.ok_or_else(|| Error::Degenerate("could not separate concurrent chords".into()))?;

    // Medial graph.
    let mut edges: Vec<(usize, usize)> = (0..size).map(|k| (k, (k + 1) % size)).collect();
    let crossing_vertex = |x: usize| size + x;
    let vertex_count = size + crossings.len();
    let mut rotation: Vec<Vec<HalfEdge>> = vec![Vec::new(); vertex_count];
    // Per crossing: half-edges toward the lower and upper end of each chord.
    let mut toward: HashMap<(usize, usize), [HalfEdge; 2]> = HashMap::new();
    let mut chord_start = vec![0; size];
    for (c, ch) in chords.iter().enumerate() {
        let mut path = vec![ch.a];
        path.extend(along[c].iter().map(|&x| crossing_vertex(x)));
        path.push(ch.b);
        for w in path.windows(2) {
            let e = edges.len();
            edges.push((w[0], w[1]));
            let (from, to) = (2 * e, 2 * e + 1);
            if w[0] < size {
                chord_start[w[0]] = from;
            } else {
                toward.entry((w[0] - size, c)).or_insert([usize::MAX; 2])[1] = from;
            }
            if w[1] < size {
                chord_start[w[1]] = to;
            } else {
                toward.entry((w[1] - size, c)).or_insert([usize::MAX; 2])[0] = to;
            }
        }
    }
    for k in 0..size {
        let next_arc = 2 * k;
        let prev_arc = 2 * ((k + size - 1) % size) + 1;
        rotation[k] = vec![next_arc, chord_start[k], prev_arc];
    }
    for (x, c) in crossings.iter().enumerate() {
        let (p, q) = (chords[c.first], chords[c.second]);
        let tp = toward[&(x, c.first)];
        let tq = toward[&(x, c.second)];
        // The endpoint of q inside the clockwise arc from p.a to p.b comes
        // right after the direction toward p.a.
        let (qx, qy) = if p.a < q.a && q.a < p.b {
            (tq[0], tq[1])
        } else {
            (tq[1], tq[0])
        };
        rotation[crossing_vertex(x)] = vec![tp[0], qx, tp[1], qy];
    }
    let faces = trace_rotation(&rotation, 2 * edges.len());
    let (v, e, f) = (vertex_count, edges.len(), faces.cycles.len());
    if v + f != e + 2 {
        return Err(Error::Degenerate(format!("medial graph fails Euler: {v} - {e} + {f}")));
    }
    let colour = colour_faces(&faces, &edges, size)?;
    Ok(ChordArrangement {
        strands: strands.clone(),
        chords,
        crossings,
        along,
        edges,
        rotation,
        faces,
        colour,
    })
}

fn colour_faces(faces: &Faces, edges: &[(usize, usize)], size: usize) -> Result<Vec<FaceColour>> {
    let count = faces.cycles.len();
    let all_arcs = |f: usize| faces.cycles[f].iter().all(|&h| h / 2 < size);
    let outer = [faces.face_of[0], faces.face_of[1]]
        .into_iter()
        .find(|&f| all_arcs(f))
        .ok_or_else(|| Error::ColoringFailure("no face runs along the whole circle".into()))?;
    let mut colour: Vec<Option<bool>> = vec![None; count];
    let mut queue = Vec::new();
    for k in 0..size {
        let inner = [faces.face_of[2 * k], faces.face_of[2 * k + 1]]
            .into_iter()
            .find(|&f| f != outer)
            .ok_or_else(|| Error::ColoringFailure(format!("arc {} borders only the outer face", k + 1)))?;
        let black = k % 2 == 0;
        match colour[inner] {
            Some(c) if c != black => {
                return Err(Error::ColoringFailure(format!(
                    "arc {} meets a face of the other colour",
                    k + 1
                )))
            }
            Some(_) => {}
            None => {
                colour[inner] = Some(black);
                queue.push(inner);
            }
        }
    }
    while let Some(f) = queue.pop() {
        let c = colour[f].unwrap();
        for &h in &faces.cycles[f] {
            if h / 2 < size {
                continue;
            }
            let g = faces.face_of[h ^ 1];
            match colour[g] {
                Some(d) if d == c => {
                    return Err(Error::ColoringFailure(format!(
                        "segment {}-{} has the same colour on both sides",
                        edges[h / 2].0 + 1,
                        edges[h / 2].1 + 1
                    )))
                }
                Some(_) => {}
                None => {
                    colour[g] = Some(!c);
                    queue.push(g);
                }
            }
        }
    }
    (0..count)
        .map(|f| {
            if f == outer {
                Ok(FaceColour::Outer)
            } else {
                match colour[f] {
                    Some(true) => Ok(FaceColour::Black),
                    Some(false) => Ok(FaceColour::White),
                    None => Err(Error::ColoringFailure(format!("face {f} is unreachable"))),
                }
            }
        })
        .collect()
}

/// Unit-conductance network whose vertices are the black faces and whose
/// edges are the crossings.
pub fn arrangement_to_network(arr: &ChordArrangement) -> Result<WeightedGraph> {
    let size = arr.point_count();
    let n = size / 2;
    let faces = &arr.faces;
    let black = |f: usize| arr.colour[f] == FaceColour::Black;
    // Network vertex of each black face.
    let mut vertex_of: HashMap<usize, usize> = HashMap::new();
    let mut arc_of_face: HashMap<usize, HalfEdge> = HashMap::new();
    for k in 0..n {
        let arc = 2 * k;
        let h = [2 * arc, 2 * arc + 1]
            .into_iter()
            .find(|&h| black(faces.face_of[h]))
            .expect("coloured arc");
        let f = faces.face_of[h];
        if vertex_of.insert(f, k).is_some() {
            return Err(Error::BoundaryDegenerate(format!(
                "node {} shares its face with another node",
                k + 1
            )));
        }
        arc_of_face.insert(f, h);
    }
    let mut next = n;
    for f in 0..faces.cycles.len() {
        if black(f) && !vertex_of.contains_key(&f) {
            vertex_of.insert(f, next);
            next += 1;
        }
    }
    let vertex_count = next;
    // One edge per crossing, joining the black faces at opposite corners.
    let mut edges = Vec::with_capacity(arr.crossings.len());
    let mut corner_half: HashMap<HalfEdge, HalfEdge> = HashMap::new();
    for x in 0..arr.crossings.len() {
        let rot = &arr.rotation[size + x];
        let corner_face = |k: usize| faces.face_of[rot[(k + 1) % 4]];
        let kb = (0..2)
            .find(|&k| black(corner_face(k)))
            .ok_or_else(|| Error::ColoringFailure(format!("crossing {} has no black corner", x + 1)))?;
        if !black(corner_face(kb + 2)) {
            return Err(Error::ColoringFailure(format!("crossing {} is not alternating", x + 1)));
        }
        let u = vertex_of[&corner_face(kb)];
        let v = vertex_of[&corner_face(kb + 2)];
        edges.push(Edge::new(u, v, Scalar::one()));
        corner_half.insert(rot[(kb + 1) % 4], 2 * x);
        corner_half.insert(rot[(kb + 3) % 4], 2 * x + 1);
    }
    let mut rotation: Vec<Vec<HalfEdge>> = vec![Vec::new(); vertex_count];
    for (&f, &w) in &vertex_of {
        // Walk order is anticlockwise around the face.
        let mut tokens: Vec<Option<HalfEdge>> = Vec::new();
        for &h in &faces.cycles[f] {
            if arc_of_face.get(&f) == Some(&h) {
                tokens.push(None);
            } else if arr.is_crossing(arr.origin(h)) {
                tokens.push(Some(corner_half[&h]));
            }
        }
        tokens.reverse();
        if let Some(gap) = tokens.iter().position(Option::is_none) {
            tokens.rotate_left(gap + 1);
        }
        rotation[w] = tokens.into_iter().flatten().collect();
    }
    let g = WeightedGraph::new(vertex_count, (0..n).collect(), edges)?.with_rotation(rotation)?;
    if !g.is_connected() {
        return Err(Error::BoundaryDegenerate("the encoded network is disconnected".into()));
    }
    check_circular_planar(&g)?;
    debug_assert!(g.edges().iter().all(|e| !e.conductance.is_zero()));
    Ok(g)
}
