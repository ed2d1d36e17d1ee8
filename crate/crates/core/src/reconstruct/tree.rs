//! Triangle elimination and exact tree weight fitting.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrices::DistanceMatrix;
use crate::netcore::graph::edges_mut;
use crate::netcore::{simplify, transform, Move, WeightedGraph};
use crate::scalar::{format_scalar, Scalar};

/// Lowest-index edge joining each pair of the lexicographically least
/// triangle, if any.
fn least_triangle(g: &WeightedGraph) -> Option<[usize; 3]> {
    let v = g.vertex_count();
    let mut joins: Vec<Vec<Option<usize>>> = vec![vec![None; v]; v];
    for (k, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            joins[a][b].get_or_insert(k);
        }
    }
    for a in 0..v {
        for b in a + 1..v {
            let Some(ab) = joins[a][b] else { continue };
            for c in b + 1..v {
                if let (Some(bc), Some(ac)) = (joins[b][c], joins[a][c]) {
                    return Some([ab, bc, ac]);
                }
            }
        }
    }
    None
}

/// Greedy triangle-to-star elimination with a simplify pass after each
/// move. Heuristic: gives up after `10 V^2` moves.
pub fn triangles_to_stars(g: &WeightedGraph) -> Result<WeightedGraph> {
    g.check_connected()?;
    let cap = 10 * g.vertex_count() * g.vertex_count();
    let mut current = g.clone();
    for _ in 0..cap {
        match least_triangle(&current) {
            None => return Ok(current),
            Some(edges) => {
                current = simplify(&transform(&current, Move::TriangleToStar { edges })?);
            }
        }
    }
    match least_triangle(&current) {
        None => Ok(current),
        Some(_) => Err(Error::NotTerminated { cap }),
    }
}

fn tree_paths(t: &WeightedGraph) -> Result<Vec<Vec<usize>>> {
    // Parent edge of every vertex in a search tree rooted at vertex 0.
    let v = t.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; v];
    let mut depth = vec![usize::MAX; v];
    depth[0] = 0;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for e in t.incident_edges(x) {
            let y = t.edges()[e].other(x);
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = Some(e);
                stack.push(y);
            }
        }
    }
    let n = t.n();
    let b = t.boundary();
    let up = |x: usize| {
        let e = parent[x].unwrap();
        (e, t.edges()[e].other(x))
    };
    let mut paths = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (mut x, mut y) = (b[i], b[j]);
            let mut path = Vec::new();
            while x != y {
                if depth[x] >= depth[y] {
                    let (e, p) = up(x);
                    path.push(e);
                    x = p;
                } else {
                    let (e, p) = up(y);
                    path.push(e);
                    y = p;
                }
            }
            paths.push(path);
        }
    }
    Ok(paths)
}

fn check_tree(t: &WeightedGraph) -> Result<()> {
    t.check_connected()?;
    if t.edge_count() + 1 != t.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "not a tree: {} vertices, {} edges",
            t.vertex_count(),
            t.edge_count()
        )));
    }
    for v in 0..t.vertex_count() {
        let deg = t.degree(v);
        if !t.is_boundary(v) && deg == 1 {
            return Err(Error::InvalidInput(format!("leaf {} is not a boundary node", v + 1)));
        }
        if !t.is_boundary(v) && deg == 2 {
            return Err(Error::InvalidInput(format!("interior vertex {} has degree 2", v + 1)));
        }
    }
    Ok(())
}

/// Edge resistances making leaf-to-leaf path sums equal `d`; returns the
/// tree with conductances set to their reciprocals.
pub fn fit_tree_weights(t: &WeightedGraph, d: &DistanceMatrix) -> Result<WeightedGraph> {
    check_tree(t)?;
    let n = t.n();
    if d.order() != n {
        return Err(Error::InvalidInput(format!(
            "matrix has order {} but the tree has {n} boundary nodes",
            d.order()
        )));
    }
    let paths = tree_paths(t)?;
    let m = t.edge_count();
    let a = Matrix::from_fn(paths.len(), m, |r, e| {
        if paths[r].contains(&e) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let rhs: Vec<Scalar> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| d.get(i, j).clone())
        .collect();
    let at = a.transpose();
    let normal = &at * &a;
    let projected: Vec<Scalar> = (0..m)
        .map(|e| (0..rhs.len()).fold(Scalar::zero(), |acc, r| acc + &at[(e, r)] * &rhs[r]))
        .collect();
    let r = normal
        .solve(&projected)
        .ok_or_else(|| Error::Inconsistent("edge resistances are not determined by the distances".into()))?;
    for (row, target) in rhs.iter().enumerate() {
        let sum = paths[row].iter().fold(Scalar::zero(), |acc, &e| acc + &r[e]);
        if &sum != target {
            return Err(Error::Inconsistent(format!(
                "no tree weights reproduce the distances (row {} gives {} instead of {})",
                row + 1,
                format_scalar(&sum),
                format_scalar(target)
            )));
        }
    }
    if let Some(edge) = r.iter().position(|x| !x.is_positive()) {
        return Err(Error::NonPositiveWeight {
            edge,
            value: format_scalar(&r[edge]),
        });
    }
    let mut out = t.clone();
    for (e, res) in edges_mut(&mut out).iter_mut().zip(&r) {
        e.conductance = res.recip();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::examples::{four_leaf_tree, unit_star, unit_triangle};
    use crate::netcore::{response_matrix, Edge};
    use crate::scalar::int;

    fn tree_d() -> DistanceMatrix {
        DistanceMatrix::from_i64(&[&[0, 3, 3, 2], &[3, 0, 2, 3], &[3, 2, 0, 3], &[2, 3, 3, 0]]).unwrap()
    }

    #[test]
    fn lone_triangle_becomes_star() {
        let tri = unit_triangle();
        let star = triangles_to_stars(&tri).unwrap();
        assert_eq!(star.vertex_count(), 4);
        assert_eq!(star.edge_count(), 3);
        assert_eq!(response_matrix(&star).unwrap(), response_matrix(&tri).unwrap());
    }

    #[test]
    fn trees_are_unchanged() {
        assert_eq!(triangles_to_stars(&four_leaf_tree()).unwrap(), four_leaf_tree());
        assert_eq!(triangles_to_stars(&unit_star()).unwrap(), unit_star());
    }

    #[test]
    fn fits_tree_weights() {
        let fitted = fit_tree_weights(&four_leaf_tree(), &tree_d()).unwrap();
        assert!(fitted.edges().iter().all(|e| e.conductance == int(1)));
        let path = WeightedGraph::new(2, vec![0, 1], vec![Edge::new(0, 1, int(1))]).unwrap();
        let d = DistanceMatrix::from_i64(&[&[0, 5], &[5, 0]]).unwrap();
        assert_eq!(
            fit_tree_weights(&path, &d).unwrap().edges()[0].conductance,
            Scalar::new(1.into(), 5.into())
        );
    }

    #[test]
    fn four_point_violation_is_inconsistent() {
        let d = DistanceMatrix::from_i64(&[&[0, 4, 3, 2], &[4, 0, 2, 3], &[3, 2, 0, 3], &[2, 3, 3, 0]]).unwrap();
        assert!(matches!(
            fit_tree_weights(&four_leaf_tree(), &d),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn negative_weight_reported() {
        // Interior edge would need resistance -1.
        let d = DistanceMatrix::from_i64(&[&[0, 1, 1, 2], &[1, 0, 2, 1], &[1, 2, 0, 1], &[2, 1, 1, 0]]).unwrap();
        assert!(matches!(
            fit_tree_weights(&four_leaf_tree(), &d),
            Err(Error::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn rejects_non_trees() {
        assert!(fit_tree_weights(&unit_triangle(), &tree_d()).is_err());
    }
}
