//! Circular orders, metric checks, Kalmanson inequalities and the Farris
//! transform.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrices::DistanceMatrix;
use crate::scalar::half;

pub const DEFAULT_ORDER_SEARCH_CAP: usize = 10;

/// Clockwise order of the nodes; `nodes()[p]` is the node at position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircularOrder(Vec<usize>);

impl CircularOrder {
    pub fn new(nodes: Vec<usize>) -> Result<Self> {
        let n = nodes.len();
        let mut seen = vec![false; n];
        for &v in &nodes {
            if v >= n || seen[v] {
                return Err(Error::InvalidInput(format!("order must be a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(CircularOrder(nodes))
    }

    pub fn identity(n: usize) -> Self {
        CircularOrder((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn node_at(&self, position: usize) -> usize {
        self.0[position % self.0.len()]
    }

    pub fn position_of(&self, node: usize) -> usize {
        self.0.iter().position(|&v| v == node).expect("node in order")
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(p, &v)| p == v)
    }

    /// `D` relabelled so that row `p` is the node at position `p`.
    pub fn arrange(&self, d: &DistanceMatrix) -> Result<DistanceMatrix> {
        if d.order() != self.len() {
            return Err(Error::InvalidInput(format!(
                "order has {} nodes but the matrix has order {}",
                self.len(),
                d.order()
            )));
        }
        Ok(d.permuted(&self.0))
    }
}

impl fmt::Display for CircularOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "({})", ids.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricViolation {
    NotSquare,
    Asymmetric {
        i: usize,
        j: usize,
    },
    NonzeroDiagonal {
        i: usize,
    },
    Negative {
        i: usize,
        j: usize,
    },
    /// Distinct nodes at distance zero, reported only for strict metrics.
    ZeroDistance {
        i: usize,
        j: usize,
    },
    /// `d(i,k) > d(i,j) + d(j,k)`.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
}

impl MetricReport {
    pub fn is_metric(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every failed metric axiom. Zero distances between distinct nodes
/// are allowed when `allow_pseudo` is set.
pub fn check_metric(m: &Matrix, allow_pseudo: bool) -> MetricReport {
    let mut violations = Vec::new();
    if !m.is_square() {
        violations.push(MetricViolation::NotSquare);
        return MetricReport { violations };
    }
    let n = m.rows();
    for i in 0..n {
        if !m[(i, i)].is_zero() {
            violations.push(MetricViolation::NonzeroDiagonal { i });
        }
        for j in i + 1..n {
            if m[(i, j)] != m[(j, i)] {
                violations.push(MetricViolation::Asymmetric { i, j });
            }
            if m[(i, j)].is_negative() {
                violations.push(MetricViolation::Negative { i, j });
            } else if !allow_pseudo && m[(i, j)].is_zero() {
                violations.push(MetricViolation::ZeroDistance { i, j });
            }
        }
    }
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            for j in 0..n {
                if j != i && j != k && m[(i, k)] > &m[(i, j)] + &m[(j, k)] {
                    violations.push(MetricViolation::Triangle { i, j, k });
                }
            }
        }
    }
    MetricReport { violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KalmansonInequality {
    /// `d13 + d24 >= d23 + d14`
    First,
    /// `d13 + d24 >= d12 + d34`
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KalmansonWitness {
    /// Nodes in clockwise order.
    pub quadruple: [usize; 4],
    pub inequality: KalmansonInequality,
}

/// First violated Kalmanson inequality over clockwise quadruples, or `None`.
pub fn kalmanson_check(d: &DistanceMatrix, order: &CircularOrder) -> Result<Option<KalmansonWitness>> {
    let a = order.arrange(d)?;
    let n = a.order();
    let m = a.matrix();
    for p1 in 0..n {
        for p2 in p1 + 1..n {
            for p3 in p2 + 1..n {
                for p4 in p3 + 1..n {
                    if let Some(inequality) = quadruple_failure(m, [p1, p2, p3, p4]) {
                        return Ok(Some(KalmansonWitness {
                            quadruple: [p1, p2, p3, p4].map(|p| order.node_at(p)),
                            inequality,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn quadruple_failure(m: &Matrix, [a, b, c, d]: [usize; 4]) -> Option<KalmansonInequality> {
    let diagonals = &m[(a, c)] + &m[(b, d)];
    if diagonals < &m[(b, c)] + &m[(a, d)] {
        Some(KalmansonInequality::First)
    } else if diagonals < &m[(a, b)] + &m[(c, d)] {
        Some(KalmansonInequality::Second)
    } else {
        None
    }
}

/// Lexicographically least circular order starting at node 1 under which
/// `d` is Kalmanson. Exhaustive with pruning.
pub fn find_circular_order(d: &DistanceMatrix) -> Result<Option<CircularOrder>> {
    find_circular_order_capped(d, DEFAULT_ORDER_SEARCH_CAP)
}

pub fn find_circular_order_capped(d: &DistanceMatrix, cap: usize) -> Result<Option<CircularOrder>> {
    let n = d.order();
    if n > cap {
        return Err(Error::TooLarge {
            what: "node count for circular order search",
            size: n,
            cap,
        });
    }
    if n == 0 {
        return Ok(Some(CircularOrder::identity(0)));
    }
    let mut prefix = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    Ok(extend(d.matrix(), &mut prefix, &mut used).then_some(CircularOrder(prefix)))
}

// Every quadruple is checked once, when its last member is placed.
fn extend(m: &Matrix, prefix: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = used.len();
    if prefix.len() == n {
        return true;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        prefix.push(v);
        if new_quadruples_hold(m, prefix) {
            used[v] = true;
            if extend(m, prefix, used) {
                return true;
            }
            used[v] = false;
        }
        prefix.pop();
    }
    false
}

fn new_quadruples_hold(m: &Matrix, prefix: &[usize]) -> bool {
    let last = prefix.len() - 1;
    for p1 in 0..last {
        for p2 in p1 + 1..last {
            for p3 in p2 + 1..last {
                let q = [prefix[p1], prefix[p2], prefix[p3], prefix[last]];
                if quadruple_failure(m, q).is_some() {
                    return false;
                }
            }
        }
    }
    true
}

/// `out[i][j] = (d(i,b) + d(j,b) - d(i,j)) / 2` over nodes other than `base`.
pub fn gromov_transform(d: &DistanceMatrix, base: usize) -> Result<Matrix> {
    let n = d.order();
    if base >= n {
        return Err(Error::InvalidInput(format!("base node {} out of range", base + 1)));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| v != base).collect();
    Ok(Matrix::from_fn(rest.len(), rest.len(), |a, b| {
        let (i, j) = (rest[a], rest[b]);
        if i == j {
            d.get(i, base).clone()
        } else {
            (d.get(i, base) + d.get(j, base) - d.get(i, j)) * half()
        }
    }))
}
