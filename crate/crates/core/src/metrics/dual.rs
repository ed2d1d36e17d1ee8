//! The dual-response matrix `M(D)`, circular minors and the dual-side
//! electrical test.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::order::{kalmanson_check, CircularOrder};
use super::splits::chord_weights;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrices::{response_violation, DistanceMatrix, ResponseMatrix};
use crate::parallel::ordered_map;
use crate::scalar::Scalar;

/// `M(D)`: off-diagonal `-w_ij`, diagonal `d(i,i+1)`, indexed by positions
/// of the order. Symmetric with zero row sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualResponseCandidate(Matrix);

impl DualResponseCandidate {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

pub fn m_of_d(d: &DistanceMatrix, order: &CircularOrder) -> Result<DualResponseCandidate> {
    let w = chord_weights(d, order)?;
    let n = order.len();
    let m = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            (0..n)
                .filter(|&k| k != i)
                .fold(Scalar::zero(), |acc, k| acc + &w[(i, k)])
        } else {
            -w[(i, j)].clone()
        }
    });
    debug_assert!((0..n).all(|i| m.row_sum(i).is_zero()));
    Ok(DualResponseCandidate(m))
}

/// Rows `p` and columns `q` such that `p_1..p_k, q_k..q_1` run clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircularPair {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

impl CircularPair {
    pub fn k(&self) -> usize {
        self.p.len()
    }
}

pub fn enumerate_circular_pairs(n: usize, k: usize) -> Vec<CircularPair> {
    assert!(k >= 1 && 2 * k <= n, "need 1 <= k <= n/2");
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..2 * k).collect();
    loop {
        for s in 0..2 * k {
            let t: Vec<usize> = (0..2 * k).map(|m| subset[(s + m) % (2 * k)]).collect();
            out.push(CircularPair {
                p: t[..k].to_vec(),
                q: t[k..].iter().rev().copied().collect(),
            });
        }
        if !next_combination(&mut subset, n) {
            return out;
        }
    }
}

pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinorFailure {
    Precondition {
        reason: String,
    },
    NegativeMinor {
        p: Vec<usize>,
        q: Vec<usize>,
        signed_det: Scalar,
    },
    Rank {
        rank: usize,
        expected: usize,
    },
}

/// Checks `(-1)^k det M(P;Q) >= 0` on every circular pair and
/// `rank M = n - 1`. Returns the first failure.
pub fn circular_minor_test(m: &Matrix) -> Option<MinorFailure> {
    if let Some(reason) = response_violation(m) {
        return Some(MinorFailure::Precondition { reason });
    }
    let n = m.rows();
    let pairs: Vec<CircularPair> = (1..=n / 2).flat_map(|k| enumerate_circular_pairs(n, k)).collect();
    let signed = ordered_map(&pairs, |pair| {
        let det = m.select(&pair.p, &pair.q).det();
        if pair.k() % 2 == 1 {
            -det
        } else {
            det
        }
    });
    if let Some((pair, value)) = pairs.iter().zip(signed).find(|(_, v)| v.is_negative()) {
        return Some(MinorFailure::NegativeMinor {
            p: pair.p.clone(),
            q: pair.q.clone(),
            signed_det: value,
        });
    }
    let rank = m.rank();
    let expected = n.saturating_sub(1);
    (rank != expected).then_some(MinorFailure::Rank { rank, expected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualVerdict {
    pub electrical: bool,
    pub m: Matrix,
    pub failure: Option<MinorFailure>,
    pub note: Option<String>,
}

/// Decides whether a Kalmanson matrix is the resistance matrix of a
/// connected circular planar network by testing `M(D)` as a response matrix.
pub fn is_electrical_via_dual(d: &DistanceMatrix, order: &CircularOrder) -> Result<DualVerdict> {
    if let Some(w) = kalmanson_check(d, order)? {
        return Err(Error::NotKalmanson(format!(
            "quadruple {:?} violates {:?}",
            w.quadruple.map(|v| v + 1),
            w.inequality
        )));
    }
    let m = m_of_d(d, order)?.into_matrix();
    let failure = circular_minor_test(&m);
    let note = match &failure {
        Some(MinorFailure::Rank { .. }) => {
            Some("rank of M(D) below n-1: cactus boundary (disconnected degeneration)".to_string())
        }
        _ => None,
    };
    Ok(DualVerdict {
        electrical: failure.is_none(),
        m,
        failure,
        note,
    })
}

/// Resistance matrix of the dual of a network with response `x`:
/// `R*_ij = -sum x(a,b)` over pairs separated by the chord split `S_ij`.
/// Rows of the result are dual nodes; dual node `k` sits between
/// positions `k` and `k+1` of `order`.
pub fn resistance_from_dual_response(x: &ResponseMatrix, order: &CircularOrder) -> Result<DistanceMatrix> {
    let n = x.order();
    if order.len() != n {
        return Err(Error::InvalidInput(format!(
            "order has {} nodes but the matrix has order {n}",
            order.len()
        )));
    }
    let xp = x.matrix().select(order.nodes(), order.nodes());
    let m = Matrix::from_fn(n, n, |i, j| {
        let (lo, hi) = (i.min(j), i.max(j));
        let inside = |p: usize| lo < p && p <= hi;
        let mut total = Scalar::zero();
        for a in 0..n {
            for b in a + 1..n {
                if inside(a) != inside(b) {
                    total -= &xp[(a, b)];
                }
            }
        }
        total
    });
    DistanceMatrix::new(m)
}
