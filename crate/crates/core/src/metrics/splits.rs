//! Circular split systems and exact split decomposition.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::order::CircularOrder;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matrices::DistanceMatrix;
use crate::scalar::{format_scalar, half, Scalar};

/// Bipartition of the nodes; the block holding node 1 is `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Split {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Split {
    /// Builds the split `side | rest` of `0..n`.
    pub fn new(side: &[usize], n: usize) -> Result<Self> {
        let mut member = vec![false; n];
        for &v in side {
            if v >= n || member[v] {
                return Err(Error::InvalidInput(format!("bad split block {side:?}")));
            }
            member[v] = true;
        }
        let a: Vec<usize> = (0..n).filter(|&v| member[v] == member[0]).collect();
        let b: Vec<usize> = (0..n).filter(|&v| member[v] != member[0]).collect();
        if b.is_empty() {
            return Err(Error::InvalidInput("split blocks must both be nonempty".into()));
        }
        Ok(Split { a, b })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn separates(&self, i: usize, j: usize) -> bool {
        self.a.contains(&i) != self.a.contains(&j)
    }

    /// Both blocks are intervals of the circular order.
    pub fn is_circular_in(&self, order: &CircularOrder) -> bool {
        let n = order.len();
        let in_a: Vec<bool> = (0..n).map(|p| self.a.contains(&order.node_at(p))).collect();
        let changes = (0..n).filter(|&p| in_a[p] != in_a[(p + 1) % n]).count();
        changes == 2
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |s: &[usize]| s.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}|{{{}}}", ids(&self.a), ids(&self.b))
    }
}

/// `D_{A|B}(k,l) = 1` when exactly one of `k`, `l` lies in `A`.
pub fn split_metric(s: &Split) -> DistanceMatrix {
    let n = s.n();
    let m = Matrix::from_fn(n, n, |i, j| {
        if s.separates(i, j) {
            Scalar::from_integer(1.into())
        } else {
            Scalar::zero()
        }
    });
    DistanceMatrix::new(m).expect("split pseudometric")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSplitSystem {
    order: CircularOrder,
    splits: Vec<(Split, Scalar)>,
}

impl WeightedSplitSystem {
    pub fn new(order: CircularOrder, splits: Vec<(Split, Scalar)>) -> Result<Self> {
        for (k, (s, w)) in splits.iter().enumerate() {
            if s.n() != order.len() {
                return Err(Error::InvalidInput(format!(
                    "split {s} is not on {} nodes",
                    order.len()
                )));
            }
            if !w.is_positive() {
                return Err(Error::InvalidInput(format!(
                    "split {s} has non-positive weight {}",
                    format_scalar(w)
                )));
            }
            if !s.is_circular_in(&order) {
                return Err(Error::InvalidInput(format!(
                    "split {s} is not circular in order {order}"
                )));
            }
            if splits[..k].iter().any(|(t, _)| t == s) {
                return Err(Error::InvalidInput(format!("split {s} listed twice")));
            }
        }
        Ok(WeightedSplitSystem { order, splits })
    }

    pub fn order(&self) -> &CircularOrder {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn splits(&self) -> &[(Split, Scalar)] {
        &self.splits
    }

    pub fn weight_of(&self, s: &Split) -> Option<&Scalar> {
        self.splits.iter().find(|(t, _)| t == s).map(|(_, w)| w)
    }
}

/// The split `S_ij` for positions `i < j`: the chord from the arc after
/// position `i` to the arc after position `j` cuts off positions `i+1..=j`.
pub fn chord_split(order: &CircularOrder, i: usize, j: usize) -> Split {
    let side: Vec<usize> = (i + 1..=j).map(|p| order.node_at(p)).collect();
    Split::new(&side, order.len()).expect("chord split")
}

/// `w_ij = (d(i,j) + d(i+1,j+1) - d(i,j+1) - d(i+1,j)) / 2` over positions.
pub(crate) fn chord_weights(d: &DistanceMatrix, order: &CircularOrder) -> Result<Matrix> {
    let a = order.arrange(d)?;
    let n = a.order();
    let at = |p: usize, q: usize| a.get(p % n, q % n);
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i == j {
            Scalar::zero()
        } else {
            (at(i, j) + at(i + 1, j + 1) - at(i, j + 1) - at(i + 1, j)) * half()
        }
    }))
}

/// Exact decomposition of `d` into circular splits of `order`. Splits of
/// zero weight are dropped.
pub fn split_weights(d: &DistanceMatrix, order: &CircularOrder) -> Result<WeightedSplitSystem> {
    let w = chord_weights(d, order)?;
    let n = order.len();
    let mut splits = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let weight = &w[(i, j)];
            if weight.is_negative() {
                return Err(Error::NotKalmanson(format!(
                    "split {} has weight {}",
                    chord_split(order, i, j),
                    format_scalar(weight)
                )));
            }
            if weight.is_positive() {
                splits.push((chord_split(order, i, j), weight.clone()));
            }
        }
    }
    let system = WeightedSplitSystem::new(order.clone(), splits)?;
    if &metric_from_splits(&system) != d {
        return Err(Error::NotKalmanson("split weights do not reproduce the matrix".into()));
    }
    Ok(system)
}

pub fn metric_from_splits(system: &WeightedSplitSystem) -> DistanceMatrix {
    let n = system.n();
    let m = Matrix::from_fn(n, n, |i, j| {
        system
            .splits
            .iter()
            .filter(|(s, _)| s.separates(i, j))
            .fold(Scalar::zero(), |acc, (_, w)| acc + w)
    });
    DistanceMatrix::new(m).expect("positive split combination")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn tree_d() -> DistanceMatrix {
        DistanceMatrix::from_i64(&[&[0, 3, 3, 2], &[3, 0, 2, 3], &[3, 2, 0, 3], &[2, 3, 3, 0]]).unwrap()
    }

    fn split(side: &[usize], n: usize) -> Split {
        Split::new(&side.iter().map(|v| v - 1).collect::<Vec<_>>(), n).unwrap()
    }

    #[test]
    fn split_metrics() {
        let s = split(&[1], 4);
        let m = split_metric(&s);
        assert_eq!(
            m.matrix(),
            &Matrix::from_i64(&[&[0, 1, 1, 1], &[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0]])
        );
        let m = split_metric(&split(&[3, 4], 4));
        assert_eq!(m.get(0, 2), &int(1));
        assert_eq!(m.get(1, 3), &int(1));
        assert_eq!(m.get(0, 1), &int(0));
        assert_eq!(m.get(2, 3), &int(0));
        assert_eq!(split(&[2, 3, 4], 4), split(&[1], 4));
    }

    #[test]
    fn tree_decomposes_into_five_unit_splits() {
        let order = CircularOrder::identity(4);
        let system = split_weights(&tree_d(), &order).unwrap();
        let expected = [
            (split(&[2], 4), (1, 2)),
            (split(&[2, 3], 4), (1, 3)),
            (split(&[1], 4), (1, 4)),
            (split(&[3], 4), (2, 3)),
            (split(&[4], 4), (3, 4)),
        ];
        assert_eq!(system.splits().len(), 5);
        for (s, (i, j)) in expected {
            assert_eq!(chord_split(&order, i - 1, j - 1), s);
            assert_eq!(system.weight_of(&s), Some(&int(1)));
        }
        assert_eq!(metric_from_splits(&system), tree_d());
    }

    #[test]
    fn pure_split_recovers_weight() {
        let w = frac(7, 3);
        let d = split_metric(&split(&[1, 2], 4)).scaled(&w);
        let system = split_weights(&d, &CircularOrder::identity(4)).unwrap();
        assert_eq!(system.splits(), &[(split(&[1, 2], 4), w)]);
    }

    #[test]
    fn negative_weight_is_not_kalmanson() {
        let order = CircularOrder::new(vec![0, 1, 3, 2]).unwrap();
        assert!(matches!(split_weights(&tree_d(), &order), Err(Error::NotKalmanson(_))));
    }

    #[test]
    fn system_validation() {
        let order = CircularOrder::identity(4);
        assert!(WeightedSplitSystem::new(order.clone(), vec![(split(&[1, 3], 4), int(1))]).is_err());
        assert!(WeightedSplitSystem::new(order.clone(), vec![(split(&[1], 4), int(0))]).is_err());
        assert!(
            WeightedSplitSystem::new(order, vec![(split(&[1], 4), int(1)), (split(&[2, 3, 4], 4), int(2))]).is_err()
        );
    }
}
