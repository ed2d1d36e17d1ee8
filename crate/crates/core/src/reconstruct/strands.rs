//! The column permutation `g` of an Omega matrix and the strand
//! permutation `tau = g + 1`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{build_omega_resistance, OmegaMatrix};
use crate::metrics::CircularOrder;
use crate::netcore::{resistance_matrix, WeightedGraph};
use crate::scalar::Scalar;

/// Incrementally grown span with exact membership tests.
#[derive(Default)]
struct Span {
    basis: Vec<(usize, Vec<Scalar>)>,
}

impl Span {
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, b) in &self.basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    fn insert(&mut self, v: &[Scalar]) {
        let r = self.reduce(v);
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let lead = r[p].clone();
            self.basis.push((p, r.into_iter().map(|x| x / &lead).collect()));
        }
    }
}

/// `g(i)` is the first `j` after `i` (cyclically) with column `i` in the
/// span of columns `i+1..=j`. Values are 0-based column indices.
pub fn column_permutation_g(o: &OmegaMatrix) -> Result<Vec<usize>> {
    let m = o.matrix();
    let size = m.cols();
    let columns: Vec<Vec<Scalar>> = (0..size).map(|c| m.column(c)).collect();
    let mut g = Vec::with_capacity(size);
    for i in 0..size {
        if columns[i].iter().all(Zero::is_zero) {
            return Err(Error::Degenerate(format!("column {} is zero", i + 1)));
        }
        let mut span = Span::default();
        let mut found = None;
        for step in 1..size {
            let j = (i + step) % size;
            span.insert(&columns[j]);
            if span.contains(&columns[i]) {
                found = Some(j);
                break;
            }
        }
        match found {
            Some(j) => g.push(j),
            None => {
                return Err(Error::Degenerate(format!(
                    "column {} is not in the span of the others",
                    i + 1
                )))
            }
        }
    }
    Ok(g)
}

/// `g` together with `tau(i) = g(i) + 1 mod 2n`, both 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandPermutation {
    g: Vec<usize>,
    tau: Vec<usize>,
}

impl StrandPermutation {
    /// Builds from an explicit involution, with `g = tau - 1`.
    pub fn from_tau(tau: Vec<usize>) -> Result<Self> {
        check_involution(&tau)?;
        let size = tau.len();
        let g = tau.iter().map(|&t| (t + size - 1) % size).collect();
        Ok(StrandPermutation { g, tau })
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Number of boundary nodes (half the number of strand endpoints).
    pub fn n(&self) -> usize {
        self.tau.len() / 2
    }

    /// The pairs `(i, tau(i))` with `i < tau(i)`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.tau.len())
            .filter(|&i| i < self.tau[i])
            .map(|i| (i, self.tau[i]))
            .collect()
    }
}

impl fmt::Display for StrandPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({} {})", a + 1, b + 1)?;
        }
        Ok(())
    }
}

fn check_involution(tau: &[usize]) -> Result<()> {
    let size = tau.len();
    if size == 0 || size % 2 == 1 {
        return Err(Error::NotInvolution(format!("{size} points")));
    }
    for (i, &t) in tau.iter().enumerate() {
        if t >= size {
            return Err(Error::NotInvolution(format!("tau({}) = {} out of range", i + 1, t + 1)));
        }
        if t == i {
            return Err(Error::NotInvolution(format!(
                "tau fixes {}; the coordinate {{2,4,...,2n-2}} vanishes on cactus inputs",
                i + 1
            )));
        }
        if tau[t] != i {
            return Err(Error::NotInvolution(format!(
                "tau({}) = {} but tau({}) = {}",
                i + 1,
                t + 1,
                t + 1,
                tau[t] + 1
            )));
        }
    }
    Ok(())
}

pub fn strand_permutation(g: &[usize]) -> Result<StrandPermutation> {
    let size = g.len();
    let tau: Vec<usize> = g.iter().map(|&j| (j + 1) % size.max(1)).collect();
    check_involution(&tau)?;
    Ok(StrandPermutation { g: g.to_vec(), tau })
}

/// Strand permutation of a connected network, read from its resistance
/// matrix in boundary order.
pub fn network_strands(g: &WeightedGraph) -> Result<StrandPermutation> {
    let d = resistance_matrix(g)?;
    let omega = build_omega_resistance(&d, &CircularOrder::identity(g.n()))?;
    strand_permutation(&column_permutation_g(&omega)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::DistanceMatrix;
    use crate::netcore::examples::{four_leaf_tree, single_edge, unit_star};
    use crate::scalar::{frac, int};

    fn one_based(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x + 1).collect()
    }

    fn tree_omega() -> OmegaMatrix {
        let d = DistanceMatrix::from_i64(&[&[0, 3, 3, 2], &[3, 0, 2, 3], &[3, 2, 0, 3], &[2, 3, 3, 0]]).unwrap();
        build_omega_resistance(&d, &CircularOrder::identity(4)).unwrap()
    }

    #[test]
    fn tree_g_and_tau() {
        let g = column_permutation_g(&tree_omega()).unwrap();
        assert_eq!(one_based(&g), vec![4, 6, 5, 7, 8, 2, 1, 3]);
        let s = strand_permutation(&g).unwrap();
        assert_eq!(s.to_string(), "(1 5)(2 7)(3 6)(4 8)");
        assert_eq!(network_strands(&four_leaf_tree()).unwrap(), s);
    }

    #[test]
    fn star_tau() {
        assert_eq!(network_strands(&unit_star()).unwrap().to_string(), "(1 4)(2 5)(3 6)");
    }

    #[test]
    fn single_edge_tau_is_crossing_pair() {
        let s = network_strands(&single_edge(frac(2, 3))).unwrap();
        assert_eq!(s.to_string(), "(1 3)(2 4)");
    }

    #[test]
    fn scaling_columns_keeps_g() {
        let o = tree_omega();
        let factors: Vec<Scalar> = (1..=8).map(|k| frac(k, 3)).collect();
        assert_eq!(
            column_permutation_g(&o.with_scaled_columns(&factors)).unwrap(),
            column_permutation_g(&o).unwrap()
        );
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            strand_permutation(&[0, 1, 2, 3]),
            Err(Error::NotInvolution(_))
        ));
        assert!(matches!(
            strand_permutation(&[3, 0, 1, 2]),
            Err(Error::NotInvolution(_))
        ));
        let zero = OmegaMatrix::new(
            crate::linalg::Matrix::zeros(2, 4),
            crate::grassmann::OmegaForm::Resistance,
        )
        .unwrap();
        assert!(matches!(column_permutation_g(&zero), Err(Error::Degenerate(_))));
        let s = StrandPermutation::from_tau(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(s.g(), &[1, 2, 3, 0]);
        assert_eq!(int(0), Scalar::zero());
    }
}
