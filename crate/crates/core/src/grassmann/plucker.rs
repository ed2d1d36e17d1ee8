//! Plücker coordinates, sign certificates and the Grassmannian electrical test.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::omega::{build_omega_resistance, OmegaForm, OmegaMatrix};
use crate::error::{Error, Result};
use crate::matrices::DistanceMatrix;
use crate::metrics::dual::next_combination;
use crate::metrics::{kalmanson_check, CircularOrder};
use crate::parallel::ordered_map;
use crate::scalar::Scalar;

pub const DEFAULT_PLUCKER_N_CAP: usize = 8;

/// Maximal minors of the reduced Omega matrix, keyed by sorted 0-based
/// column subsets in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerVector {
    n: usize,
    form: OmegaForm,
    deleted_row: usize,
    coords: Vec<(Vec<usize>, Scalar)>,
}

impl PluckerVector {
    pub fn from_coords(n: usize, form: OmegaForm, deleted_row: usize, coords: Vec<(Vec<usize>, Scalar)>) -> Self {
        PluckerVector {
            n,
            form,
            deleted_row,
            coords,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> OmegaForm {
        self.form
    }

    pub fn deleted_row(&self) -> usize {
        self.deleted_row
    }

    pub fn coords(&self) -> &[(Vec<usize>, Scalar)] {
        &self.coords
    }

    pub fn get(&self, subset: &[usize]) -> Option<&Scalar> {
        self.coords
            .binary_search_by(|(s, _)| s.as_slice().cmp(subset))
            .ok()
            .map(|k| &self.coords[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|(_, v)| v.is_zero())
    }
}

pub fn plucker(o: &OmegaMatrix) -> Result<PluckerVector> {
    plucker_capped(o, DEFAULT_PLUCKER_N_CAP)
}

pub fn plucker_capped(o: &OmegaMatrix, cap: usize) -> Result<PluckerVector> {
    let n = o.n();
    if n > cap {
        return Err(Error::TooLarge {
            what: "node count for full Plücker enumeration",
            size: n,
            cap,
        });
    }
    let reduced = o.reduced();
    let rows: Vec<usize> = (0..n - 1).collect();
    let mut subsets = Vec::new();
    let mut c: Vec<usize> = (0..n - 1).collect();
    loop {
        subsets.push(c.clone());
        if !next_combination(&mut c, 2 * n) {
            break;
        }
    }
    let values = ordered_map(&subsets, |s| reduced.select(&rows, s).det());
    Ok(PluckerVector {
        n,
        form: o.form(),
        deleted_row: o.deleted_row(),
        coords: subsets.into_iter().zip(values).collect(),
    })
}

/// One coordinate, without enumerating the rest.
pub fn plucker_coordinate(o: &OmegaMatrix, subset: &[usize]) -> Result<Scalar> {
    let n = o.n();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n - 1 || sorted.iter().any(|&c| c >= 2 * n) {
        return Err(Error::InvalidInput(format!(
            "a Plücker index needs {} distinct columns in 1..{}",
            n - 1,
            2 * n
        )));
    }
    let rows: Vec<usize> = (0..n - 1).collect();
    Ok(o.reduced().select(&rows, &sorted).det())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "mixed")]
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub sign: Sign,
    /// Two subsets whose coordinates have strictly opposite signs.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl SignCertificate {
    pub fn is_nonnegative(&self) -> bool {
        self.sign != Sign::Mixed
    }
}

/// Checks that all nonzero coordinates share one sign.
pub fn certify_nonnegative(p: &PluckerVector) -> Result<SignCertificate> {
    let mut nonzero = p.coords.iter().filter(|(_, v)| !v.is_zero());
    let (first, v0) = nonzero.next().ok_or(Error::AllZero)?;
    let positive = v0.is_positive();
    if let Some((other, _)) = nonzero.find(|(_, v)| v.is_positive() != positive) {
        return Ok(SignCertificate {
            sign: Sign::Mixed,
            witness: Some((first.clone(), other.clone())),
        });
    }
    Ok(SignCertificate {
        sign: if positive { Sign::Plus } else { Sign::Minus },
        witness: None,
    })
}

/// `{2,4,...,2n-2}` for the resistance form, `{1,3,...,2n-3}` for the
/// response form (1-based).
pub fn indicator_subset(n: usize, form: OmegaForm) -> Vec<usize> {
    let offset = match form {
        OmegaForm::Resistance => 1,
        OmegaForm::Response => 0,
    };
    (0..n - 1).map(|k| 2 * k + offset).collect()
}

/// Nonvanishing of the connectivity coordinate for the vector's form.
pub fn connectivity_indicator(p: &PluckerVector) -> bool {
    p.get(&indicator_subset(p.n, p.form)).is_some_and(|v| !v.is_zero())
}

/// `D_{S+ac} D_{S+bd} = D_{S+ab} D_{S+cd} + D_{S+ad} D_{S+bc}` with
/// sorted-index coordinates, for `a < b < c < d` outside `s`.
pub fn three_term_relation_holds(p: &PluckerVector, s: &[usize], [a, b, c, d]: [usize; 4]) -> bool {
    let coord = |x: usize, y: usize| -> Scalar {
        let mut idx: Vec<usize> = s.iter().copied().chain([x, y]).collect();
        idx.sort_unstable();
        p.get(&idx).cloned().unwrap_or_else(Scalar::zero)
    };
    coord(a, c) * coord(b, d) == coord(a, b) * coord(c, d) + coord(a, d) * coord(b, c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannVerdict {
    pub electrical: bool,
    pub certificate: Option<SignCertificate>,
    /// The coordinate `{2,4,...,2n-2}` of the resistance-form vector.
    pub indicator: Scalar,
    pub plucker: PluckerVector,
}

pub fn is_electrical_via_grassmannian(d: &DistanceMatrix, order: &CircularOrder) -> Result<GrassmannVerdict> {
    is_electrical_via_grassmannian_capped(d, order, DEFAULT_PLUCKER_N_CAP)
}

pub fn is_electrical_via_grassmannian_capped(
    d: &DistanceMatrix,
    order: &CircularOrder,
    cap: usize,
) -> Result<GrassmannVerdict> {
    if let Some(w) = kalmanson_check(d, order)? {
        return Err(Error::NotKalmanson(format!(
            "quadruple {:?} violates {:?}",
            w.quadruple.map(|v| v + 1),
            w.inequality
        )));
    }
    let omega = build_omega_resistance(d, order)?;
    let plucker = plucker_capped(&omega, cap)?;
    let certificate = match certify_nonnegative(&plucker) {
        Ok(c) => Some(c),
        Err(Error::AllZero) => None,
        Err(e) => return Err(e),
    };
    let indicator = plucker
        .get(&indicator_subset(omega.n(), OmegaForm::Resistance))
        .cloned()
        .unwrap_or_else(Scalar::zero);
    let electrical = certificate.as_ref().is_some_and(|c| c.is_nonnegative()) && !indicator.is_zero();
    Ok(GrassmannVerdict {
        electrical,
        certificate,
        indicator,
        plucker,
    })
}
