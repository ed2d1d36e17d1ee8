//! Topology reconstruction from resistance data.
//!
//! Reconstructed networks live in position space: boundary vertex `k` is the
//! node at position `k` of the circular order used.

pub mod arrangement;
pub mod strands;
pub mod tree;

use serde::{Deserialize, Serialize};

pub use arrangement::{arrangement_to_network, build_chord_arrangement, Chord, ChordArrangement, Crossing, FaceColour};
pub use strands::{column_permutation_g, network_strands, strand_permutation, StrandPermutation};
pub use tree::{fit_tree_weights, triangles_to_stars};

use crate::error::{Error, Result};
use crate::grassmann::build_omega_resistance;
use crate::matrices::DistanceMatrix;
use crate::metrics::{is_electrical_via_dual, CircularOrder};
use crate::netcore::WeightedGraph;

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub order: CircularOrder,
    pub strands: StrandPermutation,
    pub arrangement: ChordArrangement,
    pub network: WeightedGraph,
}

/// Strand permutation of a distance matrix read in the given order.
pub fn strands_of(d: &DistanceMatrix, order: &CircularOrder) -> Result<StrandPermutation> {
    let omega = build_omega_resistance(d, order)?;
    strand_permutation(&column_permutation_g(&omega)?)
}

pub fn reconstruct(d: &DistanceMatrix, order: &CircularOrder) -> Result<Reconstruction> {
    let verdict = is_electrical_via_dual(d, order)?;
    if !verdict.electrical {
        return Err(Error::NotElectrical(verdict.note.unwrap_or_else(|| {
            "the dual-response matrix fails the circular minor test".into()
        })));
    }
    let strands = strands_of(d, order)?;
    let arrangement = build_chord_arrangement(&strands)?;
    let network = arrangement_to_network(&arrangement)?;
    Ok(Reconstruction {
        order: order.clone(),
        strands,
        arrangement,
        network,
    })
}

/// Unit-conductance minimal network with the strand permutation of `d`.
pub fn reconstruct_topology(d: &DistanceMatrix, order: &CircularOrder) -> Result<WeightedGraph> {
    reconstruct(d, order).map(|r| r.network)
}

/// Compares the strands of `d` with those of the reconstruction.
pub fn verify_round_trip(d: &DistanceMatrix, order: &CircularOrder) -> Result<bool> {
    let r = reconstruct(d, order)?;
    Ok(network_strands(&r.network)? == r.strands)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecovery {
    pub topology: WeightedGraph,
    pub tree: Option<WeightedGraph>,
}

/// Reconstruction followed by triangle elimination and, when the result is
/// a tree, exact weight fitting.
pub fn recover_tree(d: &DistanceMatrix, order: &CircularOrder) -> Result<TreeRecovery> {
    let topology = reconstruct_topology(d, order)?;
    let reduced = triangles_to_stars(&topology)?;
    let arranged = order.arrange(d)?;
    let tree = if reduced.edge_count() + 1 == reduced.vertex_count() {
        Some(fit_tree_weights(&reduced, &arranged)?)
    } else {
        None
    };
    Ok(TreeRecovery { topology, tree })
}
