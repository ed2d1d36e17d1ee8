//! Kalmanson certification, circular split decomposition and the
//! dual-response matrix.

pub mod dual;
pub mod order;
pub mod splits;

pub use dual::{
    circular_minor_test, enumerate_circular_pairs, is_electrical_via_dual, m_of_d, resistance_from_dual_response,
    CircularPair, DualResponseCandidate, DualVerdict, MinorFailure,
};
pub use order::{
    check_metric, find_circular_order, find_circular_order_capped, gromov_transform, kalmanson_check, CircularOrder,
    KalmansonInequality, KalmansonWitness, MetricReport, MetricViolation, DEFAULT_ORDER_SEARCH_CAP,
};
pub use splits::{chord_split, metric_from_splits, split_metric, split_weights, Split, WeightedSplitSystem};
