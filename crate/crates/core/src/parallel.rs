//! Order-preserving parallel map with an environment switch.

use rayon::prelude::*;

pub const NO_PARALLEL_ENV: &str = "OHMGRAPH_NO_PARALLEL";

/// False when `OHMGRAPH_NO_PARALLEL=1` is set.
pub fn parallel_enabled() -> bool {
    std::env::var(NO_PARALLEL_ENV).map_or(true, |v| v.trim() != "1")
}

/// Maps `f` over `items`, keeping input order in the output.
pub fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if parallel_enabled() && items.len() > 1 {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}
