//! Category systems that make greedy category-based routing succeed on
//! connected graphs.
//!
//! A vertex forwards a message to any neighbor that shares strictly more of
//! the target's categories. This crate builds category systems for which
//! that rule always delivers, checks the structural predicates behind it
//! (shattered, internally connected), measures membership dimension, and
//! ships brute-force oracles and random graph generators for testing and
//! benchmarking.

pub mod bench;
pub mod categories;
pub mod constructions;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod routing;
pub mod tree;

pub use categories::{
    find_disconnected_category, find_unshattered_pair, is_internally_connected, is_shattered,
    CategoryError, CategoryId, CategoryParseError, CategorySystem,
};
pub use graph::{
    bfs_distances, bfs_spanning_tree, choose_bfs_root, diameter, double_sweep, is_connected, Graph,
    GraphError, ParseError, Vertex,
};
pub use routing::{
    greedy_step, greedy_step_with, route, route_with, routes_to, verify_all_pairs, Outcome,
    RouteResult, StuckReason, TieBreak, VerificationReport,
};
pub use tree::{RootedTree, TreeError};

/// `ceil(log2 n)`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `(diam + ceil(log2 n))^2`, the reference scale for constructed memdim.
pub fn memdim_bound(diam: usize, n: usize) -> usize {
    let x = diam + ceil_log2(n);
    x * x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let got: Vec<_> = [0, 1, 2, 3, 4, 5, 8, 9, 256, 257]
            .iter()
            .map(|&n| ceil_log2(n))
            .collect();
        assert_eq!(got, vec![0, 0, 1, 2, 2, 3, 3, 4, 8, 9]);
        assert_eq!(memdim_bound(2, 3), 16);
    }
}
