//! Multi-level range trees.

pub mod implicit;
mod layered;

use std::ops::AddAssign;

use crate::point::PointSet;

pub use implicit::ImplicitTree;
pub use layered::{LayeredRangeTree, Structure};

/// Operation counters collected while answering queries.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct QueryStats {
    /// Tree slots touched by descents and canonical decompositions.
    pub nodes_visited: u64,
    pub binary_searches: u64,
    pub bridge_follows: u64,
    /// Points handed to the caller.
    pub reported: u64,
    /// Calls into the two-dimensional cascade query.
    pub cascade_queries: u64,
}

impl AddAssign for QueryStats {
    fn add_assign(&mut self, rhs: Self) {
        self.nodes_visited += rhs.nodes_visited;
        self.binary_searches += rhs.binary_searches;
        self.bridge_follows += rhs.bridge_follows;
        self.reported += rhs.reported;
        self.cascade_queries += rhs.cascade_queries;
    }
}

/// Construction counters.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct BuildStats {
    /// Elements written by merges of child lists.
    pub merge_moves: u64,
    /// Point entries held by associated structures and cascade node arrays.
    pub stored_entries: u64,
}

/// Merges two lists of ids, each sorted by composite key in `dim`.
///
/// On equal keys the left element goes first.
pub fn merge_sorted(points: &PointSet, dim: usize, left: &[u32], right: &[u32]) -> Vec<u32> {
    let mut out = vec![0; left.len() + right.len()];
    merge_into(points, dim, left, right, &mut out, |_, _, _| {});
    out
}

/// Merges `a` and `b` into `out`, which must have room for both.
///
/// `on_emit(t, ia, ib)` runs for every output position `t` with the input
/// cursors at that moment: `a[..ia]` and `b[..ib]` are exactly the elements
/// already written, so `ia` is the first index of `a` whose key is not below
/// `out[t]`, and likewise `ib` for `b`.
pub(crate) fn merge_into<F>(
    points: &PointSet,
    dim: usize,
    a: &[u32],
    b: &[u32],
    out: &mut [u32],
    mut on_emit: F,
) where
    F: FnMut(usize, usize, usize),
{
    debug_assert_eq!(out.len(), a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    for (t, slot) in out.iter_mut().enumerate() {
        on_emit(t, ia, ib);
        let take_a = match (a.get(ia), b.get(ib)) {
            (Some(&x), Some(&y)) => points.key(x, dim) <= points.key(y, dim),
            (Some(_), None) => true,
            _ => false,
        };
        if take_a {
            *slot = a[ia];
            ia += 1;
        } else {
            *slot = b[ib];
            ib += 1;
        }
    }
}
