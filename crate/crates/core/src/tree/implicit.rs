//! Pointer-free binary search tree stored in heap order.
//!
//! Slot `i` has children `2i + 1` and `2i + 2`. The tree is always full: the
//! leaf count is padded to a power of two with phantom leaves, which hold the
//! [`CompositeKey::PHANTOM`] key and sit to the right of every real leaf.

use std::ops::Range;

use crate::point::{CompositeKey, PointSet};
use crate::tree::QueryStats;

/// Slot marker for phantom padding.
pub const PHANTOM: u32 = u32::MAX;

#[inline]
pub fn left_child(slot: usize) -> usize {
    2 * slot + 1
}

#[inline]
pub fn right_child(slot: usize) -> usize {
    2 * slot + 2
}

/// Parent of a non-root slot.
#[inline]
pub fn parent(slot: usize) -> usize {
    debug_assert!(slot > 0);
    (slot - 1) / 2
}

/// Depth of a slot; the root is at depth 0.
#[inline]
pub fn depth(slot: usize) -> u32 {
    (slot + 1).ilog2()
}

/// A static search tree over one dimension of a [`PointSet`].
///
/// Every slot stores the id of the point whose key it carries: a leaf holds
/// its own point, an internal slot holds the largest point of its left
/// subtree. Keys are looked up in the owning point set on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitTree {
    dim: usize,
    leaf_count: usize,
    real_count: usize,
    slots: Vec<u32>,
}

impl ImplicitTree {
    /// Builds the tree over `ids`, which must be sorted by composite key in
    /// `dim` and nonempty.
    pub fn from_sorted(ids: &[u32], dim: usize) -> Self {
        assert!(!ids.is_empty(), "tree needs at least one point");
        let real_count = ids.len();
        let leaf_count = real_count.next_power_of_two();
        let mut slots = vec![PHANTOM; 2 * leaf_count - 1];
        let leaf_at = |k: usize| ids.get(k).copied().unwrap_or(PHANTOM);
        for (slot, out) in slots.iter_mut().enumerate() {
            let span = span_of(slot, leaf_count);
            *out = if span.len() == 1 {
                leaf_at(span.start)
            } else {
                leaf_at(span.start + span.len() / 2 - 1)
            };
        }
        ImplicitTree {
            dim,
            leaf_count,
            real_count,
            slots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Padded leaf count `L`, a power of two.
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    /// Number of real (non-phantom) leaves.
    pub fn real_count(&self) -> usize {
        self.real_count
    }

    /// Number of slots, `2L - 1`.
    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    /// `log2(L)`: edges on any root-to-leaf path.
    pub fn height(&self) -> u32 {
        self.leaf_count.ilog2()
    }

    #[inline]
    pub fn is_leaf(&self, slot: usize) -> bool {
        slot >= self.leaf_count - 1
    }

    /// Slot of the `k`-th leaf from the left.
    #[inline]
    pub fn leaf_slot(&self, k: usize) -> usize {
        self.leaf_count - 1 + k
    }

    /// Point id carried by `slot`, or `None` for a phantom key.
    #[inline]
    pub fn slot_id(&self, slot: usize) -> Option<u32> {
        match self.slots[slot] {
            PHANTOM => None,
            id => Some(id),
        }
    }

    #[inline]
    pub fn key(&self, slot: usize, points: &PointSet) -> CompositeKey {
        match self.slots[slot] {
            PHANTOM => CompositeKey::PHANTOM,
            id => points.key(id, self.dim),
        }
    }

    /// Real leaves, left to right.
    pub fn leaf_ids(&self) -> &[u32] {
        let first = self.leaf_count - 1;
        &self.slots[first..first + self.real_count]
    }

    /// Leaf positions covered by the subtree at `slot`.
    pub fn span(&self, slot: usize) -> Range<usize> {
        span_of(slot, self.leaf_count)
    }

    /// Real leaves below `slot`.
    pub fn real_below(&self, slot: usize) -> usize {
        let span = self.span(slot);
        span.end.min(self.real_count).saturating_sub(span.start)
    }

    /// Deepest slot where the descents for `lo` and `hi` part ways, or the
    /// leaf both reach.
    pub fn find_split_node(&self, points: &PointSet, lo: CompositeKey, hi: CompositeKey) -> usize {
        self.split_node(points, lo, hi, &mut QueryStats::default())
    }

    pub(crate) fn split_node(
        &self,
        points: &PointSet,
        lo: CompositeKey,
        hi: CompositeKey,
        stats: &mut QueryStats,
    ) -> usize {
        let mut v = 0;
        stats.nodes_visited += 1;
        while !self.is_leaf(v) {
            let key = self.key(v, points);
            if hi <= key {
                v = left_child(v);
            } else if lo > key {
                v = right_child(v);
            } else {
                break;
            }
            stats.nodes_visited += 1;
        }
        v
    }

    /// Roots of the disjoint subtrees whose leaves are exactly the real
    /// leaves with key in `[lo, hi]`, in left-to-right order.
    pub fn canonical_subtrees(&self, points: &PointSet, lo: CompositeKey, hi: CompositeKey) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_canonical(points, lo, hi, &mut QueryStats::default(), |s, _| out.push(s));
        out.sort_unstable_by_key(|&s| self.span(s).start);
        out
    }

    pub(crate) fn for_each_canonical<F>(
        &self,
        points: &PointSet,
        lo: CompositeKey,
        hi: CompositeKey,
        stats: &mut QueryStats,
        mut emit: F,
    ) where
        F: FnMut(usize, &mut QueryStats),
    {
        let split = self.split_node(points, lo, hi, stats);
        if self.is_leaf(split) {
            let key = self.key(split, points);
            if lo <= key && key <= hi {
                emit(split, stats);
            }
            return;
        }

        let mut v = left_child(split);
        stats.nodes_visited += 1;
        while !self.is_leaf(v) {
            if lo <= self.key(v, points) {
                stats.nodes_visited += 1;
                emit(right_child(v), stats);
                v = left_child(v);
            } else {
                v = right_child(v);
            }
            stats.nodes_visited += 1;
        }
        if lo <= self.key(v, points) {
            emit(v, stats);
        }

        let mut v = right_child(split);
        stats.nodes_visited += 1;
        while !self.is_leaf(v) {
            if hi > self.key(v, points) {
                stats.nodes_visited += 1;
                emit(left_child(v), stats);
                v = right_child(v);
            } else {
                v = left_child(v);
            }
            stats.nodes_visited += 1;
        }
        if self.key(v, points) <= hi {
            emit(v, stats);
        }
    }
}

fn span_of(slot: usize, leaf_count: usize) -> Range<usize> {
    let d = depth(slot);
    let width = leaf_count >> d;
    let start = (slot + 1 - (1 << d)) * width;
    start..start + width
}
