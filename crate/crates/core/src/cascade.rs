//! Fractional cascading over the last two dimensions.
//!
//! A [`CascadeStructure`] is a search tree over dimension `x` whose every
//! node keeps its subtree's points sorted by dimension `y = x + 1`. Each
//! entry of an internal node records, for both children, the first child
//! entry whose key is not smaller than its own. A 2D query binary-searches
//! the split node's array once and then moves down the tree by following
//! those bridges, paying O(1) per level instead of a fresh search.
//!
//! Node arrays hold real points only. Phantom leaves have empty arrays, so a
//! phantom can never be reported.

use crate::error::{Error, Result};
use crate::point::{CompositeKey, PointSet};
use crate::tree::implicit::{left_child, right_child, ImplicitTree};
use crate::tree::{merge_into, BuildStats, QueryStats};

/// Borrowed view of one node of a [`CascadeStructure`].
///
/// Leaves have empty bridge slices.
#[derive(Debug, Clone, Copy)]
pub struct CascadeNode<'a> {
    pub entries: &'a [u32],
    pub left_bridge: &'a [u32],
    pub right_bridge: &'a [u32],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Two-level structure answering `[xlo, xhi] x [ylo, yhi]` queries with a
/// single binary search.
#[derive(Debug, Clone)]
pub struct CascadeStructure {
    tree: ImplicitTree,
    y_dim: usize,
    // Node arrays concatenated in slot order; node `s` owns
    // `entries[offsets[s]..offsets[s + 1]]`. Internal slots precede leaves,
    // so the bridge arrays run parallel to the first `offsets[L - 1]` entries.
    offsets: Vec<u32>,
    entries: Vec<u32>,
    left_bridge: Vec<u32>,
    right_bridge: Vec<u32>,
}

/// Builds the cascade over dimensions `x_dim` and `x_dim + 1` from `ids`
/// sorted by composite key in `x_dim`.
pub fn build_cascade(
    points: &PointSet,
    ids: &[u32],
    x_dim: usize,
    stats: &mut BuildStats,
) -> Result<CascadeStructure> {
    if ids.is_empty() {
        return Err(Error::EmptyInput);
    }
    let y_dim = x_dim + 1;
    if y_dim >= points.dims() {
        return Err(Error::DimensionMismatch {
            expected: y_dim + 1,
            found: points.dims(),
        });
    }

    let tree = ImplicitTree::from_sorted(ids, x_dim);
    let slot_count = tree.slot_count();
    let mut offsets = Vec::with_capacity(slot_count + 1);
    let mut total = 0u32;
    offsets.push(0);
    for slot in 0..slot_count {
        total += tree.real_below(slot) as u32;
        offsets.push(total);
    }

    let mut entries = vec![0u32; total as usize];
    let first_leaf = tree.leaf_count() - 1;
    for (k, &id) in tree.leaf_ids().iter().enumerate() {
        entries[offsets[first_leaf + k] as usize] = id;
    }
    stats.stored_entries += tree.real_count() as u64;

    let internal = offsets[first_leaf] as usize;
    let mut left_bridge = vec![0u32; internal];
    let mut right_bridge = vec![0u32; internal];
    for slot in (0..first_leaf).rev() {
        let (l, r) = (left_child(slot), right_child(slot));
        let (start, end) = (offsets[slot] as usize, offsets[slot + 1] as usize);
        let (head, tail) = entries.split_at_mut(end);
        let a = &tail[offsets[l] as usize - end..offsets[l + 1] as usize - end];
        let b = &tail[offsets[r] as usize - end..offsets[r + 1] as usize - end];
        let lb = &mut left_bridge[start..end];
        let rb = &mut right_bridge[start..end];
        merge_into(points, y_dim, a, b, &mut head[start..end], |t, ia, ib| {
            lb[t] = ia as u32;
            rb[t] = ib as u32;
        });
        stats.merge_moves += (end - start) as u64;
        stats.stored_entries += (end - start) as u64;
    }

    Ok(CascadeStructure {
        tree,
        y_dim,
        offsets,
        entries,
        left_bridge,
        right_bridge,
    })
}

/// Smallest index of `entries` whose key in `dim` is `>= key`, or
/// `entries.len()`. Counts as one binary search.
pub fn lower_bound(
    points: &PointSet,
    dim: usize,
    entries: &[u32],
    key: CompositeKey,
    stats: &mut QueryStats,
) -> usize {
    stats.binary_searches += 1;
    entries.partition_point(|&id| points.key(id, dim) < key)
}

impl CascadeStructure {
    pub fn tree(&self) -> &ImplicitTree {
        &self.tree
    }

    pub fn x_dim(&self) -> usize {
        self.tree.dim()
    }

    pub fn y_dim(&self) -> usize {
        self.y_dim
    }

    pub fn node(&self, slot: usize) -> CascadeNode<'_> {
        let range = self.offsets[slot] as usize..self.offsets[slot + 1] as usize;
        let internal = range.end <= self.left_bridge.len() && !self.tree.is_leaf(slot);
        CascadeNode {
            entries: &self.entries[range.clone()],
            left_bridge: if internal { &self.left_bridge[range.clone()] } else { &[] },
            right_bridge: if internal { &self.right_bridge[range] } else { &[] },
        }
    }

    /// Entries stored over all nodes.
    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// Reports every point in `[xlo, xhi] x [ylo, yhi]` to `emit`.
    ///
    /// Performs exactly one binary search, at the split node.
    #[allow(clippy::too_many_arguments)]
    pub fn query_2d<F>(
        &self,
        points: &PointSet,
        xlo: f64,
        xhi: f64,
        ylo: f64,
        yhi: f64,
        stats: &mut QueryStats,
        mut emit: F,
    ) where
        F: FnMut(u32),
    {
        stats.cascade_queries += 1;
        let searches = stats.binary_searches;
        let y = self.y_dim;
        self.walk(points, xlo, xhi, [CompositeKey::lower(ylo)], stats, |node, [from], stats| {
            for &id in node.entries[from..].iter().take_while(|&&id| points.coord(id, y) <= yhi) {
                stats.reported += 1;
                emit(id);
            }
        });
        debug_assert_eq!(stats.binary_searches - searches, 1);
    }

    /// Number of points in `[xlo, xhi] x [ylo, yhi]`, without visiting them.
    ///
    /// Carries both y bounds down the bridges, so two binary searches are made.
    pub fn count_2d(
        &self,
        points: &PointSet,
        xlo: f64,
        xhi: f64,
        ylo: f64,
        yhi: f64,
        stats: &mut QueryStats,
    ) -> usize {
        let mut total = 0;
        let bounds = [CompositeKey::lower(ylo), CompositeKey::upper(yhi)];
        self.walk(points, xlo, xhi, bounds, stats, |_, [from, to], _| {
            total += to.saturating_sub(from);
        });
        total
    }

    /// Visits the canonical nodes of `[xlo, xhi]` together with the positions
    /// of `ykeys` in each node's array, found by one search per key at the
    /// split node and bridge follows below it.
    fn walk<const K: usize, F>(
        &self,
        points: &PointSet,
        xlo: f64,
        xhi: f64,
        ykeys: [CompositeKey; K],
        stats: &mut QueryStats,
        mut visit: F,
    ) where
        F: FnMut(CascadeNode<'_>, [usize; K], &mut QueryStats),
    {
        let tree = &self.tree;
        let (lo, hi) = (CompositeKey::lower(xlo), CompositeKey::upper(xhi));
        let split = tree.split_node(points, lo, hi, stats);
        let root = self.node(split).entries;
        let at_split = ykeys.map(|key| lower_bound(points, self.y_dim, root, key, stats));
        self.check_positions(points, split, &at_split, &ykeys);

        if tree.is_leaf(split) {
            let key = tree.key(split, points);
            if lo <= key && key <= hi {
                visit(self.node(split), at_split, stats);
            }
            return;
        }

        // Descent toward `lo`: every left turn puts the right sibling wholly
        // inside the range.
        let mut v = left_child(split);
        let mut pos = self.follow(split, at_split, Side::Left, stats);
        stats.nodes_visited += 1;
        self.check_positions(points, v, &pos, &ykeys);
        while !tree.is_leaf(v) {
            if lo <= tree.key(v, points) {
                let sibling = self.follow(v, pos, Side::Right, stats);
                stats.nodes_visited += 1;
                self.check_positions(points, right_child(v), &sibling, &ykeys);
                visit(self.node(right_child(v)), sibling, stats);
                pos = self.follow(v, pos, Side::Left, stats);
                v = left_child(v);
            } else {
                pos = self.follow(v, pos, Side::Right, stats);
                v = right_child(v);
            }
            stats.nodes_visited += 1;
            self.check_positions(points, v, &pos, &ykeys);
        }
        if lo <= tree.key(v, points) {
            visit(self.node(v), pos, stats);
        }

        let mut v = right_child(split);
        let mut pos = self.follow(split, at_split, Side::Right, stats);
        stats.nodes_visited += 1;
        self.check_positions(points, v, &pos, &ykeys);
        while !tree.is_leaf(v) {
            if hi > tree.key(v, points) {
                let sibling = self.follow(v, pos, Side::Left, stats);
                stats.nodes_visited += 1;
                self.check_positions(points, left_child(v), &sibling, &ykeys);
                visit(self.node(left_child(v)), sibling, stats);
                pos = self.follow(v, pos, Side::Right, stats);
                v = right_child(v);
            } else {
                pos = self.follow(v, pos, Side::Left, stats);
                v = left_child(v);
            }
            stats.nodes_visited += 1;
            self.check_positions(points, v, &pos, &ykeys);
        }
        if tree.key(v, points) <= hi {
            visit(self.node(v), pos, stats);
        }
    }

    /// Maps positions in internal node `slot` to positions in one child.
    /// A one-past-the-end position maps to the child's length.
    #[inline]
    fn follow<const K: usize>(
        &self,
        slot: usize,
        pos: [usize; K],
        side: Side,
        stats: &mut QueryStats,
    ) -> [usize; K] {
        let (start, end) = (self.offsets[slot] as usize, self.offsets[slot + 1] as usize);
        let (child, bridge) = match side {
            Side::Left => (left_child(slot), &self.left_bridge),
            Side::Right => (right_child(slot), &self.right_bridge),
        };
        let child_len = (self.offsets[child + 1] - self.offsets[child]) as usize;
        stats.bridge_follows += K as u64;
        pos.map(|p| {
            if start + p == end {
                child_len
            } else {
                bridge[start + p] as usize
            }
        })
    }

    // Bridged positions must agree with a fresh search of the node's array.
    #[cfg(debug_assertions)]
    fn check_positions<const K: usize>(
        &self,
        points: &PointSet,
        slot: usize,
        pos: &[usize; K],
        ykeys: &[CompositeKey; K],
    ) {
        let entries = self.node(slot).entries;
        for (&p, key) in pos.iter().zip(ykeys) {
            let fresh = entries.partition_point(|&id| points.key(id, self.y_dim) < *key);
            debug_assert_eq!(p, fresh, "bridged position diverged at slot {slot}");
        }
    }

    #[cfg(not(debug_assertions))]
    #[inline(always)]
    fn check_positions<const K: usize>(&self, _: &PointSet, _: usize, _: &[usize; K], _: &[CompositeKey; K]) {}
}
