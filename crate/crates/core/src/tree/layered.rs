use crate::cascade::{build_cascade, lower_bound, CascadeStructure};
use crate::error::{Error, Result};
use crate::point::{CompositeKey, Point, PointSet, QueryBox};
use crate::tree::implicit::{left_child, right_child, ImplicitTree};
use crate::tree::{merge_into, BuildStats, QueryStats};

/// Range structure over dimensions `dim..d` of a point set.
#[derive(Debug, Clone)]
pub enum Structure {
    /// One remaining dimension: the leaves of the tree form the sorted array.
    Sorted(ImplicitTree),
    /// Two remaining dimensions.
    Cascade(Box<CascadeStructure>),
    /// Three or more remaining dimensions.
    Layer(Box<Layer>),
    /// A lone point, left unindexed.
    Single(u32),
}

/// A search tree over one dimension whose nodes carry associated
/// structures over the remaining dimensions.
#[derive(Debug, Clone)]
pub struct Layer {
    tree: ImplicitTree,
    assoc: Vec<Option<Structure>>,
}

impl Layer {
    pub fn tree(&self) -> &ImplicitTree {
        &self.tree
    }

    /// Associated structure of `slot`; `None` for all-phantom subtrees.
    pub fn assoc(&self, slot: usize) -> Option<&Structure> {
        self.assoc[slot].as_ref()
    }
}

/// A static d-dimensional range tree. The last two dimensions are handled by
/// fractional cascading.
#[derive(Debug, Clone)]
pub struct LayeredRangeTree {
    points: PointSet,
    root: Structure,
    stats: BuildStats,
    stored_by_level: Vec<u64>,
}

struct Builder<'a> {
    points: &'a PointSet,
    stats: BuildStats,
    stored_by_level: Vec<u64>,
}

impl Builder<'_> {
    /// `ids` are sorted by composite key in `dim`.
    fn structure(&mut self, ids: &[u32], dim: usize) -> Result<Structure> {
        let remaining = self.points.dims() - dim;
        Ok(match remaining {
            1 => {
                self.record(dim, ids.len() as u64);
                Structure::Sorted(ImplicitTree::from_sorted(ids, dim))
            }
            2 => {
                let mut stats = BuildStats::default();
                let cascade = build_cascade(self.points, ids, dim, &mut stats)?;
                self.stats.merge_moves += stats.merge_moves;
                self.record(dim, stats.stored_entries);
                Structure::Cascade(Box::new(cascade))
            }
            _ => Structure::Layer(Box::new(self.layer(ids, dim)?)),
        })
    }

    /// Builds the level tree over `dim`, then the associated structures
    /// bottom-up: each node's list, sorted in `dim + 1`, is the merge of its
    /// children's lists.
    fn layer(&mut self, ids: &[u32], dim: usize) -> Result<Layer> {
        let tree = ImplicitTree::from_sorted(ids, dim);
        let mut assoc: Vec<Option<Structure>> = Vec::with_capacity(tree.slot_count());
        assoc.resize_with(tree.slot_count(), || None);

        let first_leaf = tree.leaf_count() - 1;
        let mut lists: Vec<Vec<u32>> = (0..tree.leaf_count())
            .map(|k| tree.slot_id(first_leaf + k).into_iter().collect())
            .collect();
        for (k, list) in lists.iter().enumerate() {
            if let [id] = list[..] {
                assoc[first_leaf + k] = Some(Structure::Single(id));
            }
        }
        self.record(dim, ids.len() as u64);

        let mut level_start = first_leaf;
        while level_start > 0 {
            let parent_start = (level_start - 1) / 2;
            let mut parents = Vec::with_capacity(lists.len() / 2);
            for (i, pair) in lists.chunks_exact(2).enumerate() {
                let slot = parent_start + i;
                debug_assert_eq!(left_child(slot), level_start + 2 * i);
                debug_assert_eq!(right_child(slot), level_start + 2 * i + 1);
                let mut merged = vec![0; pair[0].len() + pair[1].len()];
                merge_into(self.points, dim + 1, &pair[0], &pair[1], &mut merged, |_, _, _| {});
                self.stats.merge_moves += merged.len() as u64;
                self.record(dim, merged.len() as u64);
                assoc[slot] = match merged.len() {
                    0 => None,
                    1 => Some(Structure::Single(merged[0])),
                    _ => Some(self.structure(&merged, dim + 1)?),
                };
                parents.push(merged);
            }
            lists = parents;
            level_start = parent_start;
        }
        Ok(Layer { tree, assoc })
    }

    fn record(&mut self, level: usize, entries: u64) {
        self.stored_by_level[level] += entries;
        self.stats.stored_entries += entries;
    }
}

impl LayeredRangeTree {
    /// Builds the tree. The input is sorted once by its first coordinate;
    /// every deeper ordering comes from merging already sorted lists.
    pub fn build(points: PointSet) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let ids = points.sorted_ids(0);
        let mut builder = Builder {
            points: &points,
            stats: BuildStats::default(),
            stored_by_level: vec![0; points.dims()],
        };
        let root = builder.structure(&ids, 0)?;
        let (stats, mut stored_by_level) = (builder.stats, builder.stored_by_level);
        // Levels past the cascade's tree hold no entries of their own.
        stored_by_level.truncate(points.dims().saturating_sub(1).max(1));
        Ok(LayeredRangeTree {
            points,
            root,
            stats,
            stored_by_level,
        })
    }

    pub fn dims(&self) -> usize {
        self.points.dims()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn root(&self) -> &Structure {
        &self.root
    }

    pub fn build_stats(&self) -> BuildStats {
        self.stats
    }

    /// Entries stored per tree level: element `j` sums, over every tree
    /// keyed on dimension `j`, the sizes of its nodes' associated lists (or
    /// cascade arrays). For `d = 1` the single level is the sorted array.
    pub fn stored_by_level(&self) -> &[u64] {
        &self.stored_by_level
    }

    /// The cascade at the top of a two-dimensional tree.
    pub fn as_cascade(&self) -> Option<&CascadeStructure> {
        match &self.root {
            Structure::Cascade(c) => Some(c),
            _ => None,
        }
    }

    /// Every point inside `qbox`, sorted by id.
    pub fn query(&self, qbox: &QueryBox, stats: &mut QueryStats) -> Result<Vec<&Point>> {
        let mut ids = self.query_ids(qbox, stats)?;
        ids.sort_unstable();
        Ok(ids.into_iter().map(|id| self.points.get(id)).collect())
    }

    /// Ids of the points inside `qbox`, in traversal order.
    pub fn query_ids(&self, qbox: &QueryBox, stats: &mut QueryStats) -> Result<Vec<u32>> {
        self.check_dims(qbox)?;
        let mut ids = Vec::new();
        self.report(&self.root, 0, qbox, stats, &mut |id| ids.push(id));
        Ok(ids)
    }

    /// Number of points inside `qbox`, computed without enumerating them.
    pub fn count(&self, qbox: &QueryBox, stats: &mut QueryStats) -> Result<usize> {
        self.check_dims(qbox)?;
        Ok(self.count_in(&self.root, 0, qbox, stats))
    }

    fn check_dims(&self, qbox: &QueryBox) -> Result<()> {
        if qbox.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: qbox.dims(),
            });
        }
        Ok(())
    }

    fn report(
        &self,
        s: &Structure,
        dim: usize,
        qbox: &QueryBox,
        stats: &mut QueryStats,
        emit: &mut dyn FnMut(u32),
    ) {
        let points = &self.points;
        let (lo, hi) = (qbox.lo(), qbox.hi());
        match s {
            Structure::Sorted(tree) => {
                let leaves = tree.leaf_ids();
                let from = lower_bound(points, dim, leaves, CompositeKey::lower(lo[dim]), stats);
                for &id in leaves[from..].iter().take_while(|&&id| points.coord(id, dim) <= hi[dim]) {
                    stats.reported += 1;
                    emit(id);
                }
            }
            Structure::Cascade(c) => {
                c.query_2d(points, lo[dim], hi[dim], lo[dim + 1], hi[dim + 1], stats, emit);
            }
            Structure::Layer(layer) => {
                let (klo, khi) = (CompositeKey::lower(lo[dim]), CompositeKey::upper(hi[dim]));
                layer.tree.for_each_canonical(points, klo, khi, stats, |slot, stats| {
                    if let Some(sub) = &layer.assoc[slot] {
                        self.report(sub, dim + 1, qbox, stats, emit);
                    }
                });
            }
            Structure::Single(id) => {
                if qbox.contains_in(&points.get(*id).coords, dim..points.dims()) {
                    stats.reported += 1;
                    emit(*id);
                }
            }
        }
    }

    fn count_in(&self, s: &Structure, dim: usize, qbox: &QueryBox, stats: &mut QueryStats) -> usize {
        let points = &self.points;
        let (lo, hi) = (qbox.lo(), qbox.hi());
        match s {
            Structure::Sorted(tree) => {
                let leaves = tree.leaf_ids();
                let from = lower_bound(points, dim, leaves, CompositeKey::lower(lo[dim]), stats);
                let to = lower_bound(points, dim, leaves, CompositeKey::upper(hi[dim]), stats);
                to.saturating_sub(from)
            }
            Structure::Cascade(c) => c.count_2d(points, lo[dim], hi[dim], lo[dim + 1], hi[dim + 1], stats),
            Structure::Layer(layer) => {
                let (klo, khi) = (CompositeKey::lower(lo[dim]), CompositeKey::upper(hi[dim]));
                let mut total = 0;
                layer.tree.for_each_canonical(points, klo, khi, stats, |slot, stats| {
                    if let Some(sub) = &layer.assoc[slot] {
                        total += self.count_in(sub, dim + 1, qbox, stats);
                    }
                });
                total
            }
            Structure::Single(id) => {
                usize::from(qbox.contains_in(&points.get(*id).coords, dim..points.dims()))
            }
        }
    }
}
