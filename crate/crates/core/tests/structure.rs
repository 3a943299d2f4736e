//! Structural invariants of the implicit trees, cascades and layered trees,
//! each checked against an independent recomputation.

mod common;

use lrtree::tree::implicit::{left_child, parent, right_child};
use lrtree::{
    build_cascade, brute_force_query, merge_sorted, BuildStats, CascadeStructure, CompositeKey, ImplicitTree,
    LayeredRangeTree, PointSet, QueryBox, QueryStats, SplitMix64, Structure,
};

use common::{depths, expected_levels, grid, grid_box, random_box, uniform};

fn cascade_of(points: &PointSet) -> CascadeStructure {
    build_cascade(points, &points.sorted_ids(0), 0, &mut BuildStats::default()).unwrap()
}

#[test]
fn heap_layout_covers_leaves_exactly() {
    for n in [1, 2, 3, 7, 8, 9, 100] {
        let points = uniform(n, 1, n as u64);
        let tree = ImplicitTree::from_sorted(&points.sorted_ids(0), 0);
        let l = tree.leaf_count();
        assert!(l.is_power_of_two() && l >= n && l / 2 < n.max(1));
        for slot in 1..tree.slot_count() {
            assert!(parent(slot) < slot);
            assert!(left_child(parent(slot)) == slot || right_child(parent(slot)) == slot);
        }
        for slot in 0..tree.slot_count() {
            assert_eq!(tree.is_leaf(slot), slot >= l - 1);
        }
        for k in 0..l {
            assert_eq!(tree.slot_id(tree.leaf_slot(k)).is_none(), k >= n);
        }
    }
}

#[test]
fn canonical_cover_matches_filter() {
    let mut rng = SplitMix64::new(77);
    for (n, side) in [(1, 3), (5, 2), (33, 4), (200, 1000), (257, 7)] {
        let points = grid(n, 1, side, n as u64);
        let tree = ImplicitTree::from_sorted(&points.sorted_ids(0), 0);
        for _ in 0..200 {
            let a = (rng.next_u64() % (side + 2)) as f64 - 1.0;
            let b = (rng.next_u64() % (side + 2)) as f64 - 1.0;
            let (lo, hi) = (CompositeKey::lower(a.min(b)), CompositeKey::upper(a.max(b)));
            let cover = tree.canonical_subtrees(&points, lo, hi);

            let limit = (2 * tree.height() as usize).max(1);
            assert!(cover.len() <= limit, "{} canonical nodes > {limit}", cover.len());

            let mut covered: Vec<usize> = cover.iter().flat_map(|&s| tree.span(s)).collect();
            let before = covered.len();
            covered.sort_unstable();
            covered.dedup();
            assert_eq!(covered.len(), before, "canonical subtrees overlap");

            let mut got: Vec<u32> = covered.iter().map(|&k| tree.slot_id(tree.leaf_slot(k)).expect("phantom in cover")).collect();
            got.sort_unstable();
            let want: Vec<u32> = (0..n as u32)
                .filter(|&id| (a.min(b)..=a.max(b)).contains(&points.coord(id, 0)))
                .collect();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn bridges_match_linear_scan() {
    for (n, side) in [(1, 4), (2, 4), (13, 3), (64, 1000), (100, 5)] {
        let points = grid(n, 2, side, 3 * n as u64);
        let cs = cascade_of(&points);
        let tree = cs.tree();
        for slot in 0..tree.leaf_count() - 1 {
            let node = cs.node(slot);
            for (bridge, child) in [(node.left_bridge, left_child(slot)), (node.right_bridge, right_child(slot))] {
                let child = cs.node(child).entries;
                assert_eq!(bridge.len(), node.entries.len());
                assert!(bridge.windows(2).all(|w| w[0] <= w[1]));
                for (t, &id) in node.entries.iter().enumerate() {
                    let key = points.key(id, 1);
                    let scan = child.iter().position(|&c| points.key(c, 1) >= key).unwrap_or(child.len());
                    assert_eq!(bridge[t] as usize, scan);
                }
            }
        }
    }
}

#[test]
fn node_arrays_are_sorted_subtree_unions() {
    let points = grid(90, 2, 6, 11);
    let cs = cascade_of(&points);
    let tree = cs.tree();
    for slot in 0..tree.slot_count() {
        let mut want: Vec<u32> = tree
            .span(slot)
            .filter_map(|k| tree.slot_id(tree.leaf_slot(k)))
            .collect();
        want.sort_by(|&a, &b| {
            lrtree::compare_composite(points.get(a), points.get(b), 1)
        });
        assert_eq!(cs.node(slot).entries, &want[..]);
        if tree.is_leaf(slot) {
            assert!(cs.node(slot).entries.len() <= 1);
        }
    }
}

#[test]
fn merge_equals_full_sort() {
    let points = grid(300, 2, 9, 5);
    let ids: Vec<u32> = (0..300).collect();
    let mut rng = SplitMix64::new(1);
    for _ in 0..50 {
        let cut = (rng.next_u64() % 301) as usize;
        let sort = |v: &[u32]| {
            let mut v = v.to_vec();
            v.sort_by_key(|&id| points.key(id, 1));
            v
        };
        let (left, right) = (sort(&ids[..cut]), sort(&ids[cut..]));
        let merged = merge_sorted(&points, 1, &left, &right);
        assert_eq!(merged, sort(&ids));
    }
}

#[test]
fn one_search_per_cascade_query() {
    let points = uniform(4096, 2, 8);
    let cs = cascade_of(&points);
    let mut rng = SplitMix64::new(3);
    for _ in 0..1000 {
        let b = random_box(&mut rng, 2, -0.1, 1.1);
        let mut stats = QueryStats::default();
        let mut got = Vec::new();
        cs.query_2d(&points, b.lo()[0], b.hi()[0], b.lo()[1], b.hi()[1], &mut stats, |id| got.push(id as usize));
        assert_eq!(stats.binary_searches, 1);
        got.sort_unstable();
        let want: Vec<usize> = brute_force_query(&points, &b).unwrap().iter().map(|p| p.id).collect();
        assert_eq!(got, want);
        assert_eq!(stats.reported as usize, want.len());
    }
    let mut stats = QueryStats::default();
    cs.query_2d(&points, 0.0, 1.0, 2.0, 3.0, &mut stats, |_| panic!("nothing lies above y = 1"));
    assert_eq!(stats.binary_searches, 1);
}

#[test]
fn stored_entries_follow_subtree_sizes() {
    for dims in 1..=4 {
        for n in [1, 2, 3, 5, 8, 31, 100] {
            let tree = LayeredRangeTree::build(grid(n, dims, 4, n as u64)).unwrap();
            assert_eq!(tree.stored_by_level(), &expected_levels(n, dims)[..], "dims={dims} n={n}");
            assert_eq!(
                tree.build_stats().stored_entries,
                tree.stored_by_level().iter().sum::<u64>()
            );
        }
    }
}

#[test]
fn planar_merge_moves() {
    for n in [1, 2, 3, 4, 5, 17, 1000] {
        let tree = LayeredRangeTree::build(uniform(n, 2, 4)).unwrap();
        let height = depths(n) - 1;
        assert_eq!(tree.build_stats().merge_moves, n as u64 * height);
        assert_eq!(tree.stored_by_level(), &[n as u64 * (height + 1)]);
    }
}

/// Coordinates of every stored id, walked in a fixed order, so trees over
/// permuted inputs can be compared even though ids differ.
fn fingerprint(tree: &LayeredRangeTree) -> Vec<Vec<f64>> {
    fn walk(points: &PointSet, s: &Structure, out: &mut Vec<Vec<f64>>) {
        let coords = |id: u32| points.get(id).coords.clone();
        match s {
            Structure::Sorted(t) => out.extend(t.leaf_ids().iter().map(|&id| coords(id))),
            Structure::Cascade(c) => {
                for slot in 0..c.tree().slot_count() {
                    out.extend(c.node(slot).entries.iter().map(|&id| coords(id)));
                    out.extend(c.tree().slot_id(slot).map(coords));
                }
            }
            Structure::Layer(layer) => {
                for slot in 0..layer.tree().slot_count() {
                    out.extend(layer.tree().slot_id(slot).map(coords));
                    if let Some(sub) = layer.assoc(slot) {
                        walk(points, sub, out);
                    }
                }
            }
            Structure::Single(id) => out.push(coords(*id)),
        }
    }
    let mut out = Vec::new();
    walk(tree.points(), tree.root(), &mut out);
    out
}

#[test]
fn build_ignores_input_order() {
    for dims in 1..=4 {
        let points = grid(60, dims, 3, 21);
        let mut rows: Vec<Vec<f64>> = points.points().iter().map(|p| p.coords.clone()).collect();
        let a = LayeredRangeTree::build(points).unwrap();
        let mut rng = SplitMix64::new(dims as u64);
        for i in (1..rows.len()).rev() {
            rows.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
        }
        let b = LayeredRangeTree::build(PointSet::new(dims, rows).unwrap()).unwrap();
        assert_eq!(fingerprint(&a), fingerprint(&b));
    }
}

#[test]
fn exhaustive_small_grids() {
    // Every box with bounds on the half-integer lattice around a 3-grid.
    let bounds: Vec<f64> = (-1..=5).map(|k| k as f64 * 0.5).collect();
    for dims in [1, 3] {
        for n in 1..=(if dims == 1 { 64 } else { 12 }) {
            let points = grid(n, dims, 3, 100 + n as u64);
            let tree = LayeredRangeTree::build(points.clone()).unwrap();
            let mut idx = vec![0usize; 2 * dims];
            loop {
                let lo = (0..dims).map(|j| bounds[idx[j]]).collect();
                let hi = (0..dims).map(|j| bounds[idx[dims + j]]).collect();
                let q = QueryBox::new(lo, hi).unwrap();
                let mut stats = QueryStats::default();
                let got: Vec<usize> = tree.query(&q, &mut stats).unwrap().iter().map(|p| p.id).collect();
                let want: Vec<usize> = brute_force_query(&points, &q).unwrap().iter().map(|p| p.id).collect();
                assert_eq!(got, want);
                assert_eq!(tree.count(&q, &mut stats).unwrap(), want.len());
                // odometer over all bound combinations
                let mut k = 0;
                while k < idx.len() && idx[k] + 1 == bounds.len() {
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
            }
        }
    }
}

#[test]
fn grid_duplicates_in_five_dimensions() {
    let points = grid(2000, 5, 3, 9);
    let tree = LayeredRangeTree::build(points.clone()).unwrap();
    let mut rng = SplitMix64::new(10);
    for _ in 0..300 {
        let q = grid_box(&mut rng, 5, 3);
        let mut stats = QueryStats::default();
        let got: Vec<usize> = tree.query(&q, &mut stats).unwrap().iter().map(|p| p.id).collect();
        let want: Vec<usize> = brute_force_query(&points, &q).unwrap().iter().map(|p| p.id).collect();
        assert_eq!(got, want);
        assert_eq!(stats.binary_searches, stats.cascade_queries);
        assert_eq!(tree.count(&q, &mut QueryStats::default()).unwrap(), want.len());
    }
}
