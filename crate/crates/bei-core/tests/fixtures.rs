//! The four fixture graphs, gated by their stated properties.

use std::path::PathBuf;

use bei_core::codec::parse_edge_list;
use bei_core::cutsets::{enumerate_cut_sets, is_cut_set};
use bei_core::graph::{Graph, VertexSet};
use bei_core::properties::{
    good_cut_vertices, good_cut_vertices_via_criterion, implication_report, StrongMemo,
};

fn fixture(name: &str) -> Graph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    parse_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn fig1_has_exactly_one_good_cut_vertex() {
    let g = fixture("fig1.edges");
    assert_eq!(g.n(), 13);
    assert_eq!(g.cut_vertices().to_sorted_1based(), vec![1, 4, 8]);
    let memo = StrongMemo::new();
    let r = implication_report(&g, &memo).unwrap();
    assert!(r.unmixed && r.accessible && r.strongly_unmixed);
    assert_eq!(r.good_cut_vertices, vec![1]);
    assert_eq!(
        good_cut_vertices(&g).unwrap(),
        good_cut_vertices_via_criterion(&g).unwrap()
    );
}

#[test]
fn fig1_deletions_at_4_and_8_stay_mixed_with_neighborhood_witnesses() {
    let g = fixture("fig1.edges");
    // 4 and 8 fail because some cut set of the deletion contains the whole
    // neighborhood of the deleted vertex on one side
    for (v, named) in [(4u32, vec![1u32, 3, 5, 8]), (8, vec![1, 4, 7, 9])] {
        let (h, map) = g.delete_vertices(VertexSet::singleton(v - 1));
        let inv: std::collections::HashMap<u32, u32> = map
            .iter()
            .enumerate()
            .map(|(new, &old)| (old + 1, new as u32))
            .collect();
        // the deleted vertex's neighborhood on the big side, in h's labels
        let nbrs: Vec<u32> = g
            .neighbors(v - 1)
            .iter()
            .map(|w| w + 1)
            .filter(|w| named.contains(w))
            .collect();
        assert!(!nbrs.is_empty());
        let side = VertexSet::from_vertices(&nbrs.iter().map(|w| inv[w]).collect::<Vec<_>>());
        let family = enumerate_cut_sets(&h).unwrap();
        let witness = family.sets().find(|s| side.is_subset_of(*s));
        assert!(
            witness.is_some(),
            "a cut set of the deletion must contain the neighborhood"
        );
    }
}

#[test]
fn fig2_is_unmixed_but_stuck() {
    let g = fixture("fig2.edges");
    assert_eq!(g.n(), 12);
    let memo = StrongMemo::new();
    let r = implication_report(&g, &memo).unwrap();
    assert!(r.unmixed);
    assert!(!r.accessible);
    assert_eq!(r.stuck_cut_set, Some(vec![3, 4, 6, 7]));
    assert!(!r.strongly_unmixed);

    // the stuck set is a cut set, but none of its 3-subsets is
    let stuck = VertexSet::from_vertices(&[2, 3, 5, 6]);
    assert!(is_cut_set(&g, stuck));
    for v in stuck.iter() {
        assert!(!is_cut_set(&g, stuck.without(v)), "dropping {v} must fail");
    }
    // specifically {3,4,6} in 1-based labels
    assert!(!is_cut_set(&g, VertexSet::from_vertices(&[2, 3, 5])));
}

#[test]
fn fig2_decomposes_as_a_block_with_five_whiskers() {
    let g = fixture("fig2.edges");
    let leaves = VertexSet::from_vertices(&[7, 8, 9, 10, 11]);
    let (block, _) = g.delete_vertices(leaves);
    assert_eq!(block.n(), 7);
    assert_eq!(block.edge_count(), 15);
    assert!(block.is_block());
    let whiskered = VertexSet::from_vertices(&[0, 1, 2, 4, 6]);
    let rebuilt = block.add_whiskers(whiskered).unwrap();
    assert_eq!(
        bei_core::canon::canonical_form(&rebuilt),
        bei_core::canon::canonical_form(&g)
    );
}

#[test]
fn fig3_is_accessible_with_good_vertex_1() {
    let g = fixture("fig3.edges");
    assert_eq!(g.n(), 14);
    let memo = StrongMemo::new();
    let r = implication_report(&g, &memo).unwrap();
    assert!(r.unmixed && r.accessible && r.strongly_unmixed);
    assert!(r.good_cut_vertices.contains(&1));
}

#[test]
fn fig4_is_unmixed_but_not_accessible() {
    let g = fixture("fig4.edges");
    assert_eq!(g.n(), 16);
    let memo = StrongMemo::new();
    let r = implication_report(&g, &memo).unwrap();
    assert!(r.unmixed);
    assert!(!r.accessible);
    // block with four whiskers
    assert_eq!(g.cut_vertices().to_sorted_1based(), vec![1, 2, 3, 4]);
    let (block, _) = g.delete_vertices(VertexSet::from_vertices(&[12, 13, 14, 15]));
    assert!(block.is_block());
    assert_eq!(block.n(), 12);
}

#[test]
fn fig2_component_counts_from_the_worked_example() {
    // removing the stuck set leaves |S| + 1 = 5 components
    let g = fixture("fig2.edges");
    let s = VertexSet::from_vertices(&[2, 3, 5, 6]);
    assert_eq!(g.component_count(s), 5);
}
