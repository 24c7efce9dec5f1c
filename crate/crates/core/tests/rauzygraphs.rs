mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tilegraph::corona::algorithm2;
use tilegraph::formats::normalized_graph_json;
use tilegraph::graph::LabeledGraph;
use tilegraph::rauzygraphs::{
    check_simple_edge, contact_graph, from_simple, normalize, signed_dcont, simple_predecessors, simple_successors,
    to_simple, EdgeType, TypedLabel,
};
use tilegraph::stepped::face_intersection_dim;
use tilegraph::{Face, PisotSystem, SignedTriple, SimpleGraph};

use common::*;

/// Nodes of the contact graph and one step beyond it in either direction.
fn window(s: &PisotSystem) -> BTreeSet<SignedTriple> {
    let g = contact_graph(s).unwrap().graph;
    let mut out = g.nodes().clone();
    for t in g.nodes() {
        out.extend(simple_successors(s, t).into_iter().map(|e| e.dst));
        out.extend(simple_predecessors(s, t).into_iter().map(|e| e.src));
    }
    out
}

fn reaches(g: &SimpleGraph, from: &SignedTriple, targets: &BTreeSet<SignedTriple>) -> bool {
    let mut seen = BTreeSet::from([from.clone()]);
    let mut stack = vec![from.clone()];
    while let Some(t) = stack.pop() {
        if targets.contains(&t) {
            return true;
        }
        for e in g.out_edges(&t) {
            if seen.insert(e.dst.clone()) {
                stack.push(e.dst.clone());
            }
        }
    }
    false
}

#[test]
fn sigma1_contact_fixture() {
    let s = sigma1();
    let g = from_simple(&s, &contact_graph(&s).unwrap().graph).unwrap();
    let frozen: serde_json::Value = serde_json::from_str(include_str!("fixtures/sigma1_contact.json")).unwrap();
    assert_eq!(normalized_graph_json(&g), frozen);
}

#[test]
fn successors_of_an_origin_pair() {
    let s = sigma1();
    let t = triple(1, &[0, 0, 0], 2);
    let edges = simple_successors(&s, &t);
    assert!(!edges.is_empty());
    for e in &edges {
        assert!(check_simple_edge(&s, e));
        assert!(s.in_signed_h(&e.dst));
    }
}

#[test]
fn seeds_are_codimension_two_contacts() {
    for s in all_systems() {
        for t in s.build_dcont() {
            assert!(s.in_dfrak(&t));
            assert_eq!(face_intersection_dim(&Face::origin(3, t.i), &Face::new(t.x.clone(), t.j)), 1);
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(s.build_dcont().contains(&triple(i, &[0, 0, 0], j)));
        }
    }
}

#[test]
fn origin_pairs_expand_to_both_orders() {
    let node = triple(1, &[0, 0, 0], 2);
    let g = LabeledGraph::<SignedTriple, TypedLabel<tilegraph::BigInt>>::new(BTreeSet::from([node.clone()]), []);
    let simple = to_simple(&g);
    assert_eq!(simple.nodes(), &BTreeSet::from([node, triple(2, &[0, 0, 0], 1)]));
}

#[test]
fn reversal_symmetry_of_the_ambient_graph() {
    for s in all_systems() {
        for t in window(&s) {
            let mirrored = simple_successors(&s, &t.negate());
            for e in simple_successors(&s, &t) {
                let found = mirrored
                    .iter()
                    .any(|m| m.dst == e.dst.negate() && m.label.p == e.label.q && m.label.q == e.label.p);
                assert!(found, "{} -> {}", e.src, e.dst);
            }
        }
    }
}

#[test]
fn contact_and_boundary_graph_shapes() {
    for s in all_systems() {
        let run = contact_graph(&s).unwrap();
        let boundary = algorithm2(&s).unwrap().graph;
        assert!(run.graph.nodes().is_subset(boundary.nodes()));
        assert!(run.graph.is_subgraph_of(&run.pre_contact));
        let seeds = signed_dcont(&s);
        for t in run.graph.nodes() {
            assert!(run.graph.out_edges(t).next().is_some());
            assert!(reaches(&run.graph, t, &seeds) || reaches(&run.pre_contact, t, &seeds));
        }
        for g in [&run.graph, &boundary] {
            assert!(g.nodes().iter().all(|t| g.out_edges(t).next().is_some()));
            let normalized = from_simple(&s, g).unwrap();
            assert!(normalized.nodes().iter().all(|t| !t.x.is_zero() || t.i < t.j));
            assert!(normalized.nodes().iter().all(|t| s.in_dfrak(t)));
            assert_eq!(2 * normalized.node_count(), g.node_count());
            assert_eq!(2 * normalized.edge_count(), g.edge_count());
            assert_eq!(&to_simple(&normalized), g);
            assert_eq!(from_simple(&s, &to_simple(&normalized)).unwrap(), normalized);
        }
    }
}

#[test]
fn edge_types_follow_membership() {
    let s = sigma2();
    let simple = algorithm2(&s).unwrap().graph;
    let g = from_simple(&s, &simple).unwrap();
    assert!(g.edges().iter().any(|e| e.label.kind == EdgeType::Two));
    for e in g.edges() {
        let target = match e.label.kind {
            EdgeType::One => e.dst.clone(),
            EdgeType::Two => e.dst.negate(),
        };
        assert!(simple.out_edges(&e.src).any(|m| m.dst == target && m.label == e.label.pair));
        assert_eq!(normalize(&s, &target).unwrap(), e.dst);
    }
}

fn all_systems() -> Vec<PisotSystem> {
    let mut v = vec![sigma1(), sigma2()];
    v.extend(family().into_iter().map(|(_, s)| s).take(6));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_contact_graphs(seed in 0u64..10_000) {
        let s = random_pisot(seed, 1).pop().unwrap();
        let g = contact_graph(&s).unwrap().graph;
        for t in g.nodes() {
            prop_assert!(g.contains(&t.negate()));
        }
        for e in g.edges() {
            prop_assert!(check_simple_edge(&s, e));
        }
        let normalized = from_simple(&s, &g).unwrap();
        prop_assert_eq!(to_simple(&normalized), g);
    }
}
