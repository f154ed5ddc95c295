mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use salvetti::{parse_graph, DefiningGraph, GraphError};

fn graph_from_mask(n: usize, mask: u32) -> DefiningGraph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p)
        .collect();
    DefiningGraph::new((0..n).map(|i| format!("v{i}")), edges).unwrap()
}

fn brute_connected(g: &DefiningGraph) -> bool {
    let n = g.vertex_count();
    let mut reach = BTreeSet::from([0]);
    loop {
        let next: BTreeSet<usize> = reach
            .iter()
            .flat_map(|&v| (0..n).filter(move |&u| g.is_adjacent(u, v)))
            .chain(reach.iter().copied())
            .collect();
        if next.len() == reach.len() {
            return reach.len() == n;
        }
        reach = next;
    }
}

fn brute_triangle_free(g: &DefiningGraph) -> bool {
    let n = g.vertex_count();
    (0..n).all(|a| {
        (a + 1..n).all(|b| (b + 1..n).all(|c| !(g.is_adjacent(a, b) && g.is_adjacent(b, c) && g.is_adjacent(a, c))))
    })
}

#[test]
fn dimension_two_iff_connected_triangle_free() {
    for n in 1..=6usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0..(1u32 << pairs) {
            let g = graph_from_mask(n, mask);
            let expected = n >= 2 && brute_connected(&g) && brute_triangle_free(&g);
            assert_eq!(
                g.homogeneity_dimension() == Some(2),
                expected,
                "n = {n}, mask = {mask:b}"
            );
            assert_eq!(g.is_connected(), brute_connected(&g));
            assert_eq!(g.is_triangle_free(), brute_triangle_free(&g));
        }
    }
}

proptest! {
    #[test]
    fn join_decomposition_is_maximal(n in 1usize..=6, mask in any::<u32>(), subset in 1u32..64) {
        let pairs = n * (n - 1) / 2;
        let g = graph_from_mask(n, mask & ((1u32 << pairs) - 1));
        let set: BTreeSet<usize> = (0..n).filter(|&v| subset >> v & 1 == 1).collect();
        prop_assume!(!set.is_empty());
        let dec = g.max_join_decomposition(&set).unwrap();
        let union: BTreeSet<usize> = dec.factors.iter().flatten().copied().collect();
        prop_assert_eq!(&union, &set);
        prop_assert_eq!(dec.factors.iter().map(|f| f.len()).sum::<usize>(), set.len());
        for (i, f) in dec.factors.iter().enumerate() {
            for h in &dec.factors[i + 1..] {
                for &a in f {
                    for &b in h {
                        prop_assert!(g.is_adjacent(a, b));
                    }
                }
            }
            // no factor splits further as a join of two nonempty parts
            let members: Vec<usize> = f.iter().copied().collect();
            for split in 1..(1u32 << members.len()) - 1 {
                let (left, right): (Vec<usize>, Vec<usize>) =
                    members.iter().partition(|&&v| split >> members.iter().position(|&m| m == v).unwrap() & 1 == 1);
                let is_join = left.iter().all(|&a| right.iter().all(|&b| g.is_adjacent(a, b)));
                prop_assert!(!is_join);
            }
        }
    }
}

#[test]
fn parser_reports_positions() {
    let err = parse_graph("vertices a b\nedge a a").unwrap_err();
    assert!(matches!(err.root(), GraphError::Loop(_)), "{err:?}");
    assert!(matches!(err, GraphError::At { line: 2, .. }), "{err:?}");
    let err = parse_graph("vertices a b\nedge a c").unwrap_err();
    assert!(matches!(err.root(), GraphError::UnknownEndpoint(..)), "{err:?}");
    let err = parse_graph("vertices a b\nedge a b\nedge b a").unwrap_err();
    assert!(matches!(err.root(), GraphError::DuplicateEdge(..)), "{err:?}");
    assert!(err.to_string().starts_with("line 3, column 1: "), "{err}");
    match parse_graph("vertices a b\nbogus a b") {
        Err(GraphError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected a syntax error, got {other:?}"),
    }
    let g = parse_graph("# comment\nvertices a b c; edge a b; edge b c").unwrap();
    assert_eq!(g.edge_count(), 2);
    assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
}

#[test]
fn links_and_stars() {
    let g = parse_graph(common::C5).unwrap();
    assert_eq!(g.link(0), &BTreeSet::from([1, 4]));
    assert_eq!(g.star(0), BTreeSet::from([0, 1, 4]));
    assert_eq!(g.common_link(&BTreeSet::from([0, 2])), BTreeSet::from([1]));
}
