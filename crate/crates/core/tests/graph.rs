mod common;

use std::collections::BTreeSet;

use linecrit::graph::{build_flow_graph, source_nodes, undirected_view, GraphOptions};
use linecrit::powerflow::{branch_flows, solve_power_flow, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};

fn graph30() -> linecrit::graph::FlowGraph {
    let case = common::ieee(30);
    let sol = solve_power_flow(&case, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
    let flows = branch_flows(&case, &sol).unwrap();
    build_flow_graph(&case, &flows, &GraphOptions::default()).unwrap()
}

#[test]
fn ieee30_sources() {
    assert_eq!(source_nodes(&common::ieee(30)).unwrap(), vec![1, 2]);
}

#[test]
fn ieee30_edges_follow_flow() {
    let g = graph30();
    assert_eq!(g.edges.len(), 41);
    let e = g.edge(1, 2).unwrap();
    assert!((e.weight.re - 0.0192).abs() < 5e-5 && (e.weight.im - 0.0575).abs() < 5e-5);
    assert!(g.edge(27, 25).is_some());
    assert!(g.edge(25, 27).is_none());
    for e in &g.edges {
        assert!(g.edge(e.to, e.from).is_none());
        assert!(e.cost > 0.0);
        assert!(e.p_flow >= 0.0);
    }
    let mut sorted = g.edges.clone();
    sorted.sort_by_key(|e| (e.from, e.to));
    assert_eq!(sorted, g.edges);
}

#[test]
fn ieee30_undirected_view() {
    let g = graph30();
    let u = undirected_view(&g);
    assert_eq!((u.node_count(), u.edge_count()), (30, 41));
    for (i, &id) in u.nodes.iter().enumerate() {
        assert_eq!(u.degree(i), g.in_degree(id) + g.out_degree(id));
    }
}

#[test]
fn ieee30_pairs_match_branch_set() {
    let case = common::ieee(30);
    let g = graph30();
    let from_graph: BTreeSet<_> = g
        .edges
        .iter()
        .map(|e| (e.from.min(e.to), e.from.max(e.to)))
        .collect();
    let from_case: BTreeSet<_> = case.branches.iter().map(|b| b.endpoints()).collect();
    assert_eq!(from_graph, from_case);
}

#[test]
fn rebuilding_is_deterministic() {
    assert_eq!(graph30(), graph30());
    assert_eq!(graph30().to_edge_list(), graph30().to_edge_list());
}

#[test]
fn lossless_edges_point_down_the_angle() {
    let mut case = common::ieee(30);
    for br in &mut case.branches {
        br.r = 0.0;
    }
    let sol = solve_power_flow(&case, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
    let flows = branch_flows(&case, &sol).unwrap();
    let g = build_flow_graph(&case, &flows, &GraphOptions::default()).unwrap();
    for e in &g.edges {
        let a = sol.v_ang[sol.position(e.from).unwrap()];
        let b = sol.v_ang[sol.position(e.to).unwrap()];
        assert!(a >= b - 1e-12, "{}->{}", e.from, e.to);
    }
}
