//! Independent reference implementations and property checks shared by the
//! property suites and the acceptance run.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::f64::consts::PI;

use linecrit::betweenness::{
    all_shortest_paths, floyd_warshall, line_betweenness, proposed_betweenness, Accumulation,
    PathOptions, ShortestPathSet,
};
use linecrit::case::SystemCase;
use linecrit::graph::{CostMetric, FlowEdge, FlowGraph, FlowNode, UndirectedGraph};
use linecrit::powerflow::{
    branch_flows, shunt_losses, solve_power_flow, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};
use linecrit::stats::{clustering, degrees};
use linecrit::transient::{swing_rhs, ClassicalSystem, MachineParams, Rk4};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn make_graph(n: usize, sources: &[usize], edges: &[(usize, usize, f64, f64)]) -> FlowGraph {
    let mut seen = BTreeMap::new();
    for &(a, b, c, p) in edges {
        if a != b {
            seen.entry((a as u32 + 1, b as u32 + 1)).or_insert((c, p));
        }
    }
    FlowGraph {
        nodes: (0..n)
            .map(|i| FlowNode {
                id: i as u32 + 1,
                is_source: sources.contains(&i),
            })
            .collect(),
        edges: seen
            .into_iter()
            .map(|((from, to), (cost, p_flow))| FlowEdge {
                from,
                to,
                weight: Complex64::new(0.0, cost),
                cost,
                p_flow,
            })
            .collect(),
        metric: CostMetric::Reactance,
    }
}

/// Every simple directed path from `s` to `t`, with its cost.
pub fn simple_paths(g: &FlowGraph, s: u32, t: u32) -> Vec<(f64, Vec<u32>)> {
    fn walk(g: &FlowGraph, t: u32, path: &mut Vec<u32>, cost: f64, out: &mut Vec<(f64, Vec<u32>)>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push((cost, path.clone()));
            return;
        }
        for e in g.edges.iter().filter(|e| e.from == u) {
            if !path.contains(&e.to) {
                path.push(e.to);
                walk(g, t, path, cost + e.cost, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, t, &mut vec![s], 0.0, &mut out);
    out
}

/// Minimal simple paths per (source, target), from exhaustive DFS.
pub fn dfs_oracle(
    g: &FlowGraph,
    sources: &[u32],
    tol: f64,
) -> BTreeMap<(u32, u32), BTreeSet<Vec<u32>>> {
    let mut out = BTreeMap::new();
    for &s in sources {
        for n in &g.nodes {
            if n.id == s {
                continue;
            }
            let all = simple_paths(g, s, n.id);
            if let Some(min) = all.iter().map(|p| p.0).reduce(f64::min) {
                let set = all
                    .into_iter()
                    .filter(|(c, _)| (c - min).abs() <= tol * min)
                    .map(|(_, p)| p)
                    .collect();
                out.insert((s, n.id), set);
            }
        }
    }
    out
}

pub fn as_map(set: &ShortestPathSet) -> BTreeMap<(u32, u32), BTreeSet<Vec<u32>>> {
    set.pairs
        .iter()
        .map(|p| ((p.source, p.target), p.paths.iter().cloned().collect()))
        .collect()
}

/// Queue-based label-correcting single-source distances.
pub fn label_correcting(g: &FlowGraph, s: usize) -> Vec<f64> {
    let index = g.node_index();
    let mut d = vec![f64::INFINITY; g.node_count()];
    d[s] = 0.0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for e in g.edges.iter().filter(|e| index[&e.from] == u) {
            let v = index[&e.to];
            if d[u] + e.cost < d[v] {
                d[v] = d[u] + e.cost;
                queue.push_back(v);
            }
        }
    }
    d
}

/// Directed graphs of up to 12 nodes with small integer costs, so that
/// equal-cost ties are common.
pub fn arb_flow_graph() -> impl Strategy<Value = FlowGraph> {
    (2usize..=12).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..n, 1..=3),
            proptest::collection::vec((0..n, 0..n, 1u8..=4, 0.0f64..2.0), 0..36),
        )
            .prop_map(move |(sources, edges)| {
                let edges: Vec<_> = edges
                    .into_iter()
                    .map(|(a, b, c, p)| (a, b, c as f64, p))
                    .collect();
                make_graph(n, &sources, &edges)
            })
    })
}

pub fn check_path_oracle(g: &FlowGraph) -> Result<(), TestCaseError> {
    let sources = g.sources();
    let set = all_shortest_paths(g, &sources, &PathOptions::default()).unwrap();
    prop_assert_eq!(as_map(&set), dfs_oracle(g, &sources, 1e-9));
    for pair in &set.pairs {
        prop_assert!(!pair.paths.is_empty());
        for p in &pair.paths {
            prop_assert_eq!((p[0], *p.last().unwrap()), (pair.source, pair.target));
            let cost: f64 = p.windows(2).map(|h| g.edge(h[0], h[1]).unwrap().cost).sum();
            prop_assert!((cost - pair.cost).abs() <= 1e-9 * pair.cost);
        }
    }
    let d = floyd_warshall(g);
    for s in 0..g.node_count() {
        prop_assert_eq!(&d[s], &label_correcting(g, s));
    }
    Ok(())
}

pub fn check_flow_scaling(g: &FlowGraph) -> Result<(), TestCaseError> {
    let set = all_shortest_paths(g, &g.sources(), &PathOptions::default()).unwrap();
    let Ok(base) = proposed_betweenness(&set, g, Accumulation::PerPath, 0.5) else {
        return Ok(());
    };
    let raw = line_betweenness(&set, g, Accumulation::PerPath);
    for k in [0.5, 2.0, 10.0] {
        let scaled = g.with_flows(|e| e.p_flow * k);
        let raw_k = line_betweenness(&set, &scaled, Accumulation::PerPath);
        for (a, b) in raw.iter().zip(&raw_k) {
            prop_assert!((a * k - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
        let rep = proposed_betweenness(&set, &scaled, Accumulation::PerPath, 0.5).unwrap();
        for (x, y) in base.lines.iter().zip(&rep.lines) {
            prop_assert_eq!(
                (x.from, x.to, x.rank, x.critical),
                (y.from, y.to, y.rank, y.critical)
            );
            prop_assert!((x.normalized - y.normalized).abs() < 1e-12);
        }
    }
    Ok(())
}

/// Counts closed neighbor pairs by checking every node triple.
pub fn brute_clustering(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        if a != b {
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
    (0..n)
        .map(|i| {
            let d = (0..n).filter(|&j| adj[i][j]).count();
            if d <= 1 {
                return 0.0;
            }
            let mut closed = 0;
            for j in 0..n {
                for k in j + 1..n {
                    if adj[i][j] && adj[i][k] && adj[j][k] {
                        closed += 1;
                    }
                }
            }
            2.0 * closed as f64 / (d * (d - 1)) as f64
        })
        .collect()
}

/// Unit-weight Floyd–Warshall hop distances.
pub fn brute_hops(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        if a != b {
            d[a][b] = 1;
            d[b][a] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| if x >= inf { usize::MAX } else { x })
                .collect()
        })
        .collect()
}

pub fn build_undirected(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
    UndirectedGraph::new(
        (1..=n as u32).collect(),
        edges.iter().map(|&(a, b)| (a as u32 + 1, b as u32 + 1)),
    )
}

pub fn arb_undirected() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=12).prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..40)))
}

pub fn check_handshake(n: usize, edges: &[(usize, usize)]) -> Result<(), TestCaseError> {
    let g = build_undirected(n, edges);
    let d = degrees(&g, None).unwrap();
    prop_assert_eq!(d.degree.iter().sum::<usize>(), 2 * g.edge_count());
    prop_assert_eq!(d.histogram.values().sum::<usize>(), n);
    Ok(())
}

pub fn check_clustering(n: usize, edges: &[(usize, usize)]) -> Result<(), TestCaseError> {
    let c = clustering(&build_undirected(n, edges)).unwrap();
    prop_assert_eq!(&c.per_node, &brute_clustering(n, edges));
    prop_assert!(c.per_node.iter().all(|&x| (0.0..=1.0).contains(&x)));
    Ok(())
}

/// `|Σ P_inj − Σ branch losses − Σ shunt losses|` after a default solve.
pub fn power_balance_residual(case: &SystemCase) -> f64 {
    let sol = solve_power_flow(case, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
    let flows = branch_flows(case, &sol).unwrap();
    let losses: f64 = flows.iter().map(|f| f.loss).sum();
    let injected: f64 = sol.p_inj.iter().sum();
    (injected - losses - shunt_losses(case, &sol)).abs()
}

pub const SMIB_H: f64 = 5.0;
pub const SMIB_F0: f64 = 50.0;

pub fn series(x: f64) -> DMatrix<Complex64> {
    let y = Complex64::new(0.0, -1.0 / x);
    DMatrix::from_row_slice(2, 2, &[y, -y, -y, y])
}

/// Machine 0 against an infinite bus (machine 1) through `x`, unit EMFs.
pub fn smib(pm: f64, x: f64, damping: f64) -> ClassicalSystem {
    let gen = MachineParams {
        bus: 1,
        h: SMIB_H,
        xd_prime: 0.2,
        damping,
        f0: SMIB_F0,
    };
    let inf = MachineParams {
        bus: 2,
        h: f64::INFINITY,
        ..gen
    };
    let delta0 = (pm * x).asin();
    ClassicalSystem::from_reduced(
        vec![gen, inf],
        vec![1.0, 1.0],
        vec![delta0, 0.0],
        vec![pm, 0.0],
        1,
        series(x),
    )
    .unwrap()
}

/// Swing energy `½(H/πf0)Δω² − Pm δ − Pmax cos δ` of the undamped SMIB.
pub fn smib_energy(pm: f64, pmax: f64, delta: f64, omega: f64) -> f64 {
    0.5 * (SMIB_H / (PI * SMIB_F0)) * omega * omega - pm * delta - pmax * delta.cos()
}

/// Largest relative energy drift over 10 s at 1 ms, starting 0.6 rad off
/// equilibrium with Pm = 0.8 and x = 0.5.
pub fn smib_energy_drift() -> f64 {
    let sys = smib(0.8, 0.5, 0.0);
    let mut x = vec![sys.delta0[0] + 0.6, 0.0, 0.0, 0.0];
    let e0 = smib_energy(0.8, 2.0, x[0], x[2]);
    let mut rk = Rk4::new(4);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        rk.step(|s, o| swing_rhs(&sys, &sys.y_pre, s, o), &mut x, 1e-3);
        worst = worst.max(((smib_energy(0.8, 2.0, x[0], x[2]) - e0) / e0).abs());
    }
    worst
}

/// Observed RK4 order from step halving over a 2 s SMIB swing.
pub fn rk4_observed_order() -> f64 {
    let sys = smib(0.8, 0.5, 0.0);
    let run = |dt: f64| {
        let mut x = vec![sys.delta0[0] + 0.6, 0.0, 0.0, 0.0];
        let mut rk = Rk4::new(4);
        for _ in 0..(2.0 / dt).round() as usize {
            rk.step(|s, o| swing_rhs(&sys, &sys.y_pre, s, o), &mut x, dt);
        }
        x[0]
    };
    let (a, b, c) = (run(0.02), run(0.01), run(0.005));
    ((a - b).abs() / (b - c).abs()).log2()
}
