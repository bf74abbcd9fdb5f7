//! Topological statistics of the undirected network: degrees, clustering,
//! hop-count path lengths and diameter.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::case::{BusId, SystemCase};
use crate::error::StatsError;
use crate::graph::{FlowGraph, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeTable {
    pub ids: Vec<BusId>,
    pub degree: Vec<usize>,
    /// Empty when no directed graph was supplied.
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
    /// Largest degree, smallest id among ties.
    pub hub: BusId,
    /// Degree value to node count.
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clustering {
    pub per_node: Vec<f64>,
    pub graph: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    /// Mean hop distance over unordered pairs of distinct nodes.
    pub char_path_length: f64,
    pub diameter: usize,
    /// Unordered pairs whose distance equals the diameter.
    pub diameter_pair_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub degrees: DegreeTable,
    pub clustering: Clustering,
    pub paths: PathStats,
}

/// Undirected degrees, plus in/out degrees when a directed view is given.
pub fn degrees(
    g: &UndirectedGraph,
    directed: Option<&FlowGraph>,
) -> Result<DegreeTable, StatsError> {
    if g.node_count() == 0 {
        return Err(StatsError::Empty);
    }
    let degree: Vec<usize> = (0..g.node_count()).map(|i| g.degree(i)).collect();
    let mut hub = 0;
    for i in 1..g.node_count() {
        if degree[i] > degree[hub] || (degree[i] == degree[hub] && g.nodes[i] < g.nodes[hub]) {
            hub = i;
        }
    }
    let mut histogram = BTreeMap::new();
    for &d in &degree {
        *histogram.entry(d).or_insert(0) += 1;
    }
    let (in_degree, out_degree) = match directed {
        Some(fg) => g
            .nodes
            .iter()
            .map(|&id| (fg.in_degree(id), fg.out_degree(id)))
            .unzip(),
        None => (Vec::new(), Vec::new()),
    };
    Ok(DegreeTable {
        ids: g.nodes.clone(),
        degree,
        in_degree,
        out_degree,
        hub: g.nodes[hub],
        histogram,
    })
}

/// Local coefficient `2c / (d(d-1))` per node (0 when `d <= 1`) and their mean.
pub fn clustering(g: &UndirectedGraph) -> Result<Clustering, StatsError> {
    let n = g.node_count();
    if n == 0 {
        return Err(StatsError::Empty);
    }
    let per_node: Vec<f64> = (0..n)
        .map(|i| {
            let nb = &g.adj[i];
            let d = nb.len();
            if d <= 1 {
                return 0.0;
            }
            let mut links = 0usize;
            for (a, &u) in nb.iter().enumerate() {
                for &v in &nb[a + 1..] {
                    if g.has_edge(u, v) {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (d * (d - 1)) as f64
        })
        .collect();
    let graph = per_node.iter().sum::<f64>() / n as f64;
    Ok(Clustering { per_node, graph })
}

/// Hop distances from node position `s`; `usize::MAX` marks unreachable.
pub fn bfs_hops(g: &UndirectedGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.node_count()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &g.adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Connected components as sorted id lists, ordered by smallest member.
pub fn components(g: &UndirectedGraph) -> Vec<Vec<BusId>> {
    let mut seen = vec![false; g.node_count()];
    let mut out = Vec::new();
    for s in 0..g.node_count() {
        if seen[s] {
            continue;
        }
        let mut comp: Vec<BusId> = bfs_hops(g, s)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != usize::MAX)
            .map(|(i, _)| {
                seen[i] = true;
                g.nodes[i]
            })
            .collect();
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

/// All-pairs hop distances by one BFS per node.
pub fn hop_distances(g: &UndirectedGraph) -> Vec<Vec<usize>> {
    (0..g.node_count())
        .into_par_iter()
        .map(|s| bfs_hops(g, s))
        .collect()
}

pub fn path_length_stats(g: &UndirectedGraph) -> Result<PathStats, StatsError> {
    let n = g.node_count();
    if n == 0 {
        return Err(StatsError::Empty);
    }
    let comps = components(g);
    if comps.len() > 1 {
        return Err(StatsError::Disconnected { components: comps });
    }
    let dist = hop_distances(g);
    let mut total = 0usize;
    let mut diameter = 0usize;
    let mut count = 0usize;
    for (i, row) in dist.iter().enumerate() {
        for &d in &row[i + 1..] {
            total += d;
            if d > diameter {
                diameter = d;
                count = 1;
            } else if d == diameter {
                count += 1;
            }
        }
    }
    let pairs = n * (n - 1) / 2;
    Ok(PathStats {
        char_path_length: if pairs == 0 {
            0.0
        } else {
            total as f64 / pairs as f64
        },
        diameter,
        diameter_pair_count: if pairs == 0 { 0 } else { count },
    })
}

pub fn graph_stats(
    g: &UndirectedGraph,
    directed: Option<&FlowGraph>,
) -> Result<GraphStats, StatsError> {
    Ok(GraphStats {
        degrees: degrees(g, directed)?,
        clustering: clustering(g)?,
        paths: path_length_stats(g)?,
    })
}

/// Whole-network summary in the usual test-system comparison layout.
///
/// `edges` counts in-service branches, so parallel circuits count
/// separately, and `average_degree` is `2 * edges / nodes`. Clustering and
/// path lengths use the simple graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologySummary {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub distinct_edges: usize,
    pub average_degree: f64,
    pub clustering: f64,
    pub char_path_length: f64,
    pub diameter: usize,
    pub diameter_pair_count: usize,
}

pub fn topology_summary(case: &SystemCase) -> Result<TopologySummary, StatsError> {
    let g = UndirectedGraph::from_case(case);
    let cl = clustering(&g)?;
    let paths = path_length_stats(&g)?;
    let edges = case.branches.len();
    Ok(TopologySummary {
        name: case.name.clone(),
        nodes: g.node_count(),
        edges,
        distinct_edges: g.edge_count(),
        average_degree: 2.0 * edges as f64 / g.node_count() as f64,
        clustering: cl.graph,
        char_path_length: paths.char_path_length,
        diameter: paths.diameter,
        diameter_pair_count: paths.diameter_pair_count,
    })
}
