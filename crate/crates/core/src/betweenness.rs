//! Power-weighted line betweenness over generator-rooted shortest paths.
//!
//! All-pairs costs come from Floyd–Warshall on the flow graph. For every
//! source bus and every reachable target, every minimal-cost path is
//! enumerated through multi-predecessor sets. A line then accumulates the
//! real power it carries once for each stored path that uses it (the
//! proposed index), or simply 1 per path (the past, power-blind index).

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::case::{BusId, BusKind, SystemCase};
use crate::error::{BetweennessError, Error};
use crate::graph::{build_flow_graph, FlowGraph, GraphOptions};
use crate::powerflow::{
    branch_flows, solve_power_flow, PowerFlowSolution, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};

/// Relative tolerance under which two path costs are equal.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;
pub const DEFAULT_PATH_CAP: usize = 1_000_000;
/// Lines above this normalized betweenness are flagged critical.
pub const DEFAULT_MARGIN: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    Proposed,
    Past,
}

impl Approach {
    pub fn name(self) -> &'static str {
        match self {
            Approach::Proposed => "proposed",
            Approach::Past => "past",
        }
    }
}

/// How often a line is credited for one (source, target) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Accumulation {
    /// Once per stored path that uses the line.
    #[default]
    PerPath,
    /// Once per pair if any of its minimal paths uses the line.
    PerPair,
}

/// Minimal-cost paths from one source to one target, as bus id sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairPaths {
    pub source: BusId,
    pub target: BusId,
    pub cost: f64,
    pub paths: Vec<Vec<BusId>>,
}

/// Pairs ordered by source (as given) then target position in the graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortestPathSet {
    pub pairs: Vec<PairPaths>,
}

impl ShortestPathSet {
    pub fn total_paths(&self) -> usize {
        self.pairs.iter().map(|p| p.paths.len()).sum()
    }

    pub fn pair(&self, source: BusId, target: BusId) -> Option<&PairPaths> {
        self.pairs
            .iter()
            .find(|p| p.source == source && p.target == target)
    }

    pub fn iter_paths(&self) -> impl Iterator<Item = &Vec<BusId>> {
        self.pairs.iter().flat_map(|p| p.paths.iter())
    }
}

/// All-pairs minimal directed costs, indexed by node position;
/// `f64::INFINITY` marks unreachable pairs.
pub fn floyd_warshall(g: &FlowGraph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let index = g.node_index();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in &g.edges {
        let (i, j) = (index[&e.from], index[&e.to]);
        d[i][j] = d[i][j].min(e.cost);
    }
    for k in 0..n {
        let dk = d[k].clone();
        for row in d.iter_mut() {
            let dik = row[k];
            if dik == f64::INFINITY {
                continue;
            }
            for (dij, &dkj) in row.iter_mut().zip(&dk) {
                let via = dik + dkj;
                if via < *dij {
                    *dij = via;
                }
            }
        }
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathOptions {
    pub tie_tol: f64,
    pub cap: usize,
}

impl Default for PathOptions {
    fn default() -> Self {
        Self {
            tie_tol: DEFAULT_TIE_TOL,
            cap: DEFAULT_PATH_CAP,
        }
    }
}

/// Every minimal-cost path from each source to each other reachable node.
pub fn all_shortest_paths(
    g: &FlowGraph,
    sources: &[BusId],
    opts: &PathOptions,
) -> Result<ShortestPathSet, BetweennessError> {
    if !(opts.tie_tol >= 0.0) {
        return Err(BetweennessError::Invalid(format!(
            "tie tolerance must be non-negative, got {}",
            opts.tie_tol
        )));
    }
    let index = g.node_index();
    for s in sources {
        if !index.contains_key(s) {
            return Err(BetweennessError::Invalid(format!(
                "source {s} is not a graph node"
            )));
        }
    }
    let n = g.node_count();
    let dist = floyd_warshall(g);
    let mut incoming: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in &g.edges {
        incoming[index[&e.to]].push((index[&e.from], e.cost));
    }

    // Predecessor sets and path counts per source, without materializing paths.
    let per_source: Vec<(usize, Vec<Vec<usize>>, Vec<f64>)> = sources
        .par_iter()
        .map(|s| {
            let s = index[s];
            let d = &dist[s];
            let pred: Vec<Vec<usize>> = (0..n)
                .map(|t| {
                    if t == s || d[t] == f64::INFINITY {
                        return Vec::new();
                    }
                    incoming[t]
                        .iter()
                        .filter(|&&(u, w)| {
                            d[u] != f64::INFINITY && (d[u] + w - d[t]).abs() <= opts.tie_tol * d[t]
                        })
                        .map(|&(u, _)| u)
                        .collect()
                })
                .collect();
            let mut order: Vec<usize> = (0..n).filter(|&t| d[t] != f64::INFINITY).collect();
            order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
            let mut count = vec![0.0f64; n];
            count[s] = 1.0;
            for &t in &order {
                if t != s {
                    count[t] = pred[t].iter().map(|&u| count[u]).sum();
                }
            }
            (s, pred, count)
        })
        .collect();

    let mut total = 0.0;
    let mut worst = (0usize, 0usize, 0.0f64);
    for (s, _, count) in &per_source {
        for (t, &c) in count.iter().enumerate() {
            if t != *s {
                total += c;
                if c > worst.2 {
                    worst = (*s, t, c);
                }
            }
        }
    }
    if total > opts.cap as f64 {
        return Err(BetweennessError::PathExplosion {
            cap: opts.cap,
            source_bus: g.nodes[worst.0].id,
            target_bus: g.nodes[worst.1].id,
            count: worst.2.min(usize::MAX as f64) as usize,
        });
    }

    let dist = &dist;
    let pairs = per_source
        .par_iter()
        .flat_map_iter(|(s, pred, _)| {
            let s = *s;
            (0..n)
                .filter(move |&t| t != s && dist[s][t] != f64::INFINITY)
                .map(move |t| {
                    let mut paths = Vec::new();
                    let mut stack = vec![t];
                    enumerate(s, pred, &mut stack, &mut paths);
                    let mut paths: Vec<Vec<BusId>> = paths
                        .into_iter()
                        .map(|p| p.into_iter().map(|i| g.nodes[i].id).collect())
                        .collect();
                    paths.sort();
                    PairPaths {
                        source: g.nodes[s].id,
                        target: g.nodes[t].id,
                        cost: dist[s][t],
                        paths,
                    }
                })
        })
        .collect();
    Ok(ShortestPathSet { pairs })
}

/// Walks predecessor sets back from `stack.last()` to `s`.
fn enumerate(s: usize, pred: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let t = *stack.last().unwrap();
    if t == s {
        out.push(stack.iter().rev().copied().collect());
        return;
    }
    for &u in &pred[t] {
        if stack.contains(&u) {
            continue;
        }
        stack.push(u);
        enumerate(s, pred, stack, out);
        stack.pop();
    }
}

/// Per-edge count of uses (edge order of `g`).
fn usage(paths: &ShortestPathSet, g: &FlowGraph, acc: Accumulation) -> Vec<f64> {
    let mut uses = vec![0.0; g.edges.len()];
    let mut seen = vec![false; g.edges.len()];
    for pair in &paths.pairs {
        seen.iter_mut().for_each(|s| *s = false);
        for path in &pair.paths {
            for hop in path.windows(2) {
                let k = g
                    .edge_index(hop[0], hop[1])
                    .expect("stored paths only use graph edges");
                match acc {
                    Accumulation::PerPath => uses[k] += 1.0,
                    Accumulation::PerPair if !seen[k] => {
                        seen[k] = true;
                        uses[k] += 1.0;
                    }
                    Accumulation::PerPair => {}
                }
            }
        }
    }
    uses
}

/// Raw proposed betweenness per edge of `g`: uses times `p_flow`.
pub fn line_betweenness(paths: &ShortestPathSet, g: &FlowGraph, acc: Accumulation) -> Vec<f64> {
    usage(paths, g, acc)
        .into_iter()
        .zip(&g.edges)
        .map(|(u, e)| u * e.p_flow.max(0.0))
        .collect()
}

/// Raw past betweenness per edge of `g`: uses only.
pub fn past_raw(paths: &ShortestPathSet, g: &FlowGraph, acc: Accumulation) -> Vec<f64> {
    usage(paths, g, acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineScore {
    pub from: BusId,
    pub to: BusId,
    pub raw: f64,
    pub normalized: f64,
    pub rank: usize,
    pub critical: bool,
}

impl LineScore {
    pub fn label(&self) -> String {
        format!("{}-{}", self.from, self.to)
    }
}

/// Lines in rank order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetweennessReport {
    pub approach: Approach,
    pub margin: f64,
    pub lines: Vec<LineScore>,
}

impl BetweennessReport {
    /// Score of the line joining `a` and `b`, in either direction.
    pub fn line(&self, a: BusId, b: BusId) -> Option<&LineScore> {
        self.lines
            .iter()
            .find(|l| (l.from, l.to) == (a, b) || (l.from, l.to) == (b, a))
    }

    pub fn critical(&self) -> impl Iterator<Item = &LineScore> {
        self.lines.iter().filter(|l| l.critical)
    }
}

/// Divides by the largest raw value and sorts descending, ties by `(from, to)`.
pub fn normalize_and_rank(
    g: &FlowGraph,
    raw: &[f64],
    approach: Approach,
    margin: f64,
) -> Result<BetweennessReport, BetweennessError> {
    if raw.len() != g.edges.len() {
        return Err(BetweennessError::Invalid(format!(
            "{} values for {} lines",
            raw.len(),
            g.edges.len()
        )));
    }
    let max = raw.iter().copied().fold(0.0, f64::max);
    if !(max > 0.0) {
        return Err(BetweennessError::AllZero);
    }
    let mut lines: Vec<LineScore> = g
        .edges
        .iter()
        .zip(raw)
        .map(|(e, &r)| {
            let normalized = r / max;
            LineScore {
                from: e.from,
                to: e.to,
                raw: r,
                normalized,
                rank: 0,
                critical: normalized > margin,
            }
        })
        .collect();
    lines.sort_by(|a, b| {
        b.normalized
            .total_cmp(&a.normalized)
            .then((a.from, a.to).cmp(&(b.from, b.to)))
    });
    for (k, l) in lines.iter_mut().enumerate() {
        l.rank = k + 1;
    }
    Ok(BetweennessReport {
        approach,
        margin,
        lines,
    })
}

pub fn proposed_betweenness(
    paths: &ShortestPathSet,
    g: &FlowGraph,
    acc: Accumulation,
    margin: f64,
) -> Result<BetweennessReport, BetweennessError> {
    normalize_and_rank(
        g,
        &line_betweenness(paths, g, acc),
        Approach::Proposed,
        margin,
    )
}

pub fn past_betweenness(
    paths: &ShortestPathSet,
    g: &FlowGraph,
    acc: Accumulation,
    margin: f64,
) -> Result<BetweennessReport, BetweennessError> {
    normalize_and_rank(g, &past_raw(paths, g, acc), Approach::Past, margin)
}

/// Settings for a full solve-graph-rank run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOptions {
    pub graph: GraphOptions,
    pub paths: PathOptions,
    pub accumulation: Accumulation,
    pub margin: f64,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self {
            graph: GraphOptions::default(),
            paths: PathOptions::default(),
            accumulation: Accumulation::PerPath,
            margin: DEFAULT_MARGIN,
        }
    }
}

/// Everything derived from one case by a ranking run.
#[derive(Debug, Clone)]
pub struct Ranking {
    pub graph: FlowGraph,
    pub paths: ShortestPathSet,
    pub proposed: BetweennessReport,
    pub past: BetweennessReport,
}

/// Solves the load flow, builds the flow graph and ranks its lines.
pub fn rank_case(case: &SystemCase, opts: &RankOptions) -> Result<Ranking, Error> {
    let sol = solve_power_flow(case, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
    rank_solution(case, &sol, opts)
}

/// Ranking from an already solved load flow.
pub fn rank_solution(
    case: &SystemCase,
    sol: &PowerFlowSolution,
    opts: &RankOptions,
) -> Result<Ranking, Error> {
    let flows = branch_flows(case, sol)?;
    let graph = build_flow_graph(case, &flows, &opts.graph)?;
    let paths = all_shortest_paths(&graph, &graph.sources(), &opts.paths)?;
    let proposed = proposed_betweenness(&paths, &graph, opts.accumulation, opts.margin)?;
    let past = past_betweenness(&paths, &graph, opts.accumulation, opts.margin)?;
    Ok(Ranking {
        graph,
        paths,
        proposed,
        past,
    })
}

/// Copy of `case` with all generation at `from_bus` moved to `to_bus`.
///
/// The receiving bus takes over the sender's bus kind (slack stays slack)
/// and voltage setpoint unless it is itself the slack; the sender becomes a
/// PQ bus without generation.
pub fn shift_generator(
    case: &SystemCase,
    from_bus: BusId,
    to_bus: BusId,
) -> Result<SystemCase, BetweennessError> {
    let from = case
        .bus(from_bus)
        .ok_or_else(|| BetweennessError::Invalid(format!("no bus {from_bus}")))?
        .clone();
    if case.bus(to_bus).is_none() {
        return Err(BetweennessError::Invalid(format!("no bus {to_bus}")));
    }
    if !(from.p_gen > 0.0 || from.kind == BusKind::Slack) {
        return Err(BetweennessError::Invalid(format!(
            "bus {from_bus} has no generation to move"
        )));
    }
    if from_bus == to_bus {
        return Ok(case.clone());
    }
    let mut out = case.clone();
    let to = out.bus_mut(to_bus).unwrap();
    to.p_gen += from.p_gen;
    to.q_gen += from.q_gen;
    if to.kind != BusKind::Slack {
        to.kind = from.kind;
        to.v_mag = from.v_mag;
    }
    let src = out.bus_mut(from_bus).unwrap();
    src.p_gen = 0.0;
    src.q_gen = 0.0;
    src.kind = BusKind::Pq;
    out.validate()
        .map_err(|e| BetweennessError::Invalid(e.to_string()))?;
    Ok(out)
}

/// Proposed-approach report after moving the generator at `from_bus` to `to_bus`.
pub fn sensitivity_shift_generator(
    case: &SystemCase,
    from_bus: BusId,
    to_bus: BusId,
    opts: &RankOptions,
) -> Result<BetweennessReport, Error> {
    let shifted = shift_generator(case, from_bus, to_bus)?;
    Ok(rank_case(&shifted, opts)?.proposed)
}

/// Number of stored paths through each line, keyed by `(from, to)`.
pub fn path_counts(paths: &ShortestPathSet) -> HashMap<(BusId, BusId), usize> {
    let mut out = HashMap::new();
    for p in paths.iter_paths() {
        for hop in p.windows(2) {
            *out.entry((hop[0], hop[1])).or_insert(0) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{FlowEdge, FlowNode};
    use num_complex::Complex64;

    fn toy(nodes: &[BusId], sources: &[BusId], edges: &[(BusId, BusId, f64, f64)]) -> FlowGraph {
        let mut edges: Vec<FlowEdge> = edges
            .iter()
            .map(|&(from, to, cost, p_flow)| FlowEdge {
                from,
                to,
                weight: Complex64::new(0.0, cost),
                cost,
                p_flow,
            })
            .collect();
        edges.sort_by_key(|e| (e.from, e.to));
        FlowGraph {
            nodes: nodes
                .iter()
                .map(|&id| FlowNode {
                    id,
                    is_source: sources.contains(&id),
                })
                .collect(),
            edges,
            metric: crate::graph::CostMetric::Reactance,
        }
    }

    #[test]
    fn diamond_has_two_paths() {
        let g = toy(
            &[1, 2, 3, 4],
            &[1],
            &[
                (1, 2, 1.0, 1.0),
                (1, 3, 1.0, 1.0),
                (2, 4, 1.0, 0.5),
                (3, 4, 1.0, 0.5),
            ],
        );
        let set = all_shortest_paths(&g, &[1], &PathOptions::default()).unwrap();
        let pair = set.pair(1, 4).unwrap();
        assert_eq!(pair.paths, vec![vec![1, 2, 4], vec![1, 3, 4]]);
        assert_eq!(pair.cost, 2.0);
        assert_eq!(set.total_paths(), 4);
    }

    #[test]
    fn single_path_contributions() {
        let g = toy(&[1, 2, 3], &[1], &[(1, 2, 1.0, 0.6), (2, 3, 1.0, 0.5)]);
        let mut set = all_shortest_paths(&g, &[1], &PathOptions::default()).unwrap();
        set.pairs.retain(|p| p.target == 3);
        assert_eq!(
            line_betweenness(&set, &g, Accumulation::PerPath),
            vec![0.6, 0.5]
        );
        let past = past_betweenness(&set, &g, Accumulation::PerPath, 0.5).unwrap();
        assert!(past.lines.iter().all(|l| l.normalized == 1.0));
    }

    #[test]
    fn unused_line_scores_zero() {
        let g = toy(&[1, 2, 3], &[1], &[(1, 2, 1.0, 0.6), (3, 2, 1.0, 0.5)]);
        let set = all_shortest_paths(&g, &[1], &PathOptions::default()).unwrap();
        assert_eq!(
            line_betweenness(&set, &g, Accumulation::PerPath),
            vec![0.6, 0.0]
        );
        assert!(set.pair(1, 3).is_none());
    }

    #[test]
    fn two_line_normalization() {
        let g = toy(&[1, 2, 3], &[1], &[(1, 2, 1.0, 1.0), (2, 3, 1.0, 1.0)]);
        let r = normalize_and_rank(&g, &[2.0, 1.0], Approach::Proposed, 0.5).unwrap();
        assert_eq!(
            r.lines
                .iter()
                .map(|l| (l.normalized, l.rank, l.critical))
                .collect::<Vec<_>>(),
            vec![(1.0, 1, true), (0.5, 2, false)]
        );
        let tie = normalize_and_rank(&g, &[1.0, 1.0], Approach::Proposed, 0.5).unwrap();
        assert_eq!((tie.lines[0].from, tie.lines[1].from), (1, 2));
    }

    #[test]
    fn all_zero_is_an_error() {
        let g = toy(&[1, 2], &[1], &[(1, 2, 1.0, 0.0)]);
        assert!(matches!(
            normalize_and_rank(&g, &[0.0], Approach::Proposed, 0.5),
            Err(BetweennessError::AllZero)
        ));
    }

    #[test]
    fn path_cap_names_worst_pair() {
        // Ladder of diamonds: 2^k paths to the far end.
        let mut edges = Vec::new();
        let mut nodes = vec![1];
        for k in 0..12u32 {
            let (a, b, c, d) = (1 + 3 * k, 2 + 3 * k, 3 + 3 * k, 4 + 3 * k);
            edges.extend([
                (a, b, 1.0, 1.0),
                (a, c, 1.0, 1.0),
                (b, d, 1.0, 1.0),
                (c, d, 1.0, 1.0),
            ]);
            nodes.extend([b, c, d]);
        }
        let g = toy(&nodes, &[1], &edges);
        let opts = PathOptions {
            cap: 1000,
            ..Default::default()
        };
        match all_shortest_paths(&g, &[1], &opts) {
            Err(BetweennessError::PathExplosion {
                source_bus,
                target_bus,
                count,
                ..
            }) => {
                assert_eq!((source_bus, target_bus, count), (1, 37, 4096));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn per_pair_counts_shared_line_once() {
        let g = toy(
            &[1, 2, 3, 4, 5],
            &[1],
            &[
                (1, 2, 1.0, 1.0),
                (2, 3, 1.0, 1.0),
                (2, 4, 1.0, 1.0),
                (3, 5, 1.0, 1.0),
                (4, 5, 1.0, 1.0),
            ],
        );
        let set = all_shortest_paths(&g, &[1], &PathOptions::default()).unwrap();
        let per_path = past_raw(&set, &g, Accumulation::PerPath);
        let per_pair = past_raw(&set, &g, Accumulation::PerPair);
        let k = g.edge_index(1, 2).unwrap();
        assert_eq!(per_path[k], 5.0);
        assert_eq!(per_pair[k], 4.0);
    }

    #[test]
    fn shift_to_same_bus_is_identity() {
        let case = crate::case::fixtures::two_bus();
        assert_eq!(shift_generator(&case, 1, 1).unwrap(), case);
    }

    #[test]
    fn shift_moves_slack() {
        let mut case = crate::case::fixtures::two_bus();
        case.buses[0].p_gen = 0.5;
        let moved = shift_generator(&case, 1, 2).unwrap();
        assert_eq!(moved.buses[1].kind, BusKind::Slack);
        assert_eq!(moved.buses[1].p_gen, 0.5);
        assert_eq!(moved.buses[0].kind, BusKind::Pq);
        assert_eq!(moved.buses[0].p_gen, 0.0);
    }
}
