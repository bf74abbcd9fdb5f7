//! Directed, impedance-weighted graph oriented by real power flow.
//!
//! Every branch pair becomes one edge pointing from the bus that sends real
//! power into the line toward the bus that receives it. The edge weight is the
//! series impedance `r + jx`; shortest paths use a real cost derived from it.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::case::{BusId, BusKind, SystemCase};
use crate::error::GraphError;
use crate::powerflow::BranchFlow;

/// Sending-end flows at or below this magnitude count as no flow.
pub const DEFAULT_DEAD_BAND: f64 = 1e-9;

/// Scalar used as the shortest-path length of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostMetric {
    /// `|r + jx|`
    #[default]
    Magnitude,
    /// `|x|`
    Reactance,
}

impl CostMetric {
    pub fn cost(self, z: Complex64) -> f64 {
        match self {
            CostMetric::Magnitude => z.norm(),
            CostMetric::Reactance => z.im.abs(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CostMetric::Magnitude => "magnitude",
            CostMetric::Reactance => "reactance",
        }
    }
}

/// What to do with a branch whose flow is inside the dead band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroFlow {
    /// Keep the edge with `p_flow = 0`, oriented by [`orient_idle`].
    #[default]
    Keep,
    /// Leave the branch out of the graph.
    Drop,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphOptions {
    pub cost: CostMetric,
    pub dead_band: f64,
    pub zero_flow: ZeroFlow,
}

impl Default for GraphOptions {
    fn default() -> Self {
        Self {
            cost: CostMetric::Magnitude,
            dead_band: DEFAULT_DEAD_BAND,
            zero_flow: ZeroFlow::Keep,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowNode {
    pub id: BusId,
    pub is_source: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowEdge {
    pub from: BusId,
    pub to: BusId,
    /// Series impedance; parallel circuits are combined.
    pub weight: Complex64,
    pub cost: f64,
    /// Real power entering the line at `from`.
    pub p_flow: f64,
}

/// Nodes in case order, edges sorted by `(from, to)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowGraph {
    pub nodes: Vec<FlowNode>,
    pub edges: Vec<FlowEdge>,
    pub metric: CostMetric,
}

impl FlowGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self) -> HashMap<BusId, usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id, i))
            .collect()
    }

    pub fn edge(&self, from: BusId, to: BusId) -> Option<&FlowEdge> {
        self.edges
            .binary_search_by(|e| (e.from, e.to).cmp(&(from, to)))
            .ok()
            .map(|k| &self.edges[k])
    }

    pub fn edge_index(&self, from: BusId, to: BusId) -> Option<usize> {
        self.edges
            .binary_search_by(|e| (e.from, e.to).cmp(&(from, to)))
            .ok()
    }

    /// Outgoing edge indices per node position.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let index = self.node_index();
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (k, e) in self.edges.iter().enumerate() {
            out[index[&e.from]].push(k);
        }
        out
    }

    pub fn sources(&self) -> Vec<BusId> {
        self.nodes
            .iter()
            .filter(|n| n.is_source)
            .map(|n| n.id)
            .collect()
    }

    pub fn in_degree(&self, id: BusId) -> usize {
        self.edges.iter().filter(|e| e.to == id).count()
    }

    pub fn out_degree(&self, id: BusId) -> usize {
        self.edges.iter().filter(|e| e.from == id).count()
    }

    /// Same graph with every `p_flow` replaced.
    pub fn with_flows(&self, f: impl Fn(&FlowEdge) -> f64) -> FlowGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.p_flow = f(e);
        }
        g
    }

    /// Edge list: a node header line, then `from to r x cost p_flow` per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let ids: Vec<String> = self.nodes.iter().map(|n| n.id.to_string()).collect();
        let src: Vec<String> = self.sources().iter().map(|s| s.to_string()).collect();
        writeln!(out, "# nodes {}", ids.join(" ")).unwrap();
        writeln!(out, "# sources {}", src.join(" ")).unwrap();
        writeln!(out, "# from to r x cost p_flow").unwrap();
        for e in &self.edges {
            writeln!(
                out,
                "{} {} {:.6} {:.6} {:.6} {:.6}",
                e.from, e.to, e.weight.re, e.weight.im, e.cost, e.p_flow
            )
            .unwrap();
        }
        out
    }
}

/// Buses with positive real generation, plus the slack bus.
pub fn source_nodes(case: &SystemCase) -> Result<Vec<BusId>, GraphError> {
    let ids: Vec<BusId> = case
        .buses
        .iter()
        .filter(|b| b.p_gen > 0.0 || b.kind == BusKind::Slack)
        .map(|b| b.id)
        .collect();
    if ids.is_empty() {
        Err(GraphError::NoSources)
    } else {
        Ok(ids)
    }
}

/// Sending end of a branch that carries no real power.
///
/// The bus with the larger stored angle sends; on equal angles a
/// voltage-controlled bus sends; otherwise the lower bus id does.
pub fn orient_idle(case: &SystemCase, a: BusId, b: BusId) -> (BusId, BusId) {
    let (ba, bb) = (case.bus(a), case.bus(b));
    let (ang_a, ang_b) = (
        ba.map_or(0.0, |x| x.v_ang_deg),
        bb.map_or(0.0, |x| x.v_ang_deg),
    );
    if ang_a != ang_b {
        return if ang_a > ang_b { (a, b) } else { (b, a) };
    }
    let ctl =
        |x: Option<&crate::case::BusRecord>| x.is_some_and(|x| x.kind.is_voltage_controlled());
    match (ctl(ba), ctl(bb)) {
        (true, false) => (a, b),
        (false, true) => (b, a),
        _ if a < b => (a, b),
        _ => (b, a),
    }
}

/// Builds the flow-oriented graph from a solved case.
///
/// `flows` must list the branches of `case` in order. Parallel circuits are
/// combined into one edge whose weight is their parallel impedance and whose
/// flow is the sum of their flows.
pub fn build_flow_graph(
    case: &SystemCase,
    flows: &[BranchFlow],
    opts: &GraphOptions,
) -> Result<FlowGraph, GraphError> {
    if flows.len() != case.branches.len() {
        return Err(GraphError::Mapping(format!(
            "{} flows for {} branches",
            flows.len(),
            case.branches.len()
        )));
    }
    let sources = source_nodes(case)?;

    // Per unordered pair (lo, hi): admittance sum, power leaving lo, power leaving hi.
    let mut pairs: BTreeMap<(BusId, BusId), (Complex64, f64, f64)> = BTreeMap::new();
    for (k, (br, f)) in case.branches.iter().zip(flows).enumerate() {
        if (br.from_bus, br.to_bus) != (f.from_bus, f.to_bus) {
            return Err(GraphError::Mapping(format!(
                "branch #{} is {}-{} but its flow is {}-{}",
                k + 1,
                br.from_bus,
                br.to_bus,
                f.from_bus,
                f.to_bus
            )));
        }
        let key = br.endpoints();
        let (out_lo, out_hi) = if br.from_bus == key.0 {
            (f.p_send, f.p_recv)
        } else {
            (f.p_recv, f.p_send)
        };
        let slot = pairs
            .entry(key)
            .or_insert((Complex64::new(0.0, 0.0), 0.0, 0.0));
        slot.0 += br.impedance().inv();
        slot.1 += out_lo;
        slot.2 += out_hi;
    }

    let mut edges = Vec::with_capacity(pairs.len());
    for ((lo, hi), (y, out_lo, out_hi)) in pairs {
        let (from, to, p_flow) = if out_lo.max(out_hi) > opts.dead_band {
            if out_lo >= out_hi {
                (lo, hi, out_lo)
            } else {
                (hi, lo, out_hi)
            }
        } else {
            match opts.zero_flow {
                ZeroFlow::Drop => continue,
                ZeroFlow::Keep => {
                    let (f, t) = orient_idle(case, lo, hi);
                    (f, t, 0.0)
                }
            }
        };
        let weight = y.inv();
        let cost = opts.cost.cost(weight);
        if !(cost > 0.0) {
            return Err(GraphError::ZeroCost {
                from,
                to,
                metric: opts.cost.name(),
            });
        }
        edges.push(FlowEdge {
            from,
            to,
            weight,
            cost,
            p_flow,
        });
    }
    edges.sort_by_key(|e| (e.from, e.to));

    Ok(FlowGraph {
        nodes: case
            .buses
            .iter()
            .map(|b| FlowNode {
                id: b.id,
                is_source: sources.contains(&b.id),
            })
            .collect(),
        edges,
        metric: opts.cost,
    })
}

/// Unweighted simple graph; adjacency lists hold node positions, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub nodes: Vec<BusId>,
    pub adj: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    /// Builds from node ids and endpoint pairs; duplicate pairs and
    /// self-loops are ignored.
    pub fn new(nodes: Vec<BusId>, pairs: impl IntoIterator<Item = (BusId, BusId)>) -> Self {
        let index: HashMap<BusId, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        for (a, b) in pairs {
            let (i, j) = (index[&a], index[&b]);
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self { nodes, adj }
    }

    /// Physical topology of a case, parallels collapsed.
    pub fn from_case(case: &SystemCase) -> Self {
        Self::new(
            case.buses.iter().map(|b| b.id).collect(),
            case.branches.iter().map(|b| (b.from_bus, b.to_bus)),
        )
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }
}

/// Direction-blind view of a flow graph.
pub fn undirected_view(g: &FlowGraph) -> UndirectedGraph {
    UndirectedGraph::new(
        g.nodes.iter().map(|n| n.id).collect(),
        g.edges.iter().map(|e| (e.from, e.to)),
    )
}
