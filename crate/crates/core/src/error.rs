//! Error types, one enum per pipeline stage plus a crate-level wrapper.

use crate::case::BusId;

/// Failures while reading or validating a [`SystemCase`](crate::case::SystemCase).
#[derive(Debug, thiserror::Error)]
pub enum CaseError {
    #[error("line {line}, columns {first}-{last}: {message}")]
    Field {
        line: usize,
        first: usize,
        last: usize,
        message: String,
    },
    #[error("truncated input: {0}")]
    Truncated(String),
    #[error("invalid case: {0}")]
    Validation(String),
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
}

/// Failures while building the admittance matrix or solving the load flow.
#[derive(Debug, thiserror::Error)]
pub enum PowerFlowError {
    #[error("branch {from}-{to} has zero series impedance")]
    SingularElement { from: BusId, to: BusId },
    #[error(
        "power flow did not converge in {iterations} iterations (mismatch history {history:?})"
    )]
    NotConverged {
        iterations: usize,
        history: Vec<f64>,
    },
    #[error("singular Jacobian at bus {bus}")]
    SingularJacobian { bus: BusId },
    #[error("invalid power flow request: {0}")]
    Invalid(String),
}

/// Failures while mapping a solved case onto a flow graph.
#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("flow list does not match branch list: {0}")]
    Mapping(String),
    #[error("case has no generating bus")]
    NoSources,
    #[error("branch {from}-{to} has zero path cost under the {metric} metric")]
    ZeroCost {
        from: BusId,
        to: BusId,
        metric: &'static str,
    },
}

/// Failures of the topological statistics.
#[derive(Debug, thiserror::Error)]
pub enum StatsError {
    #[error("graph is empty")]
    Empty,
    #[error("graph is disconnected into {} components: {components:?}", components.len())]
    Disconnected { components: Vec<Vec<BusId>> },
}

/// Failures of shortest-path enumeration and betweenness ranking.
#[derive(Debug, thiserror::Error)]
pub enum BetweennessError {
    #[error("shortest-path set exceeds {cap} paths (worst pair {source_bus}->{target_bus} with {count} paths)")]
    PathExplosion {
        cap: usize,
        source_bus: BusId,
        target_bus: BusId,
        count: usize,
    },
    #[error("all betweenness values are zero: no generator reaches any line")]
    AllZero,
    #[error("invalid request: {0}")]
    Invalid(String),
}

/// Failures of the transient-stability simulator.
#[derive(Debug, thiserror::Error)]
pub enum TransientError {
    #[error("invalid machine data: {0}")]
    Machine(String),
    #[error("invalid simulation request: {0}")]
    Invalid(String),
    #[error("network reduction failed: {0}")]
    Reduction(String),
}

/// Any error raised by the analysis pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Case(#[from] CaseError),
    #[error(transparent)]
    PowerFlow(#[from] PowerFlowError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Betweenness(#[from] BetweennessError),
    #[error(transparent)]
    Transient(#[from] TransientError),
    #[error("{0}")]
    Config(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
