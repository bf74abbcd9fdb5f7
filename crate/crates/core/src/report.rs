//! End-to-end runs and their output tables.
//!
//! Each command reads a case, runs the relevant stages and returns named
//! [`Table`]s; [`write_tables`] renders them as CSV, JSON or Markdown into
//! the output directory. Every table carries the run configuration as a
//! header comment, and all numbers are printed with fixed precision so that
//! repeated runs produce identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::betweenness::{
    rank_solution, shift_generator, Accumulation, RankOptions, Ranking, DEFAULT_MARGIN,
    DEFAULT_PATH_CAP, DEFAULT_TIE_TOL,
};
use crate::case::{read_case, BusId, SystemCase};
use crate::error::Error;
use crate::graph::{source_nodes, undirected_view, CostMetric, GraphOptions};
use crate::powerflow::{solve_power_flow, PowerFlowSolution, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use crate::stats::{degrees, topology_summary};
use crate::transient::{
    fault_verdict, init_classical, parse_machine_file, simulate_fault, ClassicalSystem,
    MachineDefaults, MachineFile, SimOptions, SwingTrajectory, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Md,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub case_path: PathBuf,
    pub margin: f64,
    pub tie_tol: f64,
    pub path_cap: usize,
    pub accumulation: Accumulation,
    pub cost: CostMetric,
    pub pf_tol: f64,
    pub max_iter: usize,
    pub sim: SimOptions,
    pub machines: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub format: Format,
}

impl PipelineConfig {
    pub fn new(case_path: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            case_path: case_path.into(),
            margin: DEFAULT_MARGIN,
            tie_tol: DEFAULT_TIE_TOL,
            path_cap: DEFAULT_PATH_CAP,
            accumulation: Accumulation::PerPath,
            cost: CostMetric::default(),
            pf_tol: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
            sim: SimOptions::default(),
            machines: None,
            out_dir: out_dir.into(),
            format: Format::Csv,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.case_path.as_os_str().is_empty() {
            return bad("case path is empty".into());
        }
        if !(self.margin > 0.0 && self.margin < 1.0) {
            return bad(format!("margin must lie in (0, 1), got {}", self.margin));
        }
        for (name, v) in [
            ("tie_tol", self.tie_tol),
            ("power-flow tolerance", self.pf_tol),
            ("dt", self.sim.dt),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1".into());
        }
        Ok(())
    }

    fn rank_options(&self) -> RankOptions {
        RankOptions {
            graph: GraphOptions {
                cost: self.cost,
                ..Default::default()
            },
            paths: crate::betweenness::PathOptions {
                tie_tol: self.tie_tol,
                cap: self.path_cap,
            },
            accumulation: self.accumulation,
            margin: self.margin,
        }
    }

    fn machine_file(&self) -> Result<MachineFile, Error> {
        match &self.machines {
            None => Ok(MachineFile::default()),
            Some(p) => Ok(parse_machine_file(&read_text(p)?)?),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        context: format!("reading {}", path.display()),
        source,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Value and number of decimals.
    Num(f64, usize),
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v, _) if v.is_nan() => "nan".into(),
            Cell::Num(v, d) => format!("{v:.d$}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Num(..) => self
                .text()
                .parse::<f64>()
                .ok()
                .map_or(Value::Null, |x| json!(x)),
            Cell::Text(s) => json!(s),
        }
    }
}

fn int(v: impl TryInto<i64>) -> Cell {
    Cell::Int(v.try_into().unwrap_or(i64::MAX))
}

fn num(v: f64, decimals: usize) -> Cell {
    Cell::Num(v, decimals)
}

fn text(s: impl Into<String>) -> Cell {
    Cell::Text(s.into())
}

/// A named output table with provenance comments.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub comments: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(name: impl Into<String>, comments: &[(String, String)], columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            comments: comments.to_vec(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Cell text of `column` in every row.
    pub fn column(&self, column: &str) -> Option<Vec<String>> {
        let k = self.columns.iter().position(|c| c == column)?;
        Some(self.rows.iter().map(|r| r[k].text()).collect())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
            Format::Md => self.render_md(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", self.name).unwrap();
        for (k, v) in &self.comments {
            writeln!(out, "# {k}: {v}").unwrap();
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).unwrap();
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text)).unwrap();
        }
        out.push_str(&String::from_utf8(w.into_inner().unwrap()).unwrap());
        out
    }

    fn render_json(&self) -> String {
        let config: serde_json::Map<String, Value> = self
            .comments
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().map(Cell::json))
                        .collect(),
                )
            })
            .collect();
        let doc =
            json!({ "table": self.name, "config": config, "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).unwrap();
        s.push('\n');
        s
    }

    fn render_md(&self) -> String {
        let mut out = String::new();
        writeln!(out, "<!-- {}", self.name).unwrap();
        for (k, v) in &self.comments {
            writeln!(out, "{k}: {v}").unwrap();
        }
        out.push_str("-->\n\n");
        writeln!(out, "| {} |", self.columns.join(" | ")).unwrap();
        writeln!(out, "|{}", "---|".repeat(self.columns.len())).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::text).collect();
            writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        }
        out
    }
}

/// Writes each table to `<out_dir>/<name>.<ext>` and returns the paths.
pub fn write_tables(cfg: &PipelineConfig, tables: &[Table]) -> Result<Vec<PathBuf>, Error> {
    let io = |context: String| move |source| Error::Io { context, source };
    std::fs::create_dir_all(&cfg.out_dir)
        .map_err(io(format!("creating {}", cfg.out_dir.display())))?;
    tables
        .iter()
        .map(|t| {
            let path = cfg
                .out_dir
                .join(format!("{}.{}", t.name, cfg.format.extension()));
            std::fs::write(&path, t.render(cfg.format))
                .map_err(io(format!("writing {}", path.display())))?;
            Ok(path)
        })
        .collect()
}

/// A loaded and solved case.
pub struct Solved {
    pub case: SystemCase,
    pub sol: PowerFlowSolution,
}

pub fn load(cfg: &PipelineConfig) -> Result<Solved, Error> {
    cfg.validate()?;
    let case = read_case(&cfg.case_path)?;
    solve(cfg, case)
}

fn solve(cfg: &PipelineConfig, case: SystemCase) -> Result<Solved, Error> {
    let sol = solve_power_flow(&case, cfg.pf_tol, cfg.max_iter)?;
    Ok(Solved { case, sol })
}

fn provenance(cfg: &PipelineConfig, case: &SystemCase) -> Result<Vec<(String, String)>, Error> {
    let MachineDefaults {
        h,
        xd_prime,
        damping,
        f0,
    } = cfg.machine_file()?.defaults();
    let machines = match &cfg.machines {
        None => "built-in".to_string(),
        Some(p) => p.display().to_string(),
    };
    let pairs = [
        ("case", case.name.clone()),
        ("margin", cfg.margin.to_string()),
        ("tie_tol", format!("{:e}", cfg.tie_tol)),
        ("cost", cfg.cost.name().to_string()),
        (
            "accumulation",
            format!("{:?}", cfg.accumulation).to_lowercase(),
        ),
        (
            "machines",
            format!("{machines} (default h={h} xd_prime={xd_prime} damping={damping} f0={f0})"),
        ),
        (
            "clearing",
            format!(
                "t_clear={} t_end={} dt={} threshold={:.4} fault_end={:?}",
                cfg.sim.t_clear, cfg.sim.t_end, cfg.sim.dt, cfg.sim.threshold, cfg.sim.fault_end
            )
            .to_lowercase(),
        ),
    ];
    Ok(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// Degree tables, degree histogram and topology summary.
pub fn cmd_stats(cfg: &PipelineConfig) -> Result<Vec<Table>, Error> {
    let solved = load(cfg)?;
    let ranking = rank_solution(&solved.case, &solved.sol, &cfg.rank_options())?;
    let meta = provenance(cfg, &solved.case)?;
    let g = undirected_view(&ranking.graph);
    let d = degrees(&g, Some(&ranking.graph))?;

    let mut deg = Table::new(
        "degree",
        &meta,
        &["bus", "degree", "in_degree", "out_degree"],
    );
    for i in 0..d.ids.len() {
        deg.rows.push(vec![
            int(d.ids[i]),
            int(d.degree[i]),
            int(d.in_degree[i]),
            int(d.out_degree[i]),
        ]);
    }
    let mut hist = Table::new("degree_histogram", &meta, &["degree", "count"]);
    for (k, c) in &d.histogram {
        hist.rows.push(vec![int(*k), int(*c)]);
    }
    let s = topology_summary(&solved.case)?;
    let mut summary = Table::new(
        "summary",
        &meta,
        &[
            "case",
            "nodes",
            "edges",
            "average_degree",
            "clustering",
            "char_path_length",
            "diameter",
            "diameter_pairs",
            "hub",
            "hub_degree",
        ],
    );
    let hub_degree = d.degree[d.ids.iter().position(|&b| b == d.hub).unwrap_or(0)];
    summary.rows.push(vec![
        text(s.name),
        int(s.nodes),
        int(s.edges),
        num(s.average_degree, 2),
        num(s.clustering, 4),
        num(s.char_path_length, 4),
        int(s.diameter),
        int(s.diameter_pair_count),
        int(d.hub),
        int(hub_degree),
    ]);
    Ok(vec![deg, hist, summary])
}

/// One line of the merged comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub from: BusId,
    pub to: BusId,
    pub proposed: f64,
    pub proposed_rank: usize,
    pub past: f64,
    pub past_rank: usize,
    pub verdict: Option<Verdict>,
    /// Proposed normalized value above the margin.
    pub critical: bool,
}

impl ComparisonRow {
    pub fn label(&self) -> String {
        format!("L{}-{}", self.from, self.to)
    }
}

/// Rows for every graph edge, in proposed-rank order.
pub fn comparison_rows(ranking: &Ranking) -> Vec<ComparisonRow> {
    let mut rows: Vec<ComparisonRow> = ranking
        .proposed
        .lines
        .iter()
        .map(|p| {
            let q = ranking
                .past
                .line(p.from, p.to)
                .expect("both reports cover every edge");
            ComparisonRow {
                from: p.from,
                to: p.to,
                proposed: p.normalized,
                proposed_rank: p.rank,
                past: q.normalized,
                past_rank: q.rank,
                verdict: None,
                critical: p.critical,
            }
        })
        .collect();
    rows.sort_by_key(|r| r.proposed_rank);
    rows
}

/// Spearman rank correlation with average ranks for ties; NaN when either
/// side is constant.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    fn midranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        let mut r = vec![0.0; v.len()];
        let mut s = 0;
        while s < idx.len() {
            let mut e = s;
            while e + 1 < idx.len() && v[idx[e + 1]] == v[idx[s]] {
                e += 1;
            }
            for &i in &idx[s..=e] {
                r[i] = (s + e) as f64 / 2.0 + 1.0;
            }
            s = e + 1;
        }
        r
    }
    let (ra, rb) = (midranks(a), midranks(b));
    let n = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in ra.iter().zip(&rb) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        f64::NAN
    } else {
        cov / (va * vb).sqrt()
    }
}

/// Fraction of rows whose margin classification matches the verdict.
pub fn agreement(rows: &[ComparisonRow]) -> f64 {
    let judged: Vec<&ComparisonRow> = rows.iter().filter(|r| r.verdict.is_some()).collect();
    if judged.is_empty() {
        return f64::NAN;
    }
    let hits = judged
        .iter()
        .filter(|r| r.critical == (r.verdict == Some(Verdict::Unstable)))
        .count();
    hits as f64 / judged.len() as f64
}

/// Classical model for the generator buses of `solved`.
pub fn classical_system(cfg: &PipelineConfig, solved: &Solved) -> Result<ClassicalSystem, Error> {
    let buses = source_nodes(&solved.case)?;
    let machines = cfg.machine_file()?.params_for(&buses)?;
    Ok(init_classical(&solved.case, &solved.sol, &machines)?)
}

/// Simulates a fault on every graph edge and attaches the verdicts.
pub fn sweep_rows(
    cfg: &PipelineConfig,
    sys: &ClassicalSystem,
    ranking: &Ranking,
) -> Result<Vec<ComparisonRow>, Error> {
    let mut rows = comparison_rows(ranking);
    let verdicts: Vec<Result<Verdict, Error>> = rows
        .par_iter()
        .map(|r| Ok(fault_verdict(sys, r.from, r.to, &cfg.sim)?.verdict))
        .collect();
    for (row, v) in rows.iter_mut().zip(verdicts) {
        row.verdict = Some(v?);
    }
    Ok(rows)
}

fn report_table(
    name: &str,
    meta: &[(String, String)],
    report: &crate::betweenness::BetweennessReport,
) -> Table {
    let mut t = Table::new(
        name,
        meta,
        &[
            "rank",
            "line",
            "from",
            "to",
            "raw",
            "normalized",
            "critical",
        ],
    );
    for l in &report.lines {
        t.rows.push(vec![
            int(l.rank),
            text(format!("L{}", l.label())),
            int(l.from),
            int(l.to),
            num(l.raw, 6),
            num(l.normalized, 4),
            text(if l.critical { "yes" } else { "no" }),
        ]);
    }
    t
}

fn comparison_table(name: &str, meta: &[(String, String)], rows: &[ComparisonRow]) -> Table {
    let mut t = Table::new(
        name,
        meta,
        &[
            "line",
            "proposed",
            "proposed_rank",
            "past",
            "past_rank",
            "critical",
            "verdict",
        ],
    );
    for r in rows {
        t.rows.push(vec![
            text(r.label()),
            num(r.proposed, 4),
            int(r.proposed_rank),
            num(r.past, 4),
            int(r.past_rank),
            text(if r.critical { "yes" } else { "no" }),
            text(r.verdict.map_or("-", Verdict::name)),
        ]);
    }
    t
}

fn ranking_tables(prefix: &str, meta: &[(String, String)], ranking: &Ranking) -> Vec<Table> {
    let mut weights = Table::new(
        format!("{prefix}weights"),
        meta,
        &["from", "to", "r", "x", "cost", "p_flow"],
    );
    for e in &ranking.graph.edges {
        weights.rows.push(vec![
            int(e.from),
            int(e.to),
            num(e.weight.re, 4),
            num(e.weight.im, 4),
            num(e.cost, 6),
            num(e.p_flow, 6),
        ]);
    }
    let mut profile = Table::new(
        format!("{prefix}profile"),
        meta,
        &["position", "proposed", "past"],
    );
    let mut past: Vec<f64> = ranking.past.lines.iter().map(|l| l.normalized).collect();
    past.sort_by(|a, b| b.total_cmp(a));
    for (k, (p, q)) in ranking.proposed.lines.iter().zip(&past).enumerate() {
        profile
            .rows
            .push(vec![int(k + 1), num(p.normalized, 4), num(*q, 4)]);
    }
    vec![
        weights,
        report_table(&format!("{prefix}proposed"), meta, &ranking.proposed),
        report_table(&format!("{prefix}past"), meta, &ranking.past),
        profile,
    ]
}

/// Flow-graph weights, both rankings, their comparison and the ranked profile.
pub fn cmd_rank(cfg: &PipelineConfig) -> Result<Vec<Table>, Error> {
    let solved = load(cfg)?;
    let ranking = rank_solution(&solved.case, &solved.sol, &cfg.rank_options())?;
    let meta = provenance(cfg, &solved.case)?;
    let mut tables = ranking_tables("", &meta, &ranking);
    tables.push(comparison_table(
        "comparison",
        &meta,
        &comparison_rows(&ranking),
    ));
    Ok(tables)
}

fn parse_pair(s: &str, sep: char) -> Option<(BusId, BusId)> {
    let s = s.trim().trim_start_matches(['L', 'l']);
    let (a, b) = s.split_once(sep)?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parses a line given as `A-B` (an `L` prefix is accepted).
pub fn parse_line(s: &str) -> Result<(BusId, BusId), Error> {
    parse_pair(s, '-').ok_or_else(|| Error::Config(format!("line must look like A-B, got `{s}`")))
}

/// Parses a generator move given as `A:B`.
pub fn parse_move(s: &str) -> Result<(BusId, BusId), Error> {
    parse_pair(s, ':')
        .ok_or_else(|| Error::Config(format!("generator move must look like A:B, got `{s}`")))
}

/// Swing curves and verdict for a fault on one line.
pub fn cmd_simulate(cfg: &PipelineConfig, line: (BusId, BusId)) -> Result<Vec<Table>, Error> {
    let solved = load(cfg)?;
    let sys = classical_system(cfg, &solved)?;
    let traj = simulate_fault(&sys, line.0, line.1, &cfg.sim)?;
    let meta = provenance(cfg, &solved.case)?;
    Ok(trajectory_tables(&meta, line, &traj))
}

fn trajectory_tables(
    meta: &[(String, String)],
    (a, b): (BusId, BusId),
    traj: &SwingTrajectory,
) -> Vec<Table> {
    let stem = format!("fault_{a}_{b}");
    let mut cols = vec!["t".to_string()];
    for prefix in ["delta", "omega", "rel"] {
        cols.extend(traj.machine_buses.iter().map(|m| format!("{prefix}_{m}")));
    }
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut curves = Table::new(format!("{stem}_trajectory"), meta, &col_refs);
    for k in 0..traj.times.len() {
        let mut row = vec![num(traj.times[k], 4)];
        row.extend(
            traj.delta[k]
                .iter()
                .chain(&traj.omega[k])
                .chain(&traj.relative(k))
                .map(|&v| num(v, 6)),
        );
        curves.rows.push(row);
    }
    let mut verdict = Table::new(
        format!("{stem}_verdict"),
        meta,
        &[
            "line",
            "verdict",
            "first_divergence_time",
            "max_excursion",
            "islanded",
        ],
    );
    let islanded: Vec<String> = traj.islanded.iter().map(|b| b.to_string()).collect();
    verdict.rows.push(vec![
        text(format!("L{a}-{b}")),
        text(traj.verdict.name()),
        traj.first_divergence_time.map_or(text("-"), |t| num(t, 4)),
        num(traj.max_excursion, 4),
        text(if islanded.is_empty() {
            "-".into()
        } else {
            islanded.join(" ")
        }),
    ]);
    vec![curves, verdict]
}

/// Summary statistics for a swept comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub lines: usize,
    pub critical: usize,
    pub unstable: usize,
    pub spearman: f64,
    pub agreement: f64,
}

pub fn summarize(rows: &[ComparisonRow]) -> SweepSummary {
    let a: Vec<f64> = rows.iter().map(|r| r.proposed).collect();
    let b: Vec<f64> = rows.iter().map(|r| r.past).collect();
    SweepSummary {
        lines: rows.len(),
        critical: rows.iter().filter(|r| r.critical).count(),
        unstable: rows
            .iter()
            .filter(|r| r.verdict == Some(Verdict::Unstable))
            .count(),
        spearman: spearman(&a, &b),
        agreement: agreement(rows),
    }
}

fn sweep_tables(cfg: &PipelineConfig, solved: &Solved, prefix: &str) -> Result<Vec<Table>, Error> {
    let ranking = rank_solution(&solved.case, &solved.sol, &cfg.rank_options())?;
    let sys = classical_system(cfg, solved)?;
    let rows = sweep_rows(cfg, &sys, &ranking)?;
    let meta = provenance(cfg, &solved.case)?;
    let s = summarize(&rows);
    let mut summary = Table::new(
        format!("{prefix}sweep_summary"),
        &meta,
        &["metric", "value"],
    );
    summary.rows = vec![
        vec![text("lines"), int(s.lines)],
        vec![text("critical"), int(s.critical)],
        vec![text("unstable"), int(s.unstable)],
        vec![text("spearman_proposed_past"), num(s.spearman, 4)],
        vec![text("margin_verdict_agreement"), num(s.agreement, 4)],
    ];
    let mut tables = ranking_tables(prefix, &meta, &ranking);
    tables.push(comparison_table(&format!("{prefix}sweep"), &meta, &rows));
    tables.push(summary);
    Ok(tables)
}

/// Rankings plus a fault simulation on every line.
pub fn cmd_sweep(cfg: &PipelineConfig) -> Result<Vec<Table>, Error> {
    let solved = load(cfg)?;
    sweep_tables(cfg, &solved, "")
}

/// Sweep after moving all generation from one bus to another.
pub fn cmd_sensitivity(
    cfg: &PipelineConfig,
    (from, to): (BusId, BusId),
) -> Result<Vec<Table>, Error> {
    cfg.validate()?;
    let case = shift_generator(&read_case(&cfg.case_path)?, from, to)?;
    let solved = solve(cfg, case)?;
    sweep_tables(cfg, &solved, &format!("shift_{from}_{to}_"))
}
