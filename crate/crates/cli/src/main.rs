//! `linecrit` command-line front end.
//!
//! Data goes to files under `--out`; their paths are listed on stdout and
//! diagnostics go to stderr. Usage errors exit with status 2, failures
//! during a run with status 1.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linecrit::graph::CostMetric;
use linecrit::report::{
    cmd_rank, cmd_sensitivity, cmd_simulate, cmd_stats, cmd_sweep, parse_line, parse_move,
    write_tables, Format, PipelineConfig,
};
use linecrit::transient::FaultEnd;

#[derive(Parser)]
#[command(
    name = "linecrit",
    version,
    about = "Power-weighted line criticality screening"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree tables, degree histogram and topology summary.
    Stats(Common),
    /// Proposed and past betweenness rankings.
    Rank(Common),
    /// Swing curves for a fault on one line.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Faulted line, e.g. 1-3.
        #[arg(long, value_parser = line_arg)]
        line: (u32, u32),
    },
    /// Rankings plus a fault simulation on every line.
    Sweep(Common),
    /// Sweep after moving all generation from bus A to bus B.
    Sensitivity {
        #[command(flatten)]
        common: Common,
        /// Generator move, e.g. 1:23.
        #[arg(long = "move-gen", value_parser = move_arg)]
        move_gen: (u32, u32),
    },
}

#[derive(Args)]
struct Common {
    /// Case file: IEEE common data format, or `.json` for the native format.
    #[arg(long, value_parser = case_arg)]
    case: PathBuf,
    /// Normalized betweenness above which a line is critical.
    #[arg(long, default_value_t = 0.5)]
    margin: f64,
    /// Relative tolerance for equal-cost paths.
    #[arg(long = "tie-tol", default_value_t = 1e-9)]
    tie_tol: f64,
    /// Edge cost: |z| or |x|.
    #[arg(long, value_enum, default_value_t = Cost::Magnitude)]
    cost: Cost,
    /// Fault clearing time, seconds.
    #[arg(long = "clear-time", default_value_t = 1.0)]
    clear_time: f64,
    /// Simulation end time, seconds.
    #[arg(long = "end-time", default_value_t = 10.0)]
    end_time: f64,
    /// Integration step, seconds.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Relative-angle excursion, radians, that counts as loss of synchronism.
    #[arg(long, default_value_t = std::f64::consts::PI)]
    threshold: f64,
    /// End of the faulted line where the fault is applied, relative to the
    /// branch orientation in the case file.
    #[arg(long = "fault-end", value_enum, default_value_t = End::To)]
    fault_end: End,
    /// Machine parameter file (TOML).
    #[arg(long)]
    machines: Option<PathBuf>,
    /// Output directory.
    #[arg(long, env = "LINECRIT_OUT", default_value = "linecrit-out")]
    out: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cost {
    Magnitude,
    Reactance,
}

#[derive(Clone, Copy, ValueEnum)]
enum End {
    From,
    To,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Md,
}

fn case_arg(s: &str) -> Result<PathBuf, String> {
    if s.trim().is_empty() {
        Err("case path must not be empty".into())
    } else {
        Ok(PathBuf::from(s))
    }
}

fn line_arg(s: &str) -> Result<(u32, u32), String> {
    parse_line(s).map_err(|e| e.to_string())
}

fn move_arg(s: &str) -> Result<(u32, u32), String> {
    parse_move(s).map_err(|e| e.to_string())
}

impl Common {
    fn config(&self) -> PipelineConfig {
        let mut cfg = PipelineConfig::new(&self.case, &self.out);
        cfg.margin = self.margin;
        cfg.tie_tol = self.tie_tol;
        cfg.cost = match self.cost {
            Cost::Magnitude => CostMetric::Magnitude,
            Cost::Reactance => CostMetric::Reactance,
        };
        cfg.sim.t_clear = self.clear_time;
        cfg.sim.t_end = self.end_time;
        cfg.sim.dt = self.dt;
        cfg.sim.threshold = self.threshold;
        cfg.sim.fault_end = match self.fault_end {
            End::From => FaultEnd::From,
            End::To => FaultEnd::To,
        };
        cfg.machines = self.machines.clone();
        cfg.format = match self.format {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
            OutFormat::Md => Format::Md,
        };
        cfg
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, result) = match &cli.command {
        Command::Stats(c) => {
            let cfg = c.config();
            let r = cmd_stats(&cfg);
            (cfg, r)
        }
        Command::Rank(c) => {
            let cfg = c.config();
            let r = cmd_rank(&cfg);
            (cfg, r)
        }
        Command::Simulate { common, line } => {
            let cfg = common.config();
            let r = cmd_simulate(&cfg, *line);
            (cfg, r)
        }
        Command::Sweep(c) => {
            let cfg = c.config();
            let r = cmd_sweep(&cfg);
            (cfg, r)
        }
        Command::Sensitivity { common, move_gen } => {
            let cfg = common.config();
            let r = cmd_sensitivity(&cfg, *move_gen);
            (cfg, r)
        }
    };
    match result.and_then(|tables| write_tables(&cfg, &tables)) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("linecrit: {e}");
            ExitCode::FAILURE
        }
    }
}
