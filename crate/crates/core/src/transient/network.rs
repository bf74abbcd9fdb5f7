use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::machines::MachineParams;
use crate::case::{BusId, SystemCase};
use crate::error::TransientError;
use crate::powerflow::{build_ybus, PowerFlowSolution};

type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which terminal of the faulted branch is shorted to ground, relative to the
/// branch's stored `from_bus`/`to_bus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaultEnd {
    From,
    #[default]
    To,
}

/// Machine internal voltages, mechanical powers and the data needed to
/// Kron-reduce any network state onto the internal nodes.
#[derive(Debug, Clone)]
pub struct ClassicalSystem {
    pub machines: Vec<MachineParams>,
    /// `|E'|` per machine.
    pub e_mag: Vec<f64>,
    /// Internal angle at the pre-fault equilibrium, radians.
    pub delta0: Vec<f64>,
    pub pm: Vec<f64>,
    /// Machine at the slack bus; angles are judged relative to it.
    pub reference: usize,
    /// Pre-fault reduced admittance among internal nodes.
    pub y_pre: CMatrix,
    /// Absent for systems assembled directly from reduced matrices.
    grid: Option<Grid>,
}

/// Full-network data kept for reducing other network states.
#[derive(Debug, Clone)]
struct Grid {
    case: SystemCase,
    bus_index: HashMap<BusId, usize>,
    /// Constant-admittance loads, by bus position.
    y_load: Vec<Complex64>,
    /// Terminal bus position per machine.
    terminal: Vec<usize>,
}

/// Reduced admittance matrices for the three network states of one fault.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedNetwork {
    pub pre: CMatrix,
    pub fault_on: CMatrix,
    pub post: CMatrix,
    /// Machines separated from the reference machine's island after clearing
    /// while producing power.
    pub islanded: Vec<BusId>,
}

impl ReducedNetwork {
    /// No disturbance at all: every state equals the pre-fault network.
    pub fn unfaulted(sys: &ClassicalSystem) -> Self {
        Self {
            pre: sys.y_pre.clone(),
            fault_on: sys.y_pre.clone(),
            post: sys.y_pre.clone(),
            islanded: Vec::new(),
        }
    }
}

/// Classical-model initialization from a converged load flow.
///
/// Each machine's internal EMF is `V + j x'd conj(S_gen / V)` and its
/// mechanical power is `Re S_gen`. Loads become constant admittances
/// `conj(S_load) / |V|²`; at buses without a machine the whole net
/// injection is treated that way, which turns synchronous condensers into
/// capacitive shunts.
pub fn init_classical(
    case: &SystemCase,
    sol: &PowerFlowSolution,
    machines: &[MachineParams],
) -> Result<ClassicalSystem, TransientError> {
    if machines.is_empty() {
        return Err(TransientError::Machine("no machines given".into()));
    }
    let bus_index = case.bus_index();
    let n = case.buses.len();
    if sol.bus_ids.len() != n {
        return Err(TransientError::Invalid(
            "solution does not match case".into(),
        ));
    }
    let v: Vec<Complex64> = case
        .buses
        .iter()
        .map(|b| {
            sol.position(b.id).map(|i| sol.voltage(i)).ok_or_else(|| {
                TransientError::Invalid(format!("bus {} missing from solution", b.id))
            })
        })
        .collect::<Result<_, _>>()?;
    let s_inj: Vec<Complex64> = case
        .buses
        .iter()
        .map(|b| {
            let i = sol.position(b.id).unwrap();
            Complex64::new(sol.p_inj[i], sol.q_inj[i])
        })
        .collect();

    let mut terminal = Vec::with_capacity(machines.len());
    for m in machines {
        m.validate()?;
        let t = *bus_index
            .get(&m.bus)
            .ok_or_else(|| TransientError::Machine(format!("no bus {}", m.bus)))?;
        if terminal.contains(&t) {
            return Err(TransientError::Machine(format!(
                "two machines at bus {}",
                m.bus
            )));
        }
        terminal.push(t);
    }
    let slack = case.slack_index();
    let reference = terminal
        .iter()
        .position(|&t| t == slack)
        .ok_or_else(|| TransientError::Machine("the slack bus has no machine".into()))?;

    let mut y_load = vec![ZERO; n];
    for (k, b) in case.buses.iter().enumerate() {
        let s_load = if terminal.contains(&k) {
            Complex64::new(b.p_load, b.q_load)
        } else {
            -s_inj[k]
        };
        y_load[k] = s_load.conj() / v[k].norm_sqr();
    }

    let mut e_mag = Vec::new();
    let mut delta0 = Vec::new();
    let mut pm = Vec::new();
    for (m, &t) in machines.iter().zip(&terminal) {
        let b = &case.buses[t];
        let s_gen = s_inj[t] + Complex64::new(b.p_load, b.q_load);
        let e = v[t] + Complex64::new(0.0, m.xd_prime) * (s_gen / v[t]).conj();
        e_mag.push(e.norm());
        delta0.push(e.arg());
        pm.push(s_gen.re);
    }

    let mut sys = ClassicalSystem {
        machines: machines.to_vec(),
        e_mag,
        delta0,
        pm,
        reference,
        y_pre: CMatrix::zeros(0, 0),
        grid: Some(Grid {
            case: case.clone(),
            bus_index,
            y_load,
            terminal,
        }),
    };
    let (y_pre, _) = sys.reduce(None, None)?;
    sys.y_pre = y_pre;
    Ok(sys)
}

impl ClassicalSystem {
    /// A system given directly by its internal-node data, e.g. a single
    /// machine against an infinite bus. Such a system has no bus-level
    /// network, so [`ClassicalSystem::network_for`] is unavailable.
    pub fn from_reduced(
        machines: Vec<MachineParams>,
        e_mag: Vec<f64>,
        delta0: Vec<f64>,
        pm: Vec<f64>,
        reference: usize,
        y_pre: CMatrix,
    ) -> Result<Self, TransientError> {
        let m = machines.len();
        if m == 0 || e_mag.len() != m || delta0.len() != m || pm.len() != m || reference >= m {
            return Err(TransientError::Invalid(
                "inconsistent machine vectors".into(),
            ));
        }
        if y_pre.shape() != (m, m) {
            return Err(TransientError::Invalid(format!(
                "reduced matrix is {:?}, expected {m}x{m}",
                y_pre.shape()
            )));
        }
        for p in &machines {
            p.validate()?;
        }
        Ok(Self {
            machines,
            e_mag,
            delta0,
            pm,
            reference,
            y_pre,
            grid: None,
        })
    }

    pub fn machine_count(&self) -> usize {
        self.machines.len()
    }

    pub fn machine_buses(&self) -> Vec<BusId> {
        self.machines.iter().map(|m| m.bus).collect()
    }

    /// Electrical power of each machine at the given angles.
    pub fn electrical_power(&self, y: &CMatrix, delta: &[f64]) -> Vec<f64> {
        let e: Vec<Complex64> = self
            .e_mag
            .iter()
            .zip(delta)
            .map(|(&m, &d)| Complex64::from_polar(m, d))
            .collect();
        electrical_power(y, &e)
    }

    /// Reduced matrices for a bolted fault at one end of the branch joining
    /// `a` and `b`, cleared by removing every circuit between them.
    pub fn network_for(
        &self,
        a: BusId,
        b: BusId,
        end: FaultEnd,
    ) -> Result<ReducedNetwork, TransientError> {
        let grid = self.grid()?;
        let k = grid
            .case
            .find_branch(a, b)
            .ok_or_else(|| TransientError::Invalid(format!("no line {a}-{b}")))?;
        let br = &grid.case.branches[k];
        let faulted = match end {
            FaultEnd::From => br.from_bus,
            FaultEnd::To => br.to_bus,
        };
        let (fault_on, _) = self.reduce(Some(grid.bus_index[&faulted]), None)?;
        let (post, islanded) = self.reduce(None, Some((a, b)))?;
        Ok(ReducedNetwork {
            pre: self.y_pre.clone(),
            fault_on,
            post,
            islanded,
        })
    }

    fn grid(&self) -> Result<&Grid, TransientError> {
        self.grid
            .as_ref()
            .ok_or_else(|| TransientError::Invalid("system has no bus-level network".into()))
    }

    /// Kron reduction of one network state, component by component.
    ///
    /// `grounded` removes a bus (its voltage is held at zero); `open` drops
    /// all circuits between a pair of buses. Components without a machine are
    /// discarded. Returns the machines that end up outside the reference
    /// machine's component while producing power.
    fn reduce(
        &self,
        grounded: Option<usize>,
        open: Option<(BusId, BusId)>,
    ) -> Result<(CMatrix, Vec<BusId>), TransientError> {
        let grid = self.grid()?;
        let mut case = grid.case.clone();
        if let Some((a, b)) = open {
            case.branches.retain(|br| !br.connects(a, b));
        }
        let ybus = build_ybus(&case).map_err(|e| TransientError::Reduction(e.to_string()))?;
        let n = case.buses.len();
        let m = self.machines.len();
        let mut a = ybus.y;
        for k in 0..n {
            a[(k, k)] += grid.y_load[k];
        }
        let y_m: Vec<Complex64> = self
            .machines
            .iter()
            .map(|p| Complex64::new(0.0, -1.0 / p.xd_prime))
            .collect();
        for (i, &t) in grid.terminal.iter().enumerate() {
            a[(t, t)] += y_m[i];
        }

        // Connected components of the kept buses.
        let mut comp = vec![usize::MAX; n];
        let mut n_comp = 0;
        let mut adj = vec![Vec::new(); n];
        for br in &case.branches {
            let (f, t) = (grid.bus_index[&br.from_bus], grid.bus_index[&br.to_bus]);
            adj[f].push(t);
            adj[t].push(f);
        }
        for s in 0..n {
            if comp[s] != usize::MAX || Some(s) == grounded {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = n_comp;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX && Some(w) != grounded {
                        comp[w] = n_comp;
                        stack.push(w);
                    }
                }
            }
            n_comp += 1;
        }

        let mut y_red = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(y_m.clone()));
        for c in 0..n_comp {
            let buses: Vec<usize> = (0..n).filter(|&k| comp[k] == c).collect();
            let here: Vec<usize> = (0..m).filter(|&i| comp[grid.terminal[i]] == c).collect();
            if here.is_empty() {
                continue;
            }
            let pos: HashMap<usize, usize> =
                buses.iter().enumerate().map(|(p, &k)| (k, p)).collect();
            let a_cc = a.select_rows(&buses).select_columns(&buses);
            let mut b_t = CMatrix::zeros(buses.len(), here.len());
            for (col, &i) in here.iter().enumerate() {
                b_t[(pos[&grid.terminal[i]], col)] = -y_m[i];
            }
            let x = a_cc.lu().solve(&b_t).ok_or_else(|| {
                TransientError::Reduction(format!(
                    "singular network block around bus {}",
                    case.buses[buses[0]].id
                ))
            })?;
            let corr = b_t.transpose() * x;
            for (r, &i) in here.iter().enumerate() {
                for (c2, &j) in here.iter().enumerate() {
                    y_red[(i, j)] -= corr[(r, c2)];
                }
            }
        }

        let ref_comp = comp[grid.terminal[self.reference]];
        let islanded = (0..m)
            .filter(|&i| comp[grid.terminal[i]] != ref_comp && self.pm[i].abs() > 1e-9)
            .map(|i| self.machines[i].bus)
            .collect();
        Ok((y_red, islanded))
    }
}

/// `P_e,i = Re(E_i conj(Σ_j Y_ij E_j))`.
pub fn electrical_power(y: &CMatrix, e: &[Complex64]) -> Vec<f64> {
    let m = e.len();
    (0..m)
        .map(|i| {
            let mut acc = ZERO;
            for j in 0..m {
                acc += y[(i, j)] * e[j];
            }
            (e[i] * acc.conj()).re
        })
        .collect()
}
