use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::newton::PowerFlowSolution;
use super::ybus::BranchAdmittance;
use crate::case::{BusId, SystemCase};
use crate::error::PowerFlowError;

/// Complex power at both ends of one branch.
///
/// Both `p_send` and `p_recv` are measured as power leaving the terminal bus
/// into the branch, so on a branch carrying power from `from_bus` to `to_bus`
/// `p_recv` is negative and `loss = p_send + p_recv` is the series loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchFlow {
    pub from_bus: BusId,
    pub to_bus: BusId,
    pub p_send: f64,
    pub q_send: f64,
    pub p_recv: f64,
    pub q_recv: f64,
    pub loss: f64,
}

/// Terminal flows for every branch, in the case's branch order.
///
/// Voltages are looked up by bus id, so the result does not depend on the
/// order of `case.buses` or `sol.bus_ids`.
pub fn branch_flows(
    case: &SystemCase,
    sol: &PowerFlowSolution,
) -> Result<Vec<BranchFlow>, PowerFlowError> {
    let voltage = |id: BusId| {
        sol.position(id)
            .map(|i| sol.voltage(i))
            .ok_or_else(|| PowerFlowError::Invalid(format!("bus {id} missing from solution")))
    };
    case.branches
        .iter()
        .map(|br| {
            let y = BranchAdmittance::of(br)?;
            let vf = voltage(br.from_bus)?;
            let vt = voltage(br.to_bus)?;
            let sf: Complex64 = vf * (y.yff * vf + y.yft * vt).conj();
            let st: Complex64 = vt * (y.ytf * vf + y.ytt * vt).conj();
            Ok(BranchFlow {
                from_bus: br.from_bus,
                to_bus: br.to_bus,
                p_send: sf.re,
                q_send: sf.im,
                p_recv: st.re,
                q_recv: st.im,
                loss: sf.re + st.re,
            })
        })
        .collect()
}

/// Real power consumed by bus shunt conductances at the solved voltages.
pub fn shunt_losses(case: &SystemCase, sol: &PowerFlowSolution) -> f64 {
    case.buses
        .iter()
        .filter_map(|b| {
            sol.position(b.id)
                .map(|i| b.shunt_g * sol.v_mag[i] * sol.v_mag[i])
        })
        .sum()
}

/// Plain-text dump of a solution: one row per bus, then one per branch.
pub fn solution_table(sol: &PowerFlowSolution, flows: &[BranchFlow]) -> String {
    let mut out = String::new();
    writeln!(out, "# buses: id |V| theta_deg P Q").unwrap();
    for i in 0..sol.bus_ids.len() {
        writeln!(
            out,
            "{} {:.6} {:.4} {:.6} {:.6}",
            sol.bus_ids[i],
            sol.v_mag[i],
            sol.v_ang[i].to_degrees(),
            sol.p_inj[i],
            sol.q_inj[i]
        )
        .unwrap();
    }
    writeln!(out, "# branches: from to p_send q_send loss").unwrap();
    for f in flows {
        writeln!(
            out,
            "{} {} {:.6} {:.6} {:.6}",
            f.from_bus, f.to_bus, f.p_send, f.q_send, f.loss
        )
        .unwrap();
    }
    out
}
