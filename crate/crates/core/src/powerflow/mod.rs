//! Bus admittance matrix and AC load flow.
//!
//! The solved bus angles decide which way real power moves on every branch;
//! [`branch_flows`] turns them into sending/receiving end powers.

mod flows;
mod newton;
mod ybus;

pub use flows::{branch_flows, shunt_losses, solution_table, BranchFlow};
pub use newton::{solve_power_flow, PowerFlowSolution, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
pub use ybus::{build_ybus, build_ybus_without, AdmittanceMatrix, BranchAdmittance};
