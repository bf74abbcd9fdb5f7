//! Classical-model transient stability.
//!
//! Machines are constant EMFs behind transient reactance, loads are constant
//! admittances and the network is Kron-reduced onto the machine internal
//! nodes. A bolted three-phase fault is applied at one end of a line at
//! `t = 0` and cleared by removing the line; the swing equations are
//! integrated with fixed-step RK4 and the machines' angles relative to the
//! slack machine decide stability.

mod machines;
mod network;
mod swing;

pub use machines::{
    default_machines, parse_machine_file, MachineDefaults, MachineDefaultsPartial, MachineFile,
    MachineOverride, MachineParams,
};
pub use network::{electrical_power, init_classical, ClassicalSystem, FaultEnd, ReducedNetwork};
pub use swing::{
    fault_verdict, integrate, simulate_fault, swing_rhs, verdict, Rk4, SimOptions, SwingTrajectory,
    Verdict,
};
