//! Static network description: buses, branches, generation and load.
//!
//! All electrical quantities are stored in per-unit on [`SystemCase::base_mva`].
//! Two readers produce a [`SystemCase`]: the fixed-column IEEE Common Data
//! Format ([`parse_cdf`]) and a JSON case format ([`parse_case_native`]).

mod cdf;
mod native;

pub use cdf::parse_cdf;
pub use native::{emit_case_native, parse_case_native};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CaseError;

/// External bus number, as printed in the case file.
pub type BusId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BusKind {
    Slack,
    Pv,
    Pq,
}

impl BusKind {
    /// Slack and PV buses hold their voltage magnitude.
    pub fn is_voltage_controlled(self) -> bool {
        matches!(self, BusKind::Slack | BusKind::Pv)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BusRecord {
    pub id: BusId,
    pub kind: BusKind,
    /// Setpoint for slack/PV buses, stored solution value otherwise.
    pub v_mag: f64,
    /// Stored angle in degrees; the slack bus angle is the reference.
    pub v_ang_deg: f64,
    pub p_gen: f64,
    pub q_gen: f64,
    pub p_load: f64,
    pub q_load: f64,
    pub shunt_g: f64,
    pub shunt_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchRecord {
    pub from_bus: BusId,
    pub to_bus: BusId,
    pub r: f64,
    pub x: f64,
    /// Total line charging susceptance.
    pub b_charging: f64,
    /// Off-nominal turns ratio on the `from_bus` side, 1.0 for lines.
    pub tap_ratio: f64,
    pub circuit_id: u8,
}

impl BranchRecord {
    pub fn impedance(&self) -> Complex64 {
        Complex64::new(self.r, self.x)
    }

    /// Unordered endpoint pair, smaller id first.
    pub fn endpoints(&self) -> (BusId, BusId) {
        if self.from_bus <= self.to_bus {
            (self.from_bus, self.to_bus)
        } else {
            (self.to_bus, self.from_bus)
        }
    }

    pub fn connects(&self, a: BusId, b: BusId) -> bool {
        (self.from_bus == a && self.to_bus == b) || (self.from_bus == b && self.to_bus == a)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemCase {
    pub name: String,
    pub base_mva: f64,
    pub buses: Vec<BusRecord>,
    pub branches: Vec<BranchRecord>,
}

impl SystemCase {
    /// Checks the structural invariants every reader must establish.
    pub fn validate(&self) -> Result<(), CaseError> {
        if !(self.base_mva > 0.0 && self.base_mva.is_finite()) {
            return Err(CaseError::Validation(format!(
                "base_mva must be positive, got {}",
                self.base_mva
            )));
        }
        if self.buses.is_empty() {
            return Err(CaseError::Validation("case has no buses".into()));
        }
        let mut seen = HashSet::new();
        for bus in &self.buses {
            if !seen.insert(bus.id) {
                return Err(CaseError::Validation(format!(
                    "duplicate bus id {}",
                    bus.id
                )));
            }
            if bus.kind.is_voltage_controlled() && !(bus.v_mag > 0.0) {
                return Err(CaseError::Validation(format!(
                    "bus {} is voltage controlled but has v_mag {}",
                    bus.id, bus.v_mag
                )));
            }
        }
        let slacks: Vec<BusId> = self
            .buses
            .iter()
            .filter(|b| b.kind == BusKind::Slack)
            .map(|b| b.id)
            .collect();
        match slacks.len() {
            1 => {}
            0 => return Err(CaseError::Validation("case has no slack bus".into())),
            _ => {
                return Err(CaseError::Validation(format!(
                    "duplicate slack buses {slacks:?}"
                )))
            }
        }
        for (k, br) in self.branches.iter().enumerate() {
            for end in [br.from_bus, br.to_bus] {
                if !seen.contains(&end) {
                    return Err(CaseError::Validation(format!(
                        "branch #{} ({}-{}) references unknown bus {end}",
                        k + 1,
                        br.from_bus,
                        br.to_bus
                    )));
                }
            }
            if br.from_bus == br.to_bus {
                return Err(CaseError::Validation(format!(
                    "branch #{} connects bus {} to itself",
                    k + 1,
                    br.from_bus
                )));
            }
            if br.r == 0.0 && br.x == 0.0 {
                return Err(CaseError::Validation(format!(
                    "branch #{} ({}-{}) has zero series impedance",
                    k + 1,
                    br.from_bus,
                    br.to_bus
                )));
            }
            if !(br.tap_ratio > 0.0) {
                return Err(CaseError::Validation(format!(
                    "branch #{} ({}-{}) has tap ratio {}",
                    k + 1,
                    br.from_bus,
                    br.to_bus,
                    br.tap_ratio
                )));
            }
        }
        Ok(())
    }

    /// Map from bus id to position in `buses`.
    pub fn bus_index(&self) -> HashMap<BusId, usize> {
        self.buses
            .iter()
            .enumerate()
            .map(|(i, b)| (b.id, i))
            .collect()
    }

    pub fn bus(&self, id: BusId) -> Option<&BusRecord> {
        self.buses.iter().find(|b| b.id == id)
    }

    pub fn bus_mut(&mut self, id: BusId) -> Option<&mut BusRecord> {
        self.buses.iter_mut().find(|b| b.id == id)
    }

    /// Position of the slack bus. Panics on a case that failed validation.
    pub fn slack_index(&self) -> usize {
        self.buses
            .iter()
            .position(|b| b.kind == BusKind::Slack)
            .expect("validated case has a slack bus")
    }

    /// Position of the first branch joining `a` and `b` in either orientation.
    pub fn find_branch(&self, a: BusId, b: BusId) -> Option<usize> {
        self.branches.iter().position(|br| br.connects(a, b))
    }
}

/// Reads a case file: `.json` goes to the native reader, anything else is
/// treated as Common Data Format.
pub fn read_case(path: &Path) -> crate::Result<SystemCase> {
    let text = std::fs::read_to_string(path).map_err(|source| crate::Error::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let case = if is_json {
        parse_case_native(&text)?
    } else {
        parse_cdf(&text)?
    };
    Ok(case)
}

/// Replaces every group of parallel branches by one equivalent branch.
///
/// The series impedances combine in parallel, charging susceptances add, and
/// the first branch of each group keeps its orientation and tap ratio. Groups
/// appear in the order of their first member.
pub fn merge_parallel_branches(case: &SystemCase) -> SystemCase {
    let mut groups: BTreeMap<(BusId, BusId), usize> = BTreeMap::new();
    let mut merged: Vec<(BranchRecord, Vec<Complex64>)> = Vec::new();
    for br in &case.branches {
        match groups.get(&br.endpoints()) {
            Some(&slot) => {
                let (head, zs) = &mut merged[slot];
                head.b_charging += br.b_charging;
                zs.push(br.impedance());
            }
            None => {
                groups.insert(br.endpoints(), merged.len());
                merged.push((br.clone(), vec![br.impedance()]));
            }
        }
    }
    let branches = merged
        .into_iter()
        .map(|(mut head, zs)| {
            if zs.len() > 1 {
                let y: Complex64 = zs.iter().map(|z| z.inv()).sum();
                let z = y.inv();
                head.r = z.re;
                head.x = z.im;
                head.circuit_id = 1;
            }
            head
        })
        .collect();
    SystemCase {
        name: case.name.clone(),
        base_mva: case.base_mva,
        buses: case.buses.clone(),
        branches,
    }
}
