use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::case::BusId;
use crate::error::TransientError;

/// Classical machine data on the system MVA base.
///
/// An infinite `h` models an infinite bus: the rotor never accelerates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachineParams {
    pub bus: BusId,
    /// Inertia constant, seconds.
    pub h: f64,
    /// Transient reactance, per-unit.
    pub xd_prime: f64,
    /// Damping torque coefficient, per-unit power per rad/s.
    pub damping: f64,
    /// Nominal frequency, Hz.
    pub f0: f64,
}

impl MachineParams {
    pub fn validate(&self) -> Result<(), TransientError> {
        let bad = |what: &str, v: f64| {
            Err(TransientError::Machine(format!(
                "bus {}: {what} = {v}",
                self.bus
            )))
        };
        if !(self.h > 0.0) {
            return bad("h must be positive, got h", self.h);
        }
        if !(self.xd_prime > 0.0 && self.xd_prime.is_finite()) {
            return bad("xd_prime must be positive, got xd_prime", self.xd_prime);
        }
        if !(self.damping >= 0.0 && self.damping.is_finite()) {
            return bad("damping must be non-negative, got damping", self.damping);
        }
        if !(self.f0 > 0.0 && self.f0.is_finite()) {
            return bad("f0 must be positive, got f0", self.f0);
        }
        Ok(())
    }

    /// `π f0 / H`, zero for an infinite bus.
    pub fn accel_gain(&self) -> f64 {
        if self.h.is_infinite() {
            0.0
        } else {
            std::f64::consts::PI * self.f0 / self.h
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineDefaults {
    pub h: f64,
    pub xd_prime: f64,
    pub damping: f64,
    pub f0: f64,
}

impl Default for MachineDefaults {
    fn default() -> Self {
        Self {
            h: 5.0,
            xd_prime: 0.2,
            damping: 0.0,
            f0: 50.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineOverride {
    pub h: Option<f64>,
    pub xd_prime: Option<f64>,
    pub damping: Option<f64>,
    pub f0: Option<f64>,
}

/// Machine data file:
///
/// ```toml
/// [default]
/// h = 5.0
/// xd_prime = 0.2
/// damping = 0.0
/// f0 = 50.0
///
/// [bus.2]
/// h = 4.0
/// ```
///
/// Every field is optional; missing defaults fall back to
/// [`MachineDefaults::default`]. Entries for buses that carry no machine are
/// ignored.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineFile {
    #[serde(default)]
    pub default: Option<MachineDefaultsPartial>,
    #[serde(default)]
    pub bus: BTreeMap<String, MachineOverride>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineDefaultsPartial {
    pub h: Option<f64>,
    pub xd_prime: Option<f64>,
    pub damping: Option<f64>,
    pub f0: Option<f64>,
}

pub fn parse_machine_file(text: &str) -> Result<MachineFile, TransientError> {
    let file: MachineFile =
        toml::from_str(text).map_err(|e| TransientError::Machine(e.to_string()))?;
    for key in file.bus.keys() {
        key.parse::<BusId>()
            .map_err(|_| TransientError::Machine(format!("`bus.{key}` is not a bus number")))?;
    }
    Ok(file)
}

impl MachineFile {
    pub fn defaults(&self) -> MachineDefaults {
        let base = MachineDefaults::default();
        match &self.default {
            None => base,
            Some(d) => MachineDefaults {
                h: d.h.unwrap_or(base.h),
                xd_prime: d.xd_prime.unwrap_or(base.xd_prime),
                damping: d.damping.unwrap_or(base.damping),
                f0: d.f0.unwrap_or(base.f0),
            },
        }
    }

    /// Validated parameters for each listed machine bus, in order.
    pub fn params_for(&self, buses: &[BusId]) -> Result<Vec<MachineParams>, TransientError> {
        let d = self.defaults();
        let by_bus: BTreeMap<BusId, &MachineOverride> = self
            .bus
            .iter()
            .filter_map(|(k, v)| k.parse().ok().map(|b| (b, v)))
            .collect();
        buses
            .iter()
            .map(|&bus| {
                let o = by_bus.get(&bus).copied().copied().unwrap_or_default();
                let p = MachineParams {
                    bus,
                    h: o.h.unwrap_or(d.h),
                    xd_prime: o.xd_prime.unwrap_or(d.xd_prime),
                    damping: o.damping.unwrap_or(d.damping),
                    f0: o.f0.unwrap_or(d.f0),
                };
                p.validate()?;
                Ok(p)
            })
            .collect()
    }
}

/// Default parameters for each listed bus.
pub fn default_machines(buses: &[BusId]) -> Vec<MachineParams> {
    MachineFile::default()
        .params_for(buses)
        .expect("built-in defaults are valid")
}
