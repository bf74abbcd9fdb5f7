use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::case::{BranchRecord, BusId, SystemCase};
use crate::error::PowerFlowError;

/// Two-port admittances of one branch: `[[yff, yft], [ytf, ytt]]`.
///
/// Standard pi model with the off-nominal tap on the from side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchAdmittance {
    pub yff: Complex64,
    pub yft: Complex64,
    pub ytf: Complex64,
    pub ytt: Complex64,
}

impl BranchAdmittance {
    pub fn of(branch: &BranchRecord) -> Result<Self, PowerFlowError> {
        let z = branch.impedance();
        if z.norm() == 0.0 {
            return Err(PowerFlowError::SingularElement {
                from: branch.from_bus,
                to: branch.to_bus,
            });
        }
        let ys = z.inv();
        let half_b = Complex64::new(0.0, branch.b_charging / 2.0);
        let t = branch.tap_ratio;
        Ok(Self {
            yff: (ys + half_b) / (t * t),
            yft: -ys / t,
            ytf: -ys / t,
            ytt: ys + half_b,
        })
    }
}

/// Dense bus admittance matrix, rows ordered as `case.buses`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmittanceMatrix {
    pub bus_ids: Vec<BusId>,
    pub y: DMatrix<Complex64>,
}

impl AdmittanceMatrix {
    pub fn n(&self) -> usize {
        self.bus_ids.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.y[(i, j)]
    }

    /// Largest `|Y_ij - Y_ji|` over all entries.
    pub fn asymmetry(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((self.y[(i, j)] - self.y[(j, i)]).norm());
            }
        }
        worst
    }
}

/// Assembles `Y_bus` including line charging, taps and bus shunts.
pub fn build_ybus(case: &SystemCase) -> Result<AdmittanceMatrix, PowerFlowError> {
    build_ybus_without(case, None)
}

/// Same as [`build_ybus`] with one branch (by position) left out.
pub fn build_ybus_without(
    case: &SystemCase,
    skip: Option<usize>,
) -> Result<AdmittanceMatrix, PowerFlowError> {
    let index = case.bus_index();
    let n = case.buses.len();
    let mut y = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (k, br) in case.branches.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        let a = BranchAdmittance::of(br)?;
        let (f, t) = (index[&br.from_bus], index[&br.to_bus]);
        y[(f, f)] += a.yff;
        y[(f, t)] += a.yft;
        y[(t, f)] += a.ytf;
        y[(t, t)] += a.ytt;
    }
    for (i, bus) in case.buses.iter().enumerate() {
        y[(i, i)] += Complex64::new(bus.shunt_g, bus.shunt_b);
    }
    Ok(AdmittanceMatrix {
        bus_ids: case.buses.iter().map(|b| b.id).collect(),
        y,
    })
}
