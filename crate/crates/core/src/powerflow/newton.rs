use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ybus::{build_ybus, AdmittanceMatrix};
use crate::case::{BusId, BusKind, SystemCase};
use crate::error::PowerFlowError;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 50;

/// Converged bus state, indexed like `bus_ids` (the case's bus order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerFlowSolution {
    pub bus_ids: Vec<BusId>,
    pub v_mag: Vec<f64>,
    /// Radians.
    pub v_ang: Vec<f64>,
    /// Net injected power computed from the solved voltages.
    pub p_inj: Vec<f64>,
    pub q_inj: Vec<f64>,
    pub iterations: usize,
    pub max_mismatch: f64,
    pub converged: bool,
    /// Largest mismatch before each Newton step, then at the solution.
    pub mismatch_history: Vec<f64>,
}

impl PowerFlowSolution {
    pub fn position(&self, id: BusId) -> Option<usize> {
        self.bus_ids.iter().position(|&b| b == id)
    }

    pub fn voltage(&self, i: usize) -> Complex64 {
        Complex64::from_polar(self.v_mag[i], self.v_ang[i])
    }

    pub fn voltages(&self) -> Vec<Complex64> {
        (0..self.bus_ids.len()).map(|i| self.voltage(i)).collect()
    }
}

/// Full Newton-Raphson load flow in polar coordinates from a flat start.
///
/// Unknowns are the angles of all non-slack buses and the magnitudes of PQ
/// buses. PV buses hold their setpoint; reactive limits are not enforced.
/// The slack angle stays at the case's stored value.
pub fn solve_power_flow(
    case: &SystemCase,
    tol: f64,
    max_iter: usize,
) -> Result<PowerFlowSolution, PowerFlowError> {
    if !(tol > 0.0) {
        return Err(PowerFlowError::Invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    case.validate()
        .map_err(|e| PowerFlowError::Invalid(e.to_string()))?;
    let ybus = build_ybus(case)?;
    let n = case.buses.len();

    let pq: Vec<usize> = (0..n)
        .filter(|&i| case.buses[i].kind == BusKind::Pq)
        .collect();
    let pvpq: Vec<usize> = (0..n)
        .filter(|&i| case.buses[i].kind != BusKind::Slack)
        .collect();
    let slack = case.slack_index();

    let s_spec: Vec<Complex64> = case
        .buses
        .iter()
        .map(|b| Complex64::new(b.p_gen - b.p_load, b.q_gen - b.q_load))
        .collect();

    let mut vm: Vec<f64> = case
        .buses
        .iter()
        .map(|b| {
            if b.kind.is_voltage_controlled() {
                b.v_mag
            } else {
                1.0
            }
        })
        .collect();
    let mut va = vec![0.0; n];
    va[slack] = case.buses[slack].v_ang_deg.to_radians();

    let mut history = Vec::new();
    let mut iterations = 0;
    loop {
        let v = voltages(&vm, &va);
        let s_calc = injections(&ybus, &v);
        let f = mismatch_vector(&s_spec, &s_calc, &pvpq, &pq);
        let norm = f.amax();
        history.push(norm);
        if norm <= tol {
            return Ok(PowerFlowSolution {
                bus_ids: ybus.bus_ids.clone(),
                v_mag: vm,
                v_ang: va,
                p_inj: s_calc.iter().map(|s| s.re).collect(),
                q_inj: s_calc.iter().map(|s| s.im).collect(),
                iterations,
                max_mismatch: norm,
                converged: true,
                mismatch_history: history,
            });
        }
        if iterations == max_iter || !norm.is_finite() {
            return Err(PowerFlowError::NotConverged {
                iterations,
                history,
            });
        }

        let jac = jacobian(&ybus, &v, &pvpq, &pq);
        let dx = solve_step(jac, &f, |k| {
            let bus = if k < pvpq.len() {
                pvpq[k]
            } else {
                pq[k - pvpq.len()]
            };
            case.buses[bus].id
        })?;
        for (k, &i) in pvpq.iter().enumerate() {
            va[i] += dx[k];
        }
        for (k, &i) in pq.iter().enumerate() {
            vm[i] += dx[pvpq.len() + k];
        }
        iterations += 1;
    }
}

fn voltages(vm: &[f64], va: &[f64]) -> Vec<Complex64> {
    vm.iter()
        .zip(va)
        .map(|(&m, &a)| Complex64::from_polar(m, a))
        .collect()
}

/// `S_i = V_i conj(sum_j Y_ij V_j)`.
fn injections(ybus: &AdmittanceMatrix, v: &[Complex64]) -> Vec<Complex64> {
    let i = currents(ybus, v);
    v.iter().zip(&i).map(|(v, i)| v * i.conj()).collect()
}

fn currents(ybus: &AdmittanceMatrix, v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    (0..n)
        .map(|r| (0..n).map(|c| ybus.y[(r, c)] * v[c]).sum())
        .collect()
}

/// `[ΔP over pvpq; ΔQ over pq]`, specified minus calculated.
fn mismatch_vector(
    s_spec: &[Complex64],
    s_calc: &[Complex64],
    pvpq: &[usize],
    pq: &[usize],
) -> DVector<f64> {
    let p = pvpq.iter().map(|&i| s_spec[i].re - s_calc[i].re);
    let q = pq.iter().map(|&i| s_spec[i].im - s_calc[i].im);
    DVector::from_iterator(pvpq.len() + pq.len(), p.chain(q))
}

/// Jacobian of `S(θ, |V|)` restricted to the unknowns, built from
/// `∂S/∂θ = j diag(V) conj(diag(I) - Y diag(V))` and
/// `∂S/∂|V| = diag(V) conj(Y diag(V/|V|)) + conj(diag(I)) diag(V/|V|)`.
fn jacobian(
    ybus: &AdmittanceMatrix,
    v: &[Complex64],
    pvpq: &[usize],
    pq: &[usize],
) -> DMatrix<f64> {
    let i = currents(ybus, v);
    let j = Complex64::i();
    let unit: Vec<Complex64> = v.iter().map(|v| v / v.norm()).collect();
    let ds_dva = |r: usize, c: usize| {
        let diag = if r == c {
            i[r]
        } else {
            Complex64::new(0.0, 0.0)
        };
        j * v[r] * (diag - ybus.y[(r, c)] * v[c]).conj()
    };
    let ds_dvm = |r: usize, c: usize| {
        let mut d = v[r] * (ybus.y[(r, c)] * unit[c]).conj();
        if r == c {
            d += i[r].conj() * unit[r];
        }
        d
    };
    let (a, b) = (pvpq.len(), pq.len());
    let mut jac = DMatrix::zeros(a + b, a + b);
    for (ri, &r) in pvpq.iter().enumerate() {
        for (ci, &c) in pvpq.iter().enumerate() {
            jac[(ri, ci)] = ds_dva(r, c).re;
        }
        for (ci, &c) in pq.iter().enumerate() {
            jac[(ri, a + ci)] = ds_dvm(r, c).re;
        }
    }
    for (ri, &r) in pq.iter().enumerate() {
        for (ci, &c) in pvpq.iter().enumerate() {
            jac[(a + ri, ci)] = ds_dva(r, c).im;
        }
        for (ci, &c) in pq.iter().enumerate() {
            jac[(a + ri, a + ci)] = ds_dvm(r, c).im;
        }
    }
    jac
}

/// LU solve; a vanishing pivot is reported against the bus owning that unknown.
fn solve_step(
    jac: DMatrix<f64>,
    f: &DVector<f64>,
    bus_of: impl Fn(usize) -> BusId,
) -> Result<DVector<f64>, PowerFlowError> {
    let scale = jac.amax().max(1.0);
    let lu = jac.lu();
    let u = lu.u();
    for k in 0..u.nrows() {
        if u[(k, k)].abs() <= 1e-12 * scale {
            return Err(PowerFlowError::SingularJacobian { bus: bus_of(k) });
        }
    }
    lu.solve(f)
        .ok_or_else(|| PowerFlowError::SingularJacobian { bus: bus_of(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case::fixtures::*;

    /// Receiving angle of the lossless two-bus case by bisection on
    /// `P = V sin(-δ)/x` with `V = cos δ` from the zero-Q condition.
    fn two_bus_oracle(p: f64, x: f64) -> (f64, f64) {
        let g = |d: f64| d.cos() * d.sin() / x + p;
        let (mut lo, mut hi) = (-std::f64::consts::FRAC_PI_4, 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let d = 0.5 * (lo + hi);
        (d, d.cos())
    }

    #[test]
    fn two_bus_matches_closed_form() {
        let sol = solve_power_flow(&two_bus(), 1e-10, 20).unwrap();
        let (d, v) = two_bus_oracle(0.5, 0.1);
        assert!((sol.v_ang[1] - d).abs() < 1e-9);
        assert!((sol.v_mag[1] - v).abs() < 1e-9);
        assert!((sol.v_ang[1].to_degrees() + 2.87).abs() < 0.005);
        assert!((sol.v_mag[1] - 0.9987).abs() < 1e-4);
        assert_eq!(sol.v_ang[0], 0.0);
        assert!(sol.converged && sol.max_mismatch <= 1e-10);
    }

    #[test]
    fn flat_case_needs_no_iterations() {
        let mut case = two_bus();
        case.buses[1].p_load = 0.0;
        let sol = solve_power_flow(&case, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(sol.iterations, 0);
        assert_eq!(sol.v_mag, vec![1.0, 1.0]);
        assert_eq!(sol.v_ang, vec![0.0, 0.0]);
    }

    #[test]
    fn pv_bus_holds_setpoint() {
        let mut case = two_bus();
        case.buses[1].kind = BusKind::Pv;
        case.buses[1].v_mag = 1.02;
        let sol = solve_power_flow(&case, 1e-10, 20).unwrap();
        assert_eq!(sol.v_mag[1], 1.02);
        assert!(sol.v_ang[1] < 0.0);
    }

    #[test]
    fn overload_does_not_converge() {
        let mut case = two_bus();
        case.buses[1].p_load = 20.0;
        match solve_power_flow(&case, 1e-8, 15) {
            Err(PowerFlowError::NotConverged {
                iterations,
                history,
            }) => {
                assert_eq!(iterations, 15);
                assert_eq!(history.len(), 16);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn isolated_pq_bus_is_singular() {
        let mut case = two_bus();
        case.buses.push(bus(3, BusKind::Pq));
        case.buses[2].p_load = 0.1;
        match solve_power_flow(&case, 1e-8, 10) {
            Err(PowerFlowError::SingularJacobian { bus }) => assert_eq!(bus, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(matches!(
            solve_power_flow(&two_bus(), 0.0, 10),
            Err(PowerFlowError::Invalid(_))
        ));
    }
}
