use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::network::{ClassicalSystem, FaultEnd, ReducedNetwork};
use crate::case::BusId;
use crate::error::TransientError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Unstable => "unstable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub t_clear: f64,
    pub t_end: f64,
    pub dt: f64,
    /// Relative-angle excursion, radians, beyond which a machine is out of step.
    pub threshold: f64,
    pub fault_end: FaultEnd,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            t_clear: 1.0,
            t_end: 10.0,
            dt: 1e-3,
            threshold: PI,
            fault_end: FaultEnd::To,
        }
    }
}

impl SimOptions {
    /// Step counts until clearing and until the end.
    fn steps(&self) -> Result<(usize, usize), TransientError> {
        if !(self.dt > 0.0) {
            return Err(TransientError::Invalid(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_clear > 0.0 && self.t_clear < self.t_end) {
            return Err(TransientError::Invalid(format!(
                "need 0 < t_clear < t_end, got t_clear = {} and t_end = {}",
                self.t_clear, self.t_end
            )));
        }
        if !(self.threshold > 0.0) {
            return Err(TransientError::Invalid(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        let whole = |t: f64, what: &str| {
            let k = (t / self.dt).round();
            if (k * self.dt - t).abs() > 1e-9 * t.max(1.0) {
                Err(TransientError::Invalid(format!(
                    "{what} = {t} is not a multiple of dt = {}",
                    self.dt
                )))
            } else {
                Ok(k as usize)
            }
        };
        Ok((whole(self.t_clear, "t_clear")?, whole(self.t_end, "t_end")?))
    }
}

/// Sampled swing curves; `delta[k][i]` is machine `i` at `times[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwingTrajectory {
    pub machine_buses: Vec<BusId>,
    pub reference: usize,
    pub t_clear: f64,
    pub times: Vec<f64>,
    pub delta: Vec<Vec<f64>>,
    pub omega: Vec<Vec<f64>>,
    pub verdict: Verdict,
    pub first_divergence_time: Option<f64>,
    /// Largest relative-angle excursion after clearing, radians.
    pub max_excursion: f64,
    pub islanded: Vec<BusId>,
}

impl SwingTrajectory {
    /// `δ_i − δ_ref` at sample `k`.
    pub fn relative(&self, k: usize) -> Vec<f64> {
        let r = self.delta[k][self.reference];
        self.delta[k].iter().map(|d| d - r).collect()
    }

    /// Plot-ready table: `t`, angles, speeds, relative angles.
    pub fn to_table(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("t");
        for prefix in ["delta", "omega", "rel"] {
            for b in &self.machine_buses {
                write!(out, ",{prefix}_{b}").unwrap();
            }
        }
        out.push('\n');
        for k in 0..self.times.len() {
            write!(out, "{:.4}", self.times[k]).unwrap();
            for v in self.delta[k]
                .iter()
                .chain(&self.omega[k])
                .chain(&self.relative(k))
            {
                write!(out, ",{v:.6}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Right-hand side of the swing equations for state `[δ..., Δω...]`.
///
/// `dδ_i/dt = Δω_i`, `dΔω_i/dt = (π f0 / H_i)(P_m,i − P_e,i − D_i Δω_i)`.
pub fn swing_rhs(sys: &ClassicalSystem, y: &DMatrix<Complex64>, state: &[f64], out: &mut [f64]) {
    let m = sys.machine_count();
    let (delta, omega) = state.split_at(m);
    let e: Vec<Complex64> = sys
        .e_mag
        .iter()
        .zip(delta)
        .map(|(&a, &d)| Complex64::from_polar(a, d))
        .collect();
    let pe = super::network::electrical_power(y, &e);
    for i in 0..m {
        let p = &sys.machines[i];
        out[i] = omega[i];
        out[m + i] = p.accel_gain() * (sys.pm[i] - pe[i] - p.damping * omega[i]);
    }
}

/// Classical fourth-order Runge–Kutta with reusable stage buffers.
pub struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    pub fn new(n: usize) -> Self {
        Self {
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            tmp: vec![0.0; n],
        }
    }

    /// Advances the autonomous system `x' = f(x)` by `h` in place.
    pub fn step(&mut self, f: impl Fn(&[f64], &mut [f64]), x: &mut [f64], h: f64) {
        let axpy = |out: &mut [f64], x: &[f64], k: &[f64], a: f64| {
            for ((o, xi), ki) in out.iter_mut().zip(x).zip(k) {
                *o = xi + a * ki;
            }
        };
        f(x, &mut self.k1);
        axpy(&mut self.tmp, x, &self.k1, 0.5 * h);
        f(&self.tmp, &mut self.k2);
        axpy(&mut self.tmp, x, &self.k2, 0.5 * h);
        f(&self.tmp, &mut self.k3);
        axpy(&mut self.tmp, x, &self.k3, h);
        f(&self.tmp, &mut self.k4);
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += h / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// Integrates from the pre-fault equilibrium through the fault-on and
/// post-clearing states of `net`.
///
/// With `record` unset only the verdict data are kept and the run stops at
/// the first divergence.
pub fn integrate(
    sys: &ClassicalSystem,
    net: &ReducedNetwork,
    opts: &SimOptions,
    record: bool,
) -> Result<SwingTrajectory, TransientError> {
    let (n_clear, n_end) = opts.steps()?;
    let m = sys.machine_count();
    let r = sys.reference;
    let rel0: Vec<f64> = sys.delta0.iter().map(|d| d - sys.delta0[r]).collect();

    let mut x: Vec<f64> = sys
        .delta0
        .iter()
        .copied()
        .chain(std::iter::repeat_n(0.0, m))
        .collect();
    let mut rk = Rk4::new(2 * m);
    let mut traj = SwingTrajectory {
        machine_buses: sys.machine_buses(),
        reference: r,
        t_clear: opts.t_clear,
        times: Vec::new(),
        delta: Vec::new(),
        omega: Vec::new(),
        verdict: Verdict::Stable,
        first_divergence_time: None,
        max_excursion: 0.0,
        islanded: net.islanded.clone(),
    };
    let push = |traj: &mut SwingTrajectory, t: f64, x: &[f64]| {
        traj.times.push(t);
        traj.delta.push(x[..m].to_vec());
        traj.omega.push(x[m..].to_vec());
    };
    if record {
        push(&mut traj, 0.0, &x);
    }
    for k in 0..n_end {
        let y = if k < n_clear {
            &net.fault_on
        } else {
            &net.post
        };
        rk.step(|s, out| swing_rhs(sys, y, s, out), &mut x, opts.dt);
        let t = (k + 1) as f64 * opts.dt;
        if record {
            push(&mut traj, t, &x);
        }
        if k + 1 > n_clear {
            let excursion = (0..m)
                .map(|i| (x[i] - x[r] - rel0[i]).abs())
                .fold(0.0, f64::max);
            if !excursion.is_finite() || excursion > traj.max_excursion {
                traj.max_excursion = if excursion.is_finite() {
                    excursion
                } else {
                    f64::INFINITY
                };
            }
            if traj.first_divergence_time.is_none() && !(excursion <= opts.threshold) {
                traj.first_divergence_time = Some(t);
                if !record {
                    break;
                }
            }
        }
    }
    if traj.first_divergence_time.is_some() || !traj.islanded.is_empty() {
        traj.verdict = Verdict::Unstable;
    }
    Ok(traj)
}

/// Re-judges a recorded trajectory against another threshold.
pub fn verdict(traj: &SwingTrajectory, threshold: f64) -> (Verdict, Option<f64>) {
    let r = traj.reference;
    let Some(first) = traj.delta.first() else {
        return (Verdict::Stable, None);
    };
    let rel0: Vec<f64> = first.iter().map(|d| d - first[r]).collect();
    for (k, &t) in traj.times.iter().enumerate() {
        if t <= traj.t_clear + 1e-12 {
            continue;
        }
        let d = &traj.delta[k];
        if (0..d.len()).any(|i| !((d[i] - d[r] - rel0[i]).abs() <= threshold)) {
            return (Verdict::Unstable, Some(t));
        }
    }
    if traj.islanded.is_empty() {
        (Verdict::Stable, None)
    } else {
        (Verdict::Unstable, None)
    }
}

/// Fault on the line joining `a` and `b`, cleared by removing it.
pub fn simulate_fault(
    sys: &ClassicalSystem,
    a: BusId,
    b: BusId,
    opts: &SimOptions,
) -> Result<SwingTrajectory, TransientError> {
    let net = sys.network_for(a, b, opts.fault_end)?;
    integrate(sys, &net, opts, true)
}

/// Verdict only, without keeping the trajectory.
pub fn fault_verdict(
    sys: &ClassicalSystem,
    a: BusId,
    b: BusId,
    opts: &SimOptions,
) -> Result<SwingTrajectory, TransientError> {
    let net = sys.network_for(a, b, opts.fault_end)?;
    integrate(sys, &net, opts, false)
}
