//! Drive parameters realizing single-qubit gates with one LZSM period.

use std::f64::consts::PI;

use crate::chrw::ChrwSolution;
use crate::error::{Error, Result};
use crate::fidelity::{gate_error_unchecked, normalized_infidelity};
use crate::matrix::{targets, Unitary};
use crate::optimize::{bisect, nelder_mead2, newton2, NelderMeadOptions};
use crate::params::DriveParams;
use crate::propagator::{evolve_1q, idle_1q};

/// Resolution of the exact propagator used for calibration and verification.
pub const CALIBRATION_STEPS: usize = 4096;
const FAMILY_GRID_STEP: f64 = 0.005;
const FAMILY_A_MAX: f64 = 4.0;
const IDENTITY_A_MAX: f64 = 12.0;
const ROOT_XTOL: f64 = 1e-10;
const CONDITION_TOL: f64 = 1e-8;
const CURVE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfPiGate {
    X,
    Y,
}

impl HalfPiGate {
    pub fn target(self) -> Unitary {
        match self {
            HalfPiGate::X => targets::x_half_pi(),
            HalfPiGate::Y => targets::y_half_pi(),
        }
    }
}

/// Which of the two condition families of a gate (see [`GateCondition::rabi_divisor`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionFamily {
    Primary,
    Secondary,
}

/// ω = Ω_R / d(k) together with θ̃ = φ(l).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GateCondition {
    pub gate: HalfPiGate,
    pub family: ConditionFamily,
    pub k: u32,
    pub l: u32,
}

impl GateCondition {
    pub fn new(gate: HalfPiGate, family: ConditionFamily, k: u32, l: u32) -> Self {
        Self { gate, family, k, l }
    }

    pub fn y() -> Self {
        Self::new(HalfPiGate::Y, ConditionFamily::Primary, 0, 0)
    }

    pub fn x() -> Self {
        Self::new(HalfPiGate::X, ConditionFamily::Primary, 0, 0)
    }

    pub fn rabi_divisor(&self) -> f64 {
        let k = 2.0 * self.k as f64;
        match (self.gate, self.family) {
            (HalfPiGate::Y, ConditionFamily::Primary) => k + 0.75,
            (HalfPiGate::Y, ConditionFamily::Secondary) => k + 1.25,
            (HalfPiGate::X, ConditionFamily::Primary) => k + 0.5,
            (HalfPiGate::X, ConditionFamily::Secondary) => k + 1.5,
        }
    }

    pub fn theta_tilde_target(&self) -> f64 {
        let l = 2.0 * self.l as f64;
        PI * match (self.gate, self.family) {
            (HalfPiGate::Y, ConditionFamily::Primary) => l + 0.5,
            (HalfPiGate::Y, ConditionFamily::Secondary) => l + 1.5,
            (HalfPiGate::X, ConditionFamily::Primary) => l + 0.25,
            (HalfPiGate::X, ConditionFamily::Secondary) => l + 1.25,
        }
    }

    fn residuals(&self, delta: f64, p: [f64; 2]) -> Result<[f64; 2]> {
        let params = DriveParams::new(delta, p[0], p[1])?;
        let s = ChrwSolution::solve(&params)?;
        Ok([
            p[1] - s.omega_r / self.rabi_divisor(),
            s.theta_tilde - self.theta_tilde_target(),
        ])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateConditionResult {
    pub amplitude: f64,
    pub omega: f64,
    pub branch_indices: (u32, u32),
    pub residuals: [f64; 2],
}

/// Minimum of the exact gate error near the analytic point; `error` is the gate error there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CalibratedPoint {
    pub amplitude: f64,
    pub omega: f64,
    pub error: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateSolution {
    pub analytic: GateConditionResult,
    pub calibrated: CalibratedPoint,
}

impl GateSolution {
    pub fn amplitude(&self) -> f64 {
        self.calibrated.amplitude
    }

    pub fn omega(&self) -> f64 {
        self.calibrated.omega
    }
}

/// Solves the CHRW gate condition with gap `delta`, returning the solution with the largest ω.
pub(crate) fn solve_condition_with_delta(cond: GateCondition, delta: f64) -> Result<GateConditionResult> {
    let (na, nw) = (60, 60);
    let (a_max, w_min, w_max) = (6.0 * delta, 0.1 * delta, 6.0 * delta);
    let mut grid = vec![vec![f64::NAN; nw]; na];
    for (i, row) in grid.iter_mut().enumerate() {
        let a = a_max * (i + 1) as f64 / na as f64;
        for (jw, cell) in row.iter_mut().enumerate() {
            let w = w_min + (w_max - w_min) * jw as f64 / (nw - 1) as f64;
            if let Ok(r) = cond.residuals(delta, [a, w]) {
                *cell = (r[0] / delta).hypot(r[1]);
            }
        }
    }
    let mut found: Vec<GateConditionResult> = Vec::new();
    for i in 0..na {
        for jw in 0..nw {
            let v = grid[i][jw];
            if !(v < 0.5) {
                continue;
            }
            let is_min = (i.saturating_sub(1)..=(i + 1).min(na - 1))
                .flat_map(|ii| (jw.saturating_sub(1)..=(jw + 1).min(nw - 1)).map(move |jj| (ii, jj)))
                .all(|(ii, jj)| !(grid[ii][jj] < v));
            if !is_min {
                continue;
            }
            let seed = [
                a_max * (i + 1) as f64 / na as f64,
                w_min + (w_max - w_min) * jw as f64 / (nw - 1) as f64,
            ];
            let Ok((x, r)) = newton2(|p| cond.residuals(delta, p), seed, 1e-12, 60) else {
                continue;
            };
            if x[0] <= 0.0 || x[1] <= 0.0 || r[0].abs().max(r[1].abs()) > CONDITION_TOL {
                continue;
            }
            if found
                .iter()
                .all(|f| (f.amplitude - x[0]).abs() + (f.omega - x[1]).abs() > 1e-6)
            {
                found.push(GateConditionResult {
                    amplitude: x[0],
                    omega: x[1],
                    branch_indices: (cond.k, cond.l),
                    residuals: r,
                });
            }
        }
    }
    found
        .into_iter()
        .max_by(|a, b| a.omega.total_cmp(&b.omega))
        .ok_or_else(|| Error::Numerical(format!("no solution of the gate condition {cond:?}")))
}

/// Solves a CHRW gate condition family in units of Δ.
pub fn solve_condition(cond: GateCondition) -> Result<GateConditionResult> {
    solve_condition_with_delta(cond, 1.0)
}

/// Exact one-period propagator followed by the fixed post-idle the gate needs.
fn exact_gate(gate: HalfPiGate, a: f64, w: f64, steps: usize) -> Result<Unitary> {
    let p = DriveParams::normalized(a, w)?;
    let u = evolve_1q(&p, 0.0, p.period(), steps)?;
    Ok(match gate {
        HalfPiGate::Y => u,
        HalfPiGate::X => idle_1q(1.0, PI) * u,
    })
}

/// Exact gate error of the bare period (Y) or the period followed by t_f = π/Δ (X).
pub fn exact_condition_error(gate: HalfPiGate, amplitude: f64, omega: f64, steps: usize) -> Result<f64> {
    Ok(gate_error_unchecked(
        &exact_gate(gate, amplitude, omega, steps)?,
        &gate.target(),
    ))
}

pub(crate) fn calibrate(objective: impl Fn([f64; 2]) -> f64, seed: [f64; 2]) -> CalibratedPoint {
    let opts = NelderMeadOptions {
        initial_step: [2e-3, 2e-3],
        xatol: 1e-10,
        fatol: 1e-17,
        max_evals: 1500,
    };
    let (x, v) = nelder_mead2(objective, seed, opts);
    CalibratedPoint {
        amplitude: x[0],
        omega: x[1],
        error: v,
    }
}

fn solve_exact(cond: GateCondition) -> Result<GateSolution> {
    let analytic = solve_condition(cond)?;
    let gate = cond.gate;
    let target = gate.target();
    let objective = |p: [f64; 2]| match exact_gate(gate, p[0], p[1], CALIBRATION_STEPS) {
        Ok(u) => normalized_infidelity(&u, &target),
        Err(_) => f64::INFINITY,
    };
    let mut calibrated = calibrate(objective, [analytic.amplitude, analytic.omega]);
    if !calibrated.error.is_finite() {
        return Err(Error::Numerical("calibration left the valid parameter range".into()));
    }
    calibrated.error = exact_condition_error(gate, calibrated.amplitude, calibrated.omega, CALIBRATION_STEPS)?;
    Ok(GateSolution { analytic, calibrated })
}

/// Y_π/2 from ω = (4/3)Ω_R, θ̃ = π/2, refined on the exact propagator.
pub fn solve_y_exact() -> Result<GateSolution> {
    solve_exact(GateCondition::y())
}

/// X_π/2 from ω = 2Ω_R, θ̃ = π/4 followed by an idle t_f = π/Δ, refined on the exact propagator.
pub fn solve_x_exact() -> Result<GateSolution> {
    solve_exact(GateCondition::x())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P01Method {
    Chrw,
    /// exact propagator at the given steps per period
    Exact {
        steps_per_period: usize,
    },
}

fn p01_with(method: P01Method, a: f64, w: f64) -> Result<f64> {
    let p = DriveParams::normalized(a, w)?;
    match method {
        P01Method::Chrw => Ok(ChrwSolution::solve(&p)?.p01()),
        P01Method::Exact { steps_per_period } => Ok(evolve_1q(&p, 0.0, p.period(), steps_per_period)?.prob(1, 0)),
    }
}

fn grid_roots(f: impl Fn(f64) -> Result<f64>, a_max: f64, step: f64) -> Vec<f64> {
    let n = (a_max / step).round() as usize;
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..=n {
        let a = step * i as f64;
        let v = match f(a) {
            Ok(v) if v.is_finite() => v,
            _ => {
                prev = None;
                continue;
            }
        };
        if let Some((a0, v0)) = prev {
            if v0 != 0.0 && v0.signum() != v.signum() {
                if let Ok(r) = bisect(&f, a0, a, ROOT_XTOL) {
                    roots.push(r);
                }
            }
        }
        if v == 0.0 {
            roots.push(a);
        }
        prev = Some((a, v));
    }
    roots
}

/// All A ∈ (0, 4Δ] with P01(A, ω) = 1/2.
pub fn family_curve(omega: f64, method: P01Method) -> Result<Vec<f64>> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    Ok(grid_roots(
        |a| Ok(p01_with(method, a, omega)? - 0.5),
        FAMILY_A_MAX,
        FAMILY_GRID_STEP,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdleTimes {
    pub t_before: f64,
    pub t_after: f64,
    pub nu: f64,
    pub winding: (u32, u32),
}

impl IdleTimes {
    /// (τ₊, τ₋) in the single-qubit convention τ± = (t_f ± t_i)Δ/2.
    pub fn taus(&self, delta: f64) -> (f64, f64) {
        (
            0.5 * (self.t_after + self.t_before) * delta,
            0.5 * (self.t_after - self.t_before) * delta,
        )
    }
}

/// ν = atan2(sinα cosθ̃, cosα) and the sign of sinα sinθ̃.
pub(crate) fn nu_and_sign(sol: &ChrwSolution) -> (f64, f64) {
    let (sa, ca) = sol.alpha.sin_cos();
    let nu = (sa * sol.theta_tilde.cos()).atan2(ca);
    let s = sa * sol.theta_tilde.sin();
    (nu, if s >= 0.0 { 1.0 } else { -1.0 })
}

/// Solves τ₊ + ν = (2m+1)π and the gate's τ₋ condition; `winding = (n, k)` selects
/// τ₋ = τ₋⁽⁰⁾ + 2nπ and the k-th admissible τ₊ ≥ |τ₋|.
pub(crate) fn taus_for(gate: HalfPiGate, nu: f64, sign: f64, winding: (u32, u32)) -> (f64, f64) {
    let base = match (gate, sign > 0.0) {
        (HalfPiGate::Y, true) => 0.0,
        (HalfPiGate::Y, false) => PI,
        (HalfPiGate::X, true) => 0.5 * PI,
        (HalfPiGate::X, false) => 1.5 * PI,
    };
    let tau_minus = base + 2.0 * PI * winding.0 as f64;
    let first = PI - nu;
    let m0 = ((tau_minus - first) / (2.0 * PI) - 1e-12).ceil().max(0.0);
    let tau_plus = first + 2.0 * PI * (m0 + winding.1 as f64);
    (tau_plus, tau_minus)
}

/// Idle times completing a P01 = 1/2 pulse into the requested gate.
pub fn idle_times_for(gate: HalfPiGate, params: &DriveParams, winding: (u32, u32)) -> Result<IdleTimes> {
    let sol = ChrwSolution::solve(params)?;
    let off = (sol.p01() - 0.5).abs();
    if off > CURVE_TOL {
        return Err(Error::Precondition(format!("P01 differs from 1/2 by {off:.3e}")));
    }
    let (nu, sign) = nu_and_sign(&sol);
    let (tp, tm) = taus_for(gate, nu, sign, winding);
    let d = params.delta;
    Ok(IdleTimes {
        t_before: (tp - tm) / d,
        t_after: (tp + tm) / d,
        nu,
        winding,
    })
}

/// Exact idle · period · idle propagator.
pub fn exact_schedule(params: &DriveParams, idle: &IdleTimes, steps: usize) -> Result<Unitary> {
    let u = evolve_1q(params, 0.0, params.period(), steps)?;
    Ok(idle_1q(params.delta, idle.t_after) * u * idle_1q(params.delta, idle.t_before))
}

/// Smallest A ∈ (0, 12Δ] with Ω_R(A, ω) = (2k+1)ω, for which U(T) is the identity.
pub fn identity_curve(omega: f64, k: u32) -> Result<Option<f64>> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    let target = (2 * k + 1) as f64 * omega;
    let f = |a: f64| -> Result<f64> {
        let s = ChrwSolution::solve(&DriveParams::normalized(a, omega)?)?;
        Ok(s.omega_r - target)
    };
    Ok(grid_roots(f, IDENTITY_A_MAX, FAMILY_GRID_STEP).into_iter().next())
}
