//! Fourth-order Trotter–Suzuki propagation of H(t) = diag(E) − ε(t)/2 · Σx,
//! where Σx is σx (one qubit) or σx⊗σx (two qubits), both acting as a row reversal.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Unitary, C64};
use crate::params::{DriveParams, TwoQubitDriveParams};

pub const MIN_STEPS_PER_PERIOD: usize = 64;

/// Suzuki fractal weight p = 1/(4 − 4^{1/3}).
fn suzuki_p() -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / 3.0))
}

/// Diagonal energies of the one-qubit Hamiltonian −Δ/2 σz.
pub fn energies_1q(delta: f64) -> [f64; 2] {
    [-0.5 * delta, 0.5 * delta]
}

/// Diagonal energies of −Δ₁/2 σz⊗I − Δ₂/2 I⊗σz in the basis |00⟩, |01⟩, |10⟩, |11⟩.
pub fn energies_2q(delta1: f64, delta2: f64) -> [f64; 4] {
    [
        -0.5 * (delta1 + delta2),
        -0.5 * (delta1 - delta2),
        0.5 * (delta1 - delta2),
        0.5 * (delta1 + delta2),
    ]
}

/// Phases of the diagonal factors between successive kicks.
/// Adjacent half steps of the symmetric splitting are merged.
struct Stepper {
    dim: usize,
    /// [p/2, p, (1−3p)/2] in units of h
    phases: [[C64; 4]; 3],
    weights: [f64; 5],
    h: f64,
}

impl Stepper {
    fn new(energies: &[f64], h: f64) -> Self {
        let p = suzuki_p();
        let mut phases = [[C64::new(1.0, 0.0); 4]; 3];
        for (slot, w) in [0.5 * p, p, 0.5 * (1.0 - 3.0 * p)].into_iter().enumerate() {
            for (k, e) in energies.iter().enumerate() {
                phases[slot][k] = C64::from_polar(1.0, -e * w * h);
            }
        }
        Self {
            dim: energies.len(),
            phases,
            weights: [p, p, 1.0 - 4.0 * p, p, p],
            h,
        }
    }

    fn diag(&self, u: &mut ComplexMatrix, slot: usize) {
        for i in 0..self.dim {
            let ph = self.phases[slot][i];
            for j in 0..self.dim {
                u[(i, j)] *= ph;
            }
        }
    }

    /// U ← exp(i c Σx/2) U
    fn kick(u: &mut ComplexMatrix, c: f64) {
        let d = u.dim();
        let (s, co) = (0.5 * c).sin_cos();
        let is = C64::new(0.0, s);
        for i in 0..d / 2 {
            let k = d - 1 - i;
            for j in 0..d {
                let a = u[(i, j)];
                let b = u[(k, j)];
                u[(i, j)] = a * co + is * b;
                u[(k, j)] = b * co + is * a;
            }
        }
    }

    fn run(&self, u: &mut ComplexMatrix, t_start: f64, n_steps: usize, drive: &impl Fn(f64) -> f64) {
        // diagonal slot preceding each of the five kicks within a step
        const BEFORE: [usize; 5] = [1, 1, 2, 2, 1];
        self.diag(u, 0);
        for n in 0..n_steps {
            let mut tt = t_start + n as f64 * self.h;
            for (k, w) in self.weights.iter().enumerate() {
                if k > 0 || n > 0 {
                    self.diag(u, BEFORE[k]);
                }
                let hs = w * self.h;
                Self::kick(u, drive(tt + 0.5 * hs) * hs);
                tt += hs;
            }
        }
        self.diag(u, 0);
    }
}

/// Propagates H(t) = diag(energies) − ε(t)/2 · Σx from t_start to t_end in `n_steps` equal steps.
pub fn evolve_diag_drive(
    energies: &[f64],
    drive: impl Fn(f64) -> f64,
    t_start: f64,
    t_end: f64,
    n_steps: usize,
) -> Result<Unitary> {
    let mut u = ComplexMatrix::identity(energies.len())?;
    if !(t_end >= t_start) {
        return Err(Error::Domain(format!("t_end {t_end} precedes t_start {t_start}")));
    }
    if t_end == t_start {
        return Unitary::new(u);
    }
    if n_steps == 0 {
        return Err(Error::Domain("n_steps must be positive".into()));
    }
    let h = (t_end - t_start) / n_steps as f64;
    Stepper::new(energies, h).run(&mut u, t_start, n_steps, &drive);
    Unitary::new(u)
}

/// Number of equal steps used for [t_start, t_end] at the given resolution.
pub fn step_count(period: f64, t_start: f64, t_end: f64, steps_per_period: usize) -> usize {
    let n = ((t_end - t_start) / period * steps_per_period as f64 - 1e-9).ceil();
    (n.max(1.0)) as usize
}

fn check_steps(steps_per_period: usize) -> Result<()> {
    if steps_per_period < MIN_STEPS_PER_PERIOD {
        return Err(Error::Domain(format!(
            "steps_per_period {steps_per_period} below minimum {MIN_STEPS_PER_PERIOD}"
        )));
    }
    Ok(())
}

/// Time-ordered evolution of −Δ/2 σz − A sin(ωt)/2 σx over [t_start, t_end].
pub fn evolve_1q(params: &DriveParams, t_start: f64, t_end: f64, steps_per_period: usize) -> Result<Unitary> {
    params.validate()?;
    check_steps(steps_per_period)?;
    let n = step_count(params.period(), t_start, t_end, steps_per_period);
    let (a, w) = (params.amplitude, params.omega);
    evolve_diag_drive(&energies_1q(params.delta), |t| a * (w * t).sin(), t_start, t_end, n)
}

/// Evolution of the parametrically driven pair −Δ₁/2 σz⊗I − Δ₂/2 I⊗σz − A sin(ωt)/2 σx⊗σx.
pub fn evolve_2q(params: &TwoQubitDriveParams, t_start: f64, t_end: f64, steps_per_period: usize) -> Result<Unitary> {
    params.validate()?;
    check_steps(steps_per_period)?;
    let n = step_count(params.period(), t_start, t_end, steps_per_period);
    let (a, w) = (params.amplitude, params.omega);
    evolve_diag_drive(
        &energies_2q(params.delta1, params.delta2),
        |t| a * (w * t).sin(),
        t_start,
        t_end,
        n,
    )
}

/// Free evolution exp(iΔtσz/2) during an idle interval.
pub fn idle_1q(delta: f64, t: f64) -> Unitary {
    let e = energies_1q(delta);
    Unitary::new_unchecked(ComplexMatrix::from_fn(2, |i, j| {
        if i == j {
            C64::from_polar(1.0, -e[i] * t)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

pub fn idle_2q(delta1: f64, delta2: f64, t: f64) -> Unitary {
    let e = energies_2q(delta1, delta2);
    Unitary::new_unchecked(ComplexMatrix::from_fn(4, |i, j| {
        if i == j {
            C64::from_polar(1.0, -e[i] * t)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// Step-halving diagnostics for one propagation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceReport {
    /// max-entry distance between the n/2- and n-step results
    pub coarse_diff: f64,
    /// max-entry distance between the n- and 2n-step results
    pub fine_diff: f64,
    /// Richardson estimate of the error of the n-step result
    pub error_estimate: f64,
}

/// Below this the step-halving differences are dominated by rounding.
const ROUNDOFF_FLOOR: f64 = 1e-12;

/// Runs `evolve` at n/2, n and 2n steps and checks the differences shrink like h⁴.
pub fn richardson_check(
    energies: &[f64],
    drive: impl Fn(f64) -> f64 + Copy,
    t_start: f64,
    t_end: f64,
    n_steps: usize,
) -> Result<(Unitary, ConvergenceReport)> {
    let n_half = (n_steps / 2).max(1);
    let coarse = evolve_diag_drive(energies, drive, t_start, t_end, n_half)?;
    let mid = evolve_diag_drive(energies, drive, t_start, t_end, 2 * n_half)?;
    let fine = evolve_diag_drive(energies, drive, t_start, t_end, 4 * n_half)?;
    let coarse_diff = coarse.matrix().max_abs_diff(mid.matrix());
    let fine_diff = mid.matrix().max_abs_diff(fine.matrix());
    let report = ConvergenceReport {
        coarse_diff,
        fine_diff,
        error_estimate: fine_diff * 16.0 / 15.0,
    };
    if fine_diff > ROUNDOFF_FLOOR && coarse_diff < 8.0 * fine_diff {
        return Err(Error::Numerical(format!(
            "step halving not converging: differences {coarse_diff:.3e} -> {fine_diff:.3e}"
        )));
    }
    Ok((mid, report))
}

/// evolve_1q together with its step-halving diagnostics.
pub fn evolve_1q_checked(
    params: &DriveParams,
    t_start: f64,
    t_end: f64,
    steps_per_period: usize,
) -> Result<(Unitary, ConvergenceReport)> {
    params.validate()?;
    check_steps(steps_per_period)?;
    let n = step_count(params.period(), t_start, t_end, steps_per_period);
    let (a, w) = (params.amplitude, params.omega);
    richardson_check(
        &energies_1q(params.delta),
        move |t| a * (w * t).sin(),
        t_start,
        t_end,
        n,
    )
}
