//! Two parametrically driven qubits: block decomposition, √bSWAP, gap mismatch.

use std::f64::consts::PI;

use crate::bessel::j;
use crate::chrw::ChrwSolution;
use crate::error::{Error, Result};
use crate::fidelity::{gate_error_unchecked, normalized_infidelity};
use crate::gates_1q::{
    calibrate, family_curve, nu_and_sign, solve_condition_with_delta, taus_for, CalibratedPoint, GateCondition,
    GateConditionResult, GateSolution, HalfPiGate, IdleTimes, P01Method, CALIBRATION_STEPS,
};
use crate::matrix::{targets, ComplexMatrix, Unitary, C64, ZERO};
use crate::params::{DriveParams, TwoQubitDriveParams};
use crate::propagator::{evolve_2q, idle_2q};

/// Basis order (|00⟩, |11⟩, |10⟩, |01⟩) that block-diagonalizes the Hamiltonian.
pub const BLOCK_ORDER: [usize; 4] = [0, 3, 2, 1];
const MAX_MISMATCH: f64 = 0.1;

/// S·M·S† with S the permutation to [`BLOCK_ORDER`].
pub fn to_block_basis(m: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(m.dim(), 4);
    ComplexMatrix::from_fn(4, |i, k| m.get(BLOCK_ORDER[i], BLOCK_ORDER[k]))
}

/// Inverse of [`to_block_basis`] (the permutation is an involution).
pub fn from_block_basis(m: &ComplexMatrix) -> ComplexMatrix {
    to_block_basis(m)
}

/// CHRW blocks with period propagators −[[a, b], [−b, a*]] on Δ₊ = Δ₁+Δ₂ and Δ₋ = Δ₂−Δ₁.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockChrw {
    pub plus_block: ChrwSolution,
    /// `None` when Δ₋ = 0, where the block is a pure drive with identity period evolution
    pub minus_block: Option<ChrwSolution>,
    /// Δ₂ < Δ₁: the minus block is evaluated at |Δ₋| and conjugated by σx
    pub minus_flipped: bool,
    pub a_plus: C64,
    pub b_plus: f64,
    pub a_minus: C64,
    pub b_minus: f64,
}

impl BlockChrw {
    pub fn solve(params: &TwoQubitDriveParams) -> Result<Self> {
        params.validate()?;
        let plus = DriveParams::new(params.delta1 + params.delta2, params.amplitude, params.omega)?;
        let plus_block = ChrwSolution::solve(&plus)?;
        let (a_plus, b_plus) = plus_block.period_entries();
        let dm = params.delta2 - params.delta1;
        let (minus_block, a_minus, b_minus) = if dm == 0.0 {
            (None, C64::new(-1.0, 0.0), 0.0)
        } else {
            let s = ChrwSolution::solve(&DriveParams::new(dm.abs(), params.amplitude, params.omega)?)?;
            let (a, b) = s.period_entries();
            if dm > 0.0 {
                (Some(s), a, b)
            } else {
                (Some(s), a.conj(), -b)
            }
        };
        Ok(Self {
            plus_block,
            minus_block,
            minus_flipped: dm < 0.0,
            a_plus,
            b_plus,
            a_minus,
            b_minus,
        })
    }

    fn block(a: C64, b: f64) -> [[C64; 2]; 2] {
        let b = C64::new(b, 0.0);
        [[-a, -b], [b, -a.conj()]]
    }

    pub fn plus_matrix(&self) -> [[C64; 2]; 2] {
        Self::block(self.a_plus, self.b_plus)
    }

    pub fn minus_matrix(&self) -> [[C64; 2]; 2] {
        Self::block(self.a_minus, self.b_minus)
    }

    /// The 4×4 period propagator in the computational basis.
    pub fn u_period(&self) -> Unitary {
        let (p, m) = (self.plus_matrix(), self.minus_matrix());
        let blocks = ComplexMatrix::from_fn(4, |i, k| match (i / 2, k / 2) {
            (0, 0) => p[i][k],
            (1, 1) => m[i - 2][k - 2],
            _ => ZERO,
        });
        Unitary::new_unchecked(from_block_basis(&blocks))
    }
}

/// CHRW period propagator of the two-qubit drive.
pub fn u2q_period(params: &TwoQubitDriveParams) -> Result<Unitary> {
    Ok(BlockChrw::solve(params)?.u_period())
}

/// √bSWAP conditions ω = (4/3)Ω₊R and θ̃₊ = π/2 for Δ₁ = Δ₂ = 1, refined on the exact 4×4 propagator.
pub fn solve_bswap() -> Result<GateSolution> {
    let analytic: GateConditionResult = solve_condition_with_delta(GateCondition::y(), 2.0)?;
    let calibrated = calibrate_bswap(1.0, [analytic.amplitude, analytic.omega])?;
    Ok(GateSolution { analytic, calibrated })
}

/// Exact gate error of one period against √bSWAP with Δ₁ = 1, Δ₂ = `delta2`.
pub fn exact_bswap_error(amplitude: f64, omega: f64, delta2: f64, steps: usize) -> Result<f64> {
    let p = TwoQubitDriveParams::new(1.0, delta2, amplitude, omega)?;
    let u = evolve_2q(&p, 0.0, p.period(), steps)?;
    Ok(gate_error_unchecked(&u, &targets::sqrt_bswap()))
}

/// Fine-tunes (A, ω) for √bSWAP with mismatched gaps, seeded at `seed`.
pub fn calibrate_bswap(delta2: f64, seed: [f64; 2]) -> Result<CalibratedPoint> {
    let target = targets::sqrt_bswap();
    let objective = |p: [f64; 2]| {
        TwoQubitDriveParams::new(1.0, delta2, p[0], p[1])
            .and_then(|q| evolve_2q(&q, 0.0, q.period(), CALIBRATION_STEPS))
            .map_or(f64::INFINITY, |u| normalized_infidelity(&u, &target))
    };
    let mut c = calibrate(objective, seed);
    if !c.error.is_finite() {
        return Err(Error::Numerical("calibration left the valid parameter range".into()));
    }
    c.error = exact_bswap_error(c.amplitude, c.omega, delta2, CALIBRATION_STEPS)?;
    Ok(c)
}

/// Amplitudes on the P₀₀→₁₁ = 1/2 curve for Δ₁ = Δ₂ = 1, each with the idle times that complete √bSWAP.
///
/// Idle times follow τ₊ = (t_i+t_f)Δ, τ₋ = (t_f−t_i)Δ.
pub fn bswap_family_and_idles(omega: f64) -> Result<Vec<(f64, IdleTimes)>> {
    bswap_family_with_winding(omega, (0, 0))
}

pub fn bswap_family_with_winding(omega: f64, winding: (u32, u32)) -> Result<Vec<(f64, IdleTimes)>> {
    // the {|00⟩,|11⟩} block is a qubit of gap 2Δ, i.e. the Δ = 1 problem at (A/2, ω/2) on a doubled clock
    let half = family_curve(0.5 * omega, P01Method::Chrw)?;
    let mut out = Vec::with_capacity(half.len());
    for a_half in half {
        let s = ChrwSolution::solve(&DriveParams::normalized(a_half, 0.5 * omega)?)?;
        let (nu, sign) = nu_and_sign(&s);
        let (tp, tm) = taus_for(HalfPiGate::Y, nu, sign, winding);
        let idle = IdleTimes {
            t_before: tp - tm,
            t_after: tp + tm,
            nu,
            winding,
        };
        out.push((
            2.0 * a_half,
            IdleTimes {
                t_before: 0.5 * idle.t_before,
                t_after: 0.5 * idle.t_after,
                ..idle
            },
        ));
    }
    Ok(out)
}

/// Exact idle · period · idle propagator of the two-qubit schedule.
pub fn exact_schedule_2q(params: &TwoQubitDriveParams, idle: &IdleTimes, steps: usize) -> Result<Unitary> {
    let u = evolve_2q(params, 0.0, params.period(), steps)?;
    let (d1, d2) = (params.delta1, params.delta2);
    Ok(idle_2q(d1, d2, idle.t_after) * u * idle_2q(d1, d2, idle.t_before))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MismatchError {
    /// ε²π²(Δ/ω)²J₀²(A/ω)sin²(A/ω)
    pub analytic: f64,
    /// |⟨01|U(T)|10⟩|² from the exact propagator
    pub exact: f64,
}

/// Leakage |10⟩ → |01⟩ caused by a relative gap mismatch ε = (Δ₂−Δ₁)/Δ₁ ≤ 0.1.
pub fn mismatch_error(params: &TwoQubitDriveParams, steps_per_period: usize) -> Result<MismatchError> {
    params.validate()?;
    let eps = params.mismatch();
    if eps.abs() > MAX_MISMATCH {
        return Err(Error::Precondition(format!(
            "gap mismatch {eps} exceeds {MAX_MISMATCH}"
        )));
    }
    let r = params.amplitude / params.omega;
    let analytic = (eps * PI * params.delta1 / params.omega * j(0, r) * r.sin()).powi(2);
    let exact = if eps == 0.0 {
        0.0
    } else {
        evolve_2q(params, 0.0, params.period(), steps_per_period)?.prob(1, 2)
    };
    Ok(MismatchError { analytic, exact })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PopulationSample {
    pub t_over_period: f64,
    pub p00_from_00: f64,
    pub p11_from_00: f64,
    pub p01_from_01: f64,
    pub p10_from_01: f64,
}

/// Populations during one drive period sampled at `n_samples + 1` equally spaced times.
pub fn population_trace(
    params: &TwoQubitDriveParams,
    n_samples: usize,
    steps_per_period: usize,
) -> Result<Vec<PopulationSample>> {
    params.validate()?;
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be positive".into()));
    }
    let period = params.period();
    let sub = steps_per_period.div_ceil(n_samples).max(1);
    let e = crate::propagator::energies_2q(params.delta1, params.delta2);
    let (a, w) = (params.amplitude, params.omega);
    let mut acc = Unitary::identity(4)?;
    let mut out = Vec::with_capacity(n_samples + 1);
    for s in 0..=n_samples {
        if s > 0 {
            let (t0, t1) = (
                (s - 1) as f64 * period / n_samples as f64,
                s as f64 * period / n_samples as f64,
            );
            acc = crate::propagator::evolve_diag_drive(&e, |t| a * (w * t).sin(), t0, t1, sub)? * acc;
        }
        out.push(PopulationSample {
            t_over_period: s as f64 / n_samples as f64,
            p00_from_00: acc.prob(0, 0),
            p11_from_00: acc.prob(3, 0),
            p01_from_01: acc.prob(1, 1),
            p10_from_01: acc.prob(2, 1),
        });
    }
    Ok(out)
}
