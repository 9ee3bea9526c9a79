//! Closed-form counter-rotating hybridized rotating-wave (CHRW) propagator.

use std::f64::consts::PI;

use crate::bessel::{self, j};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Unitary, C64};
use crate::optimize::bisect;
use crate::params::DriveParams;

const SCAN_STEP: f64 = 0.05;

/// ξ solving A(1−ξ) = 2ΔJ₁(ξA/ω). Accepts Δ = 0, for which ξ = 1.
///
/// The root is located in x = ξA/ω as the first sign change of A − ωx − 2ΔJ₁(x) on (0, A/ω],
/// the branch that reduces to ω/(ω+Δ) as A → 0.
pub fn self_consistent_xi(delta: f64, amplitude: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) || !(amplitude >= 0.0) || !(delta >= 0.0) || !delta.is_finite() || !amplitude.is_finite() {
        return Err(Error::Domain(format!(
            "invalid drive (delta={delta}, A={amplitude}, omega={omega})"
        )));
    }
    if delta == 0.0 {
        return Ok(1.0);
    }
    if amplitude == 0.0 {
        return Ok(omega / (omega + delta));
    }
    let x_max = amplitude / omega;
    if x_max > bessel::MAX_ARG {
        return Err(Error::RootNotFound(format!(
            "A/omega = {x_max} beyond the supported Bessel range"
        )));
    }
    let g = |x: f64| -> Result<f64> { Ok(amplitude - omega * x - 2.0 * delta * bessel::bessel_j(1, x)?) };
    let n = (x_max / SCAN_STEP).ceil().max(1.0) as usize;
    let mut lo = 0.0;
    for k in 1..=n {
        let hi = if k == n { x_max } else { x_max * k as f64 / n as f64 };
        if g(hi)? <= 0.0 {
            let x = bisect(g, lo, hi, 1e-15 * x_max.max(1.0))?;
            let resid = g(x)?.abs();
            if resid > 1e-10 * delta {
                return Err(Error::Numerical(format!("xi residual {resid:.3e} above tolerance")));
            }
            return Ok(x / x_max);
        }
        lo = hi;
    }
    Err(Error::RootNotFound(format!(
        "self-consistency residual has no sign change at A={amplitude}, omega={omega}"
    )))
}

pub fn solve_xi(params: &DriveParams) -> Result<f64> {
    params.validate()?;
    self_consistent_xi(params.delta, params.amplitude, params.omega)
}

/// Derived CHRW quantities for one set of drive parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChrwSolution {
    pub params: DriveParams,
    pub xi: f64,
    /// Bessel argument ξA/ω
    pub a: f64,
    /// Δ̃ = ΔJ₀(a)
    pub delta_tilde: f64,
    /// Ã = A(1−ξ)
    pub a_tilde: f64,
    /// δ̃ = Δ̃ − ω
    pub delta_small_tilde: f64,
    /// θ = atan2(Ã, δ̃)
    pub theta: f64,
    pub omega_r: f64,
    /// α = πΩ_R/ω
    pub alpha: f64,
    /// θ̃ = θ − a
    pub theta_tilde: f64,
}

impl ChrwSolution {
    pub fn solve(params: &DriveParams) -> Result<Self> {
        let xi = solve_xi(params)?;
        Ok(Self::from_xi(params, xi))
    }

    pub(crate) fn from_xi(params: &DriveParams, xi: f64) -> Self {
        let DriveParams {
            delta,
            amplitude,
            omega,
        } = *params;
        let a = xi * amplitude / omega;
        let delta_tilde = delta * j(0, a);
        let a_tilde = amplitude * (1.0 - xi);
        let delta_small_tilde = delta_tilde - omega;
        let theta = a_tilde.atan2(delta_small_tilde);
        let omega_r = delta_small_tilde.hypot(a_tilde);
        let alpha = PI * omega_r / omega;
        Self {
            params: *params,
            xi,
            a,
            delta_tilde,
            a_tilde,
            delta_small_tilde,
            theta,
            omega_r,
            alpha,
            theta_tilde: theta - a,
        }
    }

    /// |A(1−ξ) − 2ΔJ₁(ξA/ω)|
    pub fn self_consistency_residual(&self) -> f64 {
        (self.a_tilde - 2.0 * self.params.delta * j(1, self.a)).abs()
    }

    /// Entries (m00, m01) with U(T) = −[[m00, m01], [−m01, m00*]].
    pub fn period_entries(&self) -> (C64, f64) {
        let (sa, ca) = self.alpha.sin_cos();
        let (st, ct) = self.theta_tilde.sin_cos();
        (C64::new(ca, sa * ct), sa * st)
    }

    pub fn u_period(&self) -> Unitary {
        let (m00, m01) = self.period_entries();
        let b = C64::new(m01, 0.0);
        Unitary::new_unchecked(ComplexMatrix::m2(-m00, -b, b, -m00.conj()))
    }

    pub fn p01(&self) -> f64 {
        (self.theta_tilde.sin() * self.alpha.sin()).powi(2)
    }
}

pub fn chrw_solution(params: &DriveParams) -> Result<ChrwSolution> {
    ChrwSolution::solve(params)
}

/// One-period CHRW propagator.
pub fn u_period(params: &DriveParams) -> Result<Unitary> {
    Ok(ChrwSolution::solve(params)?.u_period())
}

/// CHRW transition probability sin²θ̃ sin²α after one period.
pub fn p01(params: &DriveParams) -> Result<f64> {
    Ok(ChrwSolution::solve(params)?.p01())
}

/// Idle before the drive, one drive period, idle after.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSchedule {
    pub t_idle_before: f64,
    pub t_idle_after: f64,
    pub drive: DriveParams,
}

impl PulseSchedule {
    pub fn new(t_idle_before: f64, t_idle_after: f64, drive: DriveParams) -> Result<Self> {
        if !(t_idle_before >= 0.0 && t_idle_after >= 0.0) || !t_idle_before.is_finite() || !t_idle_after.is_finite() {
            return Err(Error::Domain(format!(
                "idle times must be non-negative, got ({t_idle_before}, {t_idle_after})"
            )));
        }
        drive.validate()?;
        Ok(Self {
            t_idle_before,
            t_idle_after,
            drive,
        })
    }

    /// τ₊ = (t_i + t_f)Δ/2
    pub fn tau_plus(&self) -> f64 {
        0.5 * (self.t_idle_before + self.t_idle_after) * self.drive.delta
    }

    /// τ₋ = (t_f − t_i)Δ/2
    pub fn tau_minus(&self) -> f64 {
        0.5 * (self.t_idle_after - self.t_idle_before) * self.drive.delta
    }

    pub fn total_time(&self) -> f64 {
        self.t_idle_before + self.drive.period() + self.t_idle_after
    }
}

/// [[−e^{iτ₊}m00, −e^{iτ₋}m01], [e^{−iτ₋}m01, −e^{−iτ₊}m00*]]
pub(crate) fn wrap_phases(m00: C64, m01: f64, tau_plus: f64, tau_minus: f64) -> Unitary {
    let pp = C64::from_polar(1.0, tau_plus);
    let pm = C64::from_polar(1.0, tau_minus);
    Unitary::new_unchecked(ComplexMatrix::m2(
        -pp * m00,
        -pm * m01,
        pm.conj() * m01,
        -pp.conj() * m00.conj(),
    ))
}

/// CHRW propagator for the full idle–drive–idle schedule.
pub fn u_schedule(schedule: &PulseSchedule) -> Result<Unitary> {
    let sol = ChrwSolution::solve(&schedule.drive)?;
    let (m00, m01) = sol.period_entries();
    Ok(wrap_phases(m00, m01, schedule.tau_plus(), schedule.tau_minus()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::idle_1q;

    fn dp(a: f64, w: f64) -> DriveParams {
        DriveParams::normalized(a, w).unwrap()
    }

    #[test]
    fn xi_limits() {
        assert_eq!(self_consistent_xi(0.0, 2.0, 1.0).unwrap(), 1.0);
        assert!((solve_xi(&dp(0.01, 2.0)).unwrap() - 2.0 / 3.0).abs() < 1e-3);
        assert!((solve_xi(&dp(0.0, 2.0)).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn xi_root_missing_at_low_frequency() {
        // J₁(A/ω) < 0 here and A − ωx − 2ΔJ₁(x) stays positive on (0, A/ω]
        let r = self_consistent_xi(1.0, 10.0, 2.0);
        assert!(matches!(r, Err(Error::RootNotFound(_))));
        assert!(matches!(
            self_consistent_xi(1.0, 60.0, 1.0),
            Err(Error::RootNotFound(_))
        ));
    }

    #[test]
    fn undriven_solution() {
        let s = chrw_solution(&dp(0.0, 2.0)).unwrap();
        assert!((s.omega_r - 1.0).abs() < 1e-15);
        assert_eq!(s.a_tilde, 0.0);
        assert!((s.theta - PI).abs() < 1e-15);
        let s = chrw_solution(&dp(0.0, 0.5)).unwrap();
        assert!(s.u_period().matrix().max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-14);
    }

    #[test]
    fn p01_matches_matrix_element() {
        for &(a, w) in &[(1.16, 2.0), (2.87, 2.07), (0.5, 3.0), (3.5, 1.9)] {
            let s = chrw_solution(&dp(a, w)).unwrap();
            assert!((s.p01() - s.u_period().prob(1, 0)).abs() < 1e-12);
            assert!(s.self_consistency_residual() < 1e-10);
            assert!((s.omega_r.powi(2) - s.delta_small_tilde.powi(2) - s.a_tilde.powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn schedule_equals_idle_sandwich() {
        let d = dp(1.2, 1.7);
        let sch = PulseSchedule::new(0.37, 1.91, d).unwrap();
        let u = u_schedule(&sch).unwrap();
        let v = idle_1q(1.0, 1.91) * u_period(&d).unwrap() * idle_1q(1.0, 0.37);
        assert!(u.matrix().max_abs_diff(v.matrix()) < 1e-14);
        let sch0 = PulseSchedule::new(0.0, 0.0, d).unwrap();
        assert!(
            u_schedule(&sch0)
                .unwrap()
                .matrix()
                .max_abs_diff(u_period(&d).unwrap().matrix())
                < 1e-15
        );
        assert!(PulseSchedule::new(-1.0, 0.0, d).is_err());
    }
}
