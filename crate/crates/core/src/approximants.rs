//! Rival approximations of the one-period transition probability.

use std::f64::consts::PI;

use crate::bessel::j;
use crate::chrw::ChrwSolution;
use crate::error::Result;
use crate::params::DriveParams;
use crate::propagator::evolve_1q;

pub const COMPARE_STEPS: usize = 4096;

/// Double-rotating-frame RWA: ξ = 1, ν̃ = ΔJ₁(A/ω) in place of Ã.
pub fn p01_dr(params: &DriveParams) -> Result<f64> {
    params.validate()?;
    let a = params.amplitude / params.omega;
    let dt = params.delta * j(0, a) - params.omega;
    let nu = params.delta * j(1, a);
    let theta = nu.atan2(dt);
    let alpha = PI * dt.hypot(nu) / params.omega;
    Ok(((theta - a).sin() * alpha.sin()).powi(2))
}

/// First-order Magnus: sin²(A/ω) sin²(πΔJ₀(A/ω)/ω).
pub fn p01_magnus(params: &DriveParams) -> Result<f64> {
    params.validate()?;
    let a = params.amplitude / params.omega;
    Ok((a.sin() * (PI * params.delta * j(0, a) / params.omega).sin()).powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproximationReport {
    pub omega: f64,
    pub amplitude: f64,
    pub p01_exact: f64,
    /// NaN where the self-consistent ξ has no root
    pub p01_chrw: f64,
    pub p01_dr: f64,
    pub p01_magnus: f64,
}

pub fn report(params: &DriveParams, steps_per_period: usize) -> Result<ApproximationReport> {
    let exact = evolve_1q(params, 0.0, params.period(), steps_per_period)?.prob(1, 0);
    let chrw = ChrwSolution::solve(params).map(|s| s.p01()).unwrap_or(f64::NAN);
    Ok(ApproximationReport {
        omega: params.omega,
        amplitude: params.amplitude,
        p01_exact: exact,
        p01_chrw: chrw,
        p01_dr: p01_dr(params)?,
        p01_magnus: p01_magnus(params)?,
    })
}

/// One report per input, exact column at 4096 steps per period.
pub fn compare(params_list: &[DriveParams]) -> Result<Vec<ApproximationReport>> {
    params_list.iter().map(|p| report(p, COMPARE_STEPS)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_drive() {
        let p = DriveParams::normalized(0.0, 1.7).unwrap();
        assert!(p01_dr(&p).unwrap() < 1e-30);
        assert_eq!(p01_magnus(&p).unwrap(), 0.0);
        let r = report(&p, 256).unwrap();
        assert!(r.p01_exact < 1e-28 && r.p01_chrw < 1e-28);
    }
}
