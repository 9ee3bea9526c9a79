//! Relaxation and dephasing of a driven qubit coupled through σx to an ohmic bath.

use crate::bessel::j;
use crate::chrw::ChrwSolution;
use crate::error::{Error, Result};
use crate::floquet::{floquet_decompose, fourier_matrix_element, FloquetDecomposition, ModeLabel};
use crate::matrix::ComplexMatrix;
use crate::params::DriveParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub gamma: f64,
    pub t_bath: f64,
}

impl NoiseModel {
    pub fn new(gamma: f64, t_bath: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) || !(t_bath > 0.0 && t_bath.is_finite()) {
            return Err(Error::Domain(format!(
                "gamma and t_bath must be positive, got ({gamma}, {t_bath})"
            )));
        }
        Ok(Self { gamma, t_bath })
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            t_bath: 0.1,
        }
    }
}

/// S(Ω) = 2γΩ coth(Ω/2T_b), with S(0) = 4γT_b.
pub fn noise_spectrum(model: &NoiseModel, freq: f64) -> f64 {
    let x = freq / (2.0 * model.t_bath);
    if x.abs() < 1e-4 {
        4.0 * model.gamma * model.t_bath * (1.0 + x * x / 3.0)
    } else {
        2.0 * model.gamma * freq / x.tanh()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateResult {
    pub gamma1: f64,
    pub gamma_phi: f64,
    /// Γ₁/2 + Γ_φ
    pub gamma2: f64,
    pub floquet_gap: f64,
}

impl RateResult {
    pub fn new(gamma1: f64, gamma_phi: f64, floquet_gap: f64) -> Self {
        Self {
            gamma1,
            gamma_phi,
            gamma2: 0.5 * gamma1 + gamma_phi,
            floquet_gap,
        }
    }
}

/// Closed-form CHRW rate expressions.
///
/// `CarrierUnit` and `CarrierDouble` keep only the q = 0 relaxation channel, S(Δ_F)cos⁴(θ_F/2) with
/// prefactor 1 or 2, and dephasing [sinθ_F(J₀+J₂) + sin²(θ_F/2)(J₁+J₃)]² with prefactor 2S(ω) or S(ω).
/// `FloquetModes` sums both relaxation sidebands of the CHRW Floquet modes,
/// S(|Ω_R−ω|)sin⁴(θ/2) + S(Ω_R+ω)cos⁴(θ/2), with dephasing prefactor S(ω)/2.
/// Here θ = atan2(Ã, δ̃) and θ_F = −arctan(Ã/δ̃).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChrwRateForm {
    CarrierUnit,
    CarrierDouble,
    FloquetModes,
}

impl ChrwRateForm {
    pub const ALL: [ChrwRateForm; 3] = [
        ChrwRateForm::CarrierUnit,
        ChrwRateForm::CarrierDouble,
        ChrwRateForm::FloquetModes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChrwRateForm::CarrierUnit => "carrier-unit",
            ChrwRateForm::CarrierDouble => "carrier-double",
            ChrwRateForm::FloquetModes => "floquet-modes",
        }
    }
}

impl std::str::FromStr for ChrwRateForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown rate form '{s}'")))
    }
}

fn theta_f(sol: &ChrwSolution) -> f64 {
    if sol.delta_small_tilde == 0.0 {
        return std::f64::consts::FRAC_PI_2;
    }
    -(sol.a_tilde / sol.delta_small_tilde).atan()
}

fn dephasing_bracket(sol: &ChrwSolution) -> f64 {
    let th = theta_f(sol);
    let a = sol.a;
    th.sin() * (j(0, a) + j(2, a)) + (0.5 * th).sin().powi(2) * (j(1, a) + j(3, a))
}

pub fn gamma1_chrw_form(params: &DriveParams, model: &NoiseModel, form: ChrwRateForm) -> Result<f64> {
    let sol = ChrwSolution::solve(params)?;
    let gap = (sol.omega_r - params.omega).abs();
    Ok(match form {
        ChrwRateForm::CarrierUnit | ChrwRateForm::CarrierDouble => {
            let pref = if form == ChrwRateForm::CarrierUnit { 1.0 } else { 2.0 };
            pref * noise_spectrum(model, gap) * (0.5 * theta_f(&sol)).cos().powi(4)
        }
        ChrwRateForm::FloquetModes => {
            let h = 0.5 * sol.theta;
            noise_spectrum(model, gap) * h.sin().powi(4)
                + noise_spectrum(model, sol.omega_r + params.omega) * h.cos().powi(4)
        }
    })
}

pub fn gamma_phi_chrw_form(params: &DriveParams, model: &NoiseModel, form: ChrwRateForm) -> Result<f64> {
    let sol = ChrwSolution::solve(params)?;
    if params.amplitude == 0.0 {
        return Ok(0.0);
    }
    let pref = match form {
        ChrwRateForm::CarrierUnit => 2.0,
        ChrwRateForm::CarrierDouble => 1.0,
        ChrwRateForm::FloquetModes => 0.5,
    };
    Ok(pref * noise_spectrum(model, params.omega) * dephasing_bracket(&sol).powi(2))
}

/// CHRW relaxation rate with the default (arbitration-selected) form.
pub fn gamma1_chrw(params: &DriveParams, model: &NoiseModel) -> Result<f64> {
    gamma1_chrw_form(params, model, ChrwRateForm::FloquetModes)
}

pub fn gamma_phi_chrw(params: &DriveParams, model: &NoiseModel) -> Result<f64> {
    gamma_phi_chrw_form(params, model, ChrwRateForm::FloquetModes)
}

/// Resolution of the Floquet decomposition behind the exact rates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactSettings {
    pub steps_per_period: usize,
    pub n_t: usize,
    pub q_max: u32,
}

impl Default for ExactSettings {
    fn default() -> Self {
        Self {
            steps_per_period: 4096,
            n_t: 256,
            q_max: 32,
        }
    }
}

impl ExactSettings {
    pub fn with_q_max(q_max: u32) -> Self {
        let d = Self::default();
        Self {
            q_max,
            n_t: d.n_t.max(4 * q_max as usize),
            ..d
        }
    }
}

/// Σ_{|q|≤q_max} S(ε_b − ε_a + qω)|X_ab(q)|²
pub fn gamma1_from(dec: &FloquetDecomposition, model: &NoiseModel, q_max: u32) -> Result<f64> {
    check_q_max(q_max)?;
    let sx = ComplexMatrix::pauli_x();
    let w = dec.params.omega;
    let base = dec.quasienergy(ModeLabel::B) - dec.quasienergy(ModeLabel::A);
    let q = q_max as i32;
    let mut sum = 0.0;
    for k in -q..=q {
        let x = fourier_matrix_element(dec, &sx, ModeLabel::A, ModeLabel::B, k)?;
        sum += noise_spectrum(model, base + k as f64 * w) * x.norm_sqr();
    }
    Ok(sum)
}

/// Σ_{1≤q≤q_max} 2S(qω)|X_aa(q)|²
pub fn gamma_phi_from(dec: &FloquetDecomposition, model: &NoiseModel, q_max: u32) -> Result<f64> {
    check_q_max(q_max)?;
    let sx = ComplexMatrix::pauli_x();
    let w = dec.params.omega;
    let mut sum = 0.0;
    for k in 1..=q_max as i32 {
        let x = fourier_matrix_element(dec, &sx, ModeLabel::A, ModeLabel::A, k)?;
        sum += 2.0 * noise_spectrum(model, k as f64 * w) * x.norm_sqr();
    }
    Ok(sum)
}

fn check_q_max(q_max: u32) -> Result<()> {
    if q_max == 0 {
        return Err(Error::Domain("q_max must be at least 1".into()));
    }
    Ok(())
}

pub fn gamma1_exact(params: &DriveParams, model: &NoiseModel, q_max: u32) -> Result<f64> {
    let s = ExactSettings::with_q_max(q_max);
    gamma1_from(&floquet_decompose(params, s.steps_per_period, s.n_t)?, model, q_max)
}

pub fn gamma_phi_exact(params: &DriveParams, model: &NoiseModel, q_max: u32) -> Result<f64> {
    let s = ExactSettings::with_q_max(q_max);
    gamma_phi_from(&floquet_decompose(params, s.steps_per_period, s.n_t)?, model, q_max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RateMode {
    Chrw(ChrwRateForm),
    Exact(ExactSettings),
}

pub fn rates(params: &DriveParams, model: &NoiseModel, mode: RateMode) -> Result<RateResult> {
    match mode {
        RateMode::Chrw(form) => {
            let sol = ChrwSolution::solve(params)?;
            Ok(RateResult::new(
                gamma1_chrw_form(params, model, form)?,
                gamma_phi_chrw_form(params, model, form)?,
                (sol.omega_r - params.omega).abs(),
            ))
        }
        RateMode::Exact(s) => {
            let dec = floquet_decompose(params, s.steps_per_period, s.n_t)?;
            Ok(RateResult::new(
                gamma1_from(&dec, model, s.q_max)?,
                gamma_phi_from(&dec, model, s.q_max)?,
                dec.gap(),
            ))
        }
    }
}

/// Worst relative CHRW deviation of one form, in units of the 10 % (Γ₁) and 15 % (Γ_φ) bands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormScore {
    pub form: ChrwRateForm,
    pub max_dev_gamma1: f64,
    pub max_dev_gamma_phi: f64,
    pub score: f64,
}

/// Scores every CHRW form against exact rates and returns them best first.
pub fn arbitrate_forms(exact: &[(DriveParams, RateResult)], model: &NoiseModel) -> Result<Vec<FormScore>> {
    let rel = |c: f64, e: f64| {
        if e == 0.0 {
            if c == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (c - e).abs() / e
        }
    };
    let mut scores = Vec::new();
    for form in ChrwRateForm::ALL {
        let (mut d1, mut dp) = (0.0f64, 0.0f64);
        for (p, e) in exact {
            d1 = d1.max(rel(gamma1_chrw_form(p, model, form)?, e.gamma1));
            dp = dp.max(rel(gamma_phi_chrw_form(p, model, form)?, e.gamma_phi));
        }
        scores.push(FormScore {
            form,
            max_dev_gamma1: d1,
            max_dev_gamma_phi: dp,
            score: (d1 / 0.10).max(dp / 0.15),
        });
    }
    scores.sort_by(|a, b| a.score.total_cmp(&b.score));
    Ok(scores)
}
