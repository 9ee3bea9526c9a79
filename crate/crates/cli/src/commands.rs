use crate::args::*;
use crate::output::{num, CsvWriter};
use crate::CliError;
use lzsm_core::approximants::{p01_dr, p01_magnus, report};
use lzsm_core::gates_1q::{
    exact_condition_error, exact_schedule, family_curve, identity_curve, idle_times_for, solve_x_exact, solve_y_exact,
    HalfPiGate, P01Method,
};
use lzsm_core::gates_2q::{
    bswap_family_with_winding, exact_bswap_error, exact_schedule_2q, population_trace, solve_bswap, u2q_period,
};
use lzsm_core::propagator::idle_2q;
use lzsm_core::rates::{ExactSettings, RateMode};
use lzsm_core::{
    evolve_1q, gate_error, p01, rates, targets, u_period, u_schedule, DriveParams, NoiseModel, PulseSchedule,
    TwoQubitDriveParams,
};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Evaluates every grid point in parallel and keeps grid order. Failed points become NaN rows;
/// the command fails only when no point succeeds.
fn sweep<F>(points: &[(f64, f64)], width: usize, f: F) -> Result<Vec<Vec<f64>>, CliError>
where
    F: Fn(f64, f64) -> lzsm_core::Result<Vec<f64>> + Sync,
{
    let results: Vec<_> = points.par_iter().map(|&(a, w)| f(a, w)).collect();
    let failed = results.iter().filter(|r| r.is_err()).count();
    if failed == results.len() && failed > 0 {
        let e = results.into_iter().find_map(|r| r.err()).unwrap();
        return Err(e.into());
    }
    if failed > 0 {
        eprintln!(
            "note: {failed} of {} points failed and are written as NaN",
            results.len()
        );
    }
    Ok(results
        .into_iter()
        .map(|r| r.unwrap_or_else(|_| vec![f64::NAN; width]))
        .collect())
}

fn emit(common: &Common, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut out = CsvWriter::open(common.out.as_deref())?;
    out.header(header)?;
    for r in rows {
        out.row(&r)?;
    }
    out.finish()?;
    Ok(())
}

fn check_common(c: &Common) -> Result<(), CliError> {
    if !(c.delta > 0.0) || !c.delta.is_finite() {
        return Err(CliError::Usage(format!("--delta must be positive, got {}", c.delta)));
    }
    if c.steps_per_period < lzsm_core::propagator::MIN_STEPS_PER_PERIOD {
        return Err(CliError::Usage(format!(
            "--steps-per-period must be at least {}",
            lzsm_core::propagator::MIN_STEPS_PER_PERIOD
        )));
    }
    Ok(())
}

fn drive(d: f64, a: f64, w: f64) -> lzsm_core::Result<DriveParams> {
    DriveParams::new(d, a * d, w * d)
}

fn grid_rows(points: &[(f64, f64)], values: Vec<Vec<f64>>) -> impl Iterator<Item = Vec<String>> + '_ {
    points.iter().zip(values).map(|(&(a, w), v)| {
        let mut row = vec![num(a), num(w)];
        row.extend(v.into_iter().map(num));
        row
    })
}

pub fn scan_p01(args: &ScanP01Args) -> Result<(), CliError> {
    let c = &args.common;
    check_common(c)?;
    let points = args.grid.points()?;
    let d = c.delta;
    let steps = c.steps_per_period;
    if args.trace {
        if args.trace_samples == 0 {
            return Err(CliError::Usage("--trace-samples must be at least 1".into()));
        }
        let traces = sweep(&points, 0, |a, w| {
            let p = TwoQubitDriveParams::new(d, args.delta2 * d, a * d, w * d)?;
            Ok(population_trace(&p, args.trace_samples, steps)?
                .into_iter()
                .flat_map(|s| {
                    [
                        s.t_over_period,
                        s.p00_from_00,
                        s.p11_from_00,
                        s.p01_from_01,
                        s.p10_from_01,
                    ]
                })
                .collect())
        })?;
        let rows = points.iter().zip(traces).flat_map(|(&(a, w), flat)| {
            flat.chunks(5)
                .map(|s| {
                    let mut row = vec![num(a), num(w)];
                    row.extend(s.iter().map(|&x| num(x)));
                    row
                })
                .collect::<Vec<_>>()
        });
        return emit(
            c,
            &[
                "amplitude_over_delta",
                "omega_over_delta",
                "t_over_period",
                "p00_from_00",
                "p11_from_00",
                "p01_from_01",
                "p10_from_01",
            ],
            rows,
        );
    }
    let engine = args.engine;
    let values = sweep(&points, 1, |a, w| {
        let p = drive(d, a, w)?;
        let v = match engine {
            Engine::Exact => evolve_1q(&p, 0.0, p.period(), steps)?.prob(1, 0),
            Engine::Chrw => p01(&p)?,
            Engine::Dr => p01_dr(&p)?,
            Engine::Magnus => p01_magnus(&p)?,
        };
        Ok(vec![v])
    })?;
    emit(
        c,
        &["amplitude_over_delta", "omega_over_delta", "p01"],
        grid_rows(&points, values),
    )
}

/// Floor applied before the −log₁₀ transform.
const ERROR_FLOOR: f64 = 1e-16;

pub fn scan_error(args: &ScanErrorArgs) -> Result<(), CliError> {
    let c = &args.common;
    check_common(c)?;
    let points = args.grid.points()?;
    let (d, steps, target) = (c.delta, c.steps_per_period, args.target);
    let values = sweep(&points, 2, |a, w| {
        let e = match target {
            ErrorTarget::Y => exact_condition_error(HalfPiGate::Y, a, w, steps)?,
            ErrorTarget::X => exact_condition_error(HalfPiGate::X, a, w, steps)?,
            ErrorTarget::Bswap => exact_bswap_error(a, w, args.delta2, steps)?,
            ErrorTarget::ChrwVsExact => {
                let p = drive(d, a, w)?;
                gate_error(&u_period(&p)?, &evolve_1q(&p, 0.0, p.period(), steps)?)?
            }
        };
        Ok(vec![e, -e.abs().max(ERROR_FLOOR).log10()])
    })?;
    emit(
        c,
        &["amplitude_over_delta", "omega_over_delta", "error", "neg_log10_error"],
        grid_rows(&points, values),
    )
}

struct GateRow {
    amplitude: f64,
    omega: f64,
    t_i: f64,
    t_f: f64,
    predicted: f64,
    verified: f64,
}

fn half_pi(gate: GateKind) -> HalfPiGate {
    if gate == GateKind::X {
        HalfPiGate::X
    } else {
        HalfPiGate::Y
    }
}

fn solve_rows(args: &SolveGateArgs) -> lzsm_core::Result<Vec<GateRow>> {
    let steps = args.common.steps_per_period;
    let winding = args.winding.unwrap_or((0, 0));
    let norm = DriveParams::normalized;
    let two = |a, w| TwoQubitDriveParams::new(1.0, 1.0, a, w);
    let mut rows = Vec::new();
    match (args.gate, args.omega) {
        (GateKind::Y | GateKind::X, None) => {
            let gate = half_pi(args.gate);
            let sol = if gate == HalfPiGate::Y {
                solve_y_exact()?
            } else {
                solve_x_exact()?
            };
            let (a, w) = (sol.amplitude(), sol.omega());
            let t_f = if gate == HalfPiGate::X { PI } else { 0.0 };
            let chrw = PulseSchedule::new(0.0, t_f, norm(a, w)?)?;
            rows.push(GateRow {
                amplitude: a,
                omega: w,
                t_i: 0.0,
                t_f,
                predicted: gate_error(&u_schedule(&chrw)?, &gate.target())?,
                verified: exact_condition_error(gate, a, w, steps)?,
            });
        }
        (GateKind::Y | GateKind::X, Some(w)) => {
            let gate = half_pi(args.gate);
            for a in family_curve(w, P01Method::Chrw)? {
                let p = norm(a, w)?;
                let idle = idle_times_for(gate, &p, winding)?;
                let chrw = PulseSchedule::new(idle.t_before, idle.t_after, p)?;
                rows.push(GateRow {
                    amplitude: a,
                    omega: w,
                    t_i: idle.t_before,
                    t_f: idle.t_after,
                    predicted: gate_error(&u_schedule(&chrw)?, &gate.target())?,
                    verified: gate_error(&exact_schedule(&p, &idle, steps)?, &gate.target())?,
                });
            }
        }
        (GateKind::Identity, None) => {
            return Err(lzsm_core::Error::Domain("the identity gate needs --omega".into()));
        }
        (GateKind::Identity, Some(w)) => {
            if let Some(a) = identity_curve(w, args.branch)? {
                let p = norm(a, w)?;
                let id = targets::identity(2);
                rows.push(GateRow {
                    amplitude: a,
                    omega: w,
                    t_i: 0.0,
                    t_f: 0.0,
                    predicted: gate_error(&u_period(&p)?, &id)?,
                    verified: gate_error(&evolve_1q(&p, 0.0, p.period(), steps)?, &id)?,
                });
            }
        }
        (GateKind::Bswap, None) => {
            let sol = solve_bswap()?;
            let (a, w) = (sol.amplitude(), sol.omega());
            rows.push(GateRow {
                amplitude: a,
                omega: w,
                t_i: 0.0,
                t_f: 0.0,
                predicted: gate_error(&u2q_period(&two(a, w)?)?, &targets::sqrt_bswap())?,
                verified: exact_bswap_error(a, w, 1.0, steps)?,
            });
        }
        (GateKind::Bswap, Some(w)) => {
            for (a, idle) in bswap_family_with_winding(w, winding)? {
                let p = two(a, w)?;
                let chrw = idle_2q(1.0, 1.0, idle.t_after) * u2q_period(&p)? * idle_2q(1.0, 1.0, idle.t_before);
                rows.push(GateRow {
                    amplitude: a,
                    omega: w,
                    t_i: idle.t_before,
                    t_f: idle.t_after,
                    predicted: gate_error(&chrw, &targets::sqrt_bswap())?,
                    verified: gate_error(&exact_schedule_2q(&p, &idle, steps)?, &targets::sqrt_bswap())?,
                });
            }
        }
    }
    Ok(rows)
}

pub fn solve_gate(args: &SolveGateArgs) -> Result<(), CliError> {
    check_common(&args.common)?;
    if let Some(w) = args.omega {
        if !(w > 0.0) || !w.is_finite() {
            return Err(CliError::Usage(format!("--omega must be positive, got {w}")));
        }
    }
    let rows = solve_rows(args)?;
    if rows.is_empty() {
        eprintln!("note: no drive point realises the gate at this frequency");
    }
    let name = format!("{:?}", args.gate).to_lowercase();
    emit(
        &args.common,
        &[
            "gate",
            "amplitude_over_delta",
            "omega_over_delta",
            "t_i_times_delta",
            "t_f_times_delta",
            "predicted_error",
            "verified_error",
        ],
        rows.into_iter().map(|r| {
            vec![
                name.clone(),
                num(r.amplitude),
                num(r.omega),
                num(r.t_i),
                num(r.t_f),
                num(r.predicted),
                num(r.verified),
            ]
        }),
    )
}

pub fn rates_cmd(args: &RatesArgs) -> Result<(), CliError> {
    let c = &args.common;
    check_common(c)?;
    if !(args.t_bath >= 0.0) || !args.t_bath.is_finite() {
        return Err(CliError::Usage(format!(
            "--t-bath must be non-negative, got {}",
            args.t_bath
        )));
    }
    if args.q_max == 0 {
        return Err(CliError::Usage("--q-max must be at least 1".into()));
    }
    let points = args.grid.points()?;
    let d = c.delta;
    let model = NoiseModel::new(1.0, args.t_bath * d)?;
    let settings = ExactSettings {
        steps_per_period: c.steps_per_period,
        ..ExactSettings::with_q_max(args.q_max)
    };
    let form = args.form.into();
    let mode = args.mode;
    let width = if mode == RateModeArg::Both { 7 } else { 4 };
    let values = sweep(&points, width, |a, w| {
        let p = drive(d, a, w)?;
        let scaled = |r: lzsm_core::RateResult| [r.gamma1 / d, r.gamma_phi / d, r.gamma2 / d, r.floquet_gap / d];
        Ok(match mode {
            RateModeArg::Chrw => scaled(rates(&p, &model, RateMode::Chrw(form))?).to_vec(),
            RateModeArg::Exact => scaled(rates(&p, &model, RateMode::Exact(settings))?).to_vec(),
            RateModeArg::Both => {
                let mut v = scaled(rates(&p, &model, RateMode::Exact(settings))?).to_vec();
                v.extend_from_slice(&scaled(rates(&p, &model, RateMode::Chrw(form))?)[..3]);
                v
            }
        })
    })?;
    let mut header = vec![
        "amplitude_over_delta",
        "omega_over_delta",
        "gamma1_over_gamma",
        "gamma_phi_over_gamma",
        "gamma2_over_gamma",
        "floquet_gap_over_delta",
    ];
    if mode == RateModeArg::Both {
        header.extend([
            "gamma1_chrw_over_gamma",
            "gamma_phi_chrw_over_gamma",
            "gamma2_chrw_over_gamma",
        ]);
    }
    emit(c, &header, grid_rows(&points, values))
}

pub fn compare_approx(args: &CompareArgs) -> Result<(), CliError> {
    let c = &args.common;
    check_common(c)?;
    if args.omega.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return Err(CliError::Usage("every --omega value must be positive".into()));
    }
    if !(args.amplitude >= 0.0) || !args.amplitude.is_finite() {
        return Err(CliError::Usage("--amplitude must be non-negative".into()));
    }
    let d = c.delta;
    let reports: Vec<_> = args
        .omega
        .par_iter()
        .map(|&w| report(&drive(d, args.amplitude, w)?, c.steps_per_period))
        .collect::<lzsm_core::Result<_>>()?;
    emit(
        c,
        &[
            "omega_over_delta",
            "amplitude_over_delta",
            "p01_exact",
            "p01_chrw",
            "p01_dr",
            "p01_magnus",
        ],
        reports.into_iter().map(|r| {
            vec![
                num(r.omega / d),
                num(r.amplitude / d),
                num(r.p01_exact),
                num(r.p01_chrw),
                num(r.p01_dr),
                num(r.p01_magnus),
            ]
        }),
    )
}
