use lzsm_core::chrw::ChrwSolution;
use lzsm_core::rates::{ChrwRateForm, RateMode};
use lzsm_core::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn random_unitary(a: f64, b: f64, c: f64, d: f64) -> Unitary {
    let rz = |t: f64| *targets::z_rotation(t).matrix();
    let ry = |t: f64| {
        let (s, c) = (t / 2.0).sin_cos();
        ComplexMatrix::from_rows(&[
            &[C64::new(c, 0.0), C64::new(-s, 0.0)],
            &[C64::new(s, 0.0), C64::new(c, 0.0)],
        ])
        .unwrap()
    };
    let m = rz(a) * ry(b) * rz(c);
    Unitary::new(m.scale(C64::from_polar(1.0, d))).unwrap()
}

fn unitary() -> impl Strategy<Value = Unitary> {
    (-PI..PI, -PI..PI, -PI..PI, -PI..PI).prop_map(|(a, b, c, d)| random_unitary(a, b, c, d))
}

fn drive() -> impl Strategy<Value = DriveParams> {
    (0.0..4.0f64, 0.5..4.0f64).prop_map(|(a, w)| DriveParams::normalized(a, w).unwrap())
}

/// Parameters inside the region where the self-consistent ξ exists.
fn chrw_drive() -> impl Strategy<Value = DriveParams> {
    (0.0..4.0f64, 0.0..1.0f64).prop_map(|(a, s)| {
        let w = (a / 2.0).max(1.0) + s * 3.0;
        DriveParams::normalized(a, w).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gate_error_ignores_global_phase(u in unitary(), v in unitary(), phi in -PI..PI) {
        let shifted = Unitary::new(u.matrix().scale(C64::from_polar(1.0, phi))).unwrap();
        prop_assert!((gate_error(&shifted, &v).unwrap() - gate_error(&u, &v).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gate_error_is_symmetric(u in unitary(), v in unitary()) {
        prop_assert!((gate_error(&u, &v).unwrap() - gate_error(&v, &u).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gate_error_bounds(u in unitary(), v in unitary()) {
        let e = gate_error(&u, &v).unwrap();
        prop_assert!((-1e-12..=2.0 / 3.0 + 1e-12).contains(&e));
        prop_assert!(gate_error(&u, &u).unwrap().abs() < 1e-12);
    }

    #[test]
    fn propagator_is_unitary(p in drive()) {
        let u = evolve_1q(&p, 0.0, p.period(), 4096).unwrap();
        prop_assert!(u.matrix().unitarity_defect() <= 1e-9);
    }

    #[test]
    fn two_qubit_propagator_is_unitary(p in drive(), d2 in 0.8..1.2f64) {
        let q = TwoQubitDriveParams::new(1.0, d2, p.amplitude, p.omega).unwrap();
        prop_assert!(evolve_2q(&q, 0.0, q.period(), 1024).unwrap().matrix().unitarity_defect() <= 1e-9);
    }

    #[test]
    fn propagator_composes(p in drive(), f in 0.1..0.9f64) {
        let t = p.period();
        let whole = evolve_1q(&p, 0.0, t, 4096).unwrap();
        let split = evolve_1q(&p, f * t, t, 4096).unwrap() * evolve_1q(&p, 0.0, f * t, 4096).unwrap();
        prop_assert!(whole.matrix().max_abs_diff(split.matrix()) < 1e-8);
    }

    #[test]
    fn chrw_period_is_unitary_and_consistent(p in chrw_drive()) {
        let s = ChrwSolution::solve(&p).unwrap();
        let u = s.u_period();
        prop_assert!(u.matrix().unitarity_defect() <= 1e-12);
        prop_assert!((s.p01() - u.prob(1, 0)).abs() <= 1e-12);
        prop_assert!(s.self_consistency_residual() <= 1e-10);
    }

    #[test]
    fn chrw_accurate_in_valid_region(p in chrw_drive()) {
        let exact = evolve_1q(&p, 0.0, p.period(), 2048).unwrap();
        prop_assert!(gate_error(&u_period(&p).unwrap(), &exact).unwrap() <= 1e-3);
    }

    #[test]
    fn idle_windings_only_shift_phases(p in chrw_drive(), ti in 0.0..3.0f64, tf in 0.0..3.0f64, k in 0u32..3, m in 0u32..3) {
        let base = u_schedule(&PulseSchedule::new(ti, tf, p).unwrap()).unwrap();
        let wound = u_schedule(&PulseSchedule::new(ti + 2.0 * PI * k as f64, tf + 2.0 * PI * m as f64, p).unwrap()).unwrap();
        // each full idle turn multiplies the schedule by exp(iπσz) = −I
        let sign = if (k + m) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(wound.matrix().max_abs_diff(&base.matrix().scale(C64::new(sign, 0.0))) < 1e-12);
    }

    #[test]
    fn rates_linear_in_gamma(p in chrw_drive(), g in 0.1..5.0f64) {
        let one = NoiseModel::new(1.0, 0.1).unwrap();
        let scaled = NoiseModel::new(g, 0.1).unwrap();
        let mode = RateMode::Chrw(ChrwRateForm::FloquetModes);
        let (a, b) = (rates(&p, &one, mode).unwrap(), rates(&p, &scaled, mode).unwrap());
        prop_assert!((b.gamma1 - g * a.gamma1).abs() <= 1e-12 * a.gamma1.max(1e-300));
        prop_assert!((b.gamma_phi - g * a.gamma_phi).abs() <= 1e-12 * a.gamma_phi.max(1e-300) + 1e-300);
        prop_assert!((b.gamma2 - 0.5 * b.gamma1 - b.gamma_phi).abs() <= 1e-12 * b.gamma2);
    }

    #[test]
    fn noise_spectrum_even_and_positive(f in -10.0..10.0f64, t in 0.01..2.0f64) {
        let m = NoiseModel::new(1.0, t).unwrap();
        prop_assert_eq!(noise_spectrum(&m, f), noise_spectrum(&m, -f));
        prop_assert!(noise_spectrum(&m, f) > 0.0);
    }

    #[test]
    fn bessel_recurrence(n in 1u32..30, x in 0.05..50.0f64) {
        let l = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
        let r = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
        prop_assert!((l - r).abs() <= 1e-10 * (1.0 + r.abs()));
    }
}
