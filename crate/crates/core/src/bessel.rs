//! Integer-order Bessel functions of the first kind.

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 40;
pub const MAX_ARG: f64 = 50.0;
const SERIES_LIMIT: f64 = 12.0;

/// J_n(x) for 0 ≤ n ≤ 40 and |x| ≤ 50.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::Domain(format!("Bessel order {order} exceeds {MAX_ORDER}")));
    }
    if !x.is_finite() || x.abs() > MAX_ARG {
        return Err(Error::Domain(format!(
            "Bessel argument {x} outside [-{MAX_ARG}, {MAX_ARG}]"
        )));
    }
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        series(order, ax)
    } else {
        miller(order, ax)
    };
    Ok(if order % 2 == 1 && x < 0.0 { -v } else { v })
}

/// Convenience for call sites whose arguments are known to be in range.
pub(crate) fn j(order: u32, x: f64) -> f64 {
    bessel_j(order, x).expect("Bessel argument in range")
}

fn series(n: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= h / k as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let h2 = h * h;
    // Neumaier summation keeps the cancellation error near a few ulps of the largest term.
    let mut sum = term;
    let mut comp = 0.0;
    let mut k = 1.0;
    loop {
        term *= -h2 / (k * (k + n as f64));
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && k > h {
            break;
        }
        k += 1.0;
    }
    sum + comp
}

fn miller(n: u32, x: f64) -> f64 {
    let top = 2 * ((x.max(n as f64) as usize + 60) / 2);
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut result = 0.0;
    let mut norm = 0.0;
    for k in (1..=top).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{k-1} (unnormalized)
        let m = k - 1;
        if m == n as usize {
            result = cur;
        }
        if m % 2 == 0 && m > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            result *= 1e-250;
            norm *= 1e-250;
        }
    }
    norm += cur;
    result / norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// J_n(x) = (1/π)∫₀^π cos(nτ − x sin τ) dτ; the trapezoid rule is spectrally accurate here.
    fn integral(n: u32, x: f64) -> f64 {
        let m = 4000;
        let h = PI / m as f64;
        let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
        let mut s = 0.5 * (f(0.0) + f(PI));
        for i in 1..m {
            s += f(i as f64 * h);
        }
        s * h / PI
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(7, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[
            0.1, 0.5, 1.0, 2.4048, 5.0, 9.0, 11.9, 12.0, 12.1, 15.0, 20.0, 33.3, 50.0,
        ] {
            for n in [0u32, 1, 2, 3, 5, 10, 20, 32, 40] {
                let got = bessel_j(n, x).unwrap();
                let want = integral(n, x);
                assert!((got - want).abs() < 1e-12, "J_{n}({x}) = {got} vs {want}");
            }
        }
    }

    #[test]
    fn odd_orders_are_odd() {
        for n in 0..6 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((bessel_j(n, -3.7).unwrap() - s * bessel_j(n, 3.7).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(41, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, 50.5), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn recurrence() {
        for &x in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            for n in 1..=10 {
                let l = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
                let r = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
                assert!((l - r).abs() < 1e-10, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn jacobi_anger() {
        for &x in &[0.3, 1.0, 4.0, 7.5, 10.0] {
            for &a in &[0.0, 0.4, 1.3, 2.9] {
                let mut c = bessel_j(0, x).unwrap();
                let mut s = 0.0;
                for k in 1..=15u32 {
                    c += 2.0 * f64::powi(-1.0, k as i32) * bessel_j(2 * k, x).unwrap() * (2.0 * k as f64 * a).cos();
                    s += 2.0
                        * f64::powi(-1.0, (k - 1) as i32)
                        * bessel_j(2 * k - 1, x).unwrap()
                        * ((2 * k - 1) as f64 * a).cos();
                }
                assert!((c - (x * a.cos()).cos()).abs() < 1e-8);
                assert!((s - (x * a.cos()).sin()).abs() < 1e-8);
            }
        }
    }
}
