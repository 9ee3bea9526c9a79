//! Small root finders and minimizers for two-parameter problems.

use crate::error::{Error, Result};

/// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs (or one is zero).
pub fn bisect(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64> {
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootNotFound(format!("no sign change on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton iteration for a 2×2 system with a central-difference Jacobian.
pub fn newton2(
    f: impl Fn([f64; 2]) -> Result<[f64; 2]>,
    seed: [f64; 2],
    tol: f64,
    max_iter: usize,
) -> Result<([f64; 2], [f64; 2])> {
    let mut x = seed;
    let mut fx = f(x)?;
    for _ in 0..max_iter {
        if fx[0].abs().max(fx[1].abs()) <= tol {
            return Ok((x, fx));
        }
        let mut jac = [[0.0; 2]; 2];
        for k in 0..2 {
            let h = 1e-7 * x[k].abs().max(1.0);
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let (fp, fm) = (f(xp)?, f(xm)?);
            for r in 0..2 {
                jac[r][k] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.abs() < 1e-300 || !det.is_finite() {
            return Err(Error::Numerical("singular Jacobian in Newton iteration".into()));
        }
        let dx = [
            (jac[1][1] * fx[0] - jac[0][1] * fx[1]) / det,
            (-jac[1][0] * fx[0] + jac[0][0] * fx[1]) / det,
        ];
        // damped step: halve until the residual decreases
        let norm = |v: [f64; 2]| v[0].hypot(v[1]);
        let mut lambda = 1.0;
        loop {
            let xn = [x[0] - lambda * dx[0], x[1] - lambda * dx[1]];
            match f(xn) {
                Ok(fnew) if norm(fnew) < norm(fx) || lambda < 1e-6 => {
                    x = xn;
                    fx = fnew;
                    break;
                }
                Err(e) if lambda < 1e-6 => return Err(e),
                _ => lambda *= 0.5,
            }
        }
    }
    if fx[0].abs().max(fx[1].abs()) <= tol {
        Ok((x, fx))
    } else {
        Err(Error::Numerical(format!(
            "Newton did not converge: residuals ({:.3e}, {:.3e})",
            fx[0], fx[1]
        )))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions {
    pub initial_step: [f64; 2],
    pub xatol: f64,
    pub fatol: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: [5e-3, 5e-3],
            xatol: 1e-10,
            fatol: 1e-16,
            max_evals: 2000,
        }
    }
}

/// Nelder–Mead minimization in two dimensions. Returns the best point and value.
pub fn nelder_mead2(f: impl Fn([f64; 2]) -> f64, seed: [f64; 2], opts: NelderMeadOptions) -> ([f64; 2], f64) {
    let mut pts = [
        seed,
        [seed[0] + opts.initial_step[0], seed[1]],
        [seed[0], seed[1] + opts.initial_step[1]],
    ];
    let mut vals = pts.map(&f);
    let mut evals = 3;
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    while evals < opts.max_evals {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = idx.map(|i| pts[i]);
        vals = idx.map(|i| vals[i]);
        let spread = (1..3)
            .map(|k| (pts[k][0] - pts[0][0]).abs().max((pts[k][1] - pts[0][1]).abs()))
            .fold(0.0, f64::max);
        if spread <= opts.xatol && (vals[2] - vals[0]).abs() <= opts.fatol {
            break;
        }
        let centroid = [(pts[0][0] + pts[1][0]) / 2.0, (pts[0][1] + pts[1][1]) / 2.0];
        let xr = lerp(centroid, pts[2], -1.0);
        let fr = f(xr);
        evals += 1;
        if fr < vals[0] {
            let xe = lerp(centroid, pts[2], -2.0);
            let fe = f(xe);
            evals += 1;
            if fe < fr {
                pts[2] = xe;
                vals[2] = fe;
            } else {
                pts[2] = xr;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = xr;
            vals[2] = fr;
        } else {
            let (xc, fc) = if fr < vals[2] {
                let xc = lerp(centroid, pts[2], -0.5);
                (xc, f(xc))
            } else {
                let xc = lerp(centroid, pts[2], 0.5);
                (xc, f(xc))
            };
            evals += 1;
            if fc < vals[2].min(fr) {
                pts[2] = xc;
                vals[2] = fc;
            } else {
                for k in 1..3 {
                    pts[k] = lerp(pts[0], pts[k], 0.5);
                    vals[k] = f(pts[k]);
                }
                evals += 2;
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    (pts[best], vals[best])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        assert!(matches!(
            bisect(|x| Ok(x * x + 1.0), 0.0, 1.0, 1e-12),
            Err(Error::RootNotFound(_))
        ));
    }

    #[test]
    fn newton_circle_line() {
        let (x, r) = newton2(
            |p| Ok([p[0] * p[0] + p[1] * p[1] - 1.0, p[0] - p[1]]),
            [1.0, 0.2],
            1e-14,
            50,
        )
        .unwrap();
        assert!((x[0] - 0.5f64.sqrt()).abs() < 1e-12 && r[0].abs() < 1e-14);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let f = |p: [f64; 2]| (1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2);
        let opts = NelderMeadOptions {
            initial_step: [0.1, 0.1],
            max_evals: 5000,
            ..Default::default()
        };
        let (x, v) = nelder_mead2(f, [-1.2, 1.0], opts);
        assert!((x[0] - 1.0).abs() < 1e-6 && (x[1] - 1.0).abs() < 1e-6, "{x:?} {v}");
    }
}
