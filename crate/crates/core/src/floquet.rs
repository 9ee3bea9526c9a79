//! Floquet decomposition of the driven single-qubit evolution.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Unitary, C64, ZERO};
use crate::params::DriveParams;
use crate::propagator::{self, energies_1q, evolve_diag_drive};

pub const MIN_TIME_POINTS: usize = 128;
const RAMP_POINTS: usize = 8;
const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModeLabel {
    /// mode continuously connected to |0⟩ at vanishing drive
    A,
    B,
}

impl ModeLabel {
    fn index(self) -> usize {
        match self {
            ModeLabel::A => 0,
            ModeLabel::B => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FloquetDecomposition {
    pub params: DriveParams,
    /// (ε_a, ε_b), each in (−ω/2, ω/2]
    pub quasienergies: [f64; 2],
    /// |u_α(t_j)⟩ at t_j = jT/n_t, j = 0..=n_t (the last point is t = T)
    pub modes: [Vec<[C64; 2]>; 2],
}

impl FloquetDecomposition {
    pub fn n_t(&self) -> usize {
        self.modes[0].len() - 1
    }

    pub fn period(&self) -> f64 {
        self.params.period()
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.period() / self.n_t() as f64
    }

    pub fn quasienergy(&self, label: ModeLabel) -> f64 {
        self.quasienergies[label.index()]
    }

    pub fn mode(&self, label: ModeLabel, j: usize) -> [C64; 2] {
        self.modes[label.index()][j]
    }

    /// Floquet gap |ε_b − ε_a|.
    pub fn gap(&self) -> f64 {
        (self.quasienergies[1] - self.quasienergies[0]).abs()
    }

    /// U(t_j) = Σ_α e^{−iε_α t_j} |u_α(t_j)⟩⟨u_α(0)|
    pub fn reconstruct(&self, j: usize) -> ComplexMatrix {
        let t = self.time(j);
        let mut m = ComplexMatrix::zeros(2).unwrap();
        for a in 0..2 {
            let ph = C64::from_polar(1.0, -self.quasienergies[a] * t);
            let (ut, u0) = (self.modes[a][j], self.modes[a][0]);
            for r in 0..2 {
                for c in 0..2 {
                    m[(r, c)] += ph * ut[r] * u0[c].conj();
                }
            }
        }
        m
    }
}

/// Folds a quasienergy into (−ω/2, ω/2].
pub fn fold(eps: f64, omega: f64) -> f64 {
    let mut e = eps - omega * ((eps + 0.5 * omega) / omega).floor();
    if e <= -0.5 * omega {
        e += omega;
    }
    if e > 0.5 * omega {
        e -= omega;
    }
    e
}

/// Eigen-decomposition of a 2×2 unitary: eigenvalues and orthonormal eigenvectors (columns).
pub(crate) fn eig2(u: &ComplexMatrix) -> ([C64; 2], [[C64; 2]; 2]) {
    let (a, b, c, d) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    let l0 = (tr + disc) * 0.5;
    let l1 = (tr - disc) * 0.5;
    let cand1 = [b, l0 - a];
    let cand2 = [l0 - d, c];
    let n1 = cand1[0].norm_sqr() + cand1[1].norm_sqr();
    let n2 = cand2[0].norm_sqr() + cand2[1].norm_sqr();
    if n1 < 1e-28 && n2 < 1e-28 {
        // scalar matrix
        return ([a, d], [[C64::new(1.0, 0.0), ZERO], [ZERO, C64::new(1.0, 0.0)]]);
    }
    let (cand, n) = if n1 >= n2 { (cand1, n1) } else { (cand2, n2) };
    let s = n.sqrt();
    let v0 = [cand[0] / s, cand[1] / s];
    // for a normal matrix the orthogonal complement is the other eigenvector
    let v1 = [-v0[1].conj(), v0[0].conj()];
    ([l0, l1], [v0, v1])
}

fn period_unitary(params: &DriveParams, amplitude: f64, n_steps: usize) -> Result<Unitary> {
    let w = params.omega;
    evolve_diag_drive(
        &energies_1q(params.delta),
        |t| amplitude * (w * t).sin(),
        0.0,
        params.period(),
        n_steps,
    )
}

fn overlap(u: &[C64; 2], v: &[C64; 2]) -> f64 {
    (u[0].conj() * v[0] + u[1].conj() * v[1]).norm()
}

/// Eigenvector of U(T) continuously connected to |0⟩, tracked along an amplitude ramp.
fn track_a_vector(params: &DriveParams, n_steps: usize) -> Result<[C64; 2]> {
    let mut prev = [C64::new(1.0, 0.0), ZERO];
    for k in 1..=RAMP_POINTS {
        let amp = params.amplitude * k as f64 / (RAMP_POINTS + 1) as f64;
        let u = period_unitary(params, amp, n_steps)?;
        let (lam, vecs) = eig2(u.matrix());
        if (lam[0] - lam[1]).norm() < DEGENERACY_TOL {
            continue;
        }
        prev = if overlap(&vecs[0], &prev) >= overlap(&vecs[1], &prev) {
            vecs[0]
        } else {
            vecs[1]
        };
    }
    Ok(prev)
}

/// Floquet modes and quasienergies sampled on `n_t` points of one period.
pub fn floquet_decompose(params: &DriveParams, steps_per_period: usize, n_t: usize) -> Result<FloquetDecomposition> {
    params.validate()?;
    if steps_per_period < propagator::MIN_STEPS_PER_PERIOD {
        return Err(Error::Domain(format!(
            "steps_per_period {steps_per_period} below minimum"
        )));
    }
    if n_t < MIN_TIME_POINTS {
        return Err(Error::Domain(format!("n_t {n_t} below minimum {MIN_TIME_POINTS}")));
    }
    let sub = steps_per_period.div_ceil(n_t);
    let dt = params.period() / n_t as f64;
    let (a, w) = (params.amplitude, params.omega);
    let e = energies_1q(params.delta);

    let mut us = Vec::with_capacity(n_t + 1);
    let mut acc = Unitary::identity(2)?;
    us.push(acc);
    for j in 0..n_t {
        let t0 = j as f64 * dt;
        let piece = evolve_diag_drive(&e, |t| a * (w * t).sin(), t0, t0 + dt, sub)?;
        acc = piece * acc;
        us.push(acc);
    }
    let u_t = us[n_t];
    let (lam, vecs) = eig2(u_t.matrix());
    if (lam[0] - lam[1]).norm() < DEGENERACY_TOL {
        return Err(Error::Degenerate(format!(
            "Floquet eigenphases coincide at A={}, omega={}",
            params.amplitude, params.omega
        )));
    }
    let a_ref = if params.amplitude == 0.0 {
        [C64::new(1.0, 0.0), ZERO]
    } else {
        track_a_vector(params, steps_per_period)?
    };
    let order = if overlap(&vecs[0], &a_ref) >= overlap(&vecs[1], &a_ref) {
        [0, 1]
    } else {
        [1, 0]
    };

    let period = params.period();
    let mut quasienergies = [0.0; 2];
    let mut modes: [Vec<[C64; 2]>; 2] = [Vec::with_capacity(n_t + 1), Vec::with_capacity(n_t + 1)];
    for (slot, &k) in order.iter().enumerate() {
        let eps_raw = -lam[k].arg() / period;
        let eps = fold(eps_raw, w);
        quasienergies[slot] = eps;
        let v = vecs[k];
        for (j, u) in us.iter().enumerate() {
            let t = j as f64 * dt;
            let ph = C64::from_polar(1.0, eps * t);
            let x = u.matrix().apply(&v);
            modes[slot].push([x[0] * ph, x[1] * ph]);
        }
    }
    Ok(FloquetDecomposition {
        params: *params,
        quasienergies,
        modes,
    })
}

/// (1/n_t) Σ_j ⟨u_bra(t_j)|op|u_ket(t_j)⟩ e^{iqωt_j}
pub fn fourier_matrix_element(
    dec: &FloquetDecomposition,
    op: &ComplexMatrix,
    bra: ModeLabel,
    ket: ModeLabel,
    q: i32,
) -> Result<C64> {
    let n_t = dec.n_t();
    if op.dim() != 2 {
        return Err(Error::Domain("operator must be 2x2".into()));
    }
    if q.unsigned_abs() as usize > n_t / 4 {
        return Err(Error::Domain(format!("|q| = {} exceeds n_t/4 = {}", q.abs(), n_t / 4)));
    }
    let w = dec.params.omega;
    let mut sum = ZERO;
    for j in 0..n_t {
        let b = dec.mode(bra, j);
        let k = op.apply(&dec.mode(ket, j));
        let elem = b[0].conj() * k[0] + b[1].conj() * k[1];
        sum += elem * C64::from_polar(1.0, q as f64 * w * dec.time(j));
    }
    Ok(sum / n_t as f64)
}
