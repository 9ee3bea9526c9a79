//! Dense 2x2 and 4x4 complex matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

const UNITARITY_TOL: f64 = 1e-10;

/// Row-major square matrix of dimension 2 or 4, stored inline.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [C64; 16],
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, data: [ZERO; 16] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut m = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Domain(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, z) in row.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::Domain(format!("entry ({i},{j}) is not finite")));
                }
                m.data[i * dim + j] = *z;
            }
        }
        Ok(m)
    }

    pub(crate) fn m2(a: C64, b: C64, c: C64, d: C64) -> Self {
        let mut data = [ZERO; 16];
        data[0] = a;
        data[1] = b;
        data[2] = c;
        data[3] = d;
        Self { dim: 2, data }
    }

    pub(crate) fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = [ZERO; 16];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = f(i, j);
            }
        }
        Self { dim, data }
    }

    pub fn diag(entries: &[C64]) -> Result<Self> {
        let mut m = Self::zeros(entries.len())?;
        for (i, z) in entries.iter().enumerate() {
            m.data[i * m.dim + i] = *z;
        }
        Ok(m)
    }

    pub fn pauli_x() -> Self {
        Self::m2(ZERO, ONE, ONE, ZERO)
    }

    pub fn pauli_y() -> Self {
        Self::m2(ZERO, -I, I, ZERO)
    }

    pub fn pauli_z() -> Self {
        Self::m2(ONE, ZERO, ZERO, -ONE)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j) * s)
    }

    /// Kronecker product of two 2x2 matrices.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.dim != 2 || other.dim != 2 {
            return Err(Error::Domain("kron is defined for 2x2 factors only".into()));
        }
        Ok(Self::from_fn(4, |i, j| {
            self.get(i / 2, j / 2) * other.get(i % 2, j % 2)
        }))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim * self.dim;
        self.data[..n]
            .iter()
            .zip(&other.data[..n])
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// ‖M†M − I‖ in the max-entry norm.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint() * *self;
        p.max_abs_diff(&Self::identity(self.dim).unwrap())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::Domain(format!("matrix dimension {dim} not in {{2, 4}}")))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut data = [ZERO; 16];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Self { dim: n, data }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A matrix checked to be unitary to 1e-10 at construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary(ComplexMatrix);

impl Unitary {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::Numerical("non-finite entries".into()));
        }
        let defect = m.unitarity_defect();
        if defect > UNITARITY_TOL {
            return Err(Error::Numerical(format!(
                "matrix is not unitary: |U^dag U - I|_max = {defect:.3e}"
            )));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self(ComplexMatrix::identity(dim)?))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0.get(i, j)
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn phase(&self, phi: f64) -> Self {
        Self(self.0.scale(C64::from_polar(1.0, phi)))
    }

    /// |⟨i|U|j⟩|²
    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j).norm_sqr()
    }
}

impl Mul for Unitary {
    type Output = Unitary;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl From<Unitary> for ComplexMatrix {
    fn from(u: Unitary) -> Self {
        u.0
    }
}

/// Gate targets used throughout the crate.
pub mod targets {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    /// exp(−iπσ_y/4)
    pub fn y_half_pi() -> Unitary {
        let c = C64::new(FRAC_1_SQRT_2, 0.0);
        Unitary(ComplexMatrix::m2(c, -c, c, c))
    }

    /// exp(−iπσ_x/4)
    pub fn x_half_pi() -> Unitary {
        let c = C64::new(FRAC_1_SQRT_2, 0.0);
        let s = C64::new(0.0, -FRAC_1_SQRT_2);
        Unitary(ComplexMatrix::m2(c, s, s, c))
    }

    /// exp(−iφσ_z/2)
    pub fn z_rotation(phi: f64) -> Unitary {
        Unitary(ComplexMatrix::m2(
            C64::from_polar(1.0, -phi / 2.0),
            ZERO,
            ZERO,
            C64::from_polar(1.0, phi / 2.0),
        ))
    }

    pub fn identity(dim: usize) -> Unitary {
        Unitary(ComplexMatrix::identity(dim).expect("dim must be 2 or 4"))
    }

    /// √bSWAP acting on the {|00⟩, |11⟩} subspace.
    pub fn sqrt_bswap() -> Unitary {
        let c = C64::new(FRAC_1_SQRT_2, 0.0);
        Unitary(ComplexMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 0) | (3, 3) | (3, 0) => c,
            (0, 3) => -c,
            (1, 1) | (2, 2) => ONE,
            _ => ZERO,
        }))
    }
}
