use crate::error::{Error, Result};

/// Single-qubit drive ε(t) = A sin(ωt) on a qubit with gap Δ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveParams {
    pub delta: f64,
    pub amplitude: f64,
    pub omega: f64,
}

impl DriveParams {
    pub fn new(delta: f64, amplitude: f64, omega: f64) -> Result<Self> {
        let p = Self {
            delta,
            amplitude,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters in units of Δ = 1.
    pub fn normalized(amplitude: f64, omega: f64) -> Result<Self> {
        Self::new(1.0, amplitude, omega)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(Error::Domain(format!("delta must be positive, got {}", self.delta)));
        }
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(Error::Domain(format!(
                "amplitude must be non-negative, got {}",
                self.amplitude
            )));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::Domain(format!("omega must be positive, got {}", self.omega)));
        }
        Ok(())
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitDriveParams {
    pub delta1: f64,
    pub delta2: f64,
    pub amplitude: f64,
    pub omega: f64,
}

impl TwoQubitDriveParams {
    pub fn new(delta1: f64, delta2: f64, amplitude: f64, omega: f64) -> Result<Self> {
        let p = Self {
            delta1,
            delta2,
            amplitude,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("delta1", self.delta1), ("delta2", self.delta2), ("omega", self.omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(Error::Domain(format!(
                "amplitude must be non-negative, got {}",
                self.amplitude
            )));
        }
        Ok(())
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// Relative gap mismatch (Δ₂ − Δ₁)/Δ₁.
    pub fn mismatch(&self) -> f64 {
        (self.delta2 - self.delta1) / self.delta1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DriveParams::new(1.0, 0.0, 1.0).is_ok());
        assert!(DriveParams::new(0.0, 1.0, 1.0).is_err());
        assert!(DriveParams::new(1.0, -1.0, 1.0).is_err());
        assert!(DriveParams::new(1.0, 1.0, 0.0).is_err());
        assert!(TwoQubitDriveParams::new(1.0, f64::NAN, 1.0, 1.0).is_err());
    }
}
