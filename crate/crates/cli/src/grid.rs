use crate::args::Grid;
use crate::CliError;

fn axis(name: &str, min: f64, max: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if !min.is_finite() || !max.is_finite() {
        return Err(CliError::Usage(format!("{name} bounds must be finite")));
    }
    if n == 0 {
        return Err(CliError::Usage(format!("{name}: steps must be at least 1")));
    }
    // a single-point axis sits at min and ignores max
    if n == 1 {
        return Ok(vec![min]);
    }
    if min > max {
        return Err(CliError::Usage(format!("{name}: min {min} exceeds max {max}")));
    }
    Ok((0..n).map(|i| min + (max - min) * i as f64 / (n - 1) as f64).collect())
}

impl Grid {
    /// (A, ω) pairs, amplitude-major.
    pub fn points(&self) -> Result<Vec<(f64, f64)>, CliError> {
        let a = axis("amplitude", self.a_min, self.a_max, self.a_steps)?;
        let w = axis("omega", self.w_min, self.w_max, self.w_steps)?;
        if a[0] < 0.0 {
            return Err(CliError::Usage("amplitude must be non-negative".into()));
        }
        if w[0] <= 0.0 {
            return Err(CliError::Usage("omega must be positive".into()));
        }
        Ok(a.iter().flat_map(|&a| w.iter().map(move |&w| (a, w))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: (f64, f64, usize), w: (f64, f64, usize)) -> Grid {
        Grid {
            a_min: a.0,
            a_max: a.1,
            a_steps: a.2,
            w_min: w.0,
            w_max: w.1,
            w_steps: w.2,
        }
    }

    #[test]
    fn row_major() {
        let p = grid((0.0, 1.0, 2), (1.0, 3.0, 3)).points().unwrap();
        assert_eq!(
            p,
            vec![(0.0, 1.0), (0.0, 2.0), (0.0, 3.0), (1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]
        );
    }

    #[test]
    fn invalid() {
        assert!(grid((1.0, 0.0, 2), (1.0, 2.0, 2)).points().is_err());
        assert!(grid((0.0, 1.0, 0), (1.0, 2.0, 2)).points().is_err());
        assert!(grid((0.0, 1.0, 2), (0.0, 2.0, 2)).points().is_err());
        assert!(grid((-1.0, 1.0, 2), (1.0, 2.0, 2)).points().is_err());
    }
}
