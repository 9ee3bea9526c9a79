use crate::error::{Error, Result};
use crate::matrix::Unitary;

/// Average-fidelity gate error E = 1 − [Tr(U†U) + |Tr(V†U)|²] / (d(d+1)).
pub fn gate_error(u: &Unitary, target: &Unitary) -> Result<f64> {
    if u.dim() != target.dim() {
        return Err(Error::Domain(format!(
            "dimension mismatch: {} vs {}",
            u.dim(),
            target.dim()
        )));
    }
    Ok(gate_error_unchecked(u, target))
}

pub(crate) fn gate_error_unchecked(u: &Unitary, target: &Unitary) -> f64 {
    let d = u.dim() as f64;
    let m = *u.matrix();
    let norm = (m.adjoint() * m).trace().re;
    let overlap = (target.matrix().adjoint() * m).trace().norm_sqr();
    1.0 - (norm + overlap) / (d * (d + 1.0))
}

/// 1 − |Tr(V†U)|² / (d·Tr(U†U)): the gate error rescaled by (d+1)/d, insensitive to the
/// rounding-level norm drift of long products. Used as the calibration objective.
pub fn normalized_infidelity(u: &Unitary, target: &Unitary) -> f64 {
    let d = u.dim() as f64;
    let m = *u.matrix();
    let norm = (m.adjoint() * m).trace().re;
    let overlap = (target.matrix().adjoint() * m).trace().norm_sqr();
    1.0 - overlap / (d * norm)
}
