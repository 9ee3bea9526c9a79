//! Strongly driven qubits under single-period sinusoidal (LZSM) pulses.
//!
//! Exact Trotter–Suzuki propagators, the closed-form CHRW approximation, gate-parameter
//! solvers for X_π/2, Y_π/2, identity and √bSWAP, Floquet relaxation and dephasing rates,
//! and rival approximants.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approximants;
pub mod bessel;
pub mod chrw;
pub mod error;
pub mod fidelity;
pub mod floquet;
pub mod gates_1q;
pub mod gates_2q;
pub mod matrix;
pub mod optimize;
pub mod params;
pub mod propagator;
pub mod rates;

pub use bessel::bessel_j;
pub use chrw::{chrw_solution, p01, solve_xi, u_period, u_schedule, ChrwSolution, PulseSchedule};
pub use error::{Error, Result};
pub use fidelity::gate_error;
pub use floquet::{floquet_decompose, fourier_matrix_element, FloquetDecomposition, ModeLabel};
pub use matrix::{targets, ComplexMatrix, Unitary, C64};
pub use params::{DriveParams, TwoQubitDriveParams};
pub use propagator::{evolve_1q, evolve_2q};
pub use rates::{noise_spectrum, rates, NoiseModel, RateResult};
