//! Exact dynamics of two coupled harmonic oscillators whose frequencies and
//! coupling vary in time.
//!
//! The Hamiltonian
//!
//! ```text
//! H = (p1² + p2²)/2 + (ω1²(t) x1² + ω2²(t) x2²)/2 − J(t) x1 x2
//! ```
//!
//! is rotated by a fixed angle `α` into two independent normal modes. Each
//! mode evolves under its own time-dependent frequency and is solved exactly
//! through a scale factor `b(t)` obeying the Ermakov equation. From the
//! vacuum solution this crate derives, in closed form:
//!
//! * the Gaussian reduced density matrix of either oscillator and its purity
//!   ([`gaussian`]),
//! * its geometric spectrum, Rényi and von Neumann entropies and the Schmidt
//!   decomposition of the joint state ([`entanglement`]),
//! * the two-mode and single-mode Wigner functions, second moments and the
//!   uncertainty products `Ω`, `Ω̃` ([`wigner`]),
//! * the mixedness ratio and uncertainty `Γ` of the (ground, first-excited)
//!   sector ([`excited`]).
//!
//! Units are `ħ = 1` with unit masses throughout.
//!
//! The crate is `no_std` and only needs `alloc` for trajectories and
//! tabulated schedules. Float math goes through `libm`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::needless_range_loop))]

extern crate alloc;

pub mod entanglement;
pub mod ermakov;
mod error;
pub mod excited;
pub mod gaussian;
pub mod hermite;
pub mod model;
pub mod ode;
pub mod quadrature;
pub mod state;
pub mod wavefunction;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use state::{ModeState, Snapshot, StateParams};

/// Which oscillator a reduced quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    /// The first oscillator, coordinate `x1`.
    A,
    /// The second oscillator, coordinate `x2`.
    B,
}
