//! Scale factors `b(t)` solving `b̈ + ω̃²(t) b = ω̃²(0)/b³`, `b(0) = 1`, `ḃ(0) = 0`.
//!
//! Sudden quenches have closed forms (oscillating, free and inverted final
//! frequency). Anything else goes through the adaptive integrator in
//! [`crate::ode`], written in the variables `s = ln b`, `u = ḃ/b` and `τ`,
//! which keeps exponentially growing solutions well conditioned.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::model::ModeSchedule;
use crate::ode::{self, Tolerances};
use crate::state::ModeState;
use crate::{Error, Result};

/// `b(t)` after a quench `ωᵢ → ω_f` with `ω_f > 0`.
pub fn quench_b(omega_i: f64, omega_f: f64, t: f64) -> Result<f64> {
    if !(omega_f > 0.0) {
        return Err(Error::QuenchFinalFrequency { omega_f });
    }
    Ok(ClosedForm::Quench { omega_i, omega_f }.eval(t).b)
}

/// `b(t)` after the frequency is switched off.
pub fn free_b(omega_i: f64, t: f64) -> f64 {
    ClosedForm::Free { omega_i }.eval(t).b
}

/// `b(t)` after a quench to the imaginary frequency `i·ω_f`.
pub fn inverted_b(omega_i: f64, omega_f: f64, t: f64) -> f64 {
    ClosedForm::Inverted { omega_i, omega_f }.eval(t).b
}

/// `b`, its first two derivatives and `τ = ∫₀ᵗ ds/b²` at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleSample {
    pub b: f64,
    pub bdot: f64,
    pub bddot: f64,
    pub tau: f64,
}

/// Closed-form scale factor for a sudden quench from `ω̃² = ωᵢ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// No change, `b ≡ 1`.
    Static { omega: f64 },
    /// Final frequency `ω_f > 0`.
    Quench { omega_i: f64, omega_f: f64 },
    /// Final frequency zero.
    Free { omega_i: f64 },
    /// Final frequency `i·ω_f`.
    Inverted { omega_i: f64, omega_f: f64 },
}

impl ClosedForm {
    /// Picks the closed form for `ω̃²: initial_sq → final_sq`.
    pub fn for_quench(initial_sq: f64, final_sq: f64) -> Result<Self> {
        if !(initial_sq > 0.0) || !initial_sq.is_finite() {
            return Err(Error::NonPositiveFrequency {
                what: "initial normal-mode frequency squared",
                value: initial_sq,
            });
        }
        if !final_sq.is_finite() {
            return Err(Error::InvalidSchedule("final frequency must be finite"));
        }
        let omega_i = libm::sqrt(initial_sq);
        Ok(if final_sq == initial_sq {
            ClosedForm::Static { omega: omega_i }
        } else if final_sq > 0.0 {
            ClosedForm::Quench {
                omega_i,
                omega_f: libm::sqrt(final_sq),
            }
        } else if final_sq == 0.0 {
            ClosedForm::Free { omega_i }
        } else {
            ClosedForm::Inverted {
                omega_i,
                omega_f: libm::sqrt(-final_sq),
            }
        })
    }

    pub fn omega_i(&self) -> f64 {
        match *self {
            ClosedForm::Static { omega } => omega,
            ClosedForm::Quench { omega_i, .. }
            | ClosedForm::Free { omega_i }
            | ClosedForm::Inverted { omega_i, .. } => omega_i,
        }
    }

    /// `ω̃²` for `t > 0`.
    pub fn final_sq(&self) -> f64 {
        match *self {
            ClosedForm::Static { omega } => omega * omega,
            ClosedForm::Quench { omega_f, .. } => omega_f * omega_f,
            ClosedForm::Free { .. } => 0.0,
            ClosedForm::Inverted { omega_f, .. } => -omega_f * omega_f,
        }
    }

    pub fn eval(&self, t: f64) -> ScaleSample {
        let wi = self.omega_i();
        if t == 0.0 {
            return ScaleSample {
                b: 1.0,
                bdot: 0.0,
                bddot: wi * wi - self.final_sq(),
                tau: 0.0,
            };
        }
        match *self {
            ClosedForm::Static { .. } => ScaleSample {
                b: 1.0,
                bdot: 0.0,
                bddot: 0.0,
                tau: t,
            },
            ClosedForm::Quench { omega_i, omega_f } => {
                let wf2 = omega_f * omega_f;
                let a = (wf2 - omega_i * omega_i) / (2.0 * wf2);
                let c = (wf2 + omega_i * omega_i) / (2.0 * wf2);
                let (sin2, cos2) = libm::sincos(2.0 * omega_f * t);
                let b = libm::sqrt(a * cos2 + c);
                let bdot = -a * omega_f * sin2 / b;
                let bddot = (-2.0 * a * wf2 * cos2 - bdot * bdot) / b;
                // tan(ωᵢτ) = (ωᵢ/ω_f) tan(ω_f t), unwrapped across branches.
                let phase = omega_f * t;
                let turns = libm::round(phase / PI);
                let (sr, cr) = libm::sincos(phase - turns * PI);
                let tau = (turns * PI + libm::atan2(omega_i * sr, omega_f * cr)) / omega_i;
                ScaleSample {
                    b,
                    bdot,
                    bddot,
                    tau,
                }
            }
            ClosedForm::Free { omega_i } => {
                let w2 = omega_i * omega_i;
                let b = libm::sqrt(1.0 + w2 * t * t);
                ScaleSample {
                    b,
                    bdot: w2 * t / b,
                    bddot: w2 / (b * b * b),
                    tau: libm::atan(omega_i * t) / omega_i,
                }
            }
            ClosedForm::Inverted { omega_i, omega_f } => {
                let w2 = omega_f * omega_f;
                let c = (w2 + omega_i * omega_i) / (2.0 * w2);
                let a = (w2 - omega_i * omega_i) / (2.0 * w2);
                let x = 2.0 * omega_f * t;
                let (sh, ch) = (libm::sinh(x), libm::cosh(x));
                let b = libm::sqrt(c * ch + a);
                let bdot = c * omega_f * sh / b;
                let bddot = (2.0 * c * w2 * ch - bdot * bdot) / b;
                let tau = libm::atan(omega_i / omega_f * libm::tanh(omega_f * t)) / omega_i;
                ScaleSample {
                    b,
                    bdot,
                    bddot,
                    tau,
                }
            }
        }
    }
}

/// One mode's scale factor sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ErmakovTrajectory {
    /// Normal-mode index, 1 or 2.
    pub mode: usize,
    /// `ω̃(0)`.
    pub omega0: f64,
    pub times: Vec<f64>,
    pub b: Vec<f64>,
    pub bdot: Vec<f64>,
    pub bddot: Vec<f64>,
    pub tau: Vec<f64>,
    /// `ω′ = ω̃(0)/b²`.
    pub omega_eff: Vec<f64>,
    /// `ω̃²` acting on the dynamics at each sample (the post-quench value at `t = 0`).
    pub omega_sq: Vec<f64>,
}

impl ErmakovTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `E₀ = ω̃(0)/2`.
    pub fn ground_energy(&self) -> f64 {
        0.5 * self.omega0
    }

    pub fn state(&self, k: usize) -> ModeState {
        ModeState {
            omega_eff: self.omega_eff[k],
            rate: self.bdot[k] / self.b[k],
            tau: self.tau[k],
            omega0: self.omega0,
        }
    }

    /// `b̈ + ω̃²b − ω̃²(0)/b³` at sample `k`.
    pub fn residual(&self, k: usize) -> f64 {
        let b = self.b[k];
        self.bddot[k] + self.omega_sq[k] * b - self.omega0 * self.omega0 / (b * b * b)
    }

    /// Largest `|residual|` over all samples.
    pub fn max_residual(&self) -> f64 {
        (0..self.len())
            .map(|k| self.residual(k).abs())
            .fold(0.0, f64::max)
    }

    fn with_capacity(mode: usize, omega0: f64, n: usize) -> Self {
        Self {
            mode,
            omega0,
            times: Vec::with_capacity(n),
            b: Vec::with_capacity(n),
            bdot: Vec::with_capacity(n),
            bddot: Vec::with_capacity(n),
            tau: Vec::with_capacity(n),
            omega_eff: Vec::with_capacity(n),
            omega_sq: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, t: f64, s: ScaleSample, omega_sq: f64) {
        self.times.push(t);
        self.b.push(s.b);
        self.bdot.push(s.bdot);
        self.bddot.push(s.bddot);
        self.tau.push(s.tau);
        self.omega_eff.push(self.omega0 / (s.b * s.b));
        self.omega_sq.push(omega_sq);
    }
}

/// Checks that `grid` starts at 0 and is finite and strictly increasing.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.first() != Some(&0.0) {
        return Err(Error::InvalidTimeGrid("time grid must start at t = 0"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidTimeGrid(
            "times must be finite and strictly increasing",
        ));
    }
    Ok(())
}

/// Evaluates a closed form on `grid`.
pub fn sample_closed_form(
    mode: usize,
    form: ClosedForm,
    grid: &[f64],
) -> Result<ErmakovTrajectory> {
    validate_grid(grid)?;
    let mut traj = ErmakovTrajectory::with_capacity(mode, form.omega_i(), grid.len());
    let w2 = form.final_sq();
    for &t in grid {
        traj.push(t, form.eval(t), w2);
    }
    Ok(traj)
}

/// Solves for one mode, using a closed form whenever the schedule is a
/// sudden quench.
pub fn solve_ermakov(
    mode: usize,
    schedule: &ModeSchedule,
    grid: &[f64],
) -> Result<ErmakovTrajectory> {
    match schedule {
        ModeSchedule::Quench {
            initial_sq,
            final_sq,
        } => sample_closed_form(mode, ClosedForm::for_quench(*initial_sq, *final_sq)?, grid),
        ModeSchedule::Table { .. } => {
            solve_ermakov_numeric(mode, schedule, grid, &Tolerances::default())
        }
    }
}

/// Solves for one mode with the integrator regardless of schedule kind.
pub fn solve_ermakov_numeric(
    mode: usize,
    schedule: &ModeSchedule,
    grid: &[f64],
    tol: &Tolerances,
) -> Result<ErmakovTrajectory> {
    solve_ermakov_fn(
        mode,
        schedule.initial_sq(),
        |t| schedule.omega_sq_after(t),
        schedule.breakpoints(),
        grid,
        tol,
    )
}

/// Integrates the Ermakov equation for an arbitrary `ω̃²(t)`.
///
/// `omega_sq(t)` is the frequency acting just after `t`; `omega0_sq` sets the
/// initial width. `breakpoints` lists times where `omega_sq` is not smooth.
pub fn solve_ermakov_fn<F>(
    mode: usize,
    omega0_sq: f64,
    omega_sq: F,
    breakpoints: &[f64],
    grid: &[f64],
    tol: &Tolerances,
) -> Result<ErmakovTrajectory>
where
    F: Fn(f64) -> f64,
{
    if !(omega0_sq > 0.0) || !omega0_sq.is_finite() {
        return Err(Error::NonPositiveFrequency {
            what: "initial normal-mode frequency squared",
            value: omega0_sq,
        });
    }
    validate_grid(grid)?;
    let rhs = |t: f64, y: &[f64; 3]| {
        let inv_b2 = libm::exp(-2.0 * y[0]);
        [
            y[1],
            -omega_sq(t) + omega0_sq * inv_b2 * inv_b2 - y[1] * y[1],
            inv_b2,
        ]
    };
    let states = ode::integrate(rhs, [0.0, 0.0, 0.0], grid, breakpoints, tol)?;

    let mut traj = ErmakovTrajectory::with_capacity(mode, libm::sqrt(omega0_sq), grid.len());
    for (&t, y) in grid.iter().zip(&states) {
        let b = libm::exp(y[0]);
        let w2 = omega_sq(t);
        let sample = ScaleSample {
            b,
            bdot: y[1] * b,
            bddot: -w2 * b + omega0_sq / (b * b * b),
            tau: y[2],
        };
        traj.push(t, sample, w2);
    }
    Ok(traj)
}
