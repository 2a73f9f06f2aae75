//! Parameter schedules and the normal-mode rotation.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use crate::{Error, Result};

/// Rotation angle `α ∈ [−π/4, π/4]` that removes the `x1 x2` coupling.
///
/// At `ω1² = ω2²` the angle is `sign(J)·π/4` (and 0 when `J = 0`).
pub fn rotation_angle(omega1_sq: f64, omega2_sq: f64, coupling: f64) -> f64 {
    let delta = omega1_sq - omega2_sq;
    if coupling == 0.0 {
        0.0
    } else if delta == 0.0 {
        FRAC_PI_4.copysign(coupling)
    } else {
        0.5 * libm::atan(2.0 * coupling / delta)
    }
}

/// Squared normal-mode frequencies `(ω̃1², ω̃2²)`.
///
/// Mode 1 is the one continuously connected to `ω1²` as `J → 0`, with the
/// sign of `ω1² − ω2²` taken as `+1` at degeneracy. Negative values are
/// returned as-is and mark an inverted mode.
pub fn normal_mode_frequencies(omega1_sq: f64, omega2_sq: f64, coupling: f64) -> (f64, f64) {
    let delta = omega1_sq - omega2_sq;
    let sum = omega1_sq + omega2_sq;
    let sign = if delta < 0.0 { -1.0 } else { 1.0 };
    let root = libm::hypot(delta, 2.0 * coupling);
    // The smaller-magnitude root loses digits to cancellation; recover it
    // from the product ω̃1²ω̃2² = ω1²ω2² − J².
    let sum_sign = if sum < 0.0 { -1.0 } else { 1.0 };
    let big = 0.5 * (sum + sum_sign * root);
    let det = omega1_sq * omega2_sq - coupling * coupling;
    let small = if big != 0.0 { det / big } else { 0.0 };
    if sign == sum_sign {
        (big, small)
    } else {
        (small, big)
    }
}

/// Time dependence of one normal-mode frequency squared.
#[derive(Debug, Clone, PartialEq)]
pub enum ModeSchedule {
    /// `ω̃²(0) = initial_sq`, then `final_sq` for every `t > 0`.
    Quench { initial_sq: f64, final_sq: f64 },
    /// Piecewise-linear interpolation through `(times[k], omega_sq[k])`,
    /// held constant past the last sample.
    Table { times: Vec<f64>, omega_sq: Vec<f64> },
}

impl ModeSchedule {
    pub fn constant(omega_sq: f64) -> Self {
        ModeSchedule::Quench {
            initial_sq: omega_sq,
            final_sq: omega_sq,
        }
    }

    pub fn initial_sq(&self) -> f64 {
        match self {
            ModeSchedule::Quench { initial_sq, .. } => *initial_sq,
            ModeSchedule::Table { omega_sq, .. } => omega_sq[0],
        }
    }

    /// `ω̃²(t)`, with the post-quench value used for every `t > 0`.
    pub fn omega_sq(&self, t: f64) -> f64 {
        match self {
            ModeSchedule::Quench {
                initial_sq,
                final_sq,
            } => {
                if t > 0.0 {
                    *final_sq
                } else {
                    *initial_sq
                }
            }
            ModeSchedule::Table { times, omega_sq } => interpolate(times, omega_sq, t),
        }
    }

    /// `ω̃²` seen by the dynamics just after `t`; differs from
    /// [`omega_sq`](Self::omega_sq) only at the instant of a quench.
    pub fn omega_sq_after(&self, t: f64) -> f64 {
        match self {
            ModeSchedule::Quench { final_sq, .. } => *final_sq,
            ModeSchedule::Table { .. } => self.omega_sq(t),
        }
    }

    /// Times where `ω̃²(t)` has a kink or jump.
    pub fn breakpoints(&self) -> &[f64] {
        match self {
            ModeSchedule::Quench { .. } => &[],
            ModeSchedule::Table { times, .. } => times,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ModeSchedule::Quench {
                initial_sq,
                final_sq,
            } => {
                if !initial_sq.is_finite() || !final_sq.is_finite() {
                    return Err(Error::InvalidSchedule("frequencies must be finite"));
                }
            }
            ModeSchedule::Table { times, omega_sq } => {
                validate_table_times(times)?;
                if omega_sq.len() != times.len() {
                    return Err(Error::InvalidSchedule("sample columns differ in length"));
                }
                if omega_sq.iter().any(|w| !w.is_finite()) {
                    return Err(Error::InvalidSchedule("frequencies must be finite"));
                }
            }
        }
        if !(self.initial_sq() > 0.0) {
            return Err(Error::NonPositiveFrequency {
                what: "initial normal-mode frequency squared",
                value: self.initial_sq(),
            });
        }
        Ok(())
    }
}

fn validate_table_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidSchedule("sample table is empty"));
    }
    if times[0] != 0.0 {
        return Err(Error::InvalidSchedule("sample table must start at t = 0"));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidSchedule(
            "sample times must be finite and strictly increasing",
        ));
    }
    Ok(())
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    let k = times.partition_point(|&s| s <= t);
    if k == 0 {
        values[0]
    } else if k == times.len() {
        values[k - 1]
    } else {
        let (t0, t1) = (times[k - 1], times[k]);
        let w = (t - t0) / (t1 - t0);
        values[k - 1] + w * (values[k] - values[k - 1])
    }
}

/// Samples of the physical parameters `(ω1²(t), ω2²(t), J(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    pub times: Vec<f64>,
    pub omega1_sq: Vec<f64>,
    pub omega2_sq: Vec<f64>,
    pub coupling: Vec<f64>,
}

/// Physical or normal-mode description of a run.
#[derive(Debug, Clone, PartialEq)]
pub enum FrequencySchedule {
    /// Mode 1 released to a free particle, mode 2 quenched.
    Toy1 {
        alpha: f64,
        wtilde1_i: f64,
        wtilde2_i: f64,
        wtilde2_f: f64,
    },
    /// Mode 1 quenched to the imaginary frequency `i·wtilde1_f`, mode 2 quenched.
    Toy2 {
        alpha: f64,
        wtilde1_i: f64,
        wtilde1_f: f64,
        wtilde2_i: f64,
        wtilde2_f: f64,
    },
    /// Sudden change of both bare frequencies at fixed coupling `J`.
    Quench {
        omega1_i: f64,
        omega1_f: f64,
        omega2_i: f64,
        omega2_f: f64,
        coupling: f64,
    },
    /// Normal-mode input given directly.
    NormalModes {
        alpha: f64,
        mode1: ModeSchedule,
        mode2: ModeSchedule,
    },
    /// Tabulated bare parameters, which must keep `α` constant.
    Tabulated(SampleTable),
}

/// Fixed rotation angle plus the two normal-mode frequency schedules.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalModes {
    pub alpha: f64,
    pub mode1: ModeSchedule,
    pub mode2: ModeSchedule,
}

impl NormalModes {
    pub fn mode(&self, j: usize) -> &ModeSchedule {
        match j {
            1 => &self.mode1,
            2 => &self.mode2,
            _ => panic!("normal-mode index must be 1 or 2, got {j}"),
        }
    }
}

const RATIO_TOLERANCE: f64 = 1e-10;

fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveFrequency { what, value })
    }
}

fn finite(value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidSchedule("parameters must be finite"))
    }
}

fn sq(x: f64) -> f64 {
    x * x
}

fn alpha_in_range(alpha: f64) -> Result<f64> {
    if alpha.is_finite() && alpha.abs() <= FRAC_PI_4 + 1e-15 {
        Ok(alpha)
    } else {
        Err(Error::InvalidSchedule("alpha must lie in [-pi/4, pi/4]"))
    }
}

/// Validates a schedule and turns it into normal-mode form.
///
/// For a quench, `α` comes from the post-quench parameters and both epochs
/// are diagonalized with the same `J`.
pub fn build_model(schedule: &FrequencySchedule) -> Result<NormalModes> {
    let modes = match schedule {
        FrequencySchedule::Toy1 {
            alpha,
            wtilde1_i,
            wtilde2_i,
            wtilde2_f,
        } => {
            let w1 = positive("wtilde1_i", *wtilde1_i)?;
            let w2 = positive("wtilde2_i", *wtilde2_i)?;
            NormalModes {
                alpha: alpha_in_range(*alpha)?,
                mode1: ModeSchedule::Quench {
                    initial_sq: w1 * w1,
                    final_sq: 0.0,
                },
                mode2: ModeSchedule::Quench {
                    initial_sq: w2 * w2,
                    final_sq: sq(finite(*wtilde2_f)?),
                },
            }
        }
        FrequencySchedule::Toy2 {
            alpha,
            wtilde1_i,
            wtilde1_f,
            wtilde2_i,
            wtilde2_f,
        } => {
            let w1 = positive("wtilde1_i", *wtilde1_i)?;
            let w2 = positive("wtilde2_i", *wtilde2_i)?;
            NormalModes {
                alpha: alpha_in_range(*alpha)?,
                mode1: ModeSchedule::Quench {
                    initial_sq: w1 * w1,
                    final_sq: -sq(finite(*wtilde1_f)?),
                },
                mode2: ModeSchedule::Quench {
                    initial_sq: w2 * w2,
                    final_sq: sq(finite(*wtilde2_f)?),
                },
            }
        }
        FrequencySchedule::Quench {
            omega1_i,
            omega1_f,
            omega2_i,
            omega2_f,
            coupling,
        } => {
            let w1i = positive("omega1_i", *omega1_i)?;
            let w2i = positive("omega2_i", *omega2_i)?;
            let (w1f, w2f, j) = (finite(*omega1_f)?, finite(*omega2_f)?, finite(*coupling)?);
            let (i1, i2) = normal_mode_frequencies(w1i * w1i, w2i * w2i, j);
            let (f1, f2) = normal_mode_frequencies(w1f * w1f, w2f * w2f, j);
            NormalModes {
                alpha: rotation_angle(w1f * w1f, w2f * w2f, j),
                mode1: ModeSchedule::Quench {
                    initial_sq: i1,
                    final_sq: f1,
                },
                mode2: ModeSchedule::Quench {
                    initial_sq: i2,
                    final_sq: f2,
                },
            }
        }
        FrequencySchedule::NormalModes {
            alpha,
            mode1,
            mode2,
        } => NormalModes {
            alpha: alpha_in_range(*alpha)?,
            mode1: mode1.clone(),
            mode2: mode2.clone(),
        },
        FrequencySchedule::Tabulated(table) => from_table(table)?,
    };
    modes.mode1.validate()?;
    modes.mode2.validate()?;
    Ok(modes)
}

fn from_table(table: &SampleTable) -> Result<NormalModes> {
    let SampleTable {
        times,
        omega1_sq,
        omega2_sq,
        coupling,
    } = table;
    validate_table_times(times)?;
    let n = times.len();
    if omega1_sq.len() != n || omega2_sq.len() != n || coupling.len() != n {
        return Err(Error::InvalidSchedule("sample columns differ in length"));
    }
    if omega1_sq
        .iter()
        .chain(omega2_sq.iter())
        .chain(coupling.iter())
        .any(|v| !v.is_finite())
    {
        return Err(Error::InvalidSchedule("sample values must be finite"));
    }
    positive("omega1(0) squared", omega1_sq[0])?;
    positive("omega2(0) squared", omega2_sq[0])?;

    // Compare 2J/(ω1²−ω2²) through cross-multiplication so degenerate
    // denominators are handled without division.
    let (num0, den0) = (2.0 * coupling[0], omega1_sq[0] - omega2_sq[0]);
    let mut worst: Option<(usize, f64)> = None;
    for k in 1..n {
        let (num, den) = (2.0 * coupling[k], omega1_sq[k] - omega2_sq[k]);
        let lhs = num * den0;
        let rhs = num0 * den;
        let scale = lhs.abs().max(rhs.abs());
        let dev = if scale == 0.0 {
            // Both pairs zero only if J and Δ vanish together at one of the samples.
            if (num == 0.0 && den == 0.0) != (num0 == 0.0 && den0 == 0.0) {
                f64::INFINITY
            } else {
                0.0
            }
        } else {
            (lhs - rhs).abs() / scale
        };
        let same_sign = num * num0 >= 0.0 && den * den0 >= 0.0;
        let dev = if same_sign || dev.is_infinite() {
            dev
        } else {
            dev.max(1.0)
        };
        if dev > RATIO_TOLERANCE && worst.is_none_or(|(_, d)| dev > d) {
            worst = Some((k, dev));
        }
    }
    if let Some((k, _)) = worst {
        return Err(Error::VaryingRotationAngle {
            index: k,
            time: times[k],
            ratio: 2.0 * coupling[k] / (omega1_sq[k] - omega2_sq[k]),
            reference: num0 / den0,
        });
    }

    let alpha = rotation_angle(omega1_sq[0], omega2_sq[0], coupling[0]);
    let mut m1 = Vec::with_capacity(n);
    let mut m2 = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = normal_mode_frequencies(omega1_sq[k], omega2_sq[k], coupling[k]);
        m1.push(a);
        m2.push(b);
    }
    Ok(NormalModes {
        alpha,
        mode1: ModeSchedule::Table {
            times: times.clone(),
            omega_sq: m1,
        },
        mode2: ModeSchedule::Table {
            times: times.clone(),
            omega_sq: m2,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn rotation_angle_examples() {
        assert_eq!(rotation_angle(1.0, 4.0, 0.0), 0.0);
        assert_eq!(rotation_angle(2.25, 2.25, 1.1), FRAC_PI_4);
        assert_eq!(rotation_angle(2.25, 2.25, -1.1), -FRAC_PI_4);
        // Half the four-quadrant arctangent of 2.2 / -1.55, folded into [-π/4, π/4].
        let oracle = 0.5 * (libm::atan2(2.2, -1.55) - core::f64::consts::PI);
        assert_relative_eq!(rotation_angle(1.69, 3.24, 1.1), oracle, epsilon = 1e-15);
        assert_relative_eq!(rotation_angle(1.69, 3.24, 1.1), -0.4785131, epsilon = 5e-8);
    }

    #[test]
    fn normal_mode_examples() {
        assert_eq!(normal_mode_frequencies(1.0, 4.0, 0.0), (1.0, 4.0));
        let (a, b) = normal_mode_frequencies(1.0, 4.0, 2.0);
        assert!(a.abs() < 1e-15);
        assert_relative_eq!(b, 5.0, epsilon = 1e-15);
        let (a, b) = normal_mode_frequencies(1.69, 3.24, 1.1);
        assert_relative_eq!(a, 1.11940, epsilon = 1e-5);
        assert_relative_eq!(b, 3.81060, epsilon = 1e-5);
        assert_relative_eq!(a * b, 4.2656, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_frequencies_keep_mode_one_on_top() {
        let (a, b) = normal_mode_frequencies(2.0, 2.0, -0.5);
        assert_relative_eq!(a, 2.5);
        assert_relative_eq!(b, 1.5);
        assert_relative_eq!(
            2.0 + (-0.5) * libm::tan(rotation_angle(2.0, 2.0, -0.5)),
            a,
            epsilon = 1e-15
        );
    }

    #[test]
    fn quench_preset() {
        let m = build_model(&FrequencySchedule::Quench {
            omega1_i: 1.0,
            omega1_f: 1.3,
            omega2_i: 1.5,
            omega2_f: 1.8,
            coupling: 1.1,
        })
        .unwrap();
        assert_relative_eq!(m.alpha, rotation_angle(1.69, 3.24, 1.1));
        assert_relative_eq!(m.mode1.omega_sq(1.0), 1.1194053, epsilon = 1e-7);
        assert_relative_eq!(
            m.mode1.initial_sq() + m.mode2.initial_sq(),
            3.25,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            m.mode1.initial_sq() * m.mode2.initial_sq(),
            2.25 - 1.21,
            epsilon = 1e-14
        );
    }

    #[test]
    fn toy_presets() {
        let t1 = build_model(&FrequencySchedule::Toy1 {
            alpha: FRAC_PI_4,
            wtilde1_i: 1.0,
            wtilde2_i: 2.0,
            wtilde2_f: 0.5,
        })
        .unwrap();
        assert_eq!(t1.mode1.omega_sq(0.3), 0.0);
        assert_eq!(t1.mode2.omega_sq(0.3), 0.25);
        let t2 = build_model(&FrequencySchedule::Toy2 {
            alpha: FRAC_PI_4,
            wtilde1_i: 1.0,
            wtilde1_f: 0.7,
            wtilde2_i: 2.0,
            wtilde2_f: 0.5,
        })
        .unwrap();
        assert_relative_eq!(t2.mode1.omega_sq(0.3), -0.49);
        assert_eq!(t2.mode1.omega_sq(0.0), 1.0);
    }

    #[test]
    fn nonpositive_initial_frequency_rejected() {
        let r = build_model(&FrequencySchedule::Quench {
            omega1_i: 0.0,
            omega1_f: 1.3,
            omega2_i: 1.5,
            omega2_f: 1.8,
            coupling: 1.1,
        });
        assert!(matches!(r, Err(Error::NonPositiveFrequency { .. })));
    }

    #[test]
    fn table_with_constant_ratio_accepted() {
        let times = alloc::vec![0.0, 1.0, 2.0];
        let s: Vec<f64> = alloc::vec![1.0, 1.5, 3.0];
        let table = SampleTable {
            times,
            omega1_sq: s.iter().map(|x| 2.0 * x).collect(),
            omega2_sq: s.iter().map(|x| 3.0 * x).collect(),
            coupling: s.iter().map(|x| 0.4 * x).collect(),
        };
        let m = build_model(&FrequencySchedule::Tabulated(table)).unwrap();
        assert_relative_eq!(m.alpha, rotation_angle(2.0, 3.0, 0.4));
        assert_relative_eq!(
            m.mode1.omega_sq(0.5),
            0.5 * (m.mode1.omega_sq(0.0) + m.mode1.omega_sq(1.0))
        );
    }

    #[test]
    fn table_with_drifting_ratio_rejected_at_worst_sample() {
        let table = SampleTable {
            times: alloc::vec![0.0, 1.0, 2.0, 3.0],
            omega1_sq: alloc::vec![2.0, 2.0, 2.0, 2.0],
            omega2_sq: alloc::vec![3.0, 3.0, 3.0, 3.0],
            coupling: alloc::vec![0.4, 0.4 * (1.0 + 1e-6), 0.5, 0.4],
        };
        match build_model(&FrequencySchedule::Tabulated(table)) {
            Err(Error::VaryingRotationAngle { index, time, .. }) => {
                assert_eq!(index, 2);
                assert_eq!(time, 2.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn trace_and_determinant_preserved(w1 in 1e-3f64..10.0, w2 in 1e-3f64..10.0, j in -10.0f64..10.0) {
            let (a, b) = normal_mode_frequencies(w1, w2, j);
            prop_assert!(((a + b) - (w1 + w2)).abs() <= 1e-12 * (w1 + w2));
            prop_assert!((a * b - (w1 * w2 - j * j)).abs() <= 1e-10 * (w1 * w2).max(1.0));
        }

        #[test]
        fn angle_in_range_and_branch_consistent(w1 in 1e-3f64..10.0, w2 in 1e-3f64..10.0, j in -10.0f64..10.0) {
            let alpha = rotation_angle(w1, w2, j);
            prop_assert!(alpha.abs() <= FRAC_PI_4);
            prop_assume!((w1 - w2).abs() > 1e-6);
            let (a, b) = normal_mode_frequencies(w1, w2, j);
            let t = libm::tan(alpha);
            prop_assert!((w1 + j * t - a).abs() <= 1e-10 * (w1 + w2 + j.abs()));
            prop_assert!((w2 - j * t - b).abs() <= 1e-10 * (w1 + w2 + j.abs()));
        }
    }
}
