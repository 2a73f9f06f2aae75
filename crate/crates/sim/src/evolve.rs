//! Both normal modes propagated over a time grid.

use cohosc::ermakov::{solve_ermakov, ClosedForm, ErmakovTrajectory};
use cohosc::model::{build_model, FrequencySchedule, ModeSchedule, NormalModes};
use cohosc::{ModeState, Snapshot};

use crate::Result;

#[derive(Debug, Clone)]
pub struct Evolution {
    pub modes: NormalModes,
    pub mode1: ErmakovTrajectory,
    pub mode2: ErmakovTrajectory,
}

impl Evolution {
    pub fn new(schedule: &FrequencySchedule, times: &[f64]) -> Result<Self> {
        Self::from_modes(build_model(schedule)?, times)
    }

    pub fn from_modes(modes: NormalModes, times: &[f64]) -> Result<Self> {
        let mode1 = solve_ermakov(1, &modes.mode1, times)?;
        let mode2 = solve_ermakov(2, &modes.mode2, times)?;
        Ok(Self {
            modes,
            mode1,
            mode2,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.mode1.times
    }

    pub fn len(&self) -> usize {
        self.mode1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mode1.is_empty()
    }

    pub fn snapshot(&self, k: usize) -> Snapshot {
        Snapshot {
            alpha: self.modes.alpha,
            mode1: self.mode1.state(k),
            mode2: self.mode2.state(k),
        }
    }
}

/// State of both modes at a single time. Quenches use their closed forms;
/// tabulated schedules are integrated from zero.
pub fn snapshot_at(modes: &NormalModes, t: f64) -> Result<Snapshot> {
    Ok(Snapshot {
        alpha: modes.alpha,
        mode1: mode_state_at(1, &modes.mode1, t)?,
        mode2: mode_state_at(2, &modes.mode2, t)?,
    })
}

fn mode_state_at(index: usize, schedule: &ModeSchedule, t: f64) -> Result<ModeState> {
    match schedule {
        ModeSchedule::Quench {
            initial_sq,
            final_sq,
        } => {
            let form = ClosedForm::for_quench(*initial_sq, *final_sq)?;
            let s = form.eval(t);
            let omega0 = form.omega_i();
            Ok(ModeState {
                omega_eff: omega0 / (s.b * s.b),
                rate: s.bdot / s.b,
                tau: s.tau,
                omega0,
            })
        }
        ModeSchedule::Table { .. } => {
            let grid: &[f64] = if t == 0.0 { &[0.0] } else { &[0.0, t] };
            let traj = solve_ermakov(index, schedule, grid)?;
            Ok(traj.state(grid.len() - 1))
        }
    }
}
