//! Instantaneous state data fed to the analytic formulas.

/// One normal mode at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    /// `ω′ = ω̃(0)/b²`.
    pub omega_eff: f64,
    /// `ḃ/b`.
    pub rate: f64,
    /// `τ = ∫ ds/b²`.
    pub tau: f64,
    /// `ω̃(0)`.
    pub omega0: f64,
}

impl ModeState {
    /// The mode's ground state before anything happens: `b = 1`, `ḃ = 0`.
    pub fn stationary(omega: f64) -> Self {
        Self {
            omega_eff: omega,
            rate: 0.0,
            tau: 0.0,
            omega0: omega,
        }
    }
}

/// The five numbers every reduced-state formula depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    pub omega1: f64,
    pub omega2: f64,
    pub rate1: f64,
    pub rate2: f64,
    pub alpha: f64,
}

impl StateParams {
    pub fn new(omega1: f64, omega2: f64, rate1: f64, rate2: f64, alpha: f64) -> Self {
        Self {
            omega1,
            omega2,
            rate1,
            rate2,
            alpha,
        }
    }

    /// `r1 = r2 = 0`.
    pub fn stationary(omega1: f64, omega2: f64, alpha: f64) -> Self {
        Self::new(omega1, omega2, 0.0, 0.0, alpha)
    }

    pub(crate) fn trig(&self) -> Trig {
        let (s, c) = libm::sincos(self.alpha);
        Trig {
            s2: s * s,
            c2: c * c,
            sc: s * c,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Trig {
    pub s2: f64,
    pub c2: f64,
    pub sc: f64,
}

/// Both modes at one instant, including the dynamical phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub alpha: f64,
    pub mode1: ModeState,
    pub mode2: ModeState,
}

impl Snapshot {
    pub fn params(&self) -> StateParams {
        StateParams::new(
            self.mode1.omega_eff,
            self.mode2.omega_eff,
            self.mode1.rate,
            self.mode2.rate,
            self.alpha,
        )
    }

    /// Static state with normal-mode frequencies `(w1, w2)`.
    pub fn stationary(w1: f64, w2: f64, alpha: f64) -> Self {
        Self {
            alpha,
            mode1: ModeState::stationary(w1),
            mode2: ModeState::stationary(w2),
        }
    }
}
