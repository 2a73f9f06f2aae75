//! Reduced density matrix of one oscillator in the joint vacuum.
//!
//! Tracing out the partner leaves
//!
//! ```text
//! ρ(x, x′) = sqrt(2a₁/π) · exp[−(a₁ + a₃ − i a₂) x² − (a₁ + a₃ + i a₂) x′² + 2 a₃ x x′]
//! ```
//!
//! whose coefficients depend only on [`StateParams`].

use num_complex::Complex64;

use crate::state::StateParams;
use crate::{Error, Party, Result};

/// Gaussian coefficients of a reduced density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedGaussian {
    pub party: Party,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    /// `ω′₁ sin²α + ω′₂ cos²α`.
    pub d: f64,
    /// `ω′₁ cos²α + ω′₂ sin²α`.
    pub d_tilde: f64,
    /// `D D̃ + sin²α cos²α (r₁ − r₂)²`.
    pub eta_bar: f64,
    /// `ω′₁ ω′₂`.
    pub omega_product: f64,
}

impl ReducedGaussian {
    /// `Tr ρ² = sqrt(a₁/(a₁ + 2a₃))`.
    pub fn purity(&self) -> f64 {
        purity(self)
    }

    /// `ρ(x, x′)`.
    pub fn density(&self, x: f64, xp: f64) -> Complex64 {
        let diag = self.a1 + self.a3;
        let re = -diag * (x * x + xp * xp) + 2.0 * self.a3 * x * xp;
        let im = self.a2 * (x * x - xp * xp);
        let norm = libm::sqrt(2.0 * self.a1 / core::f64::consts::PI);
        Complex64::from_polar(norm * libm::exp(re), im)
    }
}

pub(crate) fn check_frequencies(p: &StateParams) -> Result<()> {
    for (what, value) in [("omega'_1", p.omega1), ("omega'_2", p.omega2)] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveFrequency { what, value });
        }
    }
    Ok(())
}

fn build(p: &StateParams, party: Party) -> Result<ReducedGaussian> {
    check_frequencies(p)?;
    let t = p.trig();
    let (w1, w2, r1, r2) = (p.omega1, p.omega2, p.rate1, p.rate2);
    let dr = r1 - r2;
    let d = w1 * t.s2 + w2 * t.c2;
    let d_tilde = w1 * t.c2 + w2 * t.s2;
    let q = w1 * w2;
    let mix = t.s2 * t.c2 * ((w1 - w2) * (w1 - w2) + dr * dr);
    let (den, a2_num) = match party {
        Party::A => (d, w1 * r2 * t.s2 + w2 * r1 * t.c2),
        Party::B => (d_tilde, w1 * r2 * t.c2 + w2 * r1 * t.s2),
    };
    Ok(ReducedGaussian {
        party,
        a1: q / (2.0 * den),
        a2: a2_num / (2.0 * den),
        a3: (mix / (4.0 * den)).max(0.0),
        d,
        d_tilde,
        eta_bar: d * d_tilde + t.s2 * t.c2 * dr * dr,
        omega_product: q,
    })
}

/// Reduced state of oscillator 1.
pub fn reduced_a(p: &StateParams) -> Result<ReducedGaussian> {
    build(p, Party::A)
}

/// Reduced state of oscillator 2.
pub fn reduced_b(p: &StateParams) -> Result<ReducedGaussian> {
    build(p, Party::B)
}

/// `Tr ρ² = sqrt(a₁/(a₁ + 2a₃))`, equal to `sqrt(ω′₁ω′₂/η̄)` and identical for both parties.
pub fn purity(g: &ReducedGaussian) -> f64 {
    libm::sqrt(g.a1 / (g.a1 + 2.0 * g.a3))
}
