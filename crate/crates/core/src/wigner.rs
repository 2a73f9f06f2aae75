//! Wigner functions of the vacuum, second moments and uncertainty products.
//!
//! The Wigner transform here is
//! `W(x, p) = (1/π) ∫ dy e^{−2ipy} Ψ*(x + y) Ψ(x − y)` per mode. Relative to
//! the more common `e^{+2ipy}` kernel this flips the sign of `p`, and with
//! it the sign of every `x·p` cross coefficient.

use crate::gaussian::{check_frequencies, reduced_a};
use crate::state::StateParams;
use crate::Result;

/// Two-mode Wigner function
/// `(1/π²) exp[−A₁x₁² − A₂x₂² − B₁p₁² − B₂p₂² + 2A₃x₁x₂ + 2B₃p₁p₂
///  + 2F(x₁p₂ + x₂p₁) + 2D₁₁x₁p₁ + 2D₂₂x₂p₂]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullWigner {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub f: f64,
    pub d11: f64,
    pub d22: f64,
}

impl FullWigner {
    pub fn eval(&self, x1: f64, x2: f64, p1: f64, p2: f64) -> f64 {
        let e = -self.a1 * x1 * x1 - self.a2 * x2 * x2 - self.b1 * p1 * p1 - self.b2 * p2 * p2
            + 2.0 * self.a3 * x1 * x2
            + 2.0 * self.b3 * p1 * p2
            + 2.0 * self.f * (x1 * p2 + x2 * p1)
            + 2.0 * self.d11 * x1 * p1
            + 2.0 * self.d22 * x2 * p2;
        libm::exp(e) / (core::f64::consts::PI * core::f64::consts::PI)
    }
}

/// Single-mode Wigner function `(1/π) sqrt(ω′₁ω′₂/η̄) exp[−α₁x² − α₂p² + 2α₃xp]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalWigner {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub eta_bar: f64,
    pub omega_product: f64,
}

impl MarginalWigner {
    /// `sqrt(ω′₁ω′₂/η̄)`, which is also the purity.
    pub fn amplitude(&self) -> f64 {
        libm::sqrt(self.omega_product / self.eta_bar)
    }

    pub fn eval(&self, x: f64, p: f64) -> f64 {
        let e = -self.alpha1 * x * x - self.alpha2 * p * p + 2.0 * self.alpha3 * x * p;
        self.amplitude() * libm::exp(e) / core::f64::consts::PI
    }

    /// `α₁α₂ − α₃²`.
    pub fn determinant(&self) -> f64 {
        self.alpha1 * self.alpha2 - self.alpha3 * self.alpha3
    }

    /// `(⟨x²⟩, ⟨p²⟩, ⟨xp⟩_W)` of the Gaussian, from its coefficients alone.
    pub fn gaussian_moments(&self) -> (f64, f64, f64) {
        let det = 2.0 * self.determinant();
        (self.alpha2 / det, self.alpha1 / det, self.alpha3 / det)
    }
}

pub fn wigner_full(p: &StateParams) -> Result<FullWigner> {
    check_frequencies(p)?;
    let t = p.trig();
    let (w1, w2, r1, r2) = (p.omega1, p.omega2, p.rate1, p.rate2);
    let q = w1 * w2;
    let d = w1 * t.s2 + w2 * t.c2;
    let dt = w1 * t.c2 + w2 * t.s2;
    Ok(FullWigner {
        a1: (q * dt + w2 * r1 * r1 * t.c2 + w1 * r2 * r2 * t.s2) / q,
        a2: (q * d + w2 * r1 * r1 * t.s2 + w1 * r2 * r2 * t.c2) / q,
        a3: t.sc / q * (q * (w1 - w2) + w2 * r1 * r1 - w1 * r2 * r2),
        b1: d / q,
        b2: dt / q,
        b3: -t.sc * (w1 - w2) / q,
        f: t.sc / q * (w2 * r1 - w1 * r2),
        d11: -(w2 * r1 * t.c2 + w1 * r2 * t.s2) / q,
        d22: -(w2 * r1 * t.s2 + w1 * r2 * t.c2) / q,
    })
}

pub fn wigner_marginal(p: &StateParams) -> Result<MarginalWigner> {
    let g = reduced_a(p)?;
    let t = p.trig();
    let (w1, w2, r1, r2) = (p.omega1, p.omega2, p.rate1, p.rate2);
    let q = g.omega_product;
    let eta = g.eta_bar;
    Ok(MarginalWigner {
        alpha1: (g.d_tilde * q + w2 * r1 * r1 * t.c2 + w1 * r2 * r2 * t.s2) / eta,
        alpha2: g.d / eta,
        alpha3: -(w2 * r1 * t.c2 + w1 * r2 * t.s2) / eta,
        eta_bar: eta,
        omega_product: q,
    })
}

/// `(⟨x₁²⟩, ⟨p₁²⟩)` in the vacuum.
pub fn second_moments(p: &StateParams) -> Result<(f64, f64)> {
    check_frequencies(p)?;
    let t = p.trig();
    let (w1, w2, r1, r2) = (p.omega1, p.omega2, p.rate1, p.rate2);
    let d = w1 * t.s2 + w2 * t.c2;
    let dt = w1 * t.c2 + w2 * t.s2;
    let x2 = d / (2.0 * w1 * w2);
    let p2 = 0.5 * (dt + r1 * r1 * t.c2 / w1 + r2 * r2 * t.s2 / w2);
    Ok((x2, p2))
}

/// `(Ω, Ω̃) = 4(⟨x²⟩⟨p²⟩)` for oscillator 1 and oscillator 2.
pub fn uncertainty_omega(p: &StateParams) -> Result<(f64, f64)> {
    check_frequencies(p)?;
    let t = p.trig();
    let (w1, w2, r1, r2) = (p.omega1, p.omega2, p.rate1, p.rate2);
    let k1 = w1 + r1 * r1 / w1;
    let k2 = w2 + r2 * r2 / w2;
    let omega = (t.c2 / w1 + t.s2 / w2) * (k1 * t.c2 + k2 * t.s2);
    let omega_tilde = (t.s2 / w1 + t.c2 / w2) * (k1 * t.s2 + k2 * t.c2);
    Ok((omega, omega_tilde))
}
