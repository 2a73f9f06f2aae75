//! Spectrum, entropies and Schmidt decomposition of the vacuum state.
//!
//! The reduced density matrix has the geometric spectrum `pₙ = (1 − ξ) ξⁿ`
//! with eigenfunctions that are scaled, chirped Hermite functions.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::gaussian::{reduced_a, reduced_b, ReducedGaussian};
use crate::hermite::hermite_functions;
use crate::state::{Snapshot, StateParams};
use crate::{Error, Party, Result};

/// `ε` and `ξ` of one party's reduced state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub party: Party,
    /// Inverse squared width of the eigenfunctions.
    pub epsilon: f64,
    /// Ratio of successive eigenvalues.
    pub xi: f64,
}

impl SpectralData {
    /// `(1 − ξ)/(1 + ξ) = Σ pₙ²`.
    pub fn trace_rho_squared(&self) -> f64 {
        (1.0 - self.xi) / (1.0 + self.xi)
    }
}

pub fn spectral(g: &ReducedGaussian) -> SpectralData {
    let epsilon = 2.0 * libm::sqrt(g.a1 * (g.a1 + 2.0 * g.a3));
    SpectralData {
        party: g.party,
        epsilon,
        xi: g.a3 / (g.a1 + g.a3 + 0.5 * epsilon),
    }
}

/// `pₙ = (1 − ξ) ξⁿ`.
pub fn eigenvalue(n: u32, s: &SpectralData) -> f64 {
    (1.0 - s.xi) * libm::pow(s.xi, n as f64)
}

/// `Sₙ = ln Tr ρⁿ / (1 − n)` in nats, for integer `n ≥ 2`.
pub fn renyi_entropy(s: &SpectralData, n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidRenyiOrder(n));
    }
    Ok(renyi_entropy_real(s, n as f64))
}

/// `Sₙ` continued to real order `n > 0`, `n ≠ 1`.
pub fn renyi_entropy_real(s: &SpectralData, n: f64) -> f64 {
    if s.xi == 0.0 {
        return 0.0;
    }
    let ln_tr = n * libm::log1p(-s.xi) - libm::log1p(-libm::pow(s.xi, n));
    ln_tr / (1.0 - n)
}

/// `S∞ = −ln(1 − ξ)`, the large-order limit of the Rényi entropies.
pub fn min_entropy(s: &SpectralData) -> f64 {
    -libm::log1p(-s.xi)
}

/// `S = −ln(1 − ξ) − ξ ln ξ/(1 − ξ)` in nats.
pub fn von_neumann_entropy(s: &SpectralData) -> f64 {
    let xi = s.xi;
    if xi == 0.0 {
        return 0.0;
    }
    -libm::log1p(-xi) - xi / (1.0 - xi) * libm::log(xi)
}

/// `fₙ(x) = ε^{1/4} φₙ(√ε x) e^{i a₂ x²}`.
pub fn eigenfunction(n: usize, x: f64, s: &SpectralData, a2: f64) -> Complex64 {
    let v = crate::hermite::hermite_function(n, libm::sqrt(s.epsilon) * x);
    Complex64::from_polar(libm::sqrt(libm::sqrt(s.epsilon)) * v, a2 * x * x)
}

/// `f₀(x), …, f_{n_max}(x)`.
pub fn eigenfunctions(n_max: usize, x: f64, s: &SpectralData, a2: f64) -> Vec<Complex64> {
    let scale = libm::sqrt(libm::sqrt(s.epsilon));
    let phase = Complex64::from_polar(1.0, a2 * x * x);
    hermite_functions(n_max, libm::sqrt(s.epsilon) * x)
        .into_iter()
        .map(|v| phase * (scale * v))
        .collect()
}

/// Parameters of the Schmidt form of `ψ₀,₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtData {
    pub kappa: f64,
    /// `ω′₁ − ω′₂`.
    pub z1: f64,
    /// `(r₁ − r₂)/κ`.
    pub z2: f64,
    /// Relative phase per Schmidt index.
    pub theta: f64,
    /// Global phase offset.
    pub phi: f64,
}

/// `κ`, `Z₁`, `Z₂`, `θ`, `φ`.
///
/// `θ` is the four-quadrant angle of `σ(Z₁, Z₂)` with `σ = sign α` (`+1` at
/// `α = 0`); this is the branch for which the Schmidt sum reproduces `ψ₀,₀`.
/// For a static state it is 0 or π.
pub fn schmidt_data(p: &StateParams) -> Result<SchmidtData> {
    crate::gaussian::check_frequencies(p)?;
    let t = p.trig();
    let (w1, w2) = (p.omega1, p.omega2);
    let dr = p.rate1 - p.rate2;
    let kappa = libm::sqrt(1.0 + t.s2 * t.c2 / (w1 * w2) * ((w1 - w2) * (w1 - w2) + dr * dr));
    let z1 = w1 - w2;
    let z2 = dr / kappa;
    let sigma = if p.alpha < 0.0 { -1.0 } else { 1.0 };
    let theta = if z1 == 0.0 && z2 == 0.0 {
        0.0
    } else {
        libm::atan2(sigma * z2, sigma * z1)
    };
    let den = z1 * z1 + kappa * z2 * z2;
    let phi = if den == 0.0 {
        0.0
    } else {
        libm::atan((kappa - 1.0) * z1 * z2 / den)
    };
    Ok(SchmidtData {
        kappa,
        z1,
        z2,
        theta,
        phi,
    })
}

/// Smallest `N` with `ξᴺ < tol`.
pub fn required_terms(xi: f64, tol: f64) -> usize {
    if xi <= 0.0 {
        return 1;
    }
    let n = libm::ceil(libm::log(tol) / libm::log(xi));
    let mut n = if n.is_finite() && n > 1.0 {
        n as usize
    } else {
        1
    };
    while libm::pow(xi, n as f64) >= tol {
        n += 1;
    }
    n
}

/// Largest eigenvalue tail `ξᴺ` accepted by [`schmidt_reconstruct`].
pub const SCHMIDT_TAIL: f64 = 1e-10;

/// Truncation for which the dropped amplitudes `sqrt(pₙ)` sum below about
/// `1e-10`; the eigenvalue tail alone only bounds their squares.
pub fn schmidt_terms(xi: f64) -> usize {
    required_terms(xi, SCHMIDT_TAIL * SCHMIDT_TAIL)
}

/// `ψ₀,₀(x₁, x₂)` rebuilt from its first `terms` Schmidt components.
pub fn schmidt_reconstruct(x1: f64, x2: f64, snap: &Snapshot, terms: usize) -> Result<Complex64> {
    let p = snap.params();
    let ga = reduced_a(&p)?;
    let gb = reduced_b(&p)?;
    let sa = spectral(&ga);
    let sb = spectral(&gb);
    let tail = libm::pow(sa.xi, terms as f64);
    if terms == 0 || tail >= SCHMIDT_TAIL {
        return Err(Error::TruncationInsufficient { terms, tail });
    }
    let sd = schmidt_data(&p)?;
    let fa = eigenfunctions(terms - 1, x1, &sa, ga.a2);
    let fb = eigenfunctions(terms - 1, x2, &sb, gb.a2);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut sqrt_p = libm::sqrt(1.0 - sa.xi);
    let ratio = libm::sqrt(sa.xi);
    for n in 0..terms {
        acc += sqrt_p * fa[n] * fb[n] * Complex64::from_polar(1.0, -(n as f64) * sd.theta);
        sqrt_p *= ratio;
    }
    let global = 0.5 * sd.phi
        - 0.5 * (snap.mode1.omega0 * snap.mode1.tau + snap.mode2.omega0 * snap.mode2.tau);
    Ok(acc * Complex64::from_polar(1.0, global))
}
