//! Oscillator 1's reduced state when mode 1 starts in its ground state and
//! mode 2 in its first excited state.
//!
//! ```text
//! ρ₀₁(x, x′) = 2ω′₂ ρ₀₀(x, x′) [cos²α/(2D) + F₁x² + F₁*x′² + F₂xx′]
//! W₀₁(x, p)  = W₀₀(x, p) [h₀ + h₁x² + h₂p² + 2h₃xp]
//! ```

use num_complex::Complex64;

use crate::gaussian::{reduced_a, ReducedGaussian};
use crate::state::StateParams;
use crate::wigner::{wigner_marginal, MarginalWigner};
use crate::Result;

/// Everything that characterizes the (0,1) reduced state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitedCoefficients {
    pub f1: Complex64,
    pub f2: f64,
    /// `Tr ρ₀₁² / Tr ρ₀₀²`.
    pub r: f64,
    /// `h₀, h₁, h₂, h₃`.
    pub h: [f64; 4],
    /// `4 ⟨x₁²⟩⟨p₁²⟩` in the (0,1) state.
    pub gamma: f64,
}

/// `(F₁, F₂)`.
pub fn excited_f(p: &StateParams) -> Result<(Complex64, f64)> {
    let g = reduced_a(p)?;
    Ok(f_from(p, &g))
}

fn f_from(p: &StateParams, g: &ReducedGaussian) -> (Complex64, f64) {
    let t = p.trig();
    let (w1, w2) = (p.omega1, p.omega2);
    let dr = p.rate1 - p.rate2;
    let pre = t.s2 * t.c2 / (4.0 * g.d * g.d);
    let re = (w1 - w2) * (w1 * (1.0 + t.s2) + w2 * t.c2) - t.c2 * dr * dr;
    let im = -2.0 * w1 * dr;
    let f1 = Complex64::new(pre * re, pre * im);
    let f2 = (2.0 * g.a3 * t.c2 + w1 * t.s2) / g.d;
    (f1, f2)
}

/// Mixedness ratio `r = Tr ρ₀₁² / Tr ρ₀₀²`.
pub fn mixedness_ratio(p: &StateParams) -> Result<f64> {
    let g = reduced_a(p)?;
    let (f1, f2) = f_from(p, &g);
    Ok(ratio_from(p, &g, f1, f2))
}

fn ratio_from(p: &StateParams, g: &ReducedGaussian, f1: Complex64, f2: f64) -> f64 {
    let c2 = p.trig().c2;
    let (a1, a3, d) = (g.a1, g.a3, g.d);
    let gg = 2.0 * f1.re; // F₁ + F₁*
    let f1sq = f1.norm_sqr();
    let s = a1 + 2.0 * a3;
    let t0 = c2 * c2 / (4.0 * d * d);
    let t1 = c2 / (4.0 * d * a1 * s) * (gg * a1 + (gg + f2) * a3);
    let t2 = (a1 * a1 * (gg * gg + 4.0 * f1sq + f2 * f2)
        + a3 * a3 * (3.0 * gg * gg + 3.0 * f2 * (2.0 * gg + f2))
        + 2.0 * a1 * a3 * (gg * gg + 4.0 * f1sq + f2 * (3.0 * gg + f2)))
        / (16.0 * a1 * a1 * s * s);
    4.0 * p.omega2 * p.omega2 * (t0 + t1 + t2)
}

/// `[h₀, h₁, h₂, h₃]`.
pub fn wigner01_h(p: &StateParams) -> Result<[f64; 4]> {
    let g = reduced_a(p)?;
    Ok(h_from(p, &g))
}

fn h_from(p: &StateParams, g: &ReducedGaussian) -> [f64; 4] {
    let t = p.trig();
    let (w1, w2, r1, r2) = (p.omega1, p.omega2, p.rate1, p.rate2);
    let dr = r1 - r2;
    let eta = g.eta_bar;
    let h0 = g.omega_product / eta * libm::cos(2.0 * p.alpha);
    let k = 2.0 * w2 * t.s2 / (eta * eta);
    let u = w1 * g.d_tilde + t.c2 * r1 * dr;
    let v = w1 * r2 * t.s2 + w2 * r1 * t.c2;
    let h1 = k * (u * u + v * v);
    let h2 = k * (g.d * g.d + t.c2 * t.c2 * dr * dr);
    let h3 = k * (t.c2 * dr * u + g.d * v);
    [h0, h1, h2, h3]
}

/// `Γ = 4⟨x₁²⟩⟨p₁²⟩` for `W₀₁ = W₀₀ · (h₀ + h₁x² + h₂p² + 2h₃xp)`.
pub fn uncertainty_gamma(h: &[f64; 4], m: &MarginalWigner) -> f64 {
    let [h0, h1, h2, h3] = *h;
    let (a1, a2, a3) = (m.alpha1, m.alpha2, m.alpha3);
    let ratio = m.eta_bar / m.omega_product;
    let k = 1.5 * ratio;
    let x_factor = (h0 * a2 + 0.5 * h2) + k * (h1 * a2 * a2 + h2 * a3 * a3 + 2.0 * h3 * a2 * a3);
    let p_factor = (h0 * a1 + 0.5 * h1) + k * (h2 * a1 * a1 + h1 * a3 * a3 + 2.0 * h3 * a1 * a3);
    ratio * ratio * x_factor * p_factor
}

/// All (0,1) quantities at once.
pub fn excited_coefficients(p: &StateParams) -> Result<ExcitedCoefficients> {
    let g = reduced_a(p)?;
    let (f1, f2) = f_from(p, &g);
    let h = h_from(p, &g);
    let m = wigner_marginal(p)?;
    Ok(ExcitedCoefficients {
        f1,
        f2,
        r: ratio_from(p, &g, f1, f2),
        h,
        gamma: uncertainty_gamma(&h, &m),
    })
}

/// `ρ₀₁(x, x′)`.
pub fn density01(x: f64, xp: f64, p: &StateParams) -> Result<Complex64> {
    let g = reduced_a(p)?;
    let (f1, f2) = f_from(p, &g);
    let c2 = p.trig().c2;
    let poly =
        Complex64::new(c2 / (2.0 * g.d) + f2 * x * xp, 0.0) + f1 * (x * x) + f1.conj() * (xp * xp);
    Ok(g.density(x, xp) * poly * (2.0 * p.omega2))
}

/// `W₀₁(x, p)`.
pub fn wigner01(x: f64, mom: f64, p: &StateParams) -> Result<f64> {
    let m = wigner_marginal(p)?;
    let [h0, h1, h2, h3] = wigner01_h(p)?;
    Ok(m.eval(x, mom) * (h0 + h1 * x * x + h2 * mom * mom + 2.0 * h3 * x * mom))
}
