//! Exact two-mode wavefunctions `ψₙ,ₘ(x₁, x₂, t)`.

use num_complex::Complex64;

use crate::hermite::hermite_function;
use crate::state::Snapshot;

/// `ψₙ,ₘ` at `(x₁, x₂)`: a product of scaled Hermite functions of the normal
/// coordinates `y₁ = x₁ cos α − x₂ sin α`, `y₂ = x₁ sin α + x₂ cos α`, with
/// chirps `e^{i(ḃ/b) y²/2}` and dynamical phases `e^{−i(n+½)ω̃(0)τ}`.
pub fn eval_psi(n: usize, m: usize, x1: f64, x2: f64, snap: &Snapshot) -> Complex64 {
    let (s, c) = libm::sincos(snap.alpha);
    let y1 = x1 * c - x2 * s;
    let y2 = x1 * s + x2 * c;
    let (m1, m2) = (&snap.mode1, &snap.mode2);
    let amp = libm::sqrt(libm::sqrt(m1.omega_eff * m2.omega_eff))
        * hermite_function(n, libm::sqrt(m1.omega_eff) * y1)
        * hermite_function(m, libm::sqrt(m2.omega_eff) * y2);
    let energy_phase =
        (n as f64 + 0.5) * m1.omega0 * m1.tau + (m as f64 + 0.5) * m2.omega0 * m2.tau;
    let chirp = 0.5 * (m1.rate * y1 * y1 + m2.rate * y2 * y2);
    Complex64::from_polar(amp, chirp - energy_phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::simpson_weights;
    use crate::state::ModeState;
    use approx::assert_relative_eq;

    #[test]
    fn unit_ground_peak() {
        let snap = Snapshot::stationary(1.0, 1.0, 0.0);
        assert_relative_eq!(eval_psi(0, 0, 0.0, 0.0, &snap).re, 0.564190, epsilon = 1e-6);
    }

    #[test]
    fn excited_states_are_normalized_and_orthogonal() {
        let snap = Snapshot {
            alpha: 0.4,
            mode1: ModeState {
                omega_eff: 0.8,
                rate: 0.3,
                tau: 0.7,
                omega0: 1.1,
            },
            mode2: ModeState {
                omega_eff: 1.9,
                rate: -0.2,
                tau: 0.5,
                omega0: 2.0,
            },
        };
        let n = 241;
        let l = 9.0;
        let h = 2.0 * l / (n - 1) as f64;
        let w = simpson_weights(n, h);
        let mut norm01 = 0.0;
        let mut overlap = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let (x1, x2) = (-l + i as f64 * h, -l + j as f64 * h);
                let a = eval_psi(0, 1, x1, x2, &snap);
                let b = eval_psi(1, 0, x1, x2, &snap);
                norm01 += w[i] * w[j] * a.norm_sqr();
                overlap += w[i] * w[j] * a.conj() * b;
            }
        }
        assert_relative_eq!(norm01, 1.0, epsilon = 1e-6);
        assert!(overlap.norm() < 1e-6);
    }
}
