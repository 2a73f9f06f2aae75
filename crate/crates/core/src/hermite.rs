//! Normalized Hermite functions `φₙ(z) = Hₙ(z) e^{−z²/2} / sqrt(2ⁿ n! √π)`.
//!
//! Evaluated by the three-term recurrence on `φₙ` directly, with a running
//! power-of-two scale so that neither the Gaussian factor nor the growth of
//! `Hₙ` can underflow or overflow for orders in the hundreds.

use alloc::vec::Vec;

const PI_QUARTER_INV: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
const RESCALE_ABOVE: f64 = 1e150;

/// `φ₀(z), …, φ_{n_max}(z)`.
pub fn hermite_functions(n_max: usize, z: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    fill(n_max, z, |v| out.push(v));
    out
}

/// `φₙ(z)` for a single order.
pub fn hermite_function(n: usize, z: f64) -> f64 {
    let mut last = 0.0;
    fill(n, z, |v| last = v);
    last
}

fn fill(n_max: usize, z: f64, mut emit: impl FnMut(f64)) {
    // Values are carried as mantissa · exp(log_scale).
    let mut log_scale = -0.5 * z * z;
    let mut prev = 0.0;
    let mut cur = PI_QUARTER_INV;
    emit(cur * libm::exp(log_scale));
    for n in 0..n_max {
        let nf = n as f64;
        let next = libm::sqrt(2.0 / (nf + 1.0)) * z * cur - libm::sqrt(nf / (nf + 1.0)) * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            prev /= RESCALE_ABOVE;
            cur /= RESCALE_ABOVE;
            log_scale += libm::log(RESCALE_ABOVE);
        }
        emit(cur * libm::exp(log_scale));
    }
}

/// Physicists' Hermite polynomial `Hₙ(x)`; overflows for large orders.
pub fn hermite_polynomial(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}
