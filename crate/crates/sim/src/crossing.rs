//! Where two time traces swap order.

use cohosc::model::NormalModes;
use cohosc::wigner::uncertainty_omega;

use crate::evolve::snapshot_at;
use crate::Result;

/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOL: f64 = 1e-4;

/// First `t` in `(0, t_end]` where `f` changes sign, scanning with step `dt`
/// and refining by bisection. `None` if no sign change is seen.
pub fn first_sign_change<F>(mut f: F, dt: f64, t_end: f64) -> Result<Option<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut t0 = 0.0;
    let mut f0 = f(t0)?;
    let steps = (t_end / dt).ceil() as usize;
    for k in 1..=steps {
        let t1 = (k as f64 * dt).min(t_end);
        let f1 = f(t1)?;
        if f0 * f1 < 0.0 || (f0 != 0.0 && f1 == 0.0) {
            let (mut lo, mut hi, flo) = (t0, t1, f0);
            while hi - lo > BISECTION_TOL {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid)?;
                if fm == 0.0 || (fm > 0.0) != (flo > 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        t0 = t1;
        f0 = f1;
    }
    Ok(None)
}

/// `Ω` of oscillator 1 at time `t`.
pub fn omega_at(modes: &NormalModes, t: f64) -> Result<f64> {
    Ok(uncertainty_omega(&snapshot_at(modes, t)?.params())?.0)
}

/// First time at which `Ω` under `a` and under `b` swap order.
pub fn omega_crossing(
    a: &NormalModes,
    b: &NormalModes,
    dt: f64,
    t_end: f64,
) -> Result<Option<f64>> {
    first_sign_change(|t| Ok(omega_at(a, t)? - omega_at(b, t)?), dt, t_end)
}

/// First time at which the `Ω` traces of `models` stop being in their
/// initial order, i.e. the earliest crossing of any pair.
pub fn ordering_change(models: &[NormalModes], dt: f64, t_end: f64) -> Result<Option<f64>> {
    let mut first: Option<f64> = None;
    for (i, a) in models.iter().enumerate() {
        for b in &models[i + 1..] {
            if let Some(t) = omega_crossing(a, b, dt, t_end)? {
                first = Some(first.map_or(t, |f| f.min(t)));
            }
        }
    }
    Ok(first)
}
