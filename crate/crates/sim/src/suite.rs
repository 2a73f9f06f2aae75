//! Every oracle-versus-closed-form comparison, collected into one table.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use cohosc::entanglement::{
    eigenvalue, schmidt_reconstruct, schmidt_terms, spectral, von_neumann_entropy, SpectralData,
};
use cohosc::excited::excited_coefficients;
use cohosc::gaussian::reduced_a;
use cohosc::model::NormalModes;
use cohosc::wavefunction::eval_psi;
use cohosc::wigner::{second_moments, uncertainty_omega, wigner_marginal};
use cohosc::{Party, Snapshot};

use crate::evolve::snapshot_at;
use crate::oracle::{grid_moments, grid_wigner, measure, sample_psi, GridSpec};
use crate::output::format_value;
use crate::presets::{quench, Preset};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Coarse-grid rows: reported, never counted.
    Informational,
    Skipped(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => f.write_str("FAIL"),
            Verdict::Informational => f.write_str("coarse, informational"),
            Verdict::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub case: String,
    pub t: f64,
    pub quantity: String,
    pub analytic: f64,
    pub oracle: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl CheckRow {
    fn new(
        case: &str,
        t: f64,
        quantity: impl Into<String>,
        analytic: f64,
        oracle: f64,
        tolerance: f64,
    ) -> Self {
        let ok = (analytic - oracle).abs() < tolerance;
        Self {
            case: case.to_string(),
            t,
            quantity: quantity.into(),
            analytic,
            oracle,
            tolerance,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }

    fn skipped(case: &str, t: f64, quantity: &str, why: String) -> Self {
        Self {
            case: case.to_string(),
            t,
            quantity: quantity.to_string(),
            analytic: f64::NAN,
            oracle: f64::NAN,
            tolerance: f64::NAN,
            verdict: Verdict::Skipped(why),
        }
    }

    pub fn diff(&self) -> f64 {
        (self.analytic - self.oracle).abs()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub presets: Vec<Preset>,
    pub times: Vec<f64>,
    /// Minimum points per axis; grown when the state needs more.
    pub points: usize,
    /// Extra grid size for convergence rows.
    pub coarse_points: Option<usize>,
    /// Negative control: added to the closed-form `ξ` before it is compared.
    pub corrupt_xi: Option<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            presets: Preset::ALL.to_vec(),
            times: vec![0.0, 0.5, 1.0, 2.0, 5.0],
            points: GridSpec::DEFAULT_POINTS,
            coarse_points: Some(GridSpec::MIN_POINTS),
            corrupt_xi: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "case",
            "t",
            "quantity",
            "analytic",
            "oracle",
            "abs_diff",
            "tolerance",
            "verdict",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.case.clone(),
                format_value(r.t),
                r.quantity.clone(),
                format_value(r.analytic),
                format_value(r.oracle),
                format_value(r.diff()),
                format_value(r.tolerance),
                r.verdict.to_string(),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// One model at one time, with the checks that apply to it.
struct Case {
    label: String,
    modes: NormalModes,
    t: f64,
    vacuum: bool,
    excited: bool,
    schmidt: bool,
}

fn cases(opts: &SuiteOptions) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for &preset in &opts.presets {
        let models: Vec<(String, NormalModes)> = match preset {
            Preset::Fig1 | Preset::Fig2 => {
                vec![(preset.name().to_string(), preset.model().normal_modes()?)]
            }
            Preset::Fig3 | Preset::Fig4 => [1.1, 0.9, 0.6]
                .iter()
                .map(|&j| {
                    Ok((
                        format!("{} J={j}", preset.name()),
                        quench(j).normal_modes()?,
                    ))
                })
                .collect::<Result<_>>()?,
        };
        for (label, modes) in models {
            for &t in &opts.times {
                out.push(Case {
                    label: label.clone(),
                    modes: modes.clone(),
                    t,
                    vacuum: preset != Preset::Fig4,
                    excited: preset == Preset::Fig4,
                    schmidt: preset == Preset::Fig3 && t <= 2.0,
                });
            }
        }
    }
    Ok(out)
}

pub fn run_oracle_suite(opts: &SuiteOptions) -> Result<Report> {
    let per_case = cases(opts)?
        .par_iter()
        .map(|c| check_case(c, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        rows: per_case.into_iter().flatten().collect(),
    })
}

fn check_case(c: &Case, opts: &SuiteOptions) -> Result<Vec<CheckRow>> {
    let snap = snapshot_at(&c.modes, c.t)?;
    let mut rows = Vec::new();
    if c.vacuum {
        vacuum_rows(c, &snap, opts, &mut rows)?;
    }
    if c.excited {
        excited_rows(c, &snap, opts, &mut rows)?;
    }
    if c.schmidt {
        rows.push(schmidt_row(c, &snap)?);
    }
    Ok(rows)
}

fn vacuum_rows(
    c: &Case,
    snap: &Snapshot,
    opts: &SuiteOptions,
    rows: &mut Vec<CheckRow>,
) -> Result<()> {
    let (label, t) = (c.label.as_str(), c.t);
    let p = snap.params();
    let g = reduced_a(&p)?;
    let mut sd = spectral(&g);
    if let Some(dx) = opts.corrupt_xi {
        sd.xi += dx;
    }
    let measured = GridSpec::for_state(snap, 0, 0, opts.points)
        .and_then(|grid| Ok((grid, measure(0, 0, snap, grid, Party::A)?)));
    let (grid, o) = match measured {
        Ok(m) => m,
        Err(e) => {
            rows.push(CheckRow::skipped(label, t, "vacuum", e.to_string()));
            return Ok(());
        }
    };
    let min_eig = o.spectrum.iter().copied().fold(f64::INFINITY, f64::min);
    rows.push(CheckRow::new(label, t, "norm", 1.0, o.norm, 1e-6));
    rows.push(CheckRow::new(
        label,
        t,
        "trace",
        1.0,
        o.density.trace(),
        1e-6,
    ));
    rows.push(CheckRow::new(
        label,
        t,
        "hermiticity",
        0.0,
        o.density.hermiticity_defect(),
        1e-12,
    ));
    rows.push(CheckRow::new(
        label,
        t,
        "negative_eigenvalue",
        0.0,
        (-min_eig).max(0.0),
        1e-8,
    ));
    rows.push(CheckRow::new(
        label,
        t,
        "purity",
        g.purity(),
        o.purity,
        1e-4,
    ));
    for n in 0..5u32 {
        rows.push(CheckRow::new(
            label,
            t,
            format!("p{n}"),
            eigenvalue(n, &sd),
            o.spectrum[n as usize],
            1e-4,
        ));
    }
    rows.push(CheckRow::new(
        label,
        t,
        "S_von",
        von_neumann_entropy(&sd),
        o.entropy,
        1e-3,
    ));
    let (x2, p2) = second_moments(&p)?;
    rows.push(CheckRow::new(label, t, "x1^2", x2, o.x2, 1e-4));
    rows.push(CheckRow::new(label, t, "p1^2", p2, o.p2, 1e-4));
    let (omega, omega_tilde) = uncertainty_omega(&p)?;
    rows.push(CheckRow::new(
        label,
        t,
        "Omega",
        omega,
        o.uncertainty(),
        1e-4,
    ));
    let psi = sample_psi(0, 0, snap, &grid);
    let (bx2, bp2) = grid_moments(&psi, &grid, Party::B);
    rows.push(CheckRow::new(
        label,
        t,
        "Omega_tilde",
        omega_tilde,
        4.0 * bx2 * bp2,
        1e-4,
    ));

    let x = grid.nodes();
    let mut rho_err: f64 = 0.0;
    for i in (0..grid.points).step_by(4) {
        for k in (0..grid.points).step_by(4) {
            rho_err = rho_err.max((o.density.matrix[(i, k)] - g.density(x[i], x[k])).norm());
        }
    }
    rows.push(CheckRow::new(label, t, "rho_entrywise", 0.0, rho_err, 1e-6));

    let w = wigner_marginal(&p)?;
    let mid = grid.points / 2;
    let step = ((x2.sqrt() / grid.spacing()).round() as usize).clamp(1, mid / 4);
    let mut w_err: f64 = 0.0;
    for i in [mid - step, mid, mid + step] {
        for mom in [-p2.sqrt(), 0.0, p2.sqrt()] {
            w_err = w_err.max((grid_wigner(&o.density, i, mom) - w.eval(x[i], mom)).abs());
        }
    }
    rows.push(CheckRow::new(label, t, "wigner", 0.0, w_err, 1e-6));

    if let Some(points) = opts.coarse_points {
        rows.push(coarse_row(label, t, snap, points, &sd));
    }
    Ok(())
}

fn coarse_row(label: &str, t: f64, snap: &Snapshot, points: usize, sd: &SpectralData) -> CheckRow {
    let quantity = format!("S_von N={points}");
    let measured = GridSpec::for_state_with_budget(snap, 0, 0, points, points)
        .and_then(|g| measure(0, 0, snap, g, Party::A));
    match measured {
        Ok(o) => CheckRow {
            verdict: Verdict::Informational,
            ..CheckRow::new(label, t, quantity, von_neumann_entropy(sd), o.entropy, 1e-3)
        },
        Err(e) => CheckRow::skipped(label, t, &quantity, e.to_string()),
    }
}

fn excited_rows(
    c: &Case,
    snap: &Snapshot,
    opts: &SuiteOptions,
    rows: &mut Vec<CheckRow>,
) -> Result<()> {
    let (label, t) = (c.label.as_str(), c.t);
    let p = snap.params();
    let measured = GridSpec::for_state(snap, 0, 1, opts.points)
        .and_then(|grid| measure(0, 1, snap, grid, Party::A));
    let o = match measured {
        Ok(o) => o,
        Err(e) => {
            rows.push(CheckRow::skipped(label, t, "excited", e.to_string()));
            return Ok(());
        }
    };
    let coeffs = excited_coefficients(&p)?;
    let purity00 = reduced_a(&p)?.purity();
    rows.push(CheckRow::new(label, t, "norm01", 1.0, o.norm, 1e-6));
    rows.push(CheckRow::new(
        label,
        t,
        "purity01",
        purity00 * coeffs.r,
        o.purity,
        1e-4,
    ));
    rows.push(CheckRow::new(
        label,
        t,
        "Gamma",
        coeffs.gamma,
        o.uncertainty(),
        1e-4,
    ));
    Ok(())
}

/// Largest `|ψ_Schmidt − ψ|` over a 21×21 grid spanning ±3 standard deviations.
fn schmidt_row(c: &Case, snap: &Snapshot) -> Result<CheckRow> {
    let p = snap.params();
    let terms = schmidt_terms(spectral(&reduced_a(&p)?).xi);
    let reach = 3.0 * second_moments(&p)?.0.sqrt();
    let mut worst: f64 = 0.0;
    for i in 0..21 {
        for j in 0..21 {
            let x1 = -reach + i as f64 * reach / 10.0;
            let x2 = -reach + j as f64 * reach / 10.0;
            let direct = eval_psi(0, 0, x1, x2, snap);
            worst = worst.max((schmidt_reconstruct(x1, x2, snap, terms)? - direct).norm());
        }
    }
    Ok(CheckRow::new(&c.label, c.t, "schmidt", 0.0, worst, 1e-6))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(preset: Preset) -> SuiteOptions {
        SuiteOptions {
            presets: vec![preset],
            times: vec![0.0, 1.0],
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn passes_on_quench_model() {
        let r = run_oracle_suite(&small(Preset::Fig3)).unwrap();
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert!(r.rows.iter().any(|row| row.quantity == "schmidt"));
        assert!(r
            .rows
            .iter()
            .any(|row| row.verdict == Verdict::Informational));
    }

    #[test]
    fn corrupted_xi_is_caught() {
        let r = run_oracle_suite(&SuiteOptions {
            corrupt_xi: Some(0.05),
            ..small(Preset::Fig3)
        })
        .unwrap();
        assert!(!r.passed());
        assert!(r.failures().any(|row| row.quantity == "S_von"));
    }
}
