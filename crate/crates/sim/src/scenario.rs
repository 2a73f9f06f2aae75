//! Time traces of the requested quantities, from the analytic formulas only.

use rayon::prelude::*;
use serde::Serialize;

use cohosc::entanglement::{renyi_entropy, schmidt_data, spectral, von_neumann_entropy};
use cohosc::excited::excited_coefficients;
use cohosc::gaussian::reduced_a;
use cohosc::ode::Tolerances;
use cohosc::wigner::uncertainty_omega;
use cohosc::Snapshot;

use crate::config::{ModelConfig, Quantity, ScenarioConfig};
use crate::evolve::Evolution;
use crate::{Error, Result};

/// Columns emitted after the requested quantities.
pub const DIAGNOSTICS: [&str; 8] = [
    "b1",
    "bdot1",
    "tau1",
    "omega_eff1",
    "b2",
    "bdot2",
    "tau2",
    "omega_eff2",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub version: &'static str,
    pub config: ScenarioConfig,
    pub ermakov_rtol: f64,
    pub ermakov_atol: f64,
    /// Why the run stopped before `t_end`, if it did.
    pub truncated: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl RunResult {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r[0]).collect()
    }
}

pub fn column_names(cfg: &ScenarioConfig) -> Vec<String> {
    let mut cols = vec!["t".to_string()];
    for q in &cfg.quantities {
        match q {
            Quantity::SRenyi => {
                cols.extend(cfg.renyi_orders.iter().map(|n| format!("S_renyi_{n}")))
            }
            Quantity::SchmidtAngles => cols.extend(["theta".to_string(), "phi".to_string()]),
            q => cols.push(q.name().to_string()),
        }
    }
    cols.extend(DIAGNOSTICS.iter().map(|s| s.to_string()));
    cols
}

/// Values of every requested quantity at one instant, in column order
/// (without `t` and the diagnostics).
pub fn evaluate(cfg: &ScenarioConfig, snap: &Snapshot) -> Result<Vec<f64>> {
    let p = snap.params();
    let g = reduced_a(&p)?;
    let s = spectral(&g);
    let mut out = Vec::new();
    for q in &cfg.quantities {
        match q {
            Quantity::SVon => out.push(von_neumann_entropy(&s)),
            Quantity::SRenyi => {
                for &n in &cfg.renyi_orders {
                    out.push(renyi_entropy(&s, n)?);
                }
            }
            Quantity::Xi => out.push(s.xi),
            Quantity::Purity => out.push(g.purity()),
            Quantity::Omega => out.push(uncertainty_omega(&p)?.0),
            Quantity::OmegaTilde => out.push(uncertainty_omega(&p)?.1),
            Quantity::R => out.push(excited_coefficients(&p)?.r),
            Quantity::Gamma => out.push(excited_coefficients(&p)?.gamma),
            Quantity::SchmidtAngles => {
                let d = schmidt_data(&p)?;
                out.extend([d.theta, d.phi]);
            }
        }
    }
    Ok(out)
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunResult> {
    cfg.validate()?;
    let modes = cfg.model.normal_modes()?;
    let mut times = cfg.time.times();
    let mut truncated = None;
    let evo = loop {
        match Evolution::from_modes(modes.clone(), &times) {
            Ok(evo) => break evo,
            Err(Error::Numeric(
                e @ (cohosc::Error::StepSizeUnderflow { time } | cohosc::Error::StepLimit { time }),
            )) => {
                let keep = times.partition_point(|&t| t < time);
                if keep == 0 || keep == times.len() {
                    return Err(e.into());
                }
                times.truncate(keep);
                truncated = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
    };
    let rows = (0..evo.len())
        .into_par_iter()
        .map(|k| {
            let mut row = vec![evo.times()[k]];
            row.extend(evaluate(cfg, &evo.snapshot(k))?);
            for traj in [&evo.mode1, &evo.mode2] {
                row.extend([traj.b[k], traj.bdot[k], traj.tau[k], traj.omega_eff[k]]);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let tol = Tolerances::default();
    Ok(RunResult {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION"),
            config: cfg.clone(),
            ermakov_rtol: tol.rtol,
            ermakov_atol: tol.atol,
            truncated,
        },
        columns: column_names(cfg),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepVar {
    #[value(name = "J")]
    J,
    Alpha,
    RenyiN,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::J => "J",
            SweepVar::Alpha => "alpha",
            SweepVar::RenyiN => "renyi_n",
        }
    }

    /// `base` with the swept parameter set to `value`.
    pub fn apply(self, base: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let mut cfg = base.clone();
        match (self, &mut cfg.model) {
            (SweepVar::J, ModelConfig::Quench { coupling, .. }) => *coupling = value,
            (SweepVar::J, _) => {
                return Err(Error::config("sweep.var", "J sweeps need a quench model"))
            }
            (
                SweepVar::Alpha,
                ModelConfig::Toy1 { alpha, .. } | ModelConfig::Toy2 { alpha, .. },
            ) => *alpha = value,
            (SweepVar::Alpha, _) => {
                return Err(Error::config(
                    "sweep.var",
                    "alpha sweeps need a toy1 or toy2 model",
                ))
            }
            (SweepVar::RenyiN, _) => {
                if value.fract() != 0.0 || !(2.0..=u32::MAX as f64).contains(&value) {
                    return Err(Error::config(
                        "sweep.values",
                        format!("Rényi orders must be integers >= 2, got {value}"),
                    ));
                }
                cfg.renyi_orders = vec![value as u32];
                if !cfg.quantities.contains(&Quantity::SRenyi) {
                    cfg.quantities.push(Quantity::SRenyi);
                }
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub var: &'static str,
    pub values: Vec<f64>,
    pub runs: Vec<RunResult>,
}

impl SweepResult {
    /// Header of the merged table: the sweep variable, then the shared
    /// per-run columns (Rényi columns lose their order suffix in an order sweep).
    pub fn columns(&self) -> Vec<String> {
        let mut cols = vec![self.var.to_string()];
        if let Some(first) = self.runs.first() {
            cols.extend(first.columns.iter().map(|c| {
                if self.var == "renyi_n" && c.starts_with("S_renyi_") {
                    "S_renyi".to_string()
                } else {
                    c.clone()
                }
            }));
        }
        cols
    }

    /// All runs stacked, each row prefixed with its sweep value.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values
            .iter()
            .zip(&self.runs)
            .flat_map(|(&v, run)| {
                run.rows.iter().map(move |r| {
                    let mut row = Vec::with_capacity(r.len() + 1);
                    row.push(v);
                    row.extend_from_slice(r);
                    row
                })
            })
            .collect()
    }
}

pub fn run_sweep(base: &ScenarioConfig, var: SweepVar, values: &[f64]) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::config("sweep.values", "no values given"));
    }
    let configs = values
        .iter()
        .map(|&v| var.apply(base, v))
        .collect::<Result<Vec<_>>>()?;
    let runs = configs
        .par_iter()
        .map(run_scenario)
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        var: var.name(),
        values: values.to_vec(),
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{OutputConfig, TimeGrid};

    fn quench(j: f64) -> ScenarioConfig {
        ScenarioConfig {
            name: None,
            model: ModelConfig::Quench {
                omega1_i: 1.0,
                omega1_f: 1.3,
                omega2_i: 1.5,
                omega2_f: 1.8,
                coupling: j,
            },
            time: TimeGrid {
                t_start: 0.0,
                t_end: 2.0,
                samples: 5,
            },
            quantities: vec![
                Quantity::SVon,
                Quantity::SRenyi,
                Quantity::SchmidtAngles,
                Quantity::Gamma,
            ],
            renyi_orders: vec![2, 3],
            output: OutputConfig::default(),
        }
    }

    #[test]
    fn columns_follow_config_order() {
        let r = run_scenario(&quench(1.1)).unwrap();
        assert_eq!(
            r.columns[..7],
            [
                "t",
                "S_von",
                "S_renyi_2",
                "S_renyi_3",
                "theta",
                "phi",
                "Gamma"
            ]
        );
        assert_eq!(r.columns.len(), 7 + DIAGNOSTICS.len());
        assert_eq!(r.rows.len(), 5);
        assert!(r.rows.iter().all(|row| row.len() == r.columns.len()));
        assert_eq!(r.column("b1").unwrap()[0], 1.0);
        assert_eq!(r.column("bdot2").unwrap()[0], 0.0);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            run_scenario(&quench(0.9)).unwrap(),
            run_scenario(&quench(0.9)).unwrap()
        );
    }

    #[test]
    fn sweeps() {
        let s = run_sweep(&quench(1.1), SweepVar::RenyiN, &[2.0, 4.0]).unwrap();
        assert_eq!(s.columns()[..4], ["renyi_n", "t", "S_von", "S_renyi"]);
        assert_eq!(s.rows().len(), 10);
        assert!(run_sweep(&quench(1.1), SweepVar::Alpha, &[0.1]).is_err());
        assert!(run_sweep(&quench(1.1), SweepVar::RenyiN, &[2.5]).is_err());
        let s = run_sweep(&quench(1.1), SweepVar::J, &[0.6, 1.1]).unwrap();
        assert_eq!(s.runs[1], run_scenario(&quench(1.1)).unwrap());
    }

    #[test]
    fn integrator_failure_truncates() {
        let mut cfg = quench(1.1);
        // ω̃² ramps to 1e30 just after t = 1; no step size can follow that.
        cfg.model = ModelConfig::Tabulated {
            times: vec![0.0, 1.0, 1.0 + 1e-9],
            omega1_sq: vec![1.0, 1.0, 1e30],
            omega2_sq: vec![2.0, 2.0, 2e30],
            coupling: vec![0.0, 0.0, 0.0],
        };
        cfg.time.samples = 5;
        let r = run_scenario(&cfg).unwrap();
        assert_eq!(
            r.metadata.truncated.as_deref(),
            Some("integrator step size underflow at t = 1")
        );
        assert_eq!(r.times(), [0.0, 0.5]);
    }
}
