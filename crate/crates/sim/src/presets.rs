//! Caption parameters of the four published figures.

use std::f64::consts::PI;

use clap::ValueEnum;

use crate::config::{ModelConfig, OutputConfig, Quantity, ScenarioConfig, TimeGrid};
use crate::scenario::SweepVar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

pub const T_END: f64 = 10.0;
pub const SAMPLES: usize = 1001;

pub fn toy1(alpha: f64) -> ModelConfig {
    ModelConfig::Toy1 {
        alpha,
        wtilde1_i: 1.0,
        wtilde2_i: 2.0,
        wtilde2_f: 0.5,
    }
}

pub fn toy2(alpha: f64) -> ModelConfig {
    ModelConfig::Toy2 {
        alpha,
        wtilde1_i: 1.0,
        wtilde1_f: 0.7,
        wtilde2_i: 2.0,
        wtilde2_f: 0.5,
    }
}

pub fn quench(coupling: f64) -> ModelConfig {
    ModelConfig::Quench {
        omega1_i: 1.0,
        omega1_f: 1.3,
        omega2_i: 1.5,
        omega2_f: 1.8,
        coupling,
    }
}

/// One figure panel: a sweep over the curves drawn in it.
#[derive(Debug, Clone)]
pub struct Panel {
    pub name: &'static str,
    pub base: ScenarioConfig,
    pub var: SweepVar,
    pub values: Vec<f64>,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }

    /// The red-curve model: `α = π/4` for the toy models, `J = 1.1` otherwise.
    pub fn model(self) -> ModelConfig {
        match self {
            Preset::Fig1 => toy1(PI / 4.0),
            Preset::Fig2 => toy2(PI / 4.0),
            Preset::Fig3 | Preset::Fig4 => quench(1.1),
        }
    }

    /// The plotted quantities for this figure's model.
    pub fn config(self) -> ScenarioConfig {
        let (quantities, renyi_orders) = match self {
            Preset::Fig1 | Preset::Fig2 => (vec![Quantity::SVon, Quantity::Omega], vec![]),
            Preset::Fig3 => (
                vec![Quantity::SVon, Quantity::SRenyi, Quantity::Omega],
                vec![2, 4, 100],
            ),
            Preset::Fig4 => (vec![Quantity::R, Quantity::Gamma, Quantity::Omega], vec![]),
        };
        ScenarioConfig {
            name: Some(self.name().to_string()),
            model: self.model(),
            time: TimeGrid {
                t_start: 0.0,
                t_end: T_END,
                samples: SAMPLES,
            },
            quantities,
            renyi_orders,
            output: OutputConfig::default(),
        }
    }

    /// Every quantity, for bound checks.
    pub fn full_config(self) -> ScenarioConfig {
        ScenarioConfig {
            quantities: Quantity::ALL.to_vec(),
            renyi_orders: vec![2, 4, 100],
            ..self.config()
        }
    }

    pub fn panels(self) -> Vec<Panel> {
        let base = self.config();
        let only = |qs: &[Quantity]| ScenarioConfig {
            quantities: qs.to_vec(),
            renyi_orders: if qs.contains(&Quantity::SRenyi) {
                base.renyi_orders.clone()
            } else {
                vec![]
            },
            ..base.clone()
        };
        let couplings = vec![1.1, 0.9, 0.6];
        match self {
            Preset::Fig1 | Preset::Fig2 => {
                let entropy_alphas = if self == Preset::Fig1 {
                    vec![PI / 4.0, PI / 12.0, PI / 24.0]
                } else {
                    vec![PI / 4.0, PI / 8.0, PI / 24.0]
                };
                let (a, b) = if self == Preset::Fig1 {
                    ("fig1a", "fig1b")
                } else {
                    ("fig2a", "fig2b")
                };
                vec![
                    Panel {
                        name: a,
                        base: only(&[Quantity::SVon]),
                        var: SweepVar::Alpha,
                        values: entropy_alphas,
                    },
                    Panel {
                        name: b,
                        base: only(&[Quantity::Omega]),
                        var: SweepVar::Alpha,
                        values: vec![PI / 4.0, PI / 8.0, 0.0],
                    },
                ]
            }
            Preset::Fig3 => vec![
                Panel {
                    name: "fig3a",
                    base: only(&[Quantity::SVon]),
                    var: SweepVar::J,
                    values: couplings.clone(),
                },
                Panel {
                    name: "fig3b",
                    base: only(&[Quantity::SRenyi]),
                    var: SweepVar::RenyiN,
                    values: vec![2.0, 4.0, 100.0],
                },
                Panel {
                    name: "fig3c",
                    base: only(&[Quantity::Omega]),
                    var: SweepVar::J,
                    values: couplings,
                },
            ],
            Preset::Fig4 => vec![
                Panel {
                    name: "fig4a",
                    base: only(&[Quantity::R]),
                    var: SweepVar::J,
                    values: couplings.clone(),
                },
                Panel {
                    name: "fig4b",
                    base: only(&[Quantity::Gamma, Quantity::Omega]),
                    var: SweepVar::J,
                    values: couplings,
                },
            ],
        }
    }
}
