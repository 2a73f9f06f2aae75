//! Brute-force numerical counterparts of the closed forms.
//!
//! Wavefunctions are sampled on a square grid, the partner is integrated out
//! with the rectangle rule (spectrally accurate for these Gaussians), and
//! the resulting matrix is diagonalized directly.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use cohosc::wavefunction::eval_psi;
use cohosc::{Party, Snapshot};

/// Eigenvalues below this are dropped from the entropy sum.
pub const EIGEN_CLIP: f64 = 1e-12;

/// Largest deviation of `Δ·Tr ρ` from one before a grid is rejected.
pub const TRACE_REJECT: f64 = 1e-4;

/// Square grid `[-L, L]²` with `N` points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    #[error("grid needs an odd point count of at least {min}, got {points}")]
    BadPointCount { points: usize, min: usize },
    #[error("grid half-width must be positive, got {0}")]
    BadHalfWidth(f64),
    #[error("resolving the state needs {needed} points per axis, above the budget of {budget}")]
    OverBudget { needed: usize, budget: usize },
    #[error("grid too small: Δ·Tr ρ = {trace}")]
    Inadequate { trace: f64 },
}

impl GridSpec {
    pub const MIN_POINTS: usize = 65;
    pub const DEFAULT_POINTS: usize = 257;
    pub const MAX_POINTS: usize = 1025;
    /// `L` in units of the widest position standard deviation.
    pub const WIDTH_SIGMAS: f64 = 8.0;
    /// The Nyquist momentum `π/Δ` in units of the widest momentum deviation.
    pub const MOMENTUM_SIGMAS: f64 = 6.0;

    pub fn new(half_width: f64, points: usize) -> Result<Self, GridError> {
        if points < Self::MIN_POINTS || points % 2 == 0 {
            return Err(GridError::BadPointCount {
                points,
                min: Self::MIN_POINTS,
            });
        }
        if half_width <= 0.0 || !half_width.is_finite() {
            return Err(GridError::BadHalfWidth(half_width));
        }
        Ok(Self { half_width, points })
    }

    /// `L = 8σₓ` and at least `points` nodes, grown until the momentum
    /// content of `ψₙ,ₘ` is resolved.
    pub fn for_state(
        snap: &Snapshot,
        n: usize,
        m: usize,
        points: usize,
    ) -> Result<Self, GridError> {
        Self::for_state_with_budget(snap, n, m, points, Self::MAX_POINTS)
    }

    pub fn for_state_with_budget(
        snap: &Snapshot,
        n: usize,
        m: usize,
        points: usize,
        budget: usize,
    ) -> Result<Self, GridError> {
        let (sx, sp) = widths(snap, n, m);
        let half_width = Self::WIDTH_SIGMAS * sx;
        let needed = 2.0 * half_width * Self::MOMENTUM_SIGMAS * sp / std::f64::consts::PI;
        let mut intervals = (needed.ceil() as usize).max(points.saturating_sub(1));
        intervals += intervals % 2;
        if intervals + 1 > budget {
            return Err(GridError::OverBudget {
                needed: intervals + 1,
                budget,
            });
        }
        Self::new(half_width, intervals + 1)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points)
            .map(|i| -self.half_width + i as f64 * h)
            .collect()
    }
}

/// Largest position and momentum standard deviations over both normal modes.
fn widths(snap: &Snapshot, n: usize, m: usize) -> (f64, f64) {
    let mut sx2: f64 = 0.0;
    let mut sp2: f64 = 0.0;
    for (mode, k) in [(&snap.mode1, n), (&snap.mode2, m)] {
        let level = 2.0 * k as f64 + 1.0;
        let w = mode.omega_eff;
        sx2 = sx2.max(level / (2.0 * w));
        sp2 = sp2.max(level * (w * w + mode.rate * mode.rate) / (2.0 * w));
    }
    (sx2.sqrt(), sp2.sqrt())
}

/// `ψₙ,ₘ(xᵢ, xⱼ)` as an `N×N` matrix, rows indexed by `x₁`.
pub fn sample_psi(n: usize, m: usize, snap: &Snapshot, grid: &GridSpec) -> DMatrix<Complex64> {
    let x = grid.nodes();
    let size = grid.points;
    let rows: Vec<Vec<Complex64>> = x
        .par_iter()
        .map(|&x1| x.iter().map(|&x2| eval_psi(n, m, x1, x2, snap)).collect())
        .collect();
    DMatrix::from_fn(size, size, |i, j| rows[i][j])
}

/// `∫|ψ|²` by the rectangle rule.
pub fn grid_norm(psi: &DMatrix<Complex64>, grid: &GridSpec) -> f64 {
    let h = grid.spacing();
    h * h * psi.iter().map(|z| z.norm_sqr()).sum::<f64>()
}

/// Samples `ρ(xᵢ, xₖ)` of one party together with the grid spacing.
#[derive(Debug, Clone)]
pub struct DiscretizedDensity {
    pub matrix: DMatrix<Complex64>,
    pub spacing: f64,
}

impl DiscretizedDensity {
    /// `Δ·Tr ρ`.
    pub fn trace(&self) -> f64 {
        self.spacing * self.matrix.diagonal().iter().map(|z| z.re).sum::<f64>()
    }

    /// `max |ρᵢₖ − ρₖᵢ*|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.matrix;
        (m - m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Integrates out the partner of `party` from a sampled wavefunction.
pub fn partial_trace(
    psi: &DMatrix<Complex64>,
    grid: &GridSpec,
    party: Party,
) -> Result<DiscretizedDensity, GridError> {
    let h = grid.spacing();
    let mut matrix = match party {
        Party::A => psi * psi.adjoint(),
        Party::B => psi.transpose() * psi.map(|z| z.conj()),
    };
    matrix *= Complex64::new(h, 0.0);
    let d = DiscretizedDensity { matrix, spacing: h };
    let trace = d.trace();
    if (trace - 1.0).abs() > TRACE_REJECT {
        return Err(GridError::Inadequate { trace });
    }
    Ok(d)
}

/// Eigenvalues of `Δ·ρ`, largest first.
pub fn grid_spectrum(d: &DiscretizedDensity) -> Vec<f64> {
    let scaled = &d.matrix * Complex64::new(d.spacing, 0.0);
    let mut eigs: Vec<f64> = scaled.symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| b.total_cmp(a));
    eigs
}

/// `−Σ λ ln λ` over eigenvalues above [`EIGEN_CLIP`].
pub fn grid_entropy(eigs: &[f64]) -> f64 {
    -eigs
        .iter()
        .filter(|&&l| l > EIGEN_CLIP)
        .map(|&l| l * l.ln())
        .sum::<f64>()
}

/// `Σ λ²`.
pub fn grid_purity(eigs: &[f64]) -> f64 {
    eigs.iter().map(|l| l * l).sum()
}

/// `(⟨x²⟩, ⟨p²⟩)` of one party. Momentum uses spectral differentiation
/// along that party's axis, via Parseval.
pub fn grid_moments(psi: &DMatrix<Complex64>, grid: &GridSpec, party: Party) -> (f64, f64) {
    let h = grid.spacing();
    let n = grid.points;
    let x = grid.nodes();
    let lines: DMatrix<Complex64> = match party {
        Party::A => psi.clone(),
        Party::B => psi.transpose(),
    };
    let mut x2 = 0.0;
    for (i, xi) in x.iter().enumerate() {
        x2 += xi * xi * lines.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    let fft = FftPlanner::new().plan_fft_forward(n);
    let dk = 2.0 * std::f64::consts::PI / (n as f64 * h);
    let k2: Vec<f64> = (0..n)
        .map(|m| {
            let m = if m <= n / 2 {
                m as f64
            } else {
                m as f64 - n as f64
            };
            (m * dk) * (m * dk)
        })
        .collect();
    let mut p2 = 0.0;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        buf.copy_from_slice(lines.column(j).as_slice());
        fft.process(&mut buf);
        p2 += buf
            .iter()
            .zip(&k2)
            .map(|(c, k)| k * c.norm_sqr())
            .sum::<f64>()
            / n as f64;
    }
    (h * h * x2, h * h * p2)
}

/// `W(xᵢ, p) = (1/π) ∫dy e^{−2ipy} ρ(xᵢ − y, xᵢ + y)` on the grid's own
/// offsets `y = kΔ`.
pub fn grid_wigner(d: &DiscretizedDensity, i: usize, p: f64) -> f64 {
    let n = d.matrix.nrows();
    let reach = i.min(n - 1 - i);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -(reach as isize)..=(reach as isize) {
        let y = k as f64 * d.spacing;
        let a = (i as isize - k) as usize;
        let b = (i as isize + k) as usize;
        acc += Complex64::from_polar(1.0, -2.0 * p * y) * d.matrix[(a, b)];
    }
    acc.re * d.spacing / std::f64::consts::PI
}

/// Everything the oracle measures for one party of `ψₙ,ₘ`.
#[derive(Debug, Clone)]
pub struct OracleSample {
    pub grid: GridSpec,
    pub norm: f64,
    pub density: DiscretizedDensity,
    pub spectrum: Vec<f64>,
    pub entropy: f64,
    pub purity: f64,
    pub x2: f64,
    pub p2: f64,
}

impl OracleSample {
    /// `4⟨x²⟩⟨p²⟩`.
    pub fn uncertainty(&self) -> f64 {
        4.0 * self.x2 * self.p2
    }
}

pub fn measure(
    n: usize,
    m: usize,
    snap: &Snapshot,
    grid: GridSpec,
    party: Party,
) -> Result<OracleSample, GridError> {
    let psi = sample_psi(n, m, snap, &grid);
    let norm = grid_norm(&psi, &grid);
    let density = partial_trace(&psi, &grid, party)?;
    let spectrum = grid_spectrum(&density);
    let (x2, p2) = grid_moments(&psi, &grid, party);
    Ok(OracleSample {
        grid,
        norm,
        entropy: grid_entropy(&spectrum),
        purity: grid_purity(&spectrum),
        spectrum,
        density,
        x2,
        p2,
    })
}
