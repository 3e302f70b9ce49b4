//! Randomized check of the weak-norm envelope inequality.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::report::{fmt_float, CsvTable};
use crate::error::{domain, Error, Result};
use crate::lorentz::{theorem31_evaluate, DiagonalPropagatorModel, Theorem31Outcome};
use crate::mittag_leffler::{envelope_constant, ml, MLParams, SectorSpec};
use crate::spectral::SpectralProfile;

const MAX_EIGENVALUE: f64 = 100.0;
const MAX_SIZE: usize = 50;
/// Radius over which the envelope constants are measured; covers the model
/// validation grid, which stops at twice the largest eigenvalue.
const MEASURE_RADIUS: f64 = 250.0;
const MEASURE_SAMPLES: usize = 2000;
/// Head room on measured constants for peaks between samples.
const SAFETY: f64 = 1.02;

const DECAY_ALPHAS: [f64; 4] = [0.5, 0.9, 1.5, 1.95];
const ROTATION_ALPHAS: [f64; 3] = [0.3, 0.5, 0.8];

/// The symbol families the suite draws from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolFamily {
    /// `E_{a,1}(-x)`.
    Relaxation { alpha: f64 },
    /// `E_{a,2}(-x)`.
    Velocity { alpha: f64 },
    /// `E_a(i x)`, `a < 1`.
    Rotation { alpha: f64 },
    /// `C cos(omega x) / (1 + x)`.
    Oscillating { c: f64, omega: f64 },
}

impl SymbolFamily {
    pub fn label(&self) -> String {
        match self {
            SymbolFamily::Relaxation { alpha } => format!("E_{alpha},1(-x)"),
            SymbolFamily::Velocity { alpha } => format!("E_{alpha},2(-x)"),
            SymbolFamily::Rotation { alpha } => format!("E_{alpha}(ix)"),
            SymbolFamily::Oscillating { c, omega } => format!("{c}cos({omega}x)/(1+x)"),
        }
    }

    fn symbol(self) -> Result<Arc<dyn Fn(f64) -> Complex64 + Send + Sync>> {
        Ok(match self {
            SymbolFamily::Relaxation { alpha } | SymbolFamily::Velocity { alpha } => {
                let delta = if matches!(self, SymbolFamily::Relaxation { .. }) {
                    1.0
                } else {
                    2.0
                };
                let p = MLParams::new(alpha, delta)?;
                Arc::new(move |x: f64| {
                    ml(p, Complex64::new(-x, 0.0)).unwrap_or(Complex64::new(f64::NAN, 0.0))
                })
            }
            SymbolFamily::Rotation { alpha } => {
                let p = MLParams::single(alpha)?;
                Arc::new(move |x: f64| {
                    ml(p, Complex64::new(0.0, x)).unwrap_or(Complex64::new(f64::NAN, 0.0))
                })
            }
            SymbolFamily::Oscillating { c, omega } => {
                Arc::new(move |x: f64| Complex64::new(c * (omega * x).cos() / (1.0 + x), 0.0))
            }
        })
    }

    /// `C` with `|phi(x)| <= C / (1 + x)` on `[0, MEASURE_RADIUS]`.
    fn envelope(self) -> Result<f64> {
        Ok(match self {
            SymbolFamily::Relaxation { alpha } => {
                let s = SectorSpec::negative_axis(alpha)?;
                SAFETY
                    * envelope_constant(
                        MLParams::new(alpha, 1.0)?,
                        s,
                        MEASURE_RADIUS,
                        MEASURE_SAMPLES,
                    )?
            }
            SymbolFamily::Velocity { alpha } => {
                let s = SectorSpec::negative_axis(alpha)?;
                SAFETY
                    * envelope_constant(
                        MLParams::new(alpha, 2.0)?,
                        s,
                        MEASURE_RADIUS,
                        MEASURE_SAMPLES,
                    )?
            }
            SymbolFamily::Rotation { .. } => {
                let phi = self.symbol()?;
                let ratio = (MEASURE_RADIUS / 1e-3f64).ln();
                let mut best = phi(0.0).norm();
                for i in 0..MEASURE_SAMPLES {
                    let x = 1e-3 * (ratio * i as f64 / (MEASURE_SAMPLES - 1) as f64).exp();
                    best = best.max((1.0 + x) * phi(x).norm());
                }
                SAFETY * best
            }
            SymbolFamily::Oscillating { c, .. } => c,
        })
    }
}

/// A generated model together with what it was built from.
#[derive(Debug, Clone)]
pub struct SuiteModel {
    pub id: usize,
    pub family: SymbolFamily,
    pub r: f64,
    pub model: DiagonalPropagatorModel,
}

/// `psi(x) = C / (1 + x)`.
fn resolvent_envelope(c: f64) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
    Arc::new(move |x: f64| c / (1.0 + x))
}

/// Measured envelope constants, one per family, shared by all models.
struct Constants {
    relaxation: Vec<f64>,
    velocity: Vec<f64>,
    rotation: Vec<f64>,
}

impl Constants {
    fn measure() -> Result<Self> {
        let relaxation = DECAY_ALPHAS
            .iter()
            .map(|&alpha| SymbolFamily::Relaxation { alpha }.envelope())
            .collect::<Result<_>>()?;
        let velocity = DECAY_ALPHAS
            .iter()
            .map(|&alpha| SymbolFamily::Velocity { alpha }.envelope())
            .collect::<Result<_>>()?;
        let rotation = ROTATION_ALPHAS
            .iter()
            .map(|&alpha| SymbolFamily::Rotation { alpha }.envelope())
            .collect::<Result<_>>()?;
        Ok(Self {
            relaxation,
            velocity,
            rotation,
        })
    }
}

fn generate(seed: u64, id: usize, constants: &Constants) -> Result<SuiteModel> {
    // one independent stream per model, so results do not depend on scheduling
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);

    let size = rng.gen_range(1..=MAX_SIZE);
    let mut eigs: Vec<f64> = Vec::with_capacity(size);
    for _ in 0..size {
        // repeat an eigenvalue now and then to exercise multiplicities
        if !eigs.is_empty() && rng.gen_bool(0.15) {
            let j = rng.gen_range(0..eigs.len());
            eigs.push(eigs[j]);
        } else {
            eigs.push(MAX_EIGENVALUE * (1.0 - rng.gen::<f64>()));
        }
    }
    let r = rng.gen_range(1.0..10.0);
    let (family, c) = match rng.gen_range(0..4) {
        0 => {
            let i = rng.gen_range(0..DECAY_ALPHAS.len());
            (
                SymbolFamily::Relaxation {
                    alpha: DECAY_ALPHAS[i],
                },
                constants.relaxation[i],
            )
        }
        1 => {
            let i = rng.gen_range(0..DECAY_ALPHAS.len());
            (
                SymbolFamily::Velocity {
                    alpha: DECAY_ALPHAS[i],
                },
                constants.velocity[i],
            )
        }
        2 => {
            let i = rng.gen_range(0..ROTATION_ALPHAS.len());
            (
                SymbolFamily::Rotation {
                    alpha: ROTATION_ALPHAS[i],
                },
                constants.rotation[i],
            )
        }
        _ => {
            let f = SymbolFamily::Oscillating {
                c: rng.gen_range(0.5..2.0),
                omega: rng.gen_range(0.1..10.0),
            };
            (f, f.envelope()?)
        }
    };
    let model = DiagonalPropagatorModel::new(
        SpectralProfile::discrete(eigs)?,
        family.symbol()?,
        resolvent_envelope(c),
    )?;
    Ok(SuiteModel {
        id,
        family,
        r,
        model,
    })
}

/// Rebuilds model `id` of the suite started from `seed`.
pub fn suite_model(seed: u64, id: usize) -> Result<SuiteModel> {
    generate(seed, id, &Constants::measure()?)
}

/// One line of the suite report.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRow {
    pub model_id: usize,
    pub family: SymbolFamily,
    pub outcome: Theorem31Outcome,
}

impl SuiteRow {
    pub fn pass(&self) -> bool {
        self.outcome.holds()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub seed: u64,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| !r.pass())
    }

    /// Fails on the first violated model, with its witness.
    pub fn check(&self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(row) => match row.outcome.check() {
                Err(Error::InvariantFailure { message, witness }) => Err(Error::InvariantFailure {
                    message: format!("model {} ({}): {message}", row.model_id, row.family.label()),
                    witness: format!("seed={},model_id={},{witness}", self.seed, row.model_id),
                }),
                other => other,
            },
        }
    }

    /// Columns `model_id,r,lhs,rhs,margin,pass`.
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&["model_id", "r", "lhs", "rhs", "margin", "pass"]);
        for row in &self.rows {
            let o = row.outcome;
            t.push(vec![
                row.model_id.to_string(),
                fmt_float(o.r),
                fmt_float(o.lhs),
                fmt_float(o.rhs),
                fmt_float(o.margin()),
                row.pass().to_string(),
            ]);
        }
        t
    }
}

/// Draws `count` models (spectra of up to 50 eigenvalues in `(0, 100]`) and
/// evaluates both sides of the inequality for each.
pub fn run_theorem31_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    if count == 0 {
        return domain("suite needs at least one model");
    }
    let constants = Constants::measure()?;
    let eval = |id: usize| -> Result<SuiteRow> {
        let m = generate(seed, id, &constants)?;
        Ok(SuiteRow {
            model_id: id,
            family: m.family,
            outcome: theorem31_evaluate(&m.model, m.r)?,
        })
    };
    #[cfg(feature = "parallel")]
    let rows = (0..count)
        .into_par_iter()
        .map(eval)
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let rows = (0..count).map(eval).collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { seed, rows })
}

/// The equality case `phi = psi = 1/(1+x)` on `{1, 2, 3}` at `r = 1`.
pub fn tight_model() -> Result<DiagonalPropagatorModel> {
    DiagonalPropagatorModel::new(
        SpectralProfile::discrete(vec![1.0, 2.0, 3.0])?,
        Arc::new(|x: f64| Complex64::new(1.0 / (1.0 + x), 0.0)),
        resolvent_envelope(1.0),
    )
}

/// A model with no eigenvalues.
pub fn empty_model() -> Result<DiagonalPropagatorModel> {
    DiagonalPropagatorModel::new(
        SpectralProfile::discrete(Vec::new())?,
        Arc::new(|x: f64| Complex64::new(1.0 / (1.0 + x), 0.0)),
        resolvent_envelope(1.0),
    )
}
