//! Decay of `||w(t)||_q` against the envelope bound.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bound::power_law_envelope;
use super::config::ExperimentConfig;
use super::report::{fmt_float, CsvTable};
use super::series::{log_ladder, slope_fit, TimeSeries};
use crate::error::{domain, Error, Result};
use crate::evolution::{
    apply_propagator, lq_norm, project_mean_zero, EvolutionProblem, GridFunction,
};
use crate::frac_calculus::EquationKind;
use crate::lorentz::{decay_exponent, NormIndices};

/// Where the equation is posed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpatialDomain {
    /// Flat torus of period `2 pi` with mean-zero data.
    Torus,
    /// A large periodic box standing in for `R^n`, with a narrow Gaussian as
    /// data and the time window kept short of the periodic images.
    Box,
}

impl FromStr for SpatialDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" => Ok(SpatialDomain::Torus),
            "box" => Ok(SpatialDomain::Box),
            other => Err(Error::Parse(format!(
                "unknown domain '{other}' (torus|box)"
            ))),
        }
    }
}

/// Validated settings of a decay run.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayConfig {
    pub kind: EquationKind,
    pub beta: f64,
    pub dim: usize,
    pub points_per_dim: usize,
    pub p: f64,
    pub q: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub times: usize,
    pub domain: SpatialDomain,
    pub box_length: f64,
    /// Standard deviation of the Gaussian data in box mode.
    pub width: f64,
    pub seed: u64,
}

pub const DECAY_KEYS: &[&str] = &[
    "kind",
    "beta",
    "dim",
    "points",
    "p",
    "q",
    "t_min",
    "t_max",
    "times",
    "domain",
    "box_length",
    "width",
    "seed",
];

impl Default for DecayConfig {
    fn default() -> Self {
        Self {
            kind: EquationKind::Heat,
            beta: 0.9,
            dim: 2,
            points_per_dim: 256,
            p: 2.0,
            q: 6.0,
            t_min: 0.5,
            t_max: 50.0,
            times: 16,
            domain: SpatialDomain::Torus,
            box_length: 2.0 * PI,
            width: 1.0,
            seed: 7,
        }
    }
}

impl DecayConfig {
    /// Reads the keys in [`DECAY_KEYS`]; missing keys take the defaults (the
    /// grid defaults to 1024 points in 1-D and 256 per side in 2-D, the box to
    /// side 64).
    pub fn from_config(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.expect_keys(DECAY_KEYS)?;
        let d = Self::default();
        let dim: usize = cfg.get("dim", d.dim)?;
        let domain: SpatialDomain = cfg.get("domain", d.domain)?;
        let out = Self {
            kind: cfg.get("kind", d.kind)?,
            beta: cfg.get("beta", d.beta)?,
            dim,
            points_per_dim: cfg.get("points", if dim == 1 { 1024 } else { 256 })?,
            p: cfg.get("p", d.p)?,
            q: cfg.get("q", d.q)?,
            t_min: cfg.get("t_min", d.t_min)?,
            t_max: cfg.get("t_max", d.t_max)?,
            times: cfg.get("times", d.times)?,
            domain,
            box_length: cfg.get(
                "box_length",
                if domain == SpatialDomain::Box {
                    64.0
                } else {
                    d.box_length
                },
            )?,
            width: cfg.get("width", d.width)?,
            seed: cfg.get("seed", d.seed)?,
        };
        out.validate()?;
        Ok(out)
    }

    /// Growth exponent of the counting function, `dim / 2`.
    pub fn lambda(&self) -> f64 {
        self.dim as f64 / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        self.kind.check_order(self.beta)?;
        if self.kind == EquationKind::Heat && self.beta == 1.0 {
            return domain("decay runs need a fractional order, got beta = 1");
        }
        if !(self.dim == 1 || self.dim == 2) {
            return domain(format!("dim must be 1 or 2, got {}", self.dim));
        }
        NormIndices::new(self.p, self.q)?;
        decay_exponent(self.beta, self.lambda(), self.p, self.q)?;
        if self.times < 5 {
            return domain("need at least 5 times for a slope");
        }
        if !(self.t_min > 0.0 && self.t_min < self.t_max) {
            return domain(format!("bad time window [{}, {}]", self.t_min, self.t_max));
        }
        if self.domain == SpatialDomain::Box {
            let spread = self.t_max.powf(self.beta / 2.0) + self.width;
            if spread >= self.box_length / 4.0 {
                return Err(Error::OutOfRange(format!(
                    "diffusion length {spread} at t = {} reaches a quarter of the box {}",
                    self.t_max, self.box_length
                )));
            }
        }
        Ok(())
    }

    fn problem(&self) -> Result<EvolutionProblem> {
        EvolutionProblem::new(self.kind, self.beta, self.domain == SpatialDomain::Torus)
    }

    /// Initial data: a few random real modes with `|k_i| <= 4` (mean removed)
    /// on the torus, a centred Gaussian in the box. `which` separates the
    /// position from the velocity draw.
    fn initial_field(&self, which: u64) -> Result<GridFunction> {
        let (dim, n, l) = (self.dim, self.points_per_dim, self.box_length);
        match self.domain {
            SpatialDomain::Torus => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(which);
                let modes: Vec<(f64, f64, f64, f64)> = (0..8)
                    .map(|_| {
                        let k1 = rng.gen_range(-4i32..=4) as f64;
                        let k2 = if dim == 2 {
                            rng.gen_range(-4i32..=4) as f64
                        } else {
                            0.0
                        };
                        (
                            k1,
                            k2,
                            rng.gen_range(0.2..1.0),
                            rng.gen_range(0.0..2.0 * PI),
                        )
                    })
                    .collect();
                let k = 2.0 * PI / l;
                let f = GridFunction::from_fn(dim, n, l, |x, y| {
                    let v: f64 = modes
                        .iter()
                        .map(|&(a, b, amp, ph)| amp * (k * (a * x + b * y) + ph).cos())
                        .sum();
                    Complex64::new(v, 0.0)
                })?;
                Ok(project_mean_zero(&f))
            }
            SpatialDomain::Box => {
                let c = l / 2.0;
                let s2 = 2.0 * self.width * self.width;
                let scale = if which == 0 { 1.0 } else { 0.5 };
                GridFunction::from_fn(dim, n, l, |x, y| {
                    let r2 = (x - c).powi(2) + if dim == 2 { (y - c).powi(2) } else { 0.0 };
                    Complex64::new(scale * (-r2 / s2).exp(), 0.0)
                })
            }
        }
    }
}

/// Trajectories of one decay run and the fitted slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub config: DecayConfig,
    pub r: f64,
    /// `-beta lambda (1/p - 1/q)`.
    pub exponent: f64,
    /// `||w(t)||_q`.
    pub solution: TimeSeries,
    /// `sup_v psi_t(v) N(v)^(1/r)` with `psi_t(v) = 1/(1 + t^beta v)` and
    /// `N(v) = v^lambda`.
    pub envelope: TimeSeries,
    /// `||w0||_p`, plus `t ||w1||_p` for the wave kind.
    pub data_factor: Vec<f64>,
    /// Solution over envelope times data factor.
    pub ratio: TimeSeries,
    pub envelope_slope: f64,
    pub ratio_slope: f64,
    pub solution_slope: (f64, f64),
}

/// Largest allowed trend of the solution-to-bound ratio.
pub const RATIO_SLOPE_LIMIT: f64 = 0.02;
/// Allowed gap between the envelope slope and the closed-form exponent.
pub const EXPONENT_TOLERANCE: f64 = 1e-3;

impl DecayReport {
    /// `||w(t)||_q <= C_fit B(t) (...)` with `C_fit` the ratio at the first time.
    pub fn chain_holds(&self) -> bool {
        let c_fit = self.ratio.values()[0];
        self.ratio
            .values()
            .iter()
            .all(|&v| v <= c_fit * (1.0 + 1e-9))
    }

    /// Envelope slope matches the exponent, the ratio does not trend upward,
    /// and the fitted bound chain holds at every later time.
    pub fn check(&self) -> Result<()> {
        let fail =
            |message: String, witness: String| Err(Error::InvariantFailure { message, witness });
        if (self.envelope_slope - self.exponent).abs() > EXPONENT_TOLERANCE {
            return fail(
                "envelope slope differs from the decay exponent".into(),
                format!("slope={},exponent={}", self.envelope_slope, self.exponent),
            );
        }
        if self.ratio_slope > RATIO_SLOPE_LIMIT {
            return fail(
                "solution-to-bound ratio grows".into(),
                format!("ratio_slope={}", self.ratio_slope),
            );
        }
        if !self.chain_holds() {
            let c_fit = self.ratio.values()[0];
            let (t, v) = self
                .ratio
                .times()
                .iter()
                .zip(self.ratio.values())
                .find(|(_, &v)| v > c_fit * (1.0 + 1e-9))
                .map(|(&t, &v)| (t, v))
                .unwrap_or((f64::NAN, f64::NAN));
            return fail(
                "bound with constant fitted at the first time is exceeded".into(),
                format!("t={t},ratio={v},c_fit={c_fit}"),
            );
        }
        Ok(())
    }

    /// Columns `t,solution_norm,envelope_bound,data_factor,ratio`.
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&[
            "t",
            "solution_norm",
            "envelope_bound",
            "data_factor",
            "ratio",
        ]);
        for i in 0..self.solution.len() {
            t.push(vec![
                fmt_float(self.solution.times()[i]),
                fmt_float(self.solution.values()[i]),
                fmt_float(self.envelope.values()[i]),
                fmt_float(self.data_factor[i]),
                fmt_float(self.ratio.values()[i]),
            ]);
        }
        t
    }
}

/// Solves on a log-spaced time ladder and compares with the envelope bound.
pub fn run_decay(config: &DecayConfig) -> Result<DecayReport> {
    config.validate()?;
    let problem = config.problem()?;
    let lambda = config.lambda();
    let exponent = decay_exponent(config.beta, lambda, config.p, config.q)?;
    let r = NormIndices::new(config.p, config.q)?.r();

    let w0 = config.initial_field(0)?;
    let w1 = match config.kind {
        EquationKind::Wave => Some(config.initial_field(1)?),
        _ => None,
    };
    let n0 = lq_norm(&w0, config.p)?;
    let n1 = match &w1 {
        Some(w) => lq_norm(w, config.p)?,
        None => 0.0,
    };

    let times = log_ladder(config.t_min, config.t_max, config.times)?;
    let mut solution = Vec::with_capacity(times.len());
    let mut envelope = Vec::with_capacity(times.len());
    let mut factor = Vec::with_capacity(times.len());
    for &t in &times {
        let w = apply_propagator(&problem, t, &w0, w1.as_ref())?;
        solution.push(lq_norm(&w, config.q)?);
        envelope.push(power_law_envelope(config.beta, lambda, r, t)?.value);
        factor.push(n0 + t * n1);
    }
    let ratio: Vec<f64> = (0..times.len())
        .map(|i| solution[i] / (envelope[i] * factor[i]))
        .collect();

    let meta = |s: TimeSeries| {
        s.with_meta("beta", config.beta)
            .with_meta("lambda", lambda)
            .with_meta("p", config.p)
            .with_meta("q", config.q)
    };
    let solution = meta(TimeSeries::new(times.clone(), solution)?);
    let envelope = meta(TimeSeries::new(times.clone(), envelope)?);
    let ratio = meta(TimeSeries::new(times, ratio)?);
    let window = (config.t_min, config.t_max);
    let envelope_slope = slope_fit(&envelope, window)?.0;
    let ratio_slope = slope_fit(&ratio, window)?.0;
    let solution_slope = slope_fit(&solution, window)?;
    Ok(DecayReport {
        config: config.clone(),
        r,
        exponent,
        solution,
        envelope,
        data_factor: factor,
        ratio,
        envelope_slope,
        ratio_slope,
        solution_slope,
    })
}
