//! Numeric envelope trajectory against its closed form.

use super::report::{fmt_float, CsvTable};
use super::series::{slope_fit, TimeSeries};
use crate::error::{domain, Error, Result};
use crate::lorentz::{envelope_bound, envelope_closed_form, EnvelopeSup};
use crate::spectral::SpectralProfile;

/// Relative agreement required between optimizer and closed form.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;

/// `sup_v v^(lambda/r) / (1 + t^beta v)` found numerically.
pub fn power_law_envelope(beta: f64, lambda: f64, r: f64, t: f64) -> Result<EnvelopeSup> {
    if !(t > 0.0 && t.is_finite() && beta > 0.0) {
        return domain(format!("need t, beta > 0, got t={t}, beta={beta}"));
    }
    if !(lambda < r) {
        return Err(Error::OutOfRange(format!(
            "lambda = {lambda} must be below r = {r} for a finite supremum"
        )));
    }
    let a = t.powf(beta);
    let counting = SpectralProfile::power_law(lambda, 1.0)?;
    // the maximizer is near lambda t^-beta / (r - lambda); scan far beyond it
    let v_max = 1e6 * (lambda / (a * (r - lambda))).max(1.0);
    envelope_bound(&|v| 1.0 / (1.0 + a * v), &counting, r, v_max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub t: f64,
    pub numeric: EnvelopeSup,
    pub exact: EnvelopeSup,
}

impl BoundRow {
    pub fn value_error(&self) -> f64 {
        (self.numeric.value / self.exact.value - 1.0).abs()
    }

    pub fn argmax_error(&self) -> f64 {
        (self.numeric.argmax / self.exact.argmax - 1.0).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundTrajectory {
    pub beta: f64,
    pub lambda: f64,
    pub r: f64,
    pub rows: Vec<BoundRow>,
    /// Fitted log-log slope of the numeric values.
    pub slope: f64,
}

impl BoundTrajectory {
    /// `-beta lambda / r`.
    pub fn exponent(&self) -> f64 {
        -self.beta * self.lambda / self.r
    }

    pub fn check(&self) -> Result<()> {
        for row in &self.rows {
            if row.value_error() > CLOSED_FORM_TOLERANCE
                || row.argmax_error() > CLOSED_FORM_TOLERANCE
            {
                return Err(Error::InvariantFailure {
                    message: "envelope optimizer disagrees with the closed form".into(),
                    witness: format!(
                        "t={},value={},exact={},argmax={},exact_argmax={}",
                        row.t,
                        row.numeric.value,
                        row.exact.value,
                        row.numeric.argmax,
                        row.exact.argmax
                    ),
                });
            }
        }
        if (self.slope - self.exponent()).abs() > super::EXPONENT_TOLERANCE {
            return Err(Error::InvariantFailure {
                message: "envelope slope differs from -beta lambda / r".into(),
                witness: format!("slope={},exponent={}", self.slope, self.exponent()),
            });
        }
        Ok(())
    }

    /// Columns `t,bound,closed_form,argmax,closed_form_argmax`.
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&["t", "bound", "closed_form", "argmax", "closed_form_argmax"]);
        for row in &self.rows {
            t.push(vec![
                fmt_float(row.t),
                fmt_float(row.numeric.value),
                fmt_float(row.exact.value),
                fmt_float(row.numeric.argmax),
                fmt_float(row.exact.argmax),
            ]);
        }
        t
    }
}

/// Evaluates the envelope at each time (at least five) and fits its slope.
pub fn run_bound(beta: f64, lambda: f64, r: f64, times: &[f64]) -> Result<BoundTrajectory> {
    let rows = times
        .iter()
        .map(|&t| {
            Ok(BoundRow {
                t,
                numeric: power_law_envelope(beta, lambda, r, t)?,
                exact: envelope_closed_form(beta, lambda, r, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let series = TimeSeries::new(
        times.to_vec(),
        rows.iter().map(|r| r.numeric.value).collect(),
    )?;
    let (lo, hi) = (times[0], times[times.len() - 1]);
    let slope = slope_fit(&series, (lo, hi))?.0;
    Ok(BoundTrajectory {
        beta,
        lambda,
        r,
        rows,
        slope,
    })
}
