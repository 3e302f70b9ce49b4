//! Decay exponents of the operator catalog, with counting-function fits.

use super::report::{fmt_float, CsvTable};
use crate::error::{Error, Result};
use crate::lorentz::decay_exponent;
use crate::spectral::{exponent_fit, CatalogRow, SpectralProfile};

/// Fit window and resolution for the computable rows.
pub const FIT_RANGE: (f64, f64) = (1e2, 1e5);
pub const FIT_POINTS: usize = 60;
pub const FIT_TOLERANCE: f64 = 0.05;
/// Lattice cutoff: well beyond `sqrt(1e5)`, so truncation never bites.
pub const LATTICE_CUTOFF: u32 = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct Table4Row {
    pub row: CatalogRow,
    pub lambda: f64,
    /// `None` when `1/lambda <= 1/p - 1/q`.
    pub exponent: Option<f64>,
    /// Least-squares exponent of the computable counting function, if any.
    pub fitted: Option<f64>,
    /// Fit within tolerance; for the Vladimirov row also the sandwich
    /// `s^(1/mu) / rho <= N(s) <= s^(1/mu)` on the window.
    pub fit_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table4 {
    pub alpha: f64,
    pub p: f64,
    pub q: f64,
    pub rows: Vec<Table4Row>,
}

fn sandwich_holds(rho: u32, mu: f64, profile: &SpectralProfile) -> Result<bool> {
    let (lo, hi) = FIT_RANGE;
    for i in 0..FIT_POINTS {
        let s = lo * ((hi / lo).ln() * i as f64 / (FIT_POINTS - 1) as f64).exp();
        let n = profile.count(s)?;
        let top = s.powf(1.0 / mu);
        if !(n <= top * (1.0 + 1e-12) && n * rho as f64 >= top * (1.0 - 1e-12)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One row per entry of [`CatalogRow::defaults`].
pub fn run_table4(alpha: f64, p: f64, q: f64) -> Result<Table4> {
    let mut rows = Vec::new();
    for row in CatalogRow::defaults() {
        let lambda = row.exponent();
        let exponent = match decay_exponent(alpha, lambda, p, q) {
            Ok(e) => Some(e),
            Err(Error::OutOfRange(_)) => None,
            Err(e) => return Err(e),
        };
        let (fitted, fit_ok) = match row.lattice_profile(LATTICE_CUTOFF) {
            None => (None, true),
            Some(profile) => {
                let f = exponent_fit(&profile, FIT_RANGE.0, FIT_RANGE.1, FIT_POINTS)?;
                let mut ok = (f - lambda).abs() <= FIT_TOLERANCE;
                if let CatalogRow::Vladimirov { rho, mu } = row {
                    ok &= sandwich_holds(rho, mu, &profile)?;
                }
                (Some(f), ok)
            }
        };
        rows.push(Table4Row {
            row,
            lambda,
            exponent,
            fitted,
            fit_ok,
        });
    }
    Ok(Table4 { alpha, p, q, rows })
}

impl Table4 {
    pub fn check(&self) -> Result<()> {
        match self.rows.iter().find(|r| !r.fit_ok) {
            None => Ok(()),
            Some(r) => Err(Error::InvariantFailure {
                message: format!("counting fit for {} misses lambda = {}", r.row, r.lambda),
                witness: format!("row={},fitted={:?}", r.row, r.fitted),
            }),
        }
    }

    /// Columns `name,lambda,decay_exponent,valid,fitted_exponent,fit_ok`;
    /// empty cells where a value does not apply.
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&[
            "name",
            "lambda",
            "decay_exponent",
            "valid",
            "fitted_exponent",
            "fit_ok",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.row.to_string(),
                fmt_float(r.lambda),
                r.exponent.map(fmt_float).unwrap_or_default(),
                r.exponent.is_some().to_string(),
                r.fitted.map(fmt_float).unwrap_or_default(),
                r.fit_ok.to_string(),
            ]);
        }
        t
    }
}
