//! `E_{a,1}(-x)` and `E_{a,2}(-x)` against the envelope `C / (1 + x)`.

use num_complex::Complex64;

use super::report::{fmt_float, CsvTable};
use crate::error::{domain, Error, Result};
use crate::mittag_leffler::{envelope_constant, ml, MLParams, SectorSpec};

/// One sampled curve pair and the envelope measured for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1 {
    pub alpha: f64,
    /// Common constant for both curves.
    pub constant: f64,
    /// `(x, E_{a,1}(-x), E_{a,2}(-x), C / (1 + x))`.
    pub rows: Vec<[f64; 4]>,
}

/// Samples `points` equispaced `x` in `[0, x_max]`; `C` is the larger of the
/// two envelope constants measured on the negative axis up to `x_max`.
pub fn run_figure1(alpha: f64, x_max: f64, points: usize) -> Result<Figure1> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return domain(format!("figure needs 1 < alpha < 2, got {alpha}"));
    }
    if !(x_max > 0.0 && x_max.is_finite()) || points < 2 {
        return domain(format!(
            "need x_max > 0 and at least 2 points, got {x_max}, {points}"
        ));
    }
    let p1 = MLParams::new(alpha, 1.0)?;
    let p2 = MLParams::new(alpha, 2.0)?;
    let sector = SectorSpec::negative_axis(alpha)?;
    let samples = (4 * points).max(1000);
    let constant = envelope_constant(p1, sector, x_max, samples)?
        .max(envelope_constant(p2, sector, x_max, samples)?);

    let rows = (0..points)
        .map(|i| {
            let x = x_max * i as f64 / (points - 1) as f64;
            let z = Complex64::new(-x, 0.0);
            Ok([x, ml(p1, z)?.re, ml(p2, z)?.re, constant / (1.0 + x)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Figure1 {
        alpha,
        constant,
        rows,
    })
}

impl Figure1 {
    /// Rows where either curve leaves the envelope.
    pub fn violations(&self) -> Vec<[f64; 4]> {
        self.rows
            .iter()
            .copied()
            .filter(|r| r[1].abs() > r[3] || r[2].abs() > r[3])
            .collect()
    }

    /// Fails with the first offending row as witness.
    pub fn check(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some(r) => Err(Error::InvariantFailure {
                message: format!("envelope C/(1+x) with C={} is exceeded", self.constant),
                witness: format!("x={},E1={},E2={},bound={}", r[0], r[1], r[2], r[3]),
            }),
        }
    }

    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&["x", "e_alpha_1", "e_alpha_2", "envelope"]);
        for r in &self.rows {
            t.push(r.iter().map(|&v| fmt_float(v)).collect());
        }
        t
    }
}
