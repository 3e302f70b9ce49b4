//! Time trajectories and their log-log slopes.

use std::collections::BTreeMap;

use crate::error::{domain, Result};
use crate::spectral::least_squares_slope;

/// Values sampled at strictly increasing positive times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
    pub metadata: BTreeMap<String, f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return domain(format!("{} times but {} values", times.len(), values.len()));
        }
        if times.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return domain("times must be positive and finite");
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return domain("times must be strictly increasing");
        }
        if values.iter().any(|v| !v.is_finite()) {
            return domain("values must be finite");
        }
        Ok(Self {
            times,
            values,
            metadata: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, key: &str, value: f64) -> Self {
        self.metadata.insert(key.to_string(), value);
        self
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// `n` log-spaced times from `t_min` to `t_max` inclusive.
pub fn log_ladder(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_min < t_max && t_max.is_finite()) || n < 2 {
        return domain(format!(
            "bad time ladder [{t_min}, {t_max}] with {n} points"
        ));
    }
    let ratio = (t_max / t_min).ln();
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                t_max
            } else {
                t_min * (ratio * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}

/// Least-squares slope of `ln value` against `ln t` over `t_lo <= t <= t_hi`,
/// with its standard error. Needs five points in the window, all positive.
pub fn slope_fit(series: &TimeSeries, window: (f64, f64)) -> Result<(f64, f64)> {
    let (lo, hi) = window;
    let (xs, ys): (Vec<f64>, Vec<f64>) = series
        .times
        .iter()
        .zip(&series.values)
        .filter(|(&t, _)| t >= lo && t <= hi)
        .map(|(&t, &v)| (t, v))
        .unzip();
    if xs.len() < 5 {
        return domain(format!(
            "window [{lo}, {hi}] holds {} points, need 5",
            xs.len()
        ));
    }
    if ys.iter().any(|&v| !(v > 0.0)) {
        return domain("slope fit needs positive values");
    }
    let lx: Vec<f64> = xs.iter().map(|t| t.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    Ok(least_squares_slope(&lx, &ly))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let t = log_ladder(1.0, 50.0, 12).unwrap();
        let v: Vec<f64> = t.iter().map(|t| 2.5 * t.powf(-0.3)).collect();
        let (s, e) = slope_fit(&TimeSeries::new(t, v).unwrap(), (1.0, 50.0)).unwrap();
        assert!((s + 0.3).abs() < 1e-12);
        assert!(e < 1e-12);
    }

    #[test]
    fn constant_series_is_flat() {
        let t = log_ladder(0.5, 5.0, 8).unwrap();
        let v = vec![3.0; 8];
        let (s, _) = slope_fit(&TimeSeries::new(t, v).unwrap(), (0.0, 10.0)).unwrap();
        assert!(s.abs() < 1e-15);
    }

    #[test]
    fn degenerate_windows() {
        let t = log_ladder(1.0, 10.0, 6).unwrap();
        let s = TimeSeries::new(t, vec![1.0; 6]).unwrap();
        assert!(slope_fit(&s, (2.0, 3.0)).is_err());
        assert!(TimeSeries::new(vec![1.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(TimeSeries::new(vec![1.0, 2.0], vec![f64::NAN, 2.0]).is_err());
    }
}
