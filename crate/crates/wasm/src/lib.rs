//! Browser bindings: Mittag-Leffler curves, envelope-bound trajectories and a
//! 1-D fractional evolution. Results cross the boundary as flat `Float64Array`s.

use fracprop::evolution::{apply_propagator, EvolutionProblem, GridFunction};
use fracprop::frac_calculus::EquationKind;
use fracprop::harness::{log_ladder, run_bound, run_figure1};
use fracprop::lorentz::NormIndices;
use num_complex::Complex64;
use wasm_bindgen::prelude::*;

fn js(e: fracprop::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Sampled `E_{a,1}(-x)`, `E_{a,2}(-x)` and their common envelope.
#[wasm_bindgen]
pub struct Curves {
    constant: f64,
    rows: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Row-major `x, e1, e2, envelope`.
    #[wasm_bindgen(getter)]
    pub fn rows(&self) -> Vec<f64> {
        self.rows.clone()
    }
}

pub fn curves(alpha: f64, x_max: f64, points: usize) -> fracprop::Result<Curves> {
    let fig = run_figure1(alpha, x_max, points)?;
    Ok(Curves {
        constant: fig.constant,
        rows: fig.rows.iter().flatten().copied().collect(),
    })
}

#[wasm_bindgen]
pub fn ml_curves(alpha: f64, x_max: f64, points: usize) -> Result<Curves, JsError> {
    curves(alpha, x_max, points).map_err(js)
}

/// Row-major `t, numeric bound, closed form` on a log ladder.
pub fn bound(
    beta: f64,
    lambda: f64,
    p: f64,
    q: f64,
    t_min: f64,
    t_max: f64,
    times: usize,
) -> fracprop::Result<Vec<f64>> {
    let idx = NormIndices::new(p, q)?;
    let ts = log_ladder(t_min, t_max, times)?;
    let traj = run_bound(beta, lambda, idx.r(), &ts)?;
    Ok(traj
        .rows
        .iter()
        .flat_map(|row| [row.t, row.numeric.value, row.exact.value])
        .collect())
}

#[wasm_bindgen]
pub fn bound_trajectory(
    beta: f64,
    lambda: f64,
    p: f64,
    q: f64,
    t_min: f64,
    t_max: f64,
    times: usize,
) -> Result<Vec<f64>, JsError> {
    bound(beta, lambda, p, q, t_min, t_max, times).map_err(js)
}

/// Row-major `x, w(0), Re w(t), Im w(t)` for a periodic square pulse of
/// width `L / 4` on `[0, 2 pi)`.
pub fn evolve(kind: &str, beta: f64, t: f64, points: usize) -> fracprop::Result<Vec<f64>> {
    let kind: EquationKind = kind.parse()?;
    let problem = EvolutionProblem::new(kind, beta, false)?;
    let length = std::f64::consts::TAU;
    let pulse = |x: f64, _| {
        let inside = (x - length / 2.0).abs() < length / 8.0;
        Complex64::new(if inside { 1.0 } else { 0.0 }, 0.0)
    };
    let w0 = GridFunction::from_fn(1, points, length, pulse)?;
    let rest = GridFunction::from_fn(1, points, length, |_, _| Complex64::new(0.0, 0.0))?;
    let w1 = matches!(kind, EquationKind::Wave).then_some(&rest);
    let w = apply_propagator(&problem, t, &w0, w1)?;
    let h = length / points as f64;
    Ok(w0
        .values()
        .iter()
        .zip(w.values())
        .enumerate()
        .flat_map(|(i, (a, b))| [i as f64 * h, a.re, b.re, b.im])
        .collect())
}

#[wasm_bindgen]
pub fn evolution_profile(
    kind: &str,
    beta: f64,
    t: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    evolve(kind, beta, t, points).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_stay_under_envelope() {
        let c = curves(1.5, 30.0, 61).unwrap();
        assert_eq!(c.rows.len(), 61 * 4);
        for r in c.rows.chunks(4) {
            assert!(r[1].abs() <= r[3] && r[2].abs() <= r[3]);
        }
    }

    #[test]
    fn bound_matches_closed_form() {
        let rows = bound(0.9, 1.0, 2.0, 6.0, 1.0, 50.0, 8).unwrap();
        for r in rows.chunks(3) {
            assert!((r[1] / r[2] - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn heat_smooths_and_conserves_mass() {
        let rows = evolve("heat", 0.7, 2.0, 128).unwrap();
        let (m0, m1): (f64, f64) = rows
            .chunks(4)
            .fold((0.0, 0.0), |(a, b), r| (a + r[1], b + r[2]));
        assert!((m0 - m1).abs() < 1e-9 * m0);
        let peak = rows.chunks(4).map(|r| r[2]).fold(0.0, f64::max);
        assert!(peak < 1.0);
        assert!(evolve("plasma", 0.5, 1.0, 64).is_err());
    }
}
