//! Fractional heat, wave and Schrodinger evolutions on periodic grids.
//!
//! The Laplacian on a box of side `L` is diagonal in the Fourier basis with
//! eigenvalue `(2 pi |k| / L)^2` on mode `k`, so every solution operator is a
//! modewise multiplication by a Mittag-Leffler propagator.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{domain, Result};
use crate::frac_calculus::{
    caputo_derivative_corrected, residual_window_start, singular_exponents, EquationKind,
    SampledSignal, TimeGrid,
};
use crate::mittag_leffler::{propagator_heat, propagator_schrodinger, propagator_wave_pair};

/// Complex samples of a field on a uniform periodic grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: usize,
    n: usize,
    box_length: f64,
    values: Vec<Complex64>,
}

fn check_shape(dim: usize, n: usize, box_length: f64) -> Result<()> {
    if !(dim == 1 || dim == 2) {
        return domain(format!("grid dimension must be 1 or 2, got {dim}"));
    }
    if !n.is_power_of_two() || n < 2 {
        return domain(format!(
            "points per dimension must be a power of two >= 2, got {n}"
        ));
    }
    if !(box_length > 0.0 && box_length.is_finite()) {
        return domain(format!("box length must be positive, got {box_length}"));
    }
    Ok(())
}

impl GridFunction {
    pub fn new(dim: usize, n: usize, box_length: f64, values: Vec<Complex64>) -> Result<Self> {
        check_shape(dim, n, box_length)?;
        if values.len() != n.pow(dim as u32) {
            return domain(format!("{} values for a {n}^{dim} grid", values.len()));
        }
        Ok(Self {
            dim,
            n,
            box_length,
            values,
        })
    }

    /// Samples `f(x, y)` at the grid points `(i L / n, j L / n)`; `y = 0` in 1-D.
    pub fn from_fn(
        dim: usize,
        n: usize,
        box_length: f64,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        check_shape(dim, n, box_length)?;
        let h = box_length / n as f64;
        let values = match dim {
            1 => (0..n).map(|i| f(i as f64 * h, 0.0)).collect(),
            _ => (0..n * n)
                .map(|idx| f((idx / n) as f64 * h, (idx % n) as f64 * h))
                .collect(),
        };
        Ok(Self {
            dim,
            n,
            box_length,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_dim(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Quadrature weight of one cell, `(L / n)^dim`.
    pub fn cell_volume(&self) -> f64 {
        (self.box_length / self.n as f64).powi(self.dim as i32)
    }

    /// Largest `|Im f_j|` relative to the largest `|f_j|`.
    pub fn imaginary_fraction(&self) -> f64 {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max) / peak
    }

    /// Field snapshot as CSV with columns `index,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,re,im\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{i},{:.16e},{:.16e}", v.re, v.im);
        }
        out
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.dim == other.dim && self.n == other.n && self.box_length == other.box_length
    }
}

/// Fourier coefficients of a [`GridFunction`] under the unitary DFT; entry
/// `idx` belongs to the signed frequency vector [`Modes::frequency`].
#[derive(Debug, Clone, PartialEq)]
pub struct Modes {
    dim: usize,
    n: usize,
    box_length: f64,
    coeffs: Vec<Complex64>,
}

impl Modes {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Signed frequency `(k1, k2)` of entry `idx` (`k2 = 0` in 1-D).
    pub fn frequency(&self, idx: usize) -> (i64, i64) {
        let signed = |i: usize| -> i64 {
            if i < self.n / 2 {
                i as i64
            } else {
                i as i64 - self.n as i64
            }
        };
        match self.dim {
            1 => (signed(idx), 0),
            _ => (signed(idx / self.n), signed(idx % self.n)),
        }
    }

    /// `|k|^2` of entry `idx`.
    pub fn lattice_norm(&self, idx: usize) -> u64 {
        let (a, b) = self.frequency(idx);
        (a * a + b * b) as u64
    }

    /// Scale turning `|k|^2` into the Laplacian eigenvalue.
    pub fn eigenvalue_scale(&self) -> f64 {
        (2.0 * PI / self.box_length).powi(2)
    }

    /// Laplacian eigenvalue `(2 pi |k| / L)^2` of entry `idx`.
    pub fn eigenvalue(&self, idx: usize) -> f64 {
        self.eigenvalue_scale() * self.lattice_norm(idx) as f64
    }
}

fn transform_lines(data: &mut [Complex64], n: usize, fft: &dyn Fft<f64>) {
    // rows are contiguous; columns are gathered into a scratch line
    let rows = data.len() / n;
    if rows == 1 {
        fft.process(data);
        return;
    }
    for row in data.chunks_mut(n) {
        fft.process(row);
    }
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..n {
        for r in 0..n {
            line[r] = data[r * n + c];
        }
        fft.process(&mut line);
        for r in 0..n {
            data[r * n + c] = line[r];
        }
    }
}

fn unitary(data: &mut [Complex64], n: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    transform_lines(data, n, &*fft);
    let scale = 1.0 / (data.len() as f64).sqrt();
    for v in data.iter_mut() {
        *v *= scale;
    }
}

/// Unitary DFT (`1/sqrt(N)` on both sides).
pub fn forward_transform(f: &GridFunction) -> Modes {
    let mut coeffs = f.values.clone();
    unitary(&mut coeffs, f.n, false);
    Modes {
        dim: f.dim,
        n: f.n,
        box_length: f.box_length,
        coeffs,
    }
}

/// Inverse of [`forward_transform`].
pub fn inverse_transform(m: &Modes) -> GridFunction {
    let mut values = m.coeffs.clone();
    unitary(&mut values, m.n, true);
    GridFunction {
        dim: m.dim,
        n: m.n,
        box_length: m.box_length,
        values,
    }
}

/// Which equation to solve, at which order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionProblem {
    kind: EquationKind,
    beta: f64,
    zero_mode_projection: bool,
}

impl EvolutionProblem {
    /// Heat and Schrodinger need `0 < beta < 1` (heat also admits `beta = 1`),
    /// wave needs `1 < beta < 2`.
    pub fn new(kind: EquationKind, beta: f64, zero_mode_projection: bool) -> Result<Self> {
        kind.check_order(beta)?;
        Ok(Self {
            kind,
            beta,
            zero_mode_projection,
        })
    }

    pub fn kind(&self) -> EquationKind {
        self.kind
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn zero_mode_projection(&self) -> bool {
        self.zero_mode_projection
    }

    /// Multipliers on `(w0, w1)` coefficients at spectral value `s`.
    fn multipliers(&self, t: f64, s: f64) -> Result<(Complex64, Complex64)> {
        let zero = Complex64::new(0.0, 0.0);
        Ok(match self.kind {
            EquationKind::Heat => (Complex64::new(propagator_heat(self.beta, t, s)?, 0.0), zero),
            EquationKind::Wave => {
                let (a, b) = propagator_wave_pair(self.beta, t, s)?;
                (Complex64::new(a, 0.0), Complex64::new(b, 0.0))
            }
            EquationKind::Schrodinger => (propagator_schrodinger(self.beta, t, s)?, zero),
        })
    }

    fn check_data(&self, w0: &GridFunction, w1: Option<&GridFunction>) -> Result<()> {
        match (self.kind, w1) {
            (EquationKind::Wave, None) => domain("the wave kind needs an initial velocity"),
            (EquationKind::Wave, Some(v)) if !v.same_shape(w0) => {
                domain("initial position and velocity live on different grids")
            }
            (EquationKind::Wave, Some(_)) => Ok(()),
            (_, Some(_)) => domain("only the wave kind takes an initial velocity"),
            (_, None) => Ok(()),
        }
    }
}

/// Evaluates `f` once per distinct `|k|^2` present in `modes`.
fn per_lattice_norm<V: Send>(
    modes: &Modes,
    f: impl Fn(f64) -> Result<V> + Sync,
) -> Result<HashMap<u64, V>> {
    let mut norms: Vec<u64> = (0..modes.coeffs.len())
        .map(|i| modes.lattice_norm(i))
        .collect();
    norms.sort_unstable();
    norms.dedup();
    let scale = modes.eigenvalue_scale();
    #[cfg(feature = "parallel")]
    let iter = norms.into_par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = norms.into_iter();
    iter.map(|m| f(scale * m as f64).map(|v| (m, v))).collect()
}

/// `w(t)` from the initial data: heat `E_b(-t^b L) w0`, wave
/// `E_b(-t^b L) w0 + t E_{b,2}(-t^b L) w1`, Schrodinger `E_b(i t^b L) w0`.
///
/// With zero-mode projection the mean of the data is removed first.
pub fn apply_propagator(
    problem: &EvolutionProblem,
    t: f64,
    w0: &GridFunction,
    w1: Option<&GridFunction>,
) -> Result<GridFunction> {
    problem.check_data(w0, w1)?;
    if !(t >= 0.0 && t.is_finite()) {
        return domain(format!("time must be finite and nonnegative, got {t}"));
    }
    let mut c0 = forward_transform(w0);
    let c1 = w1.map(forward_transform);
    let table = per_lattice_norm(&c0, |s| problem.multipliers(t, s))?;
    for idx in 0..c0.coeffs.len() {
        let m = c0.lattice_norm(idx);
        let (a, b) = table[&m];
        let mut v = a * c0.coeffs[idx];
        if let Some(c1) = &c1 {
            v += b * c1.coeffs[idx];
        }
        c0.coeffs[idx] = if problem.zero_mode_projection && m == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            v
        };
    }
    Ok(inverse_transform(&c0))
}

/// Removes the mean of a field (its zero Fourier mode).
pub fn project_mean_zero(f: &GridFunction) -> GridFunction {
    let mean = f.values.iter().sum::<Complex64>() / f.values.len() as f64;
    GridFunction {
        values: f.values.iter().map(|v| v - mean).collect(),
        ..f.clone()
    }
}

/// Discrete `L^q` norm `(sum |f_j|^q h^dim)^(1/q)`.
///
/// Partial sums are taken over fixed chunks and combined in order, so the
/// result does not depend on the number of workers.
pub fn lq_norm(f: &GridFunction, q: f64) -> Result<f64> {
    if !(q >= 1.0 && q.is_finite()) {
        return domain(format!("need 1 <= q < inf, got {q}"));
    }
    let peak = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(0.0);
    }
    let chunk = |c: &[Complex64]| -> f64 { c.iter().map(|v| (v.norm() / peak).powf(q)).sum() };
    #[cfg(feature = "parallel")]
    let partial: Vec<f64> = f.values.par_chunks(4096).map(chunk).collect();
    #[cfg(not(feature = "parallel"))]
    let partial: Vec<f64> = f.values.chunks(4096).map(chunk).collect();
    let total: f64 = partial.iter().sum();
    Ok(peak * (total * f.cell_volume()).powf(1.0 / q))
}

/// Time profiles of one eigenvalue: the discrete residual of the unit
/// position solution and, for the wave kind, of the unit velocity solution.
struct UnitResidual {
    position: Vec<Complex64>,
    velocity: Vec<Complex64>,
}

fn unit_residual(problem: &EvolutionProblem, s: f64, grid: TimeGrid) -> Result<UnitResidual> {
    let beta = problem.beta;
    let exps = singular_exponents(beta, problem.kind);
    let op = |d: Complex64, u: Complex64| -> Complex64 {
        match problem.kind {
            EquationKind::Schrodinger => d - Complex64::new(0.0, s) * u,
            _ => d + u * s,
        }
    };
    let profile = |which: usize| -> Result<Vec<Complex64>> {
        let vals = grid
            .nodes()
            .map(|t| {
                problem
                    .multipliers(t, s)
                    .map(|(a, b)| if which == 0 { a } else { b })
            })
            .collect::<Result<Vec<_>>>()?;
        let u = SampledSignal::new(grid, vals)?;
        let slope = (problem.kind == EquationKind::Wave).then(|| Complex64::new(which as f64, 0.0));
        let d = caputo_derivative_corrected(&u, beta, slope, &exps)?;
        Ok(d.values()
            .iter()
            .zip(u.values())
            .map(|(&dv, &uv)| op(dv, uv))
            .collect())
    };
    let position = profile(0)?;
    let velocity = if problem.kind == EquationKind::Wave {
        profile(1)?
    } else {
        Vec::new()
    };
    Ok(UnitResidual { position, velocity })
}

/// Largest residual of the discretized equation over the probe points and the
/// time nodes in the second half of `grid`.
///
/// Each mode's exact time profile is differentiated with the corrected Caputo
/// scheme; the modewise residuals are mapped back to space and read off at the
/// probes (indices into the grid).
pub fn solution_residual(
    problem: &EvolutionProblem,
    w0: &GridFunction,
    w1: Option<&GridFunction>,
    grid: TimeGrid,
    probes: &[usize],
) -> Result<f64> {
    problem.check_data(w0, w1)?;
    if let Some(&bad) = probes.iter().find(|&&p| p >= w0.len()) {
        return domain(format!(
            "probe index {bad} outside a grid of {} points",
            w0.len()
        ));
    }
    let c0 = forward_transform(w0);
    let c1 = w1.map(forward_transform);
    let table = per_lattice_norm(&c0, |s| unit_residual(problem, s, grid))?;

    let mut worst: f64 = 0.0;
    for j in residual_window_start(grid)..=grid.steps() {
        let mut r = c0.clone();
        for idx in 0..r.coeffs.len() {
            let m = r.lattice_norm(idx);
            if problem.zero_mode_projection && m == 0 {
                r.coeffs[idx] = Complex64::new(0.0, 0.0);
                continue;
            }
            let unit = &table[&m];
            let mut v = unit.position[j] * c0.coeffs[idx];
            if let Some(c1) = &c1 {
                v += unit.velocity[j] * c1.coeffs[idx];
            }
            r.coeffs[idx] = v;
        }
        let field = inverse_transform(&r);
        for &p in probes {
            worst = worst.max(field.values[p].norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn plane_wave(dim: usize, n: usize, k: (i64, i64)) -> GridFunction {
        let l = 2.0 * PI;
        GridFunction::from_fn(dim, n, l, |x, y| {
            Complex64::from_polar(1.0, k.0 as f64 * x + k.1 as f64 * y)
        })
        .unwrap()
    }

    #[test]
    fn shapes_are_validated() {
        assert!(GridFunction::new(1, 6, 1.0, vec![c(0.0); 6]).is_err());
        assert!(GridFunction::new(3, 4, 1.0, vec![c(0.0); 64]).is_err());
        assert!(GridFunction::new(2, 4, 1.0, vec![c(0.0); 8]).is_err());
        assert!(GridFunction::new(1, 4, 0.0, vec![c(0.0); 4]).is_err());
    }

    #[test]
    fn constant_field_is_a_single_mode() {
        let f = GridFunction::from_fn(2, 8, 3.0, |_, _| c(2.0)).unwrap();
        let m = forward_transform(&f);
        assert!((m.coeffs[0] - c(16.0)).norm() < 1e-13);
        assert!(m.coeffs[1..].iter().all(|v| v.norm() < 1e-13));
    }

    #[test]
    fn plane_wave_is_a_delta() {
        let m = forward_transform(&plane_wave(2, 16, (3, -2)));
        for (idx, v) in m.coeffs.iter().enumerate() {
            if m.frequency(idx) == (3, -2) {
                assert!((v - c(16.0)).norm() < 1e-12);
                assert_eq!(m.eigenvalue(idx), 13.0);
            } else {
                assert!(v.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip() {
        let f = GridFunction::from_fn(2, 16, 1.0, |x, y| {
            Complex64::new((7.0 * x).sin() + y * y, (x * y * 13.0).cos())
        })
        .unwrap();
        let g = inverse_transform(&forward_transform(&f));
        let err = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn norms() {
        let f = GridFunction::from_fn(2, 8, 3.0, |_, _| c(-2.0)).unwrap();
        for q in [1.0, 2.0, 3.5] {
            let want = 2.0 * 3f64.powf(2.0 / q);
            assert!((lq_norm(&f, q).unwrap() - want).abs() < 1e-12 * want);
        }
        let g = plane_wave(1, 32, (2, 0));
        let m = forward_transform(&g);
        let parseval: f64 = m.coeffs.iter().map(|v| v.norm_sqr()).sum::<f64>() * g.cell_volume();
        assert!((lq_norm(&g, 2.0).unwrap() - parseval.sqrt()).abs() < 1e-10);
        assert!(lq_norm(&g, 0.5).is_err());
    }

    #[test]
    fn time_zero_recovers_data() {
        let f = GridFunction::from_fn(1, 32, 2.0 * PI, |x, _| c((x).sin() + 0.3 * (3.0 * x).cos()))
            .unwrap();
        for (kind, beta) in [
            (EquationKind::Heat, 0.5),
            (EquationKind::Schrodinger, 0.5),
            (EquationKind::Wave, 1.5),
        ] {
            let p = EvolutionProblem::new(kind, beta, false).unwrap();
            let w1 = (kind == EquationKind::Wave).then(|| f.clone());
            let w = apply_propagator(&p, 0.0, &f, w1.as_ref()).unwrap();
            for q in [1.0, 2.0, 4.0] {
                let (a, b) = (lq_norm(&w, q).unwrap(), lq_norm(&f, q).unwrap());
                assert!((a - b).abs() <= 1e-14 * b, "{kind:?} q={q}");
            }
        }
    }

    #[test]
    fn order_one_heat_is_exponential() {
        let f =
            GridFunction::from_fn(1, 32, 2.0 * PI, |x, _| c((x).sin() + (4.0 * x).cos())).unwrap();
        let p = EvolutionProblem::new(EquationKind::Heat, 1.0, false).unwrap();
        let t = 0.3;
        let w = apply_propagator(&p, t, &f, None).unwrap();
        let exact = GridFunction::from_fn(1, 32, 2.0 * PI, |x, _| {
            c((-t).exp() * x.sin() + (-16.0 * t).exp() * (4.0 * x).cos())
        })
        .unwrap();
        let err = w
            .values
            .iter()
            .zip(&exact.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10);
    }

    #[test]
    fn data_must_match_kind() {
        let f = plane_wave(1, 8, (1, 0));
        let heat = EvolutionProblem::new(EquationKind::Heat, 0.5, false).unwrap();
        assert!(apply_propagator(&heat, 1.0, &f, Some(&f)).is_err());
        let wave = EvolutionProblem::new(EquationKind::Wave, 1.5, false).unwrap();
        assert!(apply_propagator(&wave, 1.0, &f, None).is_err());
        assert!(EvolutionProblem::new(EquationKind::Wave, 0.5, false).is_err());
        assert!(EvolutionProblem::new(EquationKind::Schrodinger, 1.0, false).is_err());
    }

    #[test]
    fn constant_data_has_no_residual() {
        let f = GridFunction::from_fn(1, 8, 2.0 * PI, |_, _| c(1.5)).unwrap();
        let p = EvolutionProblem::new(EquationKind::Heat, 0.5, false).unwrap();
        let grid = TimeGrid::new(1.0, 64).unwrap();
        assert!(solution_residual(&p, &f, None, grid, &[0, 3, 7]).unwrap() <= 1e-10);
    }
}
